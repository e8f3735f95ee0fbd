#pragma once

#include <stdexcept>
#include <string>

namespace sphereqmc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure failed to reach its accuracy contract
/// (singular energies, root finder non-convergence, Gram breakdown, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or table.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sphereqmc
