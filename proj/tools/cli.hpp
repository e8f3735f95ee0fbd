#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphereqmc::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNumericalFailure = 2 };

/// Runs the sphereqmc command line. argv[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

/// "1.5:3.5:0.5" (inclusive range) or "1.25,1.5,2".
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_count_list(const std::string& text);

}  // namespace sphereqmc::cli
