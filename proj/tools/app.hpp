#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bergman::app {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
    kExitResource = 3,
};

inline constexpr int kSchemaVersion = 1;

/// Runs one command line (args[0] is the program name). Summaries and error objects go
/// to `out`; report.json and samples.csv go to the --out directory when given, otherwise
/// the report is printed to `out`.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace bergman::app
