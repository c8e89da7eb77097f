#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scp::cli {

enum ExitCode : int {
    kConvergedSOSP = 0,
    kConvergedFOSP = 1,
    kMaxIterations = 2,
    kLicqFailure = 3,
    kNumericalError = 4,
    kUsageError = 5,
    kAuditViolations = 6,
    kTraceParseError = 7,
    kIoError = 8,
};

/// Runs the command line (args excludes the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scp::cli
