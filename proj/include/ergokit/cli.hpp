// cli.hpp: command implementations behind the `ergokit` executable
//
// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit code.

#pragma once

#include "ergokit/ensemble.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace ergokit::cli {

enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kNumericError = 3,
    kCapExceeded = 4,
    kOracleMismatch = 5,
};

inline constexpr const char* kMaxCompositionsEnv = "ERGOKIT_MAX_COMPOSITIONS";

// Defaults, with the composition cap taken from ERGOKIT_MAX_COMPOSITIONS
// when set. Throws ParseError on a malformed value.
EnsembleOptions ensemble_options_from_env();

struct ErgotropyArgs {
    std::string problem_path;
    double tol = 1e-10;  // entropy-matching tolerance
    bool json = false;   // emit JSON instead of text
};
int cmd_ergotropy(const ErgotropyArgs& args, std::ostream& out, std::ostream& err);

struct CurveArgs {
    std::string problem_path;
    int n_max = 40;
    std::string csv_path;  // "-" writes to `out`
    double tol = 1e-10;    // entropy-matching tolerance
};
int cmd_curve(const CurveArgs& args, std::ostream& out, std::ostream& err);

struct SimulateArgs {
    std::string problem_path;
    std::string schedule_path;
    double tol = 1e-10;  // Hermiticity tolerance for controls
};
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

struct OracleArgs {
    std::string problem_path;
    int n = 1;
    double tol = 1e-9;  // allowed |compressed − brute force|
};
int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

} // namespace ergokit::cli
