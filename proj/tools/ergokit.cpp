// ergokit: command-line front end

#include "ergokit/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace ergokit::cli;

    CLI::App app{"Extractable work from finite-level quantum batteries.\n"
                 "Exit codes: 0 ok, 2 parse/validation, 3 numerical, 4 enumeration cap, 5 oracle mismatch.\n"
                 "Env: ERGOKIT_MAX_COMPOSITIONS overrides the composition cap (default 5e7)."};
    app.require_subcommand(1);

    ErgotropyArgs ergo;
    auto* c_ergo = app.add_subcommand("ergotropy", "Ergotropy, passive state and thermodynamic bound");
    c_ergo->add_option("problem", ergo.problem_path, "Problem JSON file")->required();
    c_ergo->add_option("--tol", ergo.tol, "Entropy-matching tolerance (nats)")->capture_default_str();
    c_ergo->add_flag("--json", ergo.json, "Emit a JSON report");

    CurveArgs crv;
    auto* c_curve = app.add_subcommand("curve", "Per-copy passive energies e(n) for n = 1..n_max as CSV");
    c_curve->add_option("problem", crv.problem_path, "Problem JSON file")->required();
    c_curve->add_option("--n-max", crv.n_max, "Largest number of copies")->capture_default_str();
    c_curve->add_option("--out,-o", crv.csv_path, "CSV output path ('-' for stdout)")->required();
    c_curve->add_option("--tol", crv.tol, "Entropy-matching tolerance (nats)")->capture_default_str();

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Run a piecewise-constant control schedule");
    c_sim->add_option("problem", sim.problem_path, "Problem JSON file")->required();
    c_sim->add_option("schedule", sim.schedule_path, "Schedule JSON file")->required();
    c_sim->add_option("--tol", sim.tol, "Hermiticity tolerance for controls")->capture_default_str();

    OracleArgs orc;
    auto* c_orc = app.add_subcommand("oracle", "Compare compressed e(n) against brute-force expansion");
    c_orc->add_option("problem", orc.problem_path, "Problem JSON file")->required();
    c_orc->add_option("--n", orc.n, "Number of copies")->required();
    c_orc->add_option("--tol", orc.tol, "Allowed absolute difference")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kParseError;
    }

    if (*c_ergo) return cmd_ergotropy(ergo, std::cout, std::cerr);
    if (*c_curve) return cmd_curve(crv, std::cout, std::cerr);
    if (*c_sim) return cmd_simulate(sim, std::cout, std::cerr);
    return cmd_oracle(orc, std::cout, std::cerr);
}
