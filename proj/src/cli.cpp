// cli.cpp: ergotropy / curve / simulate / oracle commands

#include "ergokit/cli.hpp"

#include "ergokit/battery.hpp"
#include "ergokit/error.hpp"
#include "ergokit/gibbs.hpp"
#include "ergokit/io.hpp"
#include "ergokit/protocol.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>

namespace ergokit::cli {

using io::format_double;

namespace {

// Maps the exception taxonomy onto exit codes.
int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kNumericError;
    }
}

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ' ';
        s += format_double(values[i]);
    }
    return s;
}

} // namespace

EnsembleOptions ensemble_options_from_env() {
    EnsembleOptions opts;
    if (const char* raw = std::getenv(kMaxCompositionsEnv); raw && *raw) {
        char* end = nullptr;
        const double cap = std::strtod(raw, &end);
        if (end == raw || *end != '\0' || !(cap >= 1.0)) {
            throw ParseError(std::string(kMaxCompositionsEnv) + ": expected a positive number, got '" + raw + "'");
        }
        opts.max_compositions = cap;
    }
    return opts;
}

int cmd_ergotropy(const ErgotropyArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const io::Problem p = io::load_problem(args.problem_path);
        const ErgotropyReport rep = passive_state(p.state, p.battery);
        const double s = entropy(p.state);
        const GibbsMatch match = match_entropy(p.battery, s, MatchOptions{args.tol});
        const double bound = rep.initial_energy - match.gibbs_energy;

        if (args.json) {
            nlohmann::ordered_json j;
            j["initial_energy"] = rep.initial_energy;
            j["passive_populations"] = rep.passive_populations;
            j["passive_energy"] = rep.passive_energy;
            j["ergotropy"] = rep.ergotropy;
            j["entropy"] = s;
            j["beta_bar"] = match.beta;
            j["beta_saturated"] = match.saturated;
            j["gibbs_energy"] = match.gibbs_energy;
            j["thermodynamic_bound"] = bound;
            j["bound_gap"] = bound - rep.ergotropy;
            out << j.dump(2) << '\n';
            return kOk;
        }
        out << "initial energy      " << format_double(rep.initial_energy) << '\n'
            << "passive spectrum    " << join(rep.passive_populations) << '\n'
            << "passive energy      " << format_double(rep.passive_energy) << '\n'
            << "ergotropy           " << format_double(rep.ergotropy) << '\n'
            << "entropy (nats)      " << format_double(s) << '\n'
            << "beta_bar            " << format_double(match.beta) << (match.saturated ? " (saturated)" : "")
            << '\n'
            << "gibbs energy        " << format_double(match.gibbs_energy) << '\n'
            << "thermodynamic bound " << format_double(bound) << '\n'
            << "bound gap           " << format_double(bound - rep.ergotropy) << '\n';
        return kOk;
    });
}

int cmd_curve(const CurveArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        if (args.n_max < 1) throw ParseError("--n-max must be >= 1");
        const io::Problem p = io::load_problem(args.problem_path);
        const EnsembleOptions opts = ensemble_options_from_env();
        const int feasible = largest_feasible_n(p.battery.dim(), args.n_max, opts.max_compositions);

        std::ofstream file;
        std::ostream* csv = &out;
        if (args.csv_path != "-") {
            file.open(args.csv_path, std::ios::binary | std::ios::trunc);
            if (!file) throw ParseError(args.csv_path + ": cannot open for writing");
            csv = &file;
        }
        *csv << "n,e_n,w_n,asymptote,gap\n";
        if (feasible == 0) {
            err << "error: n = 1 already exceeds the composition cap " << format_double(opts.max_compositions)
                << '\n';
            return static_cast<int>(kCapExceeded);
        }

        // Entropy matching honors --tol; the curve points use the default.
        const GibbsMatch match = match_entropy(p.battery, entropy(p.state), MatchOptions{args.tol});
        EnsembleCurve c = curve(p.state, p.battery, feasible, opts);
        c.asymptote = match.gibbs_energy;
        c.beta = match.beta;
        for (int n = 1; n <= c.n_max(); ++n) {
            *csv << n << ',' << format_double(c.e_at(n)) << ',' << format_double(c.w_at(n)) << ','
                 << format_double(c.asymptote) << ',' << format_double(c.gap_at(n)) << '\n';
        }
        csv->flush();

        if (feasible < args.n_max) {
            err << "error: n = " << feasible + 1 << " exceeds the composition cap "
                << format_double(opts.max_compositions) << "; wrote rows 1.." << feasible << '\n';
            return static_cast<int>(kCapExceeded);
        }
        err << "e(1)=" << format_double(c.e_at(1)) << " e(" << c.n_max() << ")=" << format_double(c.e_at(c.n_max()))
            << " asymptote=" << format_double(c.asymptote) << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const io::Problem p = io::load_problem(args.problem_path);
        auto segments = io::load_schedule(args.schedule_path);
        std::optional<ControlSchedule> schedule;
        try {
            schedule.emplace(std::move(segments), args.tol);
        } catch (const NotHermitian& e) {
            err << "error: " << e.what() << '\n';
            return kParseError;
        }
        const ProtocolResult res = evolve(p.state, p.battery, *schedule);
        const double ergotropy = passive_state(p.state, p.battery).ergotropy;

        out << "segments            " << schedule->segments().size() << '\n'
            << "duration            " << format_double(schedule->total_duration()) << '\n'
            << "work extracted      " << format_double(res.work) << '\n'
            << "final populations   " << join(res.final_state.populations()) << '\n'
            << "unitarity residual  " << format_double(unitarity_residual(res.total_unitary)) << '\n'
            << "ergotropy           " << format_double(ergotropy) << '\n';
        if (ergotropy > 1e-15) {
            out << "fraction captured   " << format_double(res.work / ergotropy) << '\n';
        } else {
            out << "fraction captured   undefined (zero ergotropy)\n";
        }
        return kOk;
    });
}

int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        if (args.n < 1) throw ParseError("--n must be >= 1");
        const io::Problem p = io::load_problem(args.problem_path);
        const EnsembleOptions opts = ensemble_options_from_env();
        const auto& spectrum = p.state.spectrum();
        const double brute = brute_force_oracle(spectrum, p.battery, args.n, opts);
        const double compressed = passive_energy_per_copy(build_level_table(spectrum, p.battery, args.n, opts));
        const double diff = std::abs(compressed - brute);
        out << "n                   " << args.n << '\n'
            << "compressed e(n)     " << format_double(compressed) << '\n'
            << "brute-force e(n)    " << format_double(brute) << '\n'
            << "abs difference      " << format_double(diff) << '\n';
        if (diff > args.tol) {
            err << "error: difference " << format_double(diff) << " exceeds " << format_double(args.tol) << '\n';
            return kOracleMismatch;
        }
        return kOk;
    });
}

} // namespace ergokit::cli
