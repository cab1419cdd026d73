// qillum: quantum-illumination error-bound calculator.
//
// Subcommands:
//   bounds        single-point Chernoff/Bhattacharyya/lower bounds (JSON/CSV)
//   sweep         log-spaced M sweep as CSV
//   fig1          preset sweep: n_s = 0.01, n_b = 20, kappa = 0.01
//   oracle-check  Fock-basis cross-validation of the Gaussian formulas
//
// Set QI_LOG_LEVEL=info or QI_LOG_LEVEL=debug for diagnostics on stderr.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qillum/bounds.hpp"
#include "qillum/errors.hpp"
#include "qillum/fock.hpp"
#include "qillum/scenario.hpp"
#include "qillum/states.hpp"

namespace {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* raw = std::getenv("QI_LOG_LEVEL");
        if (raw == nullptr) return LogLevel::Quiet;
        if (std::strcmp(raw, "debug") == 0) return LogLevel::Debug;
        if (std::strcmp(raw, "info") == 0) return LogLevel::Info;
        return LogLevel::Quiet;
    }();
    return level;
}

void log_info(const std::string& message) {
    if (log_level() >= LogLevel::Info)
        std::fprintf(stderr, "[qillum] %s\n", message.c_str());
}

void log_debug(const std::string& message) {
    if (log_level() >= LogLevel::Debug)
        std::fprintf(stderr, "[qillum] %s\n", message.c_str());
}

// Fixed 9-significant-digit scientific notation so CSV output is
// deterministic byte-for-byte across runs and platforms.
std::string format_sci(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.8e", value);
    return buffer;
}

constexpr double kLn10 = std::numbers::ln10;
constexpr double kLn2 = std::numbers::ln2;

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    // Returns false when the file cannot be opened.
    bool open(const std::string& path) {
        if (path.empty()) return true;
        file.open(path, std::ios::binary);
        if (!file) return false;
        stream = &file;
        return true;
    }
};

qillum::BoundSet evaluate_bounds(const qillum::ScenarioParams& params,
                                 const std::string& transmitter) {
    if (transmitter == "cs") return qillum::cs_closed_form(params);
    const qillum::HypothesisPair pair = qillum::scenario_states(
        params, qillum::Transmitter::QuantumIllumination);
    return qillum::chernoff_bound(pair, params.m);
}

int run_bounds(const qillum::ScenarioParams& params,
               const std::string& transmitter, const std::string& format,
               const std::string& out_path) {
    const qillum::BoundSet bounds = evaluate_bounds(params, transmitter);
    log_info("bounds transmitter=" + transmitter +
             " s_star=" + format_sci(bounds.s_star) +
             " exponent_per_mode=" + format_sci(bounds.exponent_per_mode));

    OutputTarget target;
    if (!target.open(out_path)) {
        std::fprintf(stderr, "error: cannot open output file '%s'\n",
                     out_path.c_str());
        return 2;
    }

    const double log10_upper = bounds.ln_upper_chernoff / kLn10;
    const double log10_lower = bounds.ln_lower / kLn10;
    if (format == "csv") {
        *target.stream
            << "n_s,n_b,kappa,m,transmitter,ln_upper_chernoff,"
               "ln_upper_bhattacharyya,ln_lower,s_star,exponent_per_mode,"
               "log10_upper,log10_lower\n"
            << format_sci(params.n_s) << ',' << format_sci(params.n_b) << ','
            << format_sci(params.kappa) << ',' << params.m << ','
            << transmitter << ',' << format_sci(bounds.ln_upper_chernoff)
            << ',' << format_sci(bounds.ln_upper_bhattacharyya) << ','
            << format_sci(bounds.ln_lower) << ',' << format_sci(bounds.s_star)
            << ',' << format_sci(bounds.exponent_per_mode) << ','
            << format_sci(log10_upper) << ',' << format_sci(log10_lower)
            << '\n';
    } else {
        nlohmann::json doc;
        doc["n_s"] = params.n_s;
        doc["n_b"] = params.n_b;
        doc["kappa"] = params.kappa;
        doc["m"] = params.m;
        doc["transmitter"] = transmitter;
        doc["ln_upper_chernoff"] = bounds.ln_upper_chernoff;
        doc["ln_upper_bhattacharyya"] = bounds.ln_upper_bhattacharyya;
        doc["ln_lower"] = bounds.ln_lower;
        doc["s_star"] = bounds.s_star;
        doc["exponent_per_mode"] = bounds.exponent_per_mode;
        doc["log10_upper"] = log10_upper;
        doc["log10_lower"] = log10_lower;
        *target.stream << doc.dump(2) << '\n';
    }
    return 0;
}

// Log-spaced strictly increasing integer M values with both endpoints pinned.
std::vector<long> log_spaced_m(long m_start, long m_stop, int points) {
    if (m_start < 1) throw qillum::InvalidParameter("M must be >= 1");
    if (m_stop <= m_start)
        throw qillum::InvalidParameter("m-stop must exceed m-start");
    if (points < 2) throw qillum::InvalidParameter("points must be >= 2");
    if (m_stop - m_start + 1 < points)
        throw qillum::InvalidParameter(
            "points exceed the number of integers in [m-start, m-stop]");

    std::vector<long> values(points);
    const double ln_start = std::log(static_cast<double>(m_start));
    const double ln_stop = std::log(static_cast<double>(m_stop));
    for (int i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / (points - 1);
        values[i] = std::llround(
            std::exp(ln_start + frac * (ln_stop - ln_start)));
    }
    values.front() = m_start;
    values.back() = m_stop;
    long prev = 0;
    for (long& value : values) {
        if (value <= prev) value = prev + 1;
        if (value > m_stop)
            throw qillum::InvalidParameter(
                "points exceed the number of integers in [m-start, m-stop]");
        prev = value;
    }
    return values;
}

int run_sweep(double n_s, double n_b, double kappa,
              const std::vector<long>& m_values, bool want_qi, bool want_cs,
              bool want_classical_lower, const std::string& out_path) {
    // Per-mode exponents are M-independent, so each curve needs one
    // optimization/closed-form evaluation; rows then scale in the log domain.
    double ln_q_star_qi = 0.0;
    if (want_qi) {
        const qillum::ScenarioParams base(n_s, n_b, kappa, 1);
        const qillum::BoundSet qi = qillum::chernoff_bound(
            qillum::scenario_states(base,
                                    qillum::Transmitter::QuantumIllumination),
            1);
        ln_q_star_qi = -qi.exponent_per_mode;
        log_info("sweep qi s_star=" + format_sci(qi.s_star) +
                 " exponent_per_mode=" + format_sci(qi.exponent_per_mode));
    }

    OutputTarget target;
    if (!target.open(out_path)) {
        std::fprintf(stderr, "error: cannot open output file '%s'\n",
                     out_path.c_str());
        return 2;
    }

    std::string header = "M";
    if (want_qi) header += ",log10_qi_upper";
    if (want_cs) header += ",log10_cs_upper";
    if (want_classical_lower) header += ",log10_cs_lower";
    *target.stream << header << '\n';

    for (long m : m_values) {
        *target.stream << m;
        if (want_qi) {
            const double ln_upper =
                static_cast<double>(m) * ln_q_star_qi - kLn2;
            *target.stream << ',' << format_sci(ln_upper / kLn10);
        }
        if (want_cs || want_classical_lower) {
            const qillum::ScenarioParams row(n_s, n_b, kappa, m);
            if (want_cs) {
                const qillum::CsBoundSet cs = qillum::cs_closed_form(row);
                *target.stream << ','
                               << format_sci(cs.ln_upper_chernoff / kLn10);
            }
            if (want_classical_lower) {
                const double ln_lower =
                    qillum::classical_perfect_measurement_lower(row);
                *target.stream << ',' << format_sci(ln_lower / kLn10);
            }
        }
        *target.stream << '\n';
        log_debug("sweep row M=" + std::to_string(m));
    }
    return 0;
}

int run_oracle_check(const qillum::ScenarioParams& params,
                     const std::string& out_path) {
    const qillum::OracleScenario oracle = qillum::build_oracle_scenario(params);
    const qillum::HypothesisPair gaussian = qillum::scenario_states(
        params, qillum::Transmitter::QuantumIllumination);

    nlohmann::json checks = nlohmann::json::array();
    bool all_pass = true;
    auto add_check = [&](const std::string& name, double value,
                         double reference, double tolerance, bool pass) {
        checks.push_back({{"name", name},
                          {"value", value},
                          {"reference", reference},
                          {"tolerance", tolerance},
                          {"pass", pass}});
        all_pass = all_pass && pass;
        log_debug("check " + name + " value=" + format_sci(value) +
                  " reference=" + format_sci(reference) +
                  (pass ? " pass" : " FAIL"));
    };

    for (double s : {0.3, 0.5, 0.7}) {
        const double fock = qillum::q_s_oracle(oracle.rho0, oracle.rho1, s);
        const double gauss =
            std::exp(qillum::q_s(gaussian.rho0, gaussian.rho1, s));
        char name[32];
        std::snprintf(name, sizeof(name), "q_s_agreement_s=%.1f", s);
        add_check(name, fock, gauss, 1e-3, std::abs(fock - gauss) <= 1e-3);
    }

    const double helstrom = qillum::helstrom_error(oracle.rho0, oracle.rho1);
    const qillum::BoundSet bounds = qillum::chernoff_bound(gaussian, params.m);
    const double lower = std::exp(bounds.ln_lower);
    const double upper = std::exp(bounds.ln_upper_chernoff);
    add_check("helstrom_above_lower_bound", helstrom, lower, 0.0,
              helstrom >= lower);
    add_check("helstrom_below_chernoff_upper", helstrom, upper, 0.0,
              helstrom <= upper);

    OutputTarget target;
    if (!target.open(out_path)) {
        std::fprintf(stderr, "error: cannot open output file '%s'\n",
                     out_path.c_str());
        return 2;
    }

    nlohmann::json doc;
    doc["n_s"] = params.n_s;
    doc["n_b"] = params.n_b;
    doc["kappa"] = params.kappa;
    doc["m"] = params.m;
    doc["tmsv_cutoff"] = oracle.tmsv_cutoff;
    doc["bath_cutoff"] = oracle.bath_cutoff;
    doc["truncation_deficit"] = {
        {"rho0", oracle.rho0.truncation_deficit()},
        {"rho1", oracle.rho1.truncation_deficit()},
    };
    doc["checks"] = checks;
    doc["all_pass"] = all_pass;
    *target.stream << doc.dump(2) << '\n';

    log_info(std::string("oracle-check ") +
             (all_pass ? "all checks passed" : "tolerance failure"));
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-illumination error-probability bounds"};
    app.require_subcommand(1);

    double n_s = 0.0, n_b = 0.0, kappa = 0.0;
    long m = 1;
    std::string transmitter = "qi";
    std::string format = "json";
    std::string out_path;

    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "Evaluate bounds at a single point");
    bounds_cmd->add_option("--ns", n_s, "Signal mean photon number")
        ->required();
    bounds_cmd->add_option("--nb", n_b, "Background mean photon number")
        ->required();
    bounds_cmd->add_option("--kappa", kappa, "Target reflectivity")
        ->required();
    bounds_cmd->add_option("-M,--modes", m, "Number of transmitted copies");
    bounds_cmd
        ->add_option("--transmitter", transmitter, "Transmitter type")
        ->check(CLI::IsMember({"qi", "cs"}))
        ->required();
    bounds_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    bounds_cmd->add_option("--out", out_path, "Write output to a file");

    long m_start = 0, m_stop = 0;
    int points = 0;
    std::vector<std::string> sweep_transmitters;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Log-spaced M sweep as CSV");
    sweep_cmd->add_option("--ns", n_s, "Signal mean photon number")
        ->required();
    sweep_cmd->add_option("--nb", n_b, "Background mean photon number")
        ->required();
    sweep_cmd->add_option("--kappa", kappa, "Target reflectivity")
        ->required();
    sweep_cmd->add_option("--m-start", m_start, "First M value")->required();
    sweep_cmd->add_option("--m-stop", m_stop, "Last M value")->required();
    sweep_cmd->add_option("--points", points, "Number of M values")
        ->required();
    sweep_cmd
        ->add_option("--transmitter", sweep_transmitters,
                     "Curves to emit (repeatable; default all)")
        ->check(CLI::IsMember({"qi", "cs", "classical_lower"}));
    sweep_cmd->add_option("--out", out_path, "Write output to a file");

    CLI::App* fig1_cmd = app.add_subcommand(
        "fig1", "Preset sweep: ns=0.01 nb=20 kappa=0.01, M from 1e3 to 1e7");
    fig1_cmd->add_option("--out", out_path, "Write output to a file");

    double oc_ns = 0.1, oc_nb = 0.5, oc_kappa = 0.3;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle-check", "Cross-validate Gaussian formulas in the Fock basis");
    oracle_cmd->add_option("--ns", oc_ns, "Signal mean photon number");
    oracle_cmd->add_option("--nb", oc_nb, "Background mean photon number");
    oracle_cmd->add_option("--kappa", oc_kappa, "Target reflectivity");
    oracle_cmd->add_option("--out", out_path, "Write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bounds_cmd->parsed()) {
            const qillum::ScenarioParams params(n_s, n_b, kappa, m);
            return run_bounds(params, transmitter, format, out_path);
        }
        if (sweep_cmd->parsed()) {
            // Validate the scenario before the range so parameter errors win.
            const qillum::ScenarioParams params(n_s, n_b, kappa, 1);
            const std::vector<long> m_values =
                log_spaced_m(m_start, m_stop, points);
            const bool all = sweep_transmitters.empty();
            auto wants = [&](const char* name) {
                return all ||
                       std::find(sweep_transmitters.begin(),
                                 sweep_transmitters.end(),
                                 name) != sweep_transmitters.end();
            };
            return run_sweep(params.n_s, params.n_b, params.kappa, m_values,
                             wants("qi"), wants("cs"),
                             wants("classical_lower"), out_path);
        }
        if (fig1_cmd->parsed()) {
            const std::vector<long> m_values = log_spaced_m(1000, 10000000, 50);
            return run_sweep(0.01, 20.0, 0.01, m_values, true, true, true,
                             out_path);
        }
        const qillum::ScenarioParams params(oc_ns, oc_nb, oc_kappa, 1);
        return run_oracle_check(params, out_path);
    } catch (const qillum::InvalidParameter& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const qillum::DimensionMismatch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const qillum::InfeasibleError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const qillum::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
