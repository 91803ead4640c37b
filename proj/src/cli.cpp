// cli.cpp — subcommand dispatch, grid parsing, config merge, table emission

#include "becspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "becspec/curves.hpp"
#include "becspec/errors.hpp"
#include "becspec/fluctuations.hpp"
#include "becspec/fock.hpp"
#include "becspec/io.hpp"
#include "becspec/lindblad.hpp"
#include "becspec/params.hpp"
#include "becspec/steady_state.hpp"
#include "becspec/version.hpp"

namespace becspec::cli {

namespace {

constexpr const char* kOutputDirEnv = "BECSPEC_OUTPUT_DIR";

// ------------------------------ grid parsing -------------------------------

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(token, &pos));
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": cannot parse number '" + token + "'");
        }
    }
    if (values.empty()) throw std::invalid_argument(what + ": empty list");
    return values;
}

// "lo:hi:step", inclusive endpoints up to rounding slack.
std::vector<double> parse_range(const std::string& text, const std::string& what) {
    const auto parts = [&] {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string token;
        while (std::getline(ss, token, ':')) out.push_back(token);
        return out;
    }();
    if (parts.size() != 3) {
        throw std::invalid_argument(what + ": expected lo:hi:step, got '" + text + "'");
    }
    double lo = 0.0, hi = 0.0, step = 0.0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        step = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": cannot parse '" + text + "'");
    }
    if (!(step > 0.0) || !(lo < hi)) {
        throw std::invalid_argument(what + ": need lo < hi and step > 0 in '" + text + "'");
    }
    std::vector<double> values;
    const double slack = step * 1e-9;
    for (long long i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + slack) break;
        values.push_back(v);
    }
    return values;
}

// ------------------------------ options ------------------------------------

struct Options {
    double delta = 0.0;
    double g = 0.0;
    double gamma = 1.0;
    double n = 0.0;
    std::string n_list;
    std::string n_range;
    std::string omega_range;
    std::string variant = "paper";
    int n_cut = 0;  // 0 = choose automatically
    double eta = -1.0;  // algebra-check only; <0 = derive from n
    std::string output;
    std::string format = "csv";
    std::string config_path;
};

struct OptionRefs {
    CLI::App* sub = nullptr;
    std::map<std::string, CLI::Option*> by_key;
};

// Registers the common parameter/output flags on a subcommand and keeps the
// option handles so a config file can fill anything not given explicitly.
OptionRefs add_common_options(CLI::App* sub, Options& o, bool with_variant,
                              bool with_omega, bool with_n_cut) {
    OptionRefs refs;
    refs.sub = sub;
    refs.by_key["delta"] = sub->add_option("--delta", o.delta, "Detuning (units of gamma)");
    refs.by_key["g"] = sub->add_option("--g", o.g, "Drive amplitude (units of gamma)");
    refs.by_key["gamma"] = sub->add_option("--gamma", o.gamma, "One-atom linewidth (rate unit)");
    refs.by_key["n"] = sub->add_option("--n", o.n, "Particle number N (single value)");
    refs.by_key["n-list"] = sub->add_option("--n-list", o.n_list, "Comma-separated N values");
    refs.by_key["n-range"] = sub->add_option("--n-range", o.n_range, "N range lo:hi:step");
    if (with_omega) {
        refs.by_key["omega-range"] =
            sub->add_option("--omega-range", o.omega_range, "Frequency grid lo:hi:step");
    }
    if (with_variant) {
        refs.by_key["variant"] = sub->add_option("--variant", o.variant,
                                                 "Spectrum normalization: paper|physical")
                                     ->check(CLI::IsMember({"paper", "physical"}));
    }
    if (with_n_cut) {
        refs.by_key["n-cut"] =
            sub->add_option("--n-cut", o.n_cut, "Fock truncation (0 = automatic)");
    }
    refs.by_key["output"] =
        sub->add_option("--output,-o", o.output,
                        "Output file (stdout if omitted; relative paths resolve under $" +
                            std::string(kOutputDirEnv) + " when set)");
    refs.by_key["format"] = sub->add_option("--format", o.format, "Output format: csv|json")
                                ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", o.config_path,
                    "Flat JSON key-value file; explicit flags take precedence");
    return refs;
}

// Config merge: values apply only to options the user did not pass.
void apply_config(const OptionRefs& refs, const std::string& path) {
    static const std::vector<std::string> ignored = {"tool", "version", "subcommand"};
    const auto config = io::read_config(path);
    for (const auto& [key, value] : config) {
        if (std::find(ignored.begin(), ignored.end(), key) != ignored.end()) continue;
        auto it = refs.by_key.find(key);
        if (it == refs.by_key.end()) {
            throw std::invalid_argument("config: key '" + key + "' not recognized by '" +
                                        refs.sub->get_name() + "'");
        }
        if (it->second->count() > 0) continue;  // flag wins
        it->second->add_result(value);
        it->second->run_callback();
    }
}

// ------------------------------ output -------------------------------------

void emit(const io::Table& table, const Options& o) {
    std::string path = o.output;
    if (!path.empty() && path.front() != '/') {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && dir[0] != '\0') {
            path = std::string(dir) + "/" + path;
        }
    }
    const auto write = [&](std::ostream& os) {
        if (o.format == "json") {
            io::write_json(os, table);
        } else {
            io::write_csv(os, table);
        }
    };
    if (path.empty()) {
        write(std::cout);
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file " + path);
        write(out);
    }
}

void meta_common(io::Table& t, const std::string& subcommand, const Options& o) {
    t.meta.emplace_back("tool", kToolName);
    t.meta.emplace_back("version", kToolVersion);
    t.meta.emplace_back("subcommand", subcommand);
    t.meta.emplace_back("delta", io::fmt_sci(o.delta));
    t.meta.emplace_back("g", io::fmt_sci(o.g));
    t.meta.emplace_back("gamma", io::fmt_sci(o.gamma));
    t.meta.emplace_back("format", o.format);
}

std::vector<double> resolve_n_values(const Options& o, bool allow_single) {
    const bool has_list = !o.n_list.empty();
    const bool has_range = !o.n_range.empty();
    const bool has_single = o.n > 0.0;
    const int sources = int(has_list) + int(has_range) + int(allow_single && has_single);
    if (sources == 0) {
        throw std::invalid_argument(
            allow_single ? "give one of --n, --n-list, --n-range"
                         : "give one of --n-list, --n-range");
    }
    if (sources > 1) {
        throw std::invalid_argument("give exactly one N source (--n / --n-list / --n-range)");
    }
    if (has_list) return parse_number_list(o.n_list, "--n-list");
    if (has_range) return parse_range(o.n_range, "--n-range");
    return {o.n};
}

void add_n_meta(io::Table& t, const Options& o) {
    if (!o.n_list.empty()) {
        t.meta.emplace_back("n-list", o.n_list);
    } else if (!o.n_range.empty()) {
        t.meta.emplace_back("n-range", o.n_range);
    } else {
        t.meta.emplace_back("n", io::fmt_sci(o.n));
    }
}

// ------------------------------ subcommands --------------------------------

int run_steady_state(const Options& o) {
    if (!(o.n > 0.0)) throw std::invalid_argument("steady-state: --n is required");
    const ModelParams p(o.delta, o.g, o.gamma, o.n);
    const SteadyState ss = solve_deformed_steady_state(p);
    const Complex b_inf = beta_infinity(p);

    io::Table t;
    meta_common(t, "steady-state", o);
    t.meta.emplace_back("n", io::fmt_sci(o.n));
    t.columns = {"beta_re", "beta_im", "abs_beta", "beta_inf_re", "beta_inf_im",
                 "abs_beta_inf", "residual", "lambda1_re", "lambda1_im", "lambda2_re",
                 "lambda2_im", "stable"};
    t.rows.push_back({ss.beta.real(), ss.beta.imag(), std::abs(ss.beta), b_inf.real(),
                      b_inf.imag(), std::abs(b_inf), ss.residual_norm, ss.lambda1.real(),
                      ss.lambda1.imag(), ss.lambda2.real(), ss.lambda2.imag(),
                      static_cast<long long>(ss.stable ? 1 : 0)});
    emit(t, o);
    return kExitOk;
}

int run_deviation_curve(const Options& o) {
    const std::vector<double> n_values = resolve_n_values(o, true);
    const ModelParams base(o.delta, o.g, o.gamma, 2.0);
    const auto rows = deviation_curve(base, n_values);

    io::Table t;
    meta_common(t, "deviation-curve", o);
    add_n_meta(t, o);
    t.columns = {"N", "abs_beta", "abs_beta_inf", "deviation"};
    for (const auto& row : rows) {
        if (!row.ok) {
            t.notes.push_back("skipped N=" + io::fmt_sci(row.n_atoms) + " error=" + row.error);
            continue;
        }
        t.rows.push_back({row.n_atoms, row.abs_beta, row.abs_beta_inf, row.deviation});
    }
    emit(t, o);
    return kExitOk;
}

int run_spectrum(const Options& o) {
    const std::vector<double> n_values = resolve_n_values(o, true);
    if (o.omega_range.empty()) throw std::invalid_argument("spectrum: --omega-range is required");
    const std::vector<double> omega_grid = parse_range(o.omega_range, "--omega-range");
    const SpectrumVariant variant = spectrum_variant_from_string(o.variant);
    const ModelParams base(o.delta, o.g, o.gamma, 2.0);
    const auto rows = spectrum_surface(base, n_values, omega_grid, variant);

    io::Table t;
    meta_common(t, "spectrum", o);
    add_n_meta(t, o);
    t.meta.emplace_back("omega-range", o.omega_range);
    t.meta.emplace_back("variant", o.variant);
    t.columns = {"N", "omega", "S"};
    std::string last_error;
    for (const auto& row : rows) {
        if (!row.ok) {
            if (row.error != last_error) {
                t.notes.push_back("skipped N=" + io::fmt_sci(row.n_atoms) +
                                  " error=" + row.error);
                last_error = row.error;
            }
            continue;
        }
        t.rows.push_back({row.n_atoms, row.omega, row.s});
    }
    emit(t, o);
    return kExitOk;
}

int run_oracle_compare(const Options& o) {
    const std::vector<double> n_values = resolve_n_values(o, true);

    io::Table t;
    meta_common(t, "oracle-compare", o);
    add_n_meta(t, o);
    t.meta.emplace_back("n-cut", std::to_string(o.n_cut));
    t.columns = {"N",         "n_cut",     "beta_re",  "beta_im", "b_mean_re",
                 "b_mean_im", "rel_error", "n_mean",   "spectrum_ratio0"};
    for (double n : n_values) {
        const ModelParams p(o.delta, o.g, o.gamma, n);
        const SteadyState ss = solve_deformed_steady_state(p);
        const int n_cut = o.n_cut > 0 ? o.n_cut : lindblad::default_truncation(p);

        lindblad::Oracle oracle(p, n_cut);
        const Complex b_mean = oracle.mean_b();

        // Cross-check the truncation before trusting the row.
        {
            lindblad::Oracle bigger(p, n_cut + 5);
            const double drift = std::abs(bigger.mean_b() - b_mean);
            if (!(drift < 1e-6)) {
                throw TruncationError("oracle-compare: <b> moved by " + std::to_string(drift) +
                                      " between n_cut=" + std::to_string(n_cut) + " and " +
                                      std::to_string(n_cut + 5));
            }
        }

        const double rel_error = std::abs(b_mean - ss.beta) / std::max(std::abs(ss.beta), 1e-300);
        const FluctuationCoeffs c = fluctuation_coeffs(p, ss.beta);
        const double s_semi = spectrum_value(c, derive_params(p).big_gamma, 0.0,
                                             SpectrumVariant::paper);
        const double ratio0 = s_semi > 0.0 ? oracle.spectrum_value(0.0) / s_semi
                                           : std::numeric_limits<double>::quiet_NaN();
        t.rows.push_back({n, static_cast<long long>(n_cut), ss.beta.real(), ss.beta.imag(),
                          b_mean.real(), b_mean.imag(), rel_error, oracle.mean_n(), ratio0});
    }
    emit(t, o);
    return kExitOk;
}

int run_algebra_check(const Options& o) {
    double eta = o.eta;
    if (eta < 0.0) {
        if (!(o.n > 0.0)) {
            throw std::invalid_argument("algebra-check: give --eta or --n");
        }
        eta = 1.0 / o.n;
    }
    const int n_cut = o.n_cut > 0 ? o.n_cut : 20;
    const auto rows = fock::commutator_defect(n_cut, eta);

    // First-order expansion quality at eta and eta/2.
    const auto max_expansion_error = [&](double e) {
        const Eigen::MatrixXcd exact =
            fock::deformed_annihilator(n_cut, e, fock::DeformationOrder::exact);
        const Eigen::MatrixXcd first =
            fock::deformed_annihilator(n_cut, e, fock::DeformationOrder::first);
        return (exact - first).cwiseAbs().maxCoeff();
    };
    const double err_full = max_expansion_error(eta);
    const double err_half = max_expansion_error(eta / 2.0);

    io::Table t;
    meta_common(t, "algebra-check", o);
    t.meta.emplace_back("eta", io::fmt_sci(eta));
    t.meta.emplace_back("n-cut", std::to_string(n_cut));
    t.meta.emplace_back("expansion_max_err", io::fmt_sci(err_full));
    t.meta.emplace_back("expansion_max_err_half_eta", io::fmt_sci(err_half));
    t.meta.emplace_back("expansion_error_ratio",
                        io::fmt_sci(err_half > 0.0 ? err_full / err_half : 0.0));
    t.columns = {"n", "commutator_diag", "expected", "defect", "boundary"};
    for (const auto& row : rows) {
        t.rows.push_back({static_cast<long long>(row.n), row.commutator_diag, row.expected,
                          row.defect, static_cast<long long>(row.boundary ? 1 : 0)});
    }
    emit(t, o);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{std::string(kToolName) +
                 " — steady states, fluctuation spectra, and quantum-oracle checks for a "
                 "driven, damped condensate mode with finite-particle-number deformation"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    Options o_steady, o_dev, o_spec, o_oracle, o_algebra;
    o_oracle.g = 0.5;  // weak default drive keeps the oracle truncation small

    auto* sub_steady = app.add_subcommand(
        "steady-state",
        "Deformed and undeformed steady state at one parameter set.\n"
        "Columns: beta_re,beta_im,abs_beta,beta_inf_re,beta_inf_im,abs_beta_inf,"
        "residual,lambda1_re,lambda1_im,lambda2_re,lambda2_im,stable");
    auto refs_steady = add_common_options(sub_steady, o_steady, false, false, false);

    auto* sub_dev = app.add_subcommand(
        "deviation-curve",
        "| |beta| - |beta_inf| | as a function of N.\nColumns: N,abs_beta,abs_beta_inf,deviation");
    auto refs_dev = add_common_options(sub_dev, o_dev, false, false, false);

    auto* sub_spec = app.add_subcommand(
        "spectrum", "Scattered-light spectrum on an (N, omega) grid.\nColumns: N,omega,S");
    auto refs_spec = add_common_options(sub_spec, o_spec, true, true, false);

    auto* sub_oracle = app.add_subcommand(
        "oracle-compare",
        "Semiclassical amplitude vs the Lindblad oracle, with the measured\n"
        "oracle/paper spectrum ratio at omega=0.\n"
        "Columns: N,n_cut,beta_re,beta_im,b_mean_re,b_mean_im,rel_error,n_mean,spectrum_ratio0");
    auto refs_oracle = add_common_options(sub_oracle, o_oracle, false, false, true);

    auto* sub_algebra = app.add_subcommand(
        "algebra-check",
        "Deformed-commutator diagonal and first-order expansion report.\n"
        "Columns: n,commutator_diag,expected,defect,boundary");
    auto refs_algebra = add_common_options(sub_algebra, o_algebra, false, false, true);
    refs_algebra.by_key["eta"] =
        sub_algebra->add_option("--eta", o_algebra.eta, "Deformation parameter (overrides --n)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "E_ARGS: " << e.what() << "\n";
        return kExitArgs;
    }

    try {
        if (sub_steady->parsed()) {
            if (!o_steady.config_path.empty()) apply_config(refs_steady, o_steady.config_path);
            return run_steady_state(o_steady);
        }
        if (sub_dev->parsed()) {
            if (!o_dev.config_path.empty()) apply_config(refs_dev, o_dev.config_path);
            return run_deviation_curve(o_dev);
        }
        if (sub_spec->parsed()) {
            if (!o_spec.config_path.empty()) apply_config(refs_spec, o_spec.config_path);
            return run_spectrum(o_spec);
        }
        if (sub_oracle->parsed()) {
            if (!o_oracle.config_path.empty()) apply_config(refs_oracle, o_oracle.config_path);
            return run_oracle_compare(o_oracle);
        }
        if (sub_algebra->parsed()) {
            if (!o_algebra.config_path.empty()) {
                apply_config(refs_algebra, o_algebra.config_path);
            }
            return run_algebra_check(o_algebra);
        }
        std::cerr << "E_ARGS: no subcommand given\n";
        return kExitArgs;
    } catch (const NoConvergenceError& e) {
        std::cerr << "E_NOCONV: " << e.what() << "\n";
        return kExitSolver;
    } catch (const UnstableSteadyStateError& e) {
        std::cerr << "E_UNSTABLE: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::overflow_error& e) {
        std::cerr << "E_OVERFLOW: " << e.what() << "\n";
        return kExitSolver;
    } catch (const TruncationError& e) {
        std::cerr << "E_TRUNC: " << e.what() << "\n";
        return kExitOracle;
    } catch (const SingularSolveError& e) {
        std::cerr << "E_TRUNC: " << e.what() << "\n";
        return kExitOracle;
    } catch (const std::domain_error& e) {
        std::cerr << "E_ARGS: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "E_ARGS: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::exception& e) {
        std::cerr << "E_INTERNAL: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? argc - 1 : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace becspec::cli
