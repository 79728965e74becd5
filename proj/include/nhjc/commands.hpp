// commands.hpp: Run configuration and the subcommands behind the nhjc CLI
//
// Every command reads a resolved RunConfig, writes one data artifact (CSV or
// JSON, to --out or standard output) and one short summary, and returns the
// process exit code:
//   0 ok, 1 usage, 2 GMM degeneracy, 3 EP-crossing loop, 4 verification failure.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhjc/ep_analysis.hpp"
#include "nhjc/fock_oracle.hpp"
#include "nhjc/gmm.hpp"
#include "nhjc/io.hpp"
#include "nhjc/sampling.hpp"
#include "nhjc/spectrum.hpp"

namespace nhjc::cli {

using io::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kGmmDegenerate = 2, kLoopThroughEp = 3, kVerifyFailed = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct SpectrumBlock {
    int n_min{1};
    int n_max{10};
};

struct SweepTauBlock {
    int n{100};
    double tau_min{-30.0};
    double tau_max{30.0};
    int steps{601};
};

struct SweepNBlock {
    double tau{20.0};
    TauConvention convention{TauConvention::minus_i};
    int n_min{1};
    int n_max{200};
};

struct EncircleBlock {
    int n{100};
    double center{20.0};
    double radius{1.0};
    int steps{720};
    int turns{1};
};

struct ScanBlock {
    ScanKind kind{ScanKind::d_eps};
    std::optional<double> min, max;  // defaults depend on kind
    int steps{41};
    int n_tilde{25};
    std::vector<int> n_values;  // default: ñ−4 … ñ+4
    GammaTermReading reading{GammaTermReading::squared_product};
};

struct VerifyBlock {
    int draws{50};
    int cutoff{128};
    int n_max{100};
    int bio_n_max{20};
    int ep_sector{100};
    std::string inject_fault;  // "" or "lambda-sign"
};

struct RunConfig {
    std::string command;
    ModelParams model;
    bool omega0_manual{false};
    bool rho_manual{false};
    std::optional<GmmParams> gmm;
    Branch branch{Branch::plus};
    Complex beta12{1.0};

    SpectrumBlock spectrum;
    SweepTauBlock sweep_tau;
    SweepNBlock sweep_n;
    EncircleBlock encircle;
    ScanBlock scan;
    VerifyBlock verify;

    std::string out_path;
    OutputFormat format{OutputFormat::csv};
    std::uint64_t seed{20161};
};

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"gmm-check", "spectrum", "sweep-tau", "sweep-n",
                                                "encircle",  "scan",     "verify"};
    return names;
}

// ---------------------------------------------------------------------------
// Enum parsing
// ---------------------------------------------------------------------------

inline Branch parse_branch(const std::string& s) {
    if (s == "plus" || s == "+") return Branch::plus;
    if (s == "minus" || s == "-") return Branch::minus;
    throw UsageError("branch must be plus or minus, got '" + s + "'");
}

inline TauConvention parse_convention(const std::string& s) {
    if (s == "plus_i") return TauConvention::plus_i;
    if (s == "minus_i") return TauConvention::minus_i;
    throw UsageError("tau convention must be plus_i or minus_i, got '" + s + "'");
}

inline ScanKind parse_scan_kind(const std::string& s) {
    if (s == "d_eps") return ScanKind::d_eps;
    if (s == "d_gamma") return ScanKind::d_gamma;
    if (s == "nu0") return ScanKind::nu0;
    throw UsageError("scan kind must be d_eps, d_gamma or nu0, got '" + s + "'");
}

inline GammaTermReading parse_reading(const std::string& s) {
    if (s == "squared_product") return GammaTermReading::squared_product;
    if (s == "product_of_square") return GammaTermReading::product_of_square;
    throw UsageError("gamma term reading must be squared_product or product_of_square, got '" + s + "'");
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw UsageError("format must be csv or json, got '" + s + "'");
}

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& item : io::split_csv_line(s)) {
        const double v = io::parse_real(item);
        if (v != static_cast<int>(v)) throw UsageError("not an integer: '" + item + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

inline void check_hbar(double hbar) {
    if (hbar != 1.0) throw UsageError("hbar is fixed to 1");
}

// ---------------------------------------------------------------------------
// JSON config
// ---------------------------------------------------------------------------

namespace detail {

inline std::string block_key(const std::string& command) {
    std::string key = command;
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

inline void read_complex_if(const json& j, const char* key, Complex& out) {
    if (j.contains(key)) out = io::complex_from_json(j.at(key));
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return it.key() == k; })) {
            throw UsageError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

}  // namespace detail

/// Applies a JSON config document to cfg.command's configuration. Blocks
/// belonging to other subcommands are rejected.
inline void apply_config(const json& j, RunConfig& cfg) {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    const std::string own = detail::block_key(cfg.command);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "model" || key == "gmm" || key == "output" || key == "seed") continue;
        const bool is_block = std::any_of(subcommands().begin(), subcommands().end(),
                                          [&](const std::string& c) { return detail::block_key(c) == key; });
        if (!is_block) throw UsageError("unknown config section '" + key + "'");
        if (key != own) throw UsageError("config section '" + key + "' does not belong to subcommand " + cfg.command);
    }

    try {
        if (j.contains("model")) {
            const auto& m = j.at("model");
            detail::reject_unknown(m, {"omega", "omega0", "rho", "coupling", "hbar"}, "model");
            detail::read_complex_if(m, "omega", cfg.model.omega);
            detail::read_complex_if(m, "coupling", cfg.model.coupling);
            if (m.contains("omega0")) {
                cfg.model.omega0 = io::complex_from_json(m.at("omega0"));
                cfg.omega0_manual = true;
            }
            if (m.contains("rho")) {
                cfg.model.rho = io::complex_from_json(m.at("rho"));
                cfg.rho_manual = true;
            }
            if (m.contains("hbar")) check_hbar(m.at("hbar").get<double>());
        }
        if (j.contains("gmm")) {
            const auto& g = j.at("gmm");
            detail::reject_unknown(g, {"eps1", "eps2", "gamma1", "gamma2", "nu0", "branch", "beta12"}, "gmm");
            GmmParams p;
            detail::read_if(g, "eps1", p.eps1);
            detail::read_if(g, "eps2", p.eps2);
            detail::read_if(g, "gamma1", p.gamma1);
            detail::read_if(g, "gamma2", p.gamma2);
            detail::read_complex_if(g, "nu0", p.nu0);
            if (g.contains("branch")) cfg.branch = parse_branch(g.at("branch").get<std::string>());
            detail::read_complex_if(g, "beta12", cfg.beta12);
            cfg.gmm = p;
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            detail::reject_unknown(o, {"path", "format"}, "output");
            detail::read_if(o, "path", cfg.out_path);
            if (o.contains("format")) cfg.format = parse_format(o.at("format").get<std::string>());
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

        if (!j.contains(own)) return;
        const auto& b = j.at(own);
        if (cfg.command == "gmm-check") {
            detail::reject_unknown(b, {}, own);
        } else if (cfg.command == "spectrum") {
            detail::reject_unknown(b, {"n_min", "n_max"}, own);
            detail::read_if(b, "n_min", cfg.spectrum.n_min);
            detail::read_if(b, "n_max", cfg.spectrum.n_max);
        } else if (cfg.command == "sweep-tau") {
            detail::reject_unknown(b, {"n", "tau_min", "tau_max", "steps"}, own);
            detail::read_if(b, "n", cfg.sweep_tau.n);
            detail::read_if(b, "tau_min", cfg.sweep_tau.tau_min);
            detail::read_if(b, "tau_max", cfg.sweep_tau.tau_max);
            detail::read_if(b, "steps", cfg.sweep_tau.steps);
        } else if (cfg.command == "sweep-n") {
            detail::reject_unknown(b, {"tau", "tau_choice", "n_min", "n_max"}, own);
            detail::read_if(b, "tau", cfg.sweep_n.tau);
            if (b.contains("tau_choice")) cfg.sweep_n.convention = parse_convention(b.at("tau_choice").get<std::string>());
            detail::read_if(b, "n_min", cfg.sweep_n.n_min);
            detail::read_if(b, "n_max", cfg.sweep_n.n_max);
        } else if (cfg.command == "encircle") {
            detail::reject_unknown(b, {"n", "center", "radius", "steps", "turns"}, own);
            detail::read_if(b, "n", cfg.encircle.n);
            detail::read_if(b, "center", cfg.encircle.center);
            detail::read_if(b, "radius", cfg.encircle.radius);
            detail::read_if(b, "steps", cfg.encircle.steps);
            detail::read_if(b, "turns", cfg.encircle.turns);
        } else if (cfg.command == "scan") {
            detail::reject_unknown(b, {"kind", "min", "max", "steps", "n_tilde", "n_values", "reading"}, own);
            if (b.contains("kind")) cfg.scan.kind = parse_scan_kind(b.at("kind").get<std::string>());
            if (b.contains("min")) cfg.scan.min = b.at("min").get<double>();
            if (b.contains("max")) cfg.scan.max = b.at("max").get<double>();
            detail::read_if(b, "steps", cfg.scan.steps);
            detail::read_if(b, "n_tilde", cfg.scan.n_tilde);
            detail::read_if(b, "n_values", cfg.scan.n_values);
            if (b.contains("reading")) cfg.scan.reading = parse_reading(b.at("reading").get<std::string>());
        } else if (cfg.command == "verify") {
            detail::reject_unknown(b, {"draws", "cutoff", "n_max", "bio_n_max", "ep_sector", "inject_fault"}, own);
            detail::read_if(b, "draws", cfg.verify.draws);
            detail::read_if(b, "cutoff", cfg.verify.cutoff);
            detail::read_if(b, "n_max", cfg.verify.n_max);
            detail::read_if(b, "bio_n_max", cfg.verify.bio_n_max);
            detail::read_if(b, "ep_sector", cfg.verify.ep_sector);
            detail::read_if(b, "inject_fault", cfg.verify.inject_fault);
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad config value: ") + e.what());
    }
}

inline void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    apply_config(j, cfg);
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

struct ResolvedModel {
    ModelParams model;
    std::optional<PseudoFermionRep> rep;
};

/// With a gmm block, ω₀ and ρ come from the pseudo-fermion representation; a
/// manually set value that disagrees is an error.
inline ResolvedModel resolve_model(const RunConfig& cfg) {
    ResolvedModel r{cfg.model, std::nullopt};
    if (!cfg.gmm) return r;
    r.rep = pf_representation(*cfg.gmm, cfg.branch, cfg.beta12);
    const auto agrees = [](Complex manual, Complex derived) {
        return std::abs(manual - derived) <= 1e-12 * std::max(1.0, std::abs(derived));
    };
    if (cfg.omega0_manual && !agrees(cfg.model.omega0, r.rep->omega0)) {
        throw UsageError("omega0 conflicts with the value derived from the gmm block");
    }
    if (cfg.rho_manual && !agrees(cfg.model.rho, r.rep->rho)) {
        throw UsageError("rho conflicts with the value derived from the gmm block");
    }
    r.model = with_representation(cfg.model, *r.rep);
    return r;
}

inline void add_model_meta(io::Table& t, const ModelParams& m) {
    t.add_meta("hbar", ModelParams::hbar);
    t.add_meta_complex("omega", m.omega);
    t.add_meta_complex("omega0", m.omega0);
    t.add_meta_complex("rho", m.rho);
    t.add_meta_complex("coupling", m.coupling);
}

inline void add_gmm_meta(io::Table& t, const GmmParams& g) {
    t.add_meta("gmm_eps1", g.eps1);
    t.add_meta("gmm_eps2", g.eps2);
    t.add_meta("gmm_gamma1", g.gamma1);
    t.add_meta("gmm_gamma2", g.gamma2);
    t.add_meta_complex("gmm_nu0", g.nu0);
}

inline void add_config_meta(io::Table& t, const RunConfig& cfg, const ResolvedModel& rm) {
    add_model_meta(t, rm.model);
    if (cfg.gmm) {
        add_gmm_meta(t, *cfg.gmm);
        t.add_meta("gmm_branch", std::string(to_string(cfg.branch)));
        t.add_meta_complex("gmm_beta12", cfg.beta12);
    }
}

inline void emit(const RunConfig& cfg, const io::Table& table, Streams& s) {
    const auto write = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::json) {
            io::write_json(os, table);
        } else {
            io::write_csv(os, table);
        }
    };
    if (cfg.out_path.empty()) {
        write(s.out);
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + cfg.out_path + "'");
    write(file);
}

/// Summary text goes to stdout when data went to a file, else to stderr.
inline std::ostream& summary(const RunConfig& cfg, Streams& s) { return cfg.out_path.empty() ? s.err : s.out; }

inline void push_complex(std::vector<json>& row, Complex z) {
    row.emplace_back(z.real());
    row.emplace_back(z.imag());
}

inline std::string short_real(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline int cmd_gmm_check(const RunConfig& cfg, Streams& s) {
    if (!cfg.gmm) throw UsageError("gmm-check needs GMM parameters (gmm block or --eps1/--eps2/--gamma1/--gamma2/--nu0)");
    const GmmParams& g = *cfg.gmm;
    validate(g);
    const auto d = derived_quantities(g);
    const Complex disc = gmm_discriminant(g);
    const bool degenerate = gmm_is_degenerate_relative(g);

    io::Table t;
    t.command = "gmm-check";
    add_gmm_meta(t, g);
    t.add_meta_complex("gmm_beta12", cfg.beta12);
    t.add_meta("d_eps", d.d_eps);
    t.add_meta("d_gamma", d.d_gamma);
    t.add_meta("t_eps", d.t_eps);
    t.add_meta("t_gamma", d.t_gamma);
    t.add_meta_complex("discriminant", disc);
    t.add_meta("degenerate", degenerate);
    t.columns = {"branch",         "omega0_re",      "omega0_im",  "rho_re",   "rho_im",
                 "alpha_ratio_re", "alpha_ratio_im", "beta_ratio_re", "beta_ratio_im", "gamma_re",
                 "gamma_im",       "residual"};

    if (degenerate) {
        emit(cfg, t, s);
        s.err << "error: (-d_eps + i d_gamma)^2 + 4 nu0^2 = 0: GMM exceptional point, "
                 "pseudo-fermion representation does not exist\n";
        return kGmmDegenerate;
    }
    double worst = 0.0;
    for (Branch b : {Branch::plus, Branch::minus}) {
        const auto rep = pf_representation(g, b, cfg.beta12);
        const double res = verify_representation(g, rep);
        worst = std::max(worst, res);
        std::vector<json> row{std::string(to_string(b))};
        push_complex(row, rep.omega0);
        push_complex(row, rep.rho);
        push_complex(row, rep.alpha_ratio);
        push_complex(row, rep.beta_ratio);
        push_complex(row, rep.gamma_pm);
        row.emplace_back(res);
        t.rows.push_back(std::move(row));
    }
    t.footer.emplace_back("max_residual", worst);
    emit(cfg, t, s);
    summary(cfg, s) << "gmm-check: representation exists, max residual " << short_real(worst) << '\n';
    return kOk;
}

inline int cmd_spectrum(const RunConfig& cfg, Streams& s) {
    const auto rm = resolve_model(cfg);
    const auto& b = cfg.spectrum;
    if (b.n_min < 1 || b.n_max < b.n_min) throw UsageError("spectrum: need 1 <= n_min <= n_max");

    io::Table t;
    t.command = "spectrum";
    add_config_meta(t, cfg, rm);
    t.add_meta("n_min", b.n_min);
    t.add_meta("n_max", b.n_max);
    t.add_meta_complex("E_00", energy_nk(rm.model, 0, 0));
    t.columns = {"n",           "E_plus_re",   "E_plus_im",    "E_minus_re",   "E_minus_im",
                 "lambda_plus_re", "lambda_plus_im", "lambda_minus_re", "lambda_minus_im", "xi_plus_re",
                 "xi_plus_im",  "xi_minus_re", "xi_minus_im"};
    for (int n = b.n_min; n <= b.n_max; ++n) {
        const auto p = sector_eigen(rm.model, n, Branch::plus);
        const auto m = sector_eigen(rm.model, n, Branch::minus);
        std::vector<json> row{n};
        push_complex(row, p.energy);
        push_complex(row, m.energy);
        push_complex(row, p.lambda);
        push_complex(row, m.lambda);
        push_complex(row, p.xi);
        push_complex(row, m.xi);
        t.rows.push_back(std::move(row));
    }
    emit(cfg, t, s);
    summary(cfg, s) << "spectrum: " << (b.n_max - b.n_min + 1) << " sectors\n";
    return kOk;
}

inline int cmd_sweep_tau(const RunConfig& cfg, Streams& s) {
    const auto rm = resolve_model(cfg);
    const auto& b = cfg.sweep_tau;
    if (b.steps < 2 || !(b.tau_min < b.tau_max) || b.n < 1) {
        throw UsageError("sweep-tau: need n >= 1, steps >= 2 and tau_min < tau_max");
    }
    const auto sweep = sweep_tau(rm.model, b.n, b.tau_min, b.tau_max, b.steps);
    const auto eps = locate_eps(sweep);

    io::Table t;
    t.command = "sweep-tau";
    add_config_meta(t, cfg, rm);
    t.add_meta("n", b.n);
    t.add_meta("tau_min", b.tau_min);
    t.add_meta("tau_max", b.tau_max);
    t.add_meta("steps", b.steps);
    t.add_meta("omega0_rule", std::string("omega0 = omega + i*tau"));
    t.columns = {"tau", "E_plus_re", "E_plus_im", "E_minus_re", "E_minus_im", "regime"};
    for (std::size_t i = 0; i < sweep.tau_values.size(); ++i) {
        std::vector<json> row{sweep.tau_values[i]};
        push_complex(row, sweep.e_plus[i]);
        push_complex(row, sweep.e_minus[i]);
        row.emplace_back(std::string(to_string(sweep.regime[i])));
        t.rows.push_back(std::move(row));
    }
    t.footer.emplace_back("ep_count", static_cast<int>(eps.size()));
    for (std::size_t i = 0; i < eps.size(); ++i) t.footer.emplace_back("ep_tau_" + std::to_string(i + 1), eps[i]);
    emit(cfg, t, s);

    auto& os = summary(cfg, s);
    os << "sweep-tau: " << eps.size() << " EP(s)";
    for (std::size_t i = 0; i < eps.size(); ++i) os << (i ? ", " : " at tau = ") << short_real(eps[i]);
    os << '\n';
    return kOk;
}

inline int cmd_sweep_n(const RunConfig& cfg, Streams& s) {
    const auto rm = resolve_model(cfg);
    const auto& b = cfg.sweep_n;
    if (b.n_min < 1 || b.n_max < b.n_min) throw UsageError("sweep-n: need 1 <= n_min <= n_max");
    const auto sweep = sweep_n(rm.model, b.tau, b.convention, b.n_min, b.n_max);

    io::Table t;
    t.command = "sweep-n";
    add_config_meta(t, cfg, rm);
    t.add_meta("tau", b.tau);
    t.add_meta("tau_choice", std::string(to_string(b.convention)));
    t.add_meta("n_min", b.n_min);
    t.add_meta("n_max", b.n_max);
    t.columns = {"n", "E_plus_re", "E_plus_im", "E_minus_re", "E_minus_im", "gap_abs"};
    for (const auto& r : sweep.rows) {
        std::vector<json> row{r.n};
        push_complex(row, r.e_plus);
        push_complex(row, r.e_minus);
        row.emplace_back(r.gap);
        t.rows.push_back(std::move(row));
    }
    t.footer.emplace_back("min_gap_n", sweep.argmin_n);
    t.footer.emplace_back("min_gap", sweep.min_gap);
    emit(cfg, t, s);
    summary(cfg, s) << "sweep-n: minimum gap " << short_real(sweep.min_gap) << " at n = " << sweep.argmin_n << '\n';
    return kOk;
}

inline int cmd_encircle(const RunConfig& cfg, Streams& s) {
    const auto rm = resolve_model(cfg);
    const auto& b = cfg.encircle;
    if (b.steps < 8 || !(b.radius > 0.0) || b.n < 1 || b.turns < 1) {
        throw UsageError("encircle: need n >= 1, steps >= 8, radius > 0 and turns >= 1");
    }
    const auto res = encircle(rm.model, b.n, b.center, b.radius, b.steps, b.turns);

    io::Table t;
    t.command = "encircle";
    add_config_meta(t, cfg, rm);
    t.add_meta("n", b.n);
    t.add_meta("center", b.center);
    t.add_meta("radius", b.radius);
    t.add_meta("steps", b.steps);
    t.add_meta("turns", b.turns);
    t.add_meta("omega0_rule", std::string("omega0 = omega + i*tau"));
    t.columns = {"theta", "tau_re", "tau_im", "track_re", "track_im", "other_re", "other_im"};
    for (std::size_t i = 0; i < res.theta.size(); ++i) {
        std::vector<json> row{res.theta[i]};
        push_complex(row, res.tau[i]);
        push_complex(row, res.branch_track[i]);
        push_complex(row, res.other[i]);
        t.rows.push_back(std::move(row));
    }
    t.footer.emplace_back("swapped", res.swapped);
    emit(cfg, t, s);
    summary(cfg, s) << "swapped: " << (res.swapped ? "true" : "false") << '\n';
    return kOk;
}

/// Closure and default range for each scan kind.
inline ScanRequest scan_request(const ScanBlock& b, Complex coupling) {
    ScanRequest req;
    req.kind = b.kind;
    double lo = 0.0, hi = 0.0;
    switch (b.kind) {
        case ScanKind::d_eps:
            req.closure = delta_eps_closure(b.n_tilde, coupling);
            lo = -1.0, hi = 1.0;
            break;
        case ScanKind::d_gamma:
            req.closure = delta_gamma_closure(b.n_tilde, b.reading, coupling);
            lo = 0.0, hi = 2.0;
            break;
        case ScanKind::nu0:
            req.closure = nu0_closure(b.n_tilde, coupling);
            lo = 0.5, hi = 1.5;
            break;
    }
    lo = b.min.value_or(lo);
    hi = b.max.value_or(hi);
    if (b.steps < 2 || !(lo < hi)) throw UsageError("scan: need steps >= 2 and min < max");
    for (int i = 0; i < b.steps; ++i) req.values.push_back(grid_point(lo, hi, i, b.steps));
    return req;
}

inline std::vector<int> scan_sectors(const ScanBlock& b) {
    if (!b.n_values.empty()) return b.n_values;
    std::vector<int> out;
    for (int n = std::max(1, b.n_tilde - 4); n <= b.n_tilde + 4; ++n) out.push_back(n);
    return out;
}

inline int cmd_scan(const RunConfig& cfg, Streams& s) {
    const auto& b = cfg.scan;
    if (b.n_tilde < 1) throw UsageError("scan: n_tilde must be >= 1");
    const auto sectors = scan_sectors(b);
    for (int n : sectors)
        if (n < 1) throw UsageError("scan: sector indices must be >= 1");
    const auto req = scan_request(b, cfg.model.coupling);
    const GmmParams base = cfg.gmm.value_or(default_scan_gmm());
    const auto scan = scan_plane(req, base, sectors);

    io::Table t;
    t.command = "scan";
    t.add_meta("hbar", ModelParams::hbar);
    t.add_meta_complex("coupling", cfg.model.coupling);
    add_gmm_meta(t, base);
    t.add_meta("kind", std::string(to_string(b.kind)));
    t.add_meta("n_tilde", b.n_tilde);
    t.add_meta("reading", std::string(b.reading == GammaTermReading::squared_product ? "squared_product"
                                                                                      : "product_of_square"));
    t.add_meta("value_min", req.values.front());
    t.add_meta("value_max", req.values.back());
    t.add_meta("steps", b.steps);
    t.add_meta("gap_tol", req.gap_tol);
    t.columns = {"param_value", "n", "E_plus_re", "E_plus_im", "E_minus_re", "E_minus_im", "is_ep"};
    std::vector<double> degenerate_values;
    for (const auto& r : scan.grid) {
        std::vector<json> row{r.param_value, r.n};
        push_complex(row, r.e_plus);
        push_complex(row, r.e_minus);
        row.emplace_back(r.is_ep);
        t.rows.push_back(std::move(row));
        if (r.gmm_degenerate && (degenerate_values.empty() || degenerate_values.back() != r.param_value)) {
            degenerate_values.push_back(r.param_value);
        }
    }
    t.footer.emplace_back("ep_markers", static_cast<int>(scan.ep_markers.size()));
    for (std::size_t i = 0; i < degenerate_values.size(); ++i) {
        t.footer.emplace_back("gmm_degenerate_value_" + std::to_string(i + 1), degenerate_values[i]);
    }
    emit(cfg, t, s);

    auto& os = summary(cfg, s);
    os << "scan: " << scan.ep_markers.size() << " EP marker(s)";
    const std::size_t shown = std::min<std::size_t>(scan.ep_markers.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
        os << (i ? ", " : " at ") << "(" << short_real(scan.ep_markers[i].first) << ", n=" << scan.ep_markers[i].second
           << ")";
    }
    if (shown < scan.ep_markers.size()) os << ", ...";
    if (!degenerate_values.empty()) os << "; " << degenerate_values.size() << " GMM-degenerate value(s) flagged";
    os << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// verify: the oracle suite
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    double value{0.0};
    double threshold{0.0};
    bool at_most{true};  // pass iff value ≤ threshold (else value ≥ threshold)

    bool pass() const { return std::isfinite(value) && (at_most ? value <= threshold : value >= threshold); }
};

/// The five analytic GMM degeneracies (−Δε + iΔΓ)² + 4ν₀² = 0 used as detection probes.
inline std::vector<GmmParams> forced_degeneracies() {
    return {
        {0.0, 0.0, 0.0, 2.0, Complex{1.0}},       // (2i)² + 4 = 0
        {0.0, 0.0, 2.0, 0.0, Complex{1.0}},       // (−2i)² + 4 = 0
        {0.0, 2.0, 0.0, 0.0, Complex{0.0, 1.0}},  // (−2)² + 4i² = 0
        {0.0, 2.0, 0.0, 2.0, Complex{1.0, 1.0}},  // (−2+2i)² + 4(1+i)² = 0
        {1.0, 1.0, 0.5, 1.5, Complex{0.5}},       // i² + 1 = 0
    };
}

inline std::vector<CheckResult> run_verification(const RunConfig& cfg) {
    const auto& v = cfg.verify;
    if (v.draws < 1 || v.cutoff < 2 || v.n_max < 1 || v.n_max + 1 > v.cutoff - 1 || v.bio_n_max < 0 ||
        v.ep_sector < 1) {
        throw UsageError("verify: need draws >= 1, 1 <= n_max <= cutoff - 2, bio_n_max >= 0, ep_sector >= 1");
    }
    if (!v.inject_fault.empty() && v.inject_fault != "lambda-sign") {
        throw UsageError("verify: unknown fault '" + v.inject_fault + "'");
    }
    const bool flip_lambda = v.inject_fault == "lambda-sign";
    std::vector<CheckResult> out;
    ParameterSampler sampler(cfg.seed);

    // pseudo-fermion representation
    double rep_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const GmmParams g = sampler.gmm();
        const Complex beta12 = sampler.polar(0.5, 2.0);
        for (Branch b : {Branch::plus, Branch::minus}) {
            rep_worst = std::max(rep_worst, verify_representation(g, pf_representation(g, b, beta12)));
        }
    }
    out.push_back({"representation_identity", rep_worst, 1e-12, true});

    int missed = 0;
    for (const auto& g : forced_degeneracies()) {
        try {
            (void)pf_representation(g, Branch::plus);
            ++missed;
        } catch (const GmmDegenerateError&) {
        }
    }
    out.push_back({"degeneracy_detection_misses", static_cast<double>(missed), 0.0, true});

    // truncated-matrix oracle
    std::vector<DrawnCase> cases;
    for (int i = 0; i < v.draws; ++i) cases.push_back(sampler.full_case());

    double acomm = 0.0, bio = 0.0, res = 0.0, adj = 0.0, ground = 0.0, restrict_err = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const auto tm = build_full_h(c.model, c.gmm, c.rep, v.cutoff);
        const LadderBasis basis(tm, v.n_max + 1);
        if (i == 0) {
            const auto id_b = CMatrix::identity(tm.d_mat.rows());
            const auto big_c = kron(id_b, tm.c_mat);
            const auto big_C = kron(id_b, tm.C_mat);
            acomm = (anticommutator(big_c, big_C) - CMatrix::identity(tm.dim())).max_abs();
        }
        if (i < 5) bio = std::max(bio, biorthogonality_check(tm, std::min(v.bio_n_max, v.cutoff - 1)));
        ground = std::max(ground, ground_residual(tm));
        for (int n = 1; n <= v.n_max; ++n) {
            for (Branch b : {Branch::plus, Branch::minus}) {
                auto se = sector_eigen(c.model, n, b);
                if (flip_lambda) se.lambda = -se.lambda;
                res = std::max(res, residual_check(tm, basis, se));
                adj = std::max(adj, adjoint_residual_check(tm, basis, se));
            }
            if (i == 0) {
                const auto r = sector_restriction(tm, n);
                const Complex tr = r.trace();
                const Complex det = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0);
                const Complex root = std::sqrt(tr * tr - 4.0 * det);
                const Complex q1 = 0.5 * (tr + root), q2 = 0.5 * (tr - root);
                const auto [ep, em] = sector_pair(c.model, n);
                const double direct = std::max(std::abs(ep - q1), std::abs(em - q2));
                const double crossed = std::max(std::abs(ep - q2), std::abs(em - q1));
                restrict_err = std::max(restrict_err, std::min(direct, crossed));
            }
        }
    }
    out.push_back({"anticommutator_full_space", acomm, 1e-12, true});
    out.push_back({"biorthogonality", bio, 1e-9, true});
    out.push_back({"eigenpair_residual", res, 1e-9, true});
    out.push_back({"adjoint_eigenpair_residual", adj, 1e-9, true});
    out.push_back({"ground_state_residual", ground, 1e-10, true});
    out.push_back({"sector_restriction_eigenvalues", restrict_err, 1e-9, true});

    // EP structure on the configured model (ω₀ = ω + iτ)
    const ModelParams& m = cfg.model;
    const int n_ep = v.ep_sector;
    const auto [tau_m, tau_p] = ep_tau(m.coupling, n_ep);
    double overlap_at = 0.0, overlap_off = std::numeric_limits<double>::infinity();
    for (double tau : {tau_m, tau_p}) {
        for (Branch b : {Branch::plus, Branch::minus}) {
            overlap_at = std::max(overlap_at, std::abs(self_overlap(at_tau(m, tau), n_ep, b)));
            overlap_off = std::min(overlap_off, std::abs(self_overlap(at_tau(m, 1.1 * tau), n_ep, b)));
        }
    }
    out.push_back({"self_overlap_at_ep", overlap_at, 1e-12, true});
    out.push_back({"self_overlap_off_ep", overlap_off, 1e-3, false});

    const auto sweep = sweep_tau(m, n_ep, 1.5 * tau_m, 1.5 * tau_p, 601);
    double re_err = 0.0, im_err = 0.0;
    for (std::size_t i = 0; i < sweep.tau_values.size(); ++i) {
        const Complex diff = sweep.e_plus[i] - sweep.e_minus[i];
        const double t = std::abs(sweep.tau_values[i]);
        if (t > tau_p) re_err = std::max(re_err, std::abs(diff.real()));
        if (t < tau_p) im_err = std::max(im_err, std::abs(diff.imag()));
    }
    out.push_back({"regime_equal_real_outside", re_err, 1e-10, true});
    out.push_back({"regime_equal_imag_inside", im_err, 1e-10, true});

    const auto found = locate_eps(sweep);
    double loc_err = std::numeric_limits<double>::infinity();
    if (found.size() == 2) loc_err = std::max(std::abs(found[0] - tau_m), std::abs(found[1] - tau_p));
    out.push_back({"ep_location", loc_err, 1e-9, true});

    double swap_err = 0.0;
    try {
        const auto around = encircle(m, n_ep, tau_p, 1.0, 720);
        const auto beside = encircle(m, n_ep, tau_p + 5.0, 1.0, 720);
        const auto twice = encircle(m, n_ep, tau_p, 1.0, 720, 2);
        out.push_back({"encircle_swaps", around.swapped ? 1.0 : 0.0, 1.0, false});
        out.push_back({"encircle_off_ep_no_swap", beside.swapped ? 1.0 : 0.0, 0.0, true});
        swap_err = std::abs(twice.branch_track.back() - twice.branch_track.front());
        out.push_back({"encircle_double_loop_restores", swap_err, 1e-8, true});
    } catch (const LoopThroughEpError&) {
        out.push_back({"encircle_swaps", 0.0, 1.0, false});
    }

    double omega_err = 0.0;
    for (int i = 0; i < 100; ++i) {
        const GmmParams g = sampler.gmm();
        const double tau = sampler.uniform(-30.0, 30.0);
        const Branch b = i % 2 ? Branch::minus : Branch::plus;
        ModelParams probe = m;
        probe.omega0 = gmm_omega0(g, b);
        probe.omega = omega_for_ep(g, tau, b);
        omega_err = std::max(omega_err, std::abs(detuning(probe) - kI * tau));
    }
    out.push_back({"omega_ep_roundtrip", omega_err, 1e-12, true});
    return out;
}

inline int cmd_verify(const RunConfig& cfg, Streams& s) {
    const auto checks = run_verification(cfg);

    io::Table t;
    t.command = "verify";
    add_model_meta(t, cfg.model);
    t.add_meta("seed", cfg.seed);
    t.add_meta("draws", cfg.verify.draws);
    t.add_meta("cutoff", cfg.verify.cutoff);
    t.add_meta("n_max", cfg.verify.n_max);
    t.add_meta("bio_n_max", cfg.verify.bio_n_max);
    t.add_meta("ep_sector", cfg.verify.ep_sector);
    if (!cfg.verify.inject_fault.empty()) t.add_meta("inject_fault", cfg.verify.inject_fault);
    t.columns = {"check", "value", "comparison", "threshold", "status"};
    std::vector<std::string> failed;
    for (const auto& c : checks) {
        t.rows.push_back({c.name, c.value, c.at_most ? "<=" : ">=", c.threshold, c.pass() ? "PASS" : "FAIL"});
        if (!c.pass()) failed.push_back(c.name);
    }
    t.footer.emplace_back("failed", static_cast<int>(failed.size()));
    emit(cfg, t, s);

    auto& os = summary(cfg, s);
    if (failed.empty()) {
        os << "verify: all " << checks.size() << " checks passed\n";
        return kOk;
    }
    os << "verify: " << failed.size() << " check(s) failed:";
    for (const auto& c : checks) {
        if (!c.pass()) {
            os << ' ' << c.name << " (" << io::format_real(c.value) << (c.at_most ? " > " : " < ") << c.threshold << ")";
        }
    }
    os << '\n';
    return kVerifyFailed;
}

/// Runs cfg.command and maps failures to exit codes.
inline int run(const RunConfig& cfg, Streams& s) {
    try {
        if (cfg.command == "gmm-check") return cmd_gmm_check(cfg, s);
        if (cfg.command == "spectrum") return cmd_spectrum(cfg, s);
        if (cfg.command == "sweep-tau") return cmd_sweep_tau(cfg, s);
        if (cfg.command == "sweep-n") return cmd_sweep_n(cfg, s);
        if (cfg.command == "encircle") return cmd_encircle(cfg, s);
        if (cfg.command == "scan") return cmd_scan(cfg, s);
        if (cfg.command == "verify") return cmd_verify(cfg, s);
        throw UsageError("unknown subcommand '" + cfg.command + "'");
    } catch (const GmmDegenerateError& e) {
        s.err << "error: " << e.what() << '\n';
        return kGmmDegenerate;
    } catch (const LoopThroughEpError& e) {
        s.err << "error: " << e.what() << '\n';
        return kLoopThroughEp;
    } catch (const UsageError& e) {
        s.err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        s.err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace nhjc::cli
