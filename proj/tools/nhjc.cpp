// nhjc.cpp: Command-line entry point: flags and JSON config into a RunConfig
//
// Precedence: built-in defaults < --config file < command-line flags.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nhjc/commands.hpp"

namespace {

using nhjc::cli::RunConfig;

struct Flags {
    std::optional<std::string> config, out, format;
    std::optional<std::uint64_t> seed;
    std::optional<double> hbar;

    std::optional<std::string> omega, omega0, rho, coupling;
    std::optional<double> eps1, eps2, gamma1, gamma2;
    std::optional<std::string> nu0, branch, beta12;

    std::optional<int> n, n_min, n_max, steps, turns, n_tilde;
    std::optional<double> tau, tau_min, tau_max, center, radius, min, max;
    std::optional<std::string> tau_choice, kind, n_values, reading;

    std::optional<int> draws, cutoff, bio_n_max, ep_sector;
    std::optional<std::string> inject_fault;
};

template <typename T>
void set_if(const std::optional<T>& src, T& dst) {
    if (src) dst = *src;
}

void add_model_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--omega", f.omega, "Boson frequency (complex, e.g. 3 or 3-0.5i)");
    sub->add_option("--omega0", f.omega0, "Pseudo-fermion frequency (complex)");
    sub->add_option("--rho", f.rho, "Energy offset (complex)");
    sub->add_option("--coupling", f.coupling, "Coupling constant epsilon (complex)");
}

void add_gmm_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--eps1", f.eps1, "GMM level energy 1");
    sub->add_option("--eps2", f.eps2, "GMM level energy 2");
    sub->add_option("--gamma1", f.gamma1, "GMM decay rate 1 (>= 0)");
    sub->add_option("--gamma2", f.gamma2, "GMM decay rate 2 (>= 0)");
    sub->add_option("--nu0", f.nu0, "GMM interlevel coupling (complex)");
    sub->add_option("--branch", f.branch, "Pseudo-fermion branch: plus or minus");
    sub->add_option("--beta12", f.beta12, "Free normalization of the creation operator (complex, nonzero)");
}

/// Flags given on the command line override config values. Setting any GMM
/// flag makes the GMM block active, starting from zeros unless a config set it.
void apply_flags(const Flags& f, RunConfig& cfg) {
    using nhjc::io::parse_complex;
    namespace cli = nhjc::cli;

    if (f.hbar) cli::check_hbar(*f.hbar);
    set_if(f.out, cfg.out_path);
    if (f.format) cfg.format = cli::parse_format(*f.format);
    set_if(f.seed, cfg.seed);

    if (f.omega) cfg.model.omega = parse_complex(*f.omega);
    if (f.coupling) cfg.model.coupling = parse_complex(*f.coupling);
    if (f.omega0) {
        cfg.model.omega0 = parse_complex(*f.omega0);
        cfg.omega0_manual = true;
    }
    if (f.rho) {
        cfg.model.rho = parse_complex(*f.rho);
        cfg.rho_manual = true;
    }

    if (f.eps1 || f.eps2 || f.gamma1 || f.gamma2 || f.nu0) {
        nhjc::GmmParams g = cfg.gmm.value_or(nhjc::GmmParams{0.0, 0.0, 0.0, 0.0, nhjc::Complex{0.0}});
        set_if(f.eps1, g.eps1);
        set_if(f.eps2, g.eps2);
        set_if(f.gamma1, g.gamma1);
        set_if(f.gamma2, g.gamma2);
        if (f.nu0) g.nu0 = parse_complex(*f.nu0);
        cfg.gmm = g;
    }
    if (f.branch) cfg.branch = cli::parse_branch(*f.branch);
    if (f.beta12) cfg.beta12 = parse_complex(*f.beta12);

    if (cfg.command == "spectrum") {
        set_if(f.n_min, cfg.spectrum.n_min);
        set_if(f.n_max, cfg.spectrum.n_max);
    } else if (cfg.command == "sweep-tau") {
        set_if(f.n, cfg.sweep_tau.n);
        set_if(f.tau_min, cfg.sweep_tau.tau_min);
        set_if(f.tau_max, cfg.sweep_tau.tau_max);
        set_if(f.steps, cfg.sweep_tau.steps);
    } else if (cfg.command == "sweep-n") {
        set_if(f.tau, cfg.sweep_n.tau);
        if (f.tau_choice) cfg.sweep_n.convention = cli::parse_convention(*f.tau_choice);
        set_if(f.n_min, cfg.sweep_n.n_min);
        set_if(f.n_max, cfg.sweep_n.n_max);
    } else if (cfg.command == "encircle") {
        set_if(f.n, cfg.encircle.n);
        set_if(f.center, cfg.encircle.center);
        set_if(f.radius, cfg.encircle.radius);
        set_if(f.steps, cfg.encircle.steps);
        set_if(f.turns, cfg.encircle.turns);
    } else if (cfg.command == "scan") {
        if (f.kind) cfg.scan.kind = cli::parse_scan_kind(*f.kind);
        if (f.min) cfg.scan.min = *f.min;
        if (f.max) cfg.scan.max = *f.max;
        set_if(f.steps, cfg.scan.steps);
        set_if(f.n_tilde, cfg.scan.n_tilde);
        if (f.n_values) cfg.scan.n_values = cli::parse_int_list(*f.n_values);
        if (f.reading) cfg.scan.reading = cli::parse_reading(*f.reading);
    } else if (cfg.command == "verify") {
        set_if(f.draws, cfg.verify.draws);
        set_if(f.cutoff, cfg.verify.cutoff);
        set_if(f.n_max, cfg.verify.n_max);
        set_if(f.bio_n_max, cfg.verify.bio_n_max);
        set_if(f.ep_sector, cfg.verify.ep_sector);
        set_if(f.inject_fault, cfg.verify.inject_fault);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nhjc: spectrum and exceptional points of the non-Hermitian Jaynes-Cummings model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "nhjc 0.1.0");
    Flags f;

    app.add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", f.out, "Output file (default: standard output)");
    app.add_option("--format", f.format, "Output format: csv or json");
    app.add_option("--seed", f.seed, "Seed for random parameter draws");
    app.add_option("--hbar", f.hbar, "Reduced Planck constant (only 1 is accepted)");

    auto* gmm_check = app.add_subcommand("gmm-check", "Pseudo-fermion representation of the gain-loss two-level block");
    add_gmm_flags(gmm_check, f);

    auto* spectrum = app.add_subcommand("spectrum", "Closed-form eigenvalues and eigenvector coefficients per sector");
    add_model_flags(spectrum, f);
    add_gmm_flags(spectrum, f);
    spectrum->add_option("--n-min", f.n_min, "First sector");
    spectrum->add_option("--n-max", f.n_max, "Last sector");

    auto* sweep_tau = app.add_subcommand("sweep-tau", "Sector eigenvalues along omega0 = omega + i*tau");
    add_model_flags(sweep_tau, f);
    add_gmm_flags(sweep_tau, f);
    sweep_tau->add_option("--n", f.n, "Sector index");
    sweep_tau->add_option("--tau-min", f.tau_min, "Lower tau");
    sweep_tau->add_option("--tau-max", f.tau_max, "Upper tau");
    sweep_tau->add_option("--steps", f.steps, "Number of samples");

    auto* sweep_n = app.add_subcommand("sweep-n", "Sector eigenvalues against n at fixed tau");
    add_model_flags(sweep_n, f);
    add_gmm_flags(sweep_n, f);
    sweep_n->add_option("--tau", f.tau, "Imaginary detuning");
    sweep_n->add_option("--tau-choice", f.tau_choice, "minus_i (omega0 = omega + i*tau) or plus_i (omega0 = omega - i*tau)");
    sweep_n->add_option("--n-min", f.n_min, "First sector");
    sweep_n->add_option("--n-max", f.n_max, "Last sector");

    auto* encircle = app.add_subcommand("encircle", "Track one eigenvalue around a loop in complex tau");
    add_model_flags(encircle, f);
    add_gmm_flags(encircle, f);
    encircle->add_option("--n", f.n, "Sector index");
    encircle->add_option("--center", f.center, "Loop center (real tau)");
    encircle->add_option("--radius", f.radius, "Loop radius");
    encircle->add_option("--steps", f.steps, "Steps per turn");
    encircle->add_option("--turns", f.turns, "Number of turns");

    auto* scan = app.add_subcommand("scan", "Complex-plane eigenvalue loci over a GMM parameter");
    scan->add_option("--coupling", f.coupling, "Coupling constant epsilon (complex)");
    add_gmm_flags(scan, f);
    scan->add_option("--kind", f.kind, "Scanned parameter: d_eps, d_gamma or nu0");
    scan->add_option("--min", f.min, "Lower parameter value");
    scan->add_option("--max", f.max, "Upper parameter value");
    scan->add_option("--steps", f.steps, "Number of parameter values");
    scan->add_option("--n-tilde", f.n_tilde, "Sector placed at the EP by the parameter closure");
    scan->add_option("--n-values", f.n_values, "Comma-separated sector list (default: n-tilde +- 4)");
    scan->add_option("--reading", f.reading, "d_gamma term reading: squared_product or product_of_square");

    auto* verify = app.add_subcommand("verify", "Run the oracle suite; exit 4 when any check fails");
    add_model_flags(verify, f);
    verify->add_option("--draws", f.draws, "Random parameter draws for the matrix oracle");
    verify->add_option("--cutoff", f.cutoff, "Boson Fock cutoff M");
    verify->add_option("--n-max", f.n_max, "Largest sector checked against the matrix oracle");
    verify->add_option("--bio-n-max", f.bio_n_max, "Largest level in the biorthogonality check");
    verify->add_option("--ep-sector", f.ep_sector, "Sector used for the EP checks");
    verify->add_option("--inject-fault", f.inject_fault, "Negative control: lambda-sign");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nhjc::cli::kUsage;
    }

    RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    nhjc::cli::Streams streams{std::cout, std::cerr};
    try {
        if (f.config) nhjc::cli::load_config_file(*f.config, cfg);
        apply_flags(f, cfg);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return nhjc::cli::kUsage;
    }
    return nhjc::cli::run(cfg, streams);
}
