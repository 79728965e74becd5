// ep_analysis.hpp: Parameter sweeps, EP location, encircling monodromy and plane scans

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "nhjc/gmm.hpp"
#include "nhjc/spectrum.hpp"

namespace nhjc {

enum class Regime { equal_real, equal_imag, ep, mixed };

inline constexpr std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::equal_real: return "equal_real";
        case Regime::equal_imag: return "equal_imag";
        case Regime::ep: return "ep";
        case Regime::mixed: return "mixed";
    }
    return "mixed";
}

inline constexpr double kEpGapTol = 1e-8;
inline constexpr double kEqualPartTol = 1e-10;

inline Regime classify(Complex e_plus, Complex e_minus, double gap_tol = kEpGapTol, double equal_tol = kEqualPartTol) {
    const Complex diff = e_plus - e_minus;
    if (std::abs(diff) <= gap_tol) return Regime::ep;
    if (std::abs(diff.real()) <= equal_tol) return Regime::equal_real;
    if (std::abs(diff.imag()) <= equal_tol) return Regime::equal_imag;
    return Regime::mixed;
}

/// Both sector energies (E⁺, E⁻).
inline std::pair<Complex, Complex> sector_pair(const ModelParams& p, int n) {
    return {sector_eigen(p, n, Branch::plus).energy, sector_eigen(p, n, Branch::minus).energy};
}

/// Sample i of an evenly spaced grid; exact at both endpoints.
inline double grid_point(double lo, double hi, int i, int steps) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

// ---------------------------------------------------------------------------
// τ sweep: ω₀ = ω + iτ, so δ = iτ
// ---------------------------------------------------------------------------

struct TauSweep {
    int n{1};
    ModelParams base;
    std::vector<double> tau_values;
    std::vector<Complex> e_plus, e_minus;
    std::vector<Regime> regime;
};

inline ModelParams at_tau(ModelParams base, Complex tau) {
    base.omega0 = base.omega + kI * tau / ModelParams::hbar;
    return base;
}

inline TauSweep sweep_tau(const ModelParams& base, int n, double tau_min, double tau_max, int steps) {
    if (steps < 2) throw std::invalid_argument("sweep_tau: steps must be >= 2");
    if (!(tau_min < tau_max)) throw std::invalid_argument("sweep_tau: tau_min must be below tau_max");
    if (n < 1) throw std::invalid_argument("sweep_tau: n must be >= 1");

    TauSweep out;
    out.n = n;
    out.base = base;
    const auto count = static_cast<std::size_t>(steps);
    out.tau_values.reserve(count);
    out.e_plus.reserve(count);
    out.e_minus.reserve(count);
    out.regime.reserve(count);
    for (int i = 0; i < steps; ++i) {
        const double tau = grid_point(tau_min, tau_max, i, steps);
        const auto [ep, em] = sector_pair(at_tau(base, tau), n);
        out.tau_values.push_back(tau);
        out.e_plus.push_back(ep);
        out.e_minus.push_back(em);
        out.regime.push_back(classify(ep, em));
    }
    return out;
}

/// EP locations along a τ sweep: grid samples where the radicand vanishes,
/// plus bisection-refined roots between samples where it changes sign.
inline std::vector<double> locate_eps(const TauSweep& sweep, double tol = 1e-13) {
    const auto radicand = [&](double tau) { return sector_discriminant(at_tau(sweep.base, tau), sweep.n).real(); };
    std::vector<double> found;
    const auto& taus = sweep.tau_values;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double fi = radicand(taus[i]);
        if (fi == 0.0) {
            found.push_back(taus[i]);
            continue;
        }
        if (i + 1 == taus.size()) break;
        const double fj = radicand(taus[i + 1]);
        if (fj == 0.0 || (fi > 0.0) == (fj > 0.0)) continue;
        double lo = taus[i], hi = taus[i + 1];
        double flo = fi;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double fm = radicand(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        found.push_back(0.5 * (lo + hi));
    }
    return found;
}

// ---------------------------------------------------------------------------
// Sector sweep at fixed τ
// ---------------------------------------------------------------------------

/// How τ relates to the detuning: plus_i means τ = i(ω₀ − ω), minus_i means τ = −i(ω₀ − ω).
enum class TauConvention { plus_i, minus_i };

inline constexpr std::string_view to_string(TauConvention c) { return c == TauConvention::plus_i ? "plus_i" : "minus_i"; }

struct SectorRow {
    int n{1};
    Complex e_plus, e_minus;
    double gap{0.0};
};

struct SectorSweep {
    double tau{0.0};
    TauConvention convention{TauConvention::minus_i};
    ModelParams params;
    std::vector<SectorRow> rows;
    int argmin_n{0};
    double min_gap{std::numeric_limits<double>::infinity()};
};

inline ModelParams with_tau(ModelParams base, double tau, TauConvention convention) {
    return at_tau(base, convention == TauConvention::minus_i ? Complex{tau} : Complex{-tau});
}

inline SectorSweep sweep_n(const ModelParams& base, double tau, TauConvention convention, int n_min, int n_max) {
    if (n_min < 1) throw std::invalid_argument("sweep_n: n_min must be >= 1");
    if (n_max < n_min) throw std::invalid_argument("sweep_n: n_max must be >= n_min");
    SectorSweep out;
    out.tau = tau;
    out.convention = convention;
    out.params = with_tau(base, tau, convention);
    for (int n = n_min; n <= n_max; ++n) {
        const auto [ep, em] = sector_pair(out.params, n);
        const double gap = std::abs(ep - em);
        out.rows.push_back({n, ep, em, gap});
        if (gap < out.min_gap) {
            out.min_gap = gap;
            out.argmin_n = n;
        }
    }
    return out;
}

/// True when the sector radicand δ² + 4|ε|²n is zero up to the rounding of
/// its two terms. The gap is the square root of that radicand, so an EP set up
/// through rounded parameters can show a gap far above its radicand error.
inline bool radicand_at_roundoff(const ModelParams& p, int n, double ulps = 64.0) {
    const Complex d = detuning(p);
    const double scale = std::norm(d) + 4.0 * coupling_sq(p) * static_cast<double>(n);
    return std::abs(sector_discriminant(p, n)) <= ulps * std::numeric_limits<double>::epsilon() * scale;
}

// ---------------------------------------------------------------------------
// Encircling: τ(θ) = center + r·e^{iθ}, eigenvalue tracked by continuation
// ---------------------------------------------------------------------------

class LoopThroughEpError : public std::runtime_error {
public:
    LoopThroughEpError() : std::runtime_error("loop passes through EP; change radius or steps") {}
};

struct EncircleResult {
    int n{1};
    double center{0.0};
    double radius{0.0};
    int steps{0};
    int turns{1};
    std::vector<double> theta;
    std::vector<Complex> tau;
    std::vector<Complex> branch_track;
    std::vector<Complex> other;
    bool swapped{false};
};

namespace detail {

struct LoopTracker {
    const ModelParams& base;
    int n;
    double center;
    double radius;

    Complex tau_at(double theta) const { return center + radius * std::exp(kI * theta); }

    std::pair<Complex, Complex> pair_at(double theta) const { return sector_pair(at_tau(base, tau_at(theta)), n); }

    // Continues `prev` from theta_a to theta_b; returns (tracked, other) at theta_b.
    std::pair<Complex, Complex> advance(double theta_a, double theta_b, Complex prev, bool endpoint, int depth = 0) const {
        const ModelParams p = at_tau(base, tau_at(theta_b));
        const auto [e1, e2] = sector_pair(p, n);
        const double gap = std::abs(e1 - e2);
        if (gap < 1e-14 || radicand_at_roundoff(p, n)) {
            if (!endpoint) throw LoopThroughEpError();
            return {e1, e2};
        }
        const double d1 = std::abs(e1 - prev);
        const double d2 = std::abs(e2 - prev);
        if (std::min(d1, d2) > 0.5 * gap && depth < 40) {
            const double mid = 0.5 * (theta_a + theta_b);
            const auto half = advance(theta_a, mid, prev, false, depth + 1);
            return advance(mid, theta_b, half.first, endpoint, depth + 1);
        }
        return d1 <= d2 ? std::pair{e1, e2} : std::pair{e2, e1};
    }
};

}  // namespace detail

inline EncircleResult encircle(const ModelParams& base, int n, double center, double radius, int steps, int turns = 1) {
    if (steps < 8) throw std::invalid_argument("encircle: steps must be >= 8");
    if (!(radius > 0.0)) throw std::invalid_argument("encircle: radius must be positive");
    if (turns < 1) throw std::invalid_argument("encircle: turns must be >= 1");
    if (n < 1) throw std::invalid_argument("encircle: n must be >= 1");

    const detail::LoopTracker tracker{base, n, center, radius};
    EncircleResult out;
    out.n = n;
    out.center = center;
    out.radius = radius;
    out.steps = steps;
    out.turns = turns;

    const int total = steps * turns;
    const double span = 2.0 * std::numbers::pi * static_cast<double>(turns);
    const auto [start_plus, start_minus] = tracker.pair_at(0.0);

    Complex track = start_plus;
    Complex other = start_minus;
    for (int j = 0; j <= total; ++j) {
        const double theta = span * static_cast<double>(j) / static_cast<double>(total);
        if (j > 0) {
            const double prev_theta = span * static_cast<double>(j - 1) / static_cast<double>(total);
            std::tie(track, other) = tracker.advance(prev_theta, theta, track, j == total);
        }
        out.theta.push_back(theta);
        out.tau.push_back(tracker.tau_at(theta));
        out.branch_track.push_back(track);
        out.other.push_back(other);
    }
    out.swapped = std::abs(track - start_minus) < std::abs(track - start_plus);
    return out;
}

// ---------------------------------------------------------------------------
// Complex-plane scans
// ---------------------------------------------------------------------------

enum class ScanKind { d_eps, d_gamma, nu0 };

inline constexpr std::string_view to_string(ScanKind k) {
    switch (k) {
        case ScanKind::d_eps: return "d_eps";
        case ScanKind::d_gamma: return "d_gamma";
        case ScanKind::nu0: return "nu0";
    }
    return "d_eps";
}

/// Model and GMM parameters at one scanned value.
struct ScanPoint {
    ModelParams model;
    GmmParams gmm;
};

using ScanClosure = std::function<ScanPoint(double value, const GmmParams& base)>;

struct ScanRequest {
    ScanKind kind{ScanKind::d_eps};
    std::vector<double> values;
    ScanClosure closure;
    double gap_tol{kEpGapTol};
};

struct ScanRow {
    double param_value{0.0};
    int n{1};
    Complex e_plus, e_minus;
    double gap{0.0};
    bool is_ep{false};
    bool gmm_degenerate{false};
};

struct PlaneScan {
    ScanKind scan_kind{ScanKind::d_eps};
    std::vector<ScanRow> grid;
    std::vector<std::pair<double, int>> ep_markers;
};

inline PlaneScan scan_plane(const ScanRequest& request, const GmmParams& gmm_base, std::span<const int> n_values) {
    if (!request.closure) throw std::invalid_argument("scan_plane: missing parameter closure");
    for (double v : request.values)
        if (!std::isfinite(v)) throw std::invalid_argument("scan_plane: scan values must be finite");
    for (int n : n_values)
        if (n < 1) throw std::invalid_argument("scan_plane: sector indices must be >= 1");

    PlaneScan out;
    out.scan_kind = request.kind;
    for (double value : request.values) {
        const ScanPoint pt = request.closure(value, gmm_base);
        const bool degenerate = gmm_is_degenerate_relative(pt.gmm);
        for (int n : n_values) {
            const auto [ep, em] = sector_pair(pt.model, n);
            ScanRow row{value, n, ep, em, std::abs(ep - em), false, degenerate};
            row.is_ep = row.gap <= request.gap_tol || radicand_at_roundoff(pt.model, n);
            if (row.is_ep) out.ep_markers.emplace_back(value, n);
            out.grid.push_back(row);
        }
    }
    return out;
}

/// Base GMM shared by the three scan closures: ε₁ = ε₂ = 0.5, Γ₁ = 0, Γ₂ = 1, ν₀ = 1.
inline GmmParams default_scan_gmm() { return {0.5, 0.5, 0.0, 1.0, Complex{1.0}}; }

/// Δε scan. ε₂ = ε₁ + Δε,
///   ω₀ = sqrt(4ν₀² + (Δε + iΔΓ)²),  ρ = ½(ε̃ − iΓ + ω₀),  ω = ω₀ − 2i|ε|√ñ,
/// which puts δ = iτ⁺ at sector ñ for every Δε.
inline ScanClosure delta_eps_closure(int n_tilde, Complex coupling = 1.0) {
    return [n_tilde, coupling](double value, const GmmParams& base) {
        ScanPoint pt;
        pt.gmm = base;
        pt.gmm.eps2 = base.eps1 + value;
        const auto d = derived_quantities(pt.gmm);
        const Complex shifted{value, d.d_gamma};
        pt.model.coupling = coupling;
        pt.model.omega0 = principal_sqrt(4.0 * base.nu0 * base.nu0 + shifted * shifted);
        pt.model.rho = 0.5 * (Complex{d.t_eps, -d.t_gamma} + pt.model.omega0);
        pt.model.omega = pt.model.omega0 - kI * ep_tau(coupling, n_tilde).second;
        return pt;
    };
}

/// Two readings of the ΔΓ term inside the ν₀ closure of the ΔΓ scan.
enum class GammaTermReading { squared_product, product_of_square };  // (iΔΓ)² vs i·ΔΓ²

/// ΔΓ scan. Γ₂ = Γ₁ + ΔΓ, ω = 1 + i,
///   ν₀ = ½·sqrt((1 + i − 2i|ε|√ñ)² − q),  q = (iΔΓ)² or i·ΔΓ²,
/// and ω₀, ρ follow from the GMM (plus root). With q = (iΔΓ)² this gives
/// ω₀ = 1 + i − 2i|ε|√ñ, i.e. δ = iτ⁻ at sector ñ.
inline ScanClosure delta_gamma_closure(int n_tilde, GammaTermReading reading = GammaTermReading::squared_product,
                                       Complex coupling = 1.0) {
    return [n_tilde, reading, coupling](double value, const GmmParams& base) {
        ScanPoint pt;
        pt.gmm = base;
        pt.gmm.gamma2 = base.gamma1 + value;
        const Complex omega{1.0, 1.0};
        const Complex shifted = omega - kI * ep_tau(coupling, n_tilde).second;
        const Complex q = reading == GammaTermReading::squared_product ? (kI * value) * (kI * value)
                                                                       : kI * value * value;
        pt.gmm.nu0 = 0.5 * principal_sqrt(shifted * shifted - q);
        const auto d = derived_quantities(pt.gmm);
        pt.model.coupling = coupling;
        pt.model.omega = omega;
        pt.model.omega0 = gmm_omega0(pt.gmm, Branch::plus);
        pt.model.rho = 0.5 * (Complex{d.t_eps, -d.t_gamma} + pt.model.omega0);
        return pt;
    };
}

/// ν₀ scan (reconstructed parameterization). ν₀ = value,
///   ω₀ = sqrt(4ν₀² + (−Δε + iΔΓ)²),  ρ = ½(ε̃ − iΓ + ω₀),
///   ω = sqrt(4 + (Δε + iΔΓ)²) − 2i|ε|√ñ,
/// so the EP of sector ñ sits at ν₀ = 1.
inline ScanClosure nu0_closure(int n_tilde, Complex coupling = 1.0) {
    return [n_tilde, coupling](double value, const GmmParams& base) {
        ScanPoint pt;
        pt.gmm = base;
        pt.gmm.nu0 = value;
        const auto d = derived_quantities(pt.gmm);
        const Complex ref_shift{d.d_eps, d.d_gamma};
        pt.model.coupling = coupling;
        pt.model.omega0 = gmm_omega0(pt.gmm, Branch::plus);
        pt.model.rho = 0.5 * (Complex{d.t_eps, -d.t_gamma} + pt.model.omega0);
        pt.model.omega = principal_sqrt(4.0 + ref_shift * ref_shift) - kI * ep_tau(coupling, n_tilde).second;
        return pt;
    };
}

}  // namespace nhjc
