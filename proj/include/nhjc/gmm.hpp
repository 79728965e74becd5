// gmm.hpp: Decaying two-level Hamiltonian and its double pseudo-fermion representation

#pragma once

#include <cmath>
#include <stdexcept>
#include <string_view>

#include "nhjc/linalg.hpp"

namespace nhjc {

enum class Branch { plus, minus };

inline constexpr double sign_of(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }
inline constexpr std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

/// Inputs of the two-level decaying system (ħ = 1).
struct GmmParams {
    double eps1{0.0};    // level energy ε₁
    double eps2{0.0};    // level energy ε₂
    double gamma1{0.0};  // decay rate Γ₁ ≥ 0
    double gamma2{0.0};  // decay rate Γ₂ ≥ 0
    Complex nu0{1.0};    // inter-level coupling ν₀
};

struct GmmDerived {
    double d_eps{0.0};    // ε₂ − ε₁
    double d_gamma{0.0};  // Γ₂ − Γ₁
    double t_eps{0.0};    // ε₂ + ε₁
    double t_gamma{0.0};  // Γ₂ + Γ₁
};

/// Raised when the two GMM levels coalesce and no pseudo-fermion pair exists.
class GmmDegenerateError : public std::runtime_error {
public:
    GmmDegenerateError()
        : std::runtime_error("GMM exceptional point: pseudo-fermion representation does not exist") {}
};

/// One branch of the pseudo-fermion representation H_GMM = ω₀·C·c + ρ·1.
///
/// alpha_ratio and beta_ratio are the row ratios α₁₁/α₁₂ of c and β₁₁/β₁₂ of C.
/// The branch label follows the sign of ω₀ = ±sqrt((−Δε+iΔΓ)² + 4ν₀²); with that
/// sign fixed, the identity above forces ρ = ½(ε̃ − iΓ − ω₀), i.e. the ρ, α, β
/// of the opposite-sign root.
struct PseudoFermionRep {
    Branch branch{Branch::plus};
    Complex alpha11, alpha12, beta11, beta12;
    Complex alpha_ratio, beta_ratio;
    Complex gamma_pm;
    Complex rho;
    Complex omega0;
    CMatrix c_mat, C_mat;

    /// Pseudo-fermion number operator N_f = C·c.
    CMatrix number_op() const { return mat_mul(C_mat, c_mat); }
};

inline void validate(const GmmParams& p) {
    if (!std::isfinite(p.eps1) || !std::isfinite(p.eps2) || !std::isfinite(p.gamma1) ||
        !std::isfinite(p.gamma2) || !std::isfinite(p.nu0.real()) || !std::isfinite(p.nu0.imag())) {
        throw std::invalid_argument("GMM parameters must be finite");
    }
    if (p.gamma1 < 0.0 || p.gamma2 < 0.0) throw std::invalid_argument("GMM decay rates must be non-negative");
}

inline CMatrix build_gmm(const GmmParams& p) {
    return CMatrix{{Complex{p.eps1, -p.gamma1}, p.nu0}, {p.nu0, Complex{p.eps2, -p.gamma2}}};
}

inline GmmDerived derived_quantities(const GmmParams& p) {
    return {p.eps2 - p.eps1, p.gamma2 - p.gamma1, p.eps2 + p.eps1, p.gamma2 + p.gamma1};
}

/// −Δε + iΔΓ
inline Complex gmm_asymmetry(const GmmParams& p) {
    const auto d = derived_quantities(p);
    return {-d.d_eps, d.d_gamma};
}

/// (−Δε + iΔΓ)² + 4ν₀²; vanishes exactly at the GMM exceptional point.
inline Complex gmm_discriminant(const GmmParams& p) {
    const Complex a = gmm_asymmetry(p);
    return a * a + 4.0 * p.nu0 * p.nu0;
}

/// ħω₀ for the requested branch: ±sqrt(4ν₀² + (−Δε+iΔΓ)²), principal root.
inline Complex gmm_omega0(const GmmParams& p, Branch branch) {
    return sign_of(branch) * principal_sqrt(gmm_discriminant(p));
}

inline bool gmm_is_degenerate(const GmmParams& p, double tol) { return std::abs(gmm_discriminant(p)) <= tol; }

/// Scale-free degeneracy test: |disc| ≤ rel_tol · 4|ν₀|².
inline bool gmm_is_degenerate_relative(const GmmParams& p, double rel_tol = 1e-10) {
    return std::abs(gmm_discriminant(p)) <= rel_tol * 4.0 * std::norm(p.nu0);
}

namespace detail {
inline CMatrix rank_one_traceless(Complex e11, Complex e12) {
    return CMatrix{{e11, e12}, {-e11 * e11 / e12, -e11}};
}
}  // namespace detail

inline PseudoFermionRep pf_representation(const GmmParams& p, Branch branch, Complex beta12_free = 1.0) {
    validate(p);
    if (p.nu0 == Complex{}) throw std::invalid_argument("pf_representation: nu0 must be nonzero");
    if (beta12_free == Complex{}) throw std::invalid_argument("pf_representation: beta12 must be nonzero");
    if (gmm_is_degenerate_relative(p)) throw GmmDegenerateError();

    const auto d = derived_quantities(p);
    const Complex disc = gmm_discriminant(p);
    const Complex asym = gmm_asymmetry(p);
    const Complex omega0 = gmm_omega0(p, branch);

    PseudoFermionRep rep;
    rep.branch = branch;
    rep.omega0 = omega0;
    rep.rho = 0.5 * (Complex{d.t_eps, -d.t_gamma} - omega0);
    rep.alpha_ratio = (asym + omega0) / (2.0 * p.nu0);
    rep.beta_ratio = (asym - omega0) / (2.0 * p.nu0);

    // existence condition −γ² = α₁₂β₁₂ consumes one free parameter
    rep.beta12 = beta12_free;
    rep.alpha12 = (-p.nu0 * p.nu0 / disc) / beta12_free;
    rep.alpha11 = rep.alpha_ratio * rep.alpha12;
    rep.beta11 = rep.beta_ratio * rep.beta12;
    rep.gamma_pm = rep.alpha12 * rep.beta11 - rep.alpha11 * rep.beta12;

    rep.c_mat = detail::rank_one_traceless(rep.alpha11, rep.alpha12);
    rep.C_mat = detail::rank_one_traceless(rep.beta11, rep.beta12);
    return rep;
}

/// Max entry modulus of H_GMM − (ω₀·C·c + ρ·1) and of {c, C} − 1.
inline double verify_representation(const GmmParams& p, const PseudoFermionRep& rep) {
    const auto id = CMatrix::identity(2);
    const CMatrix rebuilt = rep.omega0 * rep.number_op() + rep.rho * id;
    const double h_err = (build_gmm(p) - rebuilt).max_abs();
    const double acomm_err = (anticommutator(rep.c_mat, rep.C_mat) - id).max_abs();
    return std::max(h_err, acomm_err);
}

}  // namespace nhjc
