// spectrum.hpp: Closed-form spectrum of the non-Hermitian Jaynes-Cummings Hamiltonian
//
//   H = H_GMM + ħω·D·d + ε·d·C + ε*·D·c,   H_GMM = ħω₀·C·c + ρ
//
// Total excitation N = D·d + C·c commutes with H, so every sector n ≥ 1 is the
// two-dimensional span {Φ_{n−1,1}, Φ_{n,0}} and the spectrum follows from a 2×2
// quadratic. All roots are principal (see principal_sqrt).

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "nhjc/gmm.hpp"
#include "nhjc/linalg.hpp"

namespace nhjc {

struct ModelParams {
    static constexpr double hbar = 1.0;

    Complex omega{3.0};          // boson frequency ω (complex allowed)
    Complex omega0{3.0, 20.0};   // ħω₀
    Complex rho{1.0};            // level offset ρ
    Complex coupling{1.0};       // boson-fermion coupling ε
};

/// Copies ω₀ and ρ of a pseudo-fermion representation into the model.
inline ModelParams with_representation(ModelParams p, const PseudoFermionRep& rep) {
    p.omega0 = rep.omega0;
    p.rho = rep.rho;
    return p;
}

struct SectorEigen {
    int n{1};
    Branch branch{Branch::plus};
    Complex energy;  // E_n^±
    Complex lambda;  // right-vector mixing: Φ_{n−1,1} + λ·Φ_{n,0}
    Complex xi;      // left-vector mixing:  Ψ_{n−1,1} + ξ·Ψ_{n,0}
};

struct EpPoint {
    int n{1};
    double tau{0.0};
    Branch sign{Branch::plus};
    Complex coalesced_energy;
};

/// δ = ħ(ω₀ − ω)
inline Complex detuning(const ModelParams& p) { return ModelParams::hbar * (p.omega0 - p.omega); }

/// |ε|² evaluated as ε·conj(ε).
inline double coupling_sq(const ModelParams& p) { return (p.coupling * std::conj(p.coupling)).real(); }

/// δ² + 4|ε|²·m, the radicand of the sector-m splitting.
inline Complex sector_discriminant(const ModelParams& p, int m) {
    const Complex d = detuning(p);
    return d * d + 4.0 * coupling_sq(p) * static_cast<double>(m);
}

/// True when the sector radicand lies on the negative real axis, where the
/// principal root is evaluated by its limit from above.
inline bool on_branch_cut(const ModelParams& p, int n) {
    const Complex z = sector_discriminant(p, n);
    return z.imag() == 0.0 && z.real() < 0.0;
}

/// Sector centre ħω(n−½) + ħω₀/2 + ρ, the value both levels coalesce to at an EP.
inline Complex sector_center(const ModelParams& p, int n) {
    const double h = ModelParams::hbar;
    return h * p.omega * (static_cast<double>(n) - 0.5) + h * p.omega0 / 2.0 + p.rho;
}

/// E_{n,k} for n ≥ 0, k ∈ {0,1}. The vacuum level (n = k = 0) uses the root
/// −δ, which gives its exact value ρ; every other level uses the principal root.
inline Complex energy_nk(const ModelParams& p, int n, int k) {
    if (n < 0) throw std::invalid_argument("energy_nk: n must be non-negative");
    if (k != 0 && k != 1) throw std::invalid_argument("energy_nk: k must be 0 or 1");
    const double h = ModelParams::hbar;
    const Complex root = (n + k == 0) ? -detuning(p) : principal_sqrt(sector_discriminant(p, n + k));
    return h * p.omega * static_cast<double>(n) + h * p.omega0 / 2.0 + p.rho +
           (h * p.omega - root) * (static_cast<double>(k) - 0.5);
}

/// Closed-form eigendata of sector n. λ pairs with the same ± as the energy.
/// ξ uses conj of the same root, so that H†(Ψ_{n−1,1} + ξΨ_{n,0}) = conj(E)(…)
/// holds on the branch cut as well; off the cut this is the principal root of
/// (δ*)² + 4|ε|²n.
inline SectorEigen sector_eigen(const ModelParams& p, int n, Branch branch) {
    if (n < 1) throw std::invalid_argument("ground sector has a single level");
    if (p.coupling == Complex{}) throw std::invalid_argument("sector_eigen: coupling must be nonzero");
    const double s = sign_of(branch);
    const Complex delta = detuning(p);
    const Complex root = principal_sqrt(sector_discriminant(p, n));
    const Complex denom = 2.0 * p.coupling * std::sqrt(static_cast<double>(n));

    SectorEigen out;
    out.n = n;
    out.branch = branch;
    out.energy = sector_center(p, n) + s * root / 2.0;
    out.lambda = (-delta + s * root) / denom;
    out.xi = (-std::conj(delta) + s * std::conj(root)) / denom;
    return out;
}

/// (τ⁻, τ⁺) = (−2|ε|√n, +2|ε|√n)
inline std::pair<double, double> ep_tau(Complex coupling, int n) {
    if (n < 1) throw std::invalid_argument("ep_tau: n must be >= 1");
    const double t = 2.0 * std::abs(coupling) * std::sqrt(static_cast<double>(n));
    return {-t, t};
}

/// EP of sector n reached by setting ω₀ = ω + iτ^sign.
inline EpPoint ep_point(ModelParams base, int n, Branch sign) {
    const auto [tm, tp] = ep_tau(base.coupling, n);
    EpPoint ep;
    ep.n = n;
    ep.sign = sign;
    ep.tau = sign == Branch::plus ? tp : tm;
    base.omega0 = base.omega + kI * ep.tau;
    ep.coalesced_energy = sector_center(base, n);
    return ep;
}

/// Unnormalized biorthogonal pairing 1 + conj(λ)·ξ of one sector eigenvector
/// with its adjoint partner; it vanishes at an exceptional point.
inline Complex self_overlap(const ModelParams& p, int n, Branch branch) {
    const auto se = sector_eigen(p, n, branch);
    return 1.0 + std::conj(se.lambda) * se.xi;
}

/// ħω± = ±sqrt(4ν₀² + (−Δε+iΔΓ)²) − iτ: the boson frequency that yields
/// detuning iτ when ω₀ is taken from the same GMM branch.
inline Complex omega_for_ep(const GmmParams& gmm, double tau, Branch sign) {
    return (gmm_omega0(gmm, sign) - kI * tau) / ModelParams::hbar;
}

}  // namespace nhjc
