// fock_oracle.hpp: Truncated-Fock matrix realization of H used to check the closed forms
//
// The pseudo-boson pair is realized by the standard ladder (d = a, D = a†) on
// levels 0..M, so the boson ladders of both families are plain Fock states and
// all non-Hermiticity sits in the 2×2 pseudo-fermion pair (c, C) and in H_GMM.
// Basis ordering is boson-major: index = 2·m + f.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nhjc/gmm.hpp"
#include "nhjc/linalg.hpp"
#include "nhjc/spectrum.hpp"

namespace nhjc {

class CutoffError : public std::runtime_error {
public:
    CutoffError() : std::runtime_error("cutoff exceeded") {}
};

class VacuaError : public std::runtime_error {
public:
    VacuaError() : std::runtime_error("fermionic vacua self-orthogonal (GMM EP)") {}
};

enum class Family { Phi, Psi };

struct TruncatedModel {
    int cutoff{0};
    CMatrix d_mat, D_mat;
    CMatrix c_mat, C_mat;
    CMatrix h_gmm;
    CMatrix h_full;
    CMatrix h_adjoint;
    ModelParams params;
    std::optional<PseudoFermionRep> rep;

    std::size_t dim() const { return h_full.rows(); }
};

struct LadderState {
    int n{0};
    int k{0};
    Family family{Family::Phi};
    CVector vec;
};

/// Boson lowering/raising pair on Fock levels 0..M.
inline std::pair<CMatrix, CMatrix> build_boson_ops(int M) {
    if (M < 2) throw std::invalid_argument("build_boson_ops: cutoff must be >= 2");
    const auto size = static_cast<std::size_t>(M) + 1;
    CMatrix d(size, size);
    for (std::size_t m = 1; m < size; ++m) d(m - 1, m) = std::sqrt(static_cast<double>(m));
    return {d, d.transpose()};
}

/// Assembles h = 1_b⊗H_GMM + ħω·(D·d)⊗1_f + ε·d⊗C + ε*·D⊗c from explicit
/// fermionic matrices.
inline TruncatedModel build_full_h(const ModelParams& p, const CMatrix& h_gmm, const CMatrix& c_mat,
                                   const CMatrix& C_mat, int M) {
    auto [d, D] = build_boson_ops(M);
    const auto id_b = CMatrix::identity(d.rows());
    const auto id_f = CMatrix::identity(2);

    TruncatedModel tm;
    tm.cutoff = M;
    tm.params = p;
    tm.c_mat = c_mat;
    tm.C_mat = C_mat;
    tm.h_gmm = h_gmm;
    tm.h_full = kron(id_b, h_gmm) + (ModelParams::hbar * p.omega) * kron(mat_mul(D, d), id_f) +
                p.coupling * kron(d, C_mat) + std::conj(p.coupling) * kron(D, c_mat);
    tm.h_adjoint = tm.h_full.adjoint();
    tm.d_mat = std::move(d);
    tm.D_mat = std::move(D);
    return tm;
}

namespace detail {
inline bool close(Complex a, Complex b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

inline void require_consistent(const ModelParams& p, const PseudoFermionRep& rep) {
    if (!close(p.omega0, rep.omega0) || !close(p.rho, rep.rho)) {
        throw std::invalid_argument("inconsistent parameters");
    }
}
}  // namespace detail

/// Uses H_GMM = ħω₀·C·c + ρ taken from the representation itself.
inline TruncatedModel build_full_h(const ModelParams& p, const PseudoFermionRep& rep, int M) {
    detail::require_consistent(p, rep);
    const CMatrix h_gmm = rep.omega0 * rep.number_op() + rep.rho * CMatrix::identity(2);
    auto tm = build_full_h(p, h_gmm, rep.c_mat, rep.C_mat, M);
    tm.rep = rep;
    return tm;
}

/// Uses the literal GMM matrix, so the closed forms are checked against the
/// Hamiltonian as written rather than against its representation.
inline TruncatedModel build_full_h(const ModelParams& p, const GmmParams& gmm, const PseudoFermionRep& rep, int M) {
    detail::require_consistent(p, rep);
    auto tm = build_full_h(p, build_gmm(gmm), rep.c_mat, rep.C_mat, M);
    tm.rep = rep;
    return tm;
}

/// η₀ (killed by c) and μ₀ (killed by C†), with μ₀ scaled so ⟨η₀, μ₀⟩ = 1.
inline std::pair<CVector, CVector> fermion_vacua(const TruncatedModel& tm) {
    CVector eta0 = nullspace_2x2(tm.c_mat);
    CVector mu0 = nullspace_2x2(tm.C_mat.adjoint());
    const Complex s = inner(eta0, mu0);
    if (std::abs(s) < 1e-14) throw VacuaError();
    mu0 *= 1.0 / s;
    return {std::move(eta0), std::move(mu0)};
}

inline LadderState build_ladder(const TruncatedModel& tm, int n, int k, Family family) {
    if (n < 0 || (k != 0 && k != 1)) throw std::invalid_argument("build_ladder: need n >= 0 and k in {0,1}");
    if (n + k > tm.cutoff) throw CutoffError();

    auto [eta0, mu0] = fermion_vacua(tm);
    const bool phi = family == Family::Phi;
    const CMatrix boson_raise = phi ? tm.D_mat : tm.d_mat.adjoint();
    const CMatrix fermion_raise = phi ? tm.C_mat : tm.c_mat.adjoint();

    CVector boson = CVector::unit(tm.d_mat.rows(), 0);
    for (int m = 1; m <= n; ++m) {
        boson = mat_vec(boson_raise, boson);
        boson *= 1.0 / std::sqrt(static_cast<double>(m));
    }
    CVector fermion = phi ? std::move(eta0) : std::move(mu0);
    if (k == 1) fermion = mat_vec(fermion_raise, fermion);

    return {n, k, family, kron(boson, fermion)};
}

/// Both ladder families for n ≤ n_max, built incrementally (one operator
/// application per level) so sweeps over many sectors stay cheap.
class LadderBasis {
public:
    LadderBasis(const TruncatedModel& tm, int n_max) : n_max_(n_max) {
        if (n_max < 0) throw std::invalid_argument("LadderBasis: n_max must be >= 0");
        if (n_max + 1 > tm.cutoff) throw CutoffError();
        auto [eta0, mu0] = fermion_vacua(tm);
        const CVector eta[2] = {eta0, mat_vec(tm.C_mat, eta0)};
        const CVector mu[2] = {mu0, mat_vec(tm.c_mat.adjoint(), mu0)};
        const CMatrix psi_raise = tm.d_mat.adjoint();

        CVector phi_b = CVector::unit(tm.d_mat.rows(), 0);
        CVector psi_b = phi_b;
        for (int n = 0; n <= n_max; ++n) {
            if (n > 0) {
                const Complex norm = 1.0 / std::sqrt(static_cast<double>(n));
                phi_b = norm * mat_vec(tm.D_mat, phi_b);
                psi_b = norm * mat_vec(psi_raise, psi_b);
            }
            for (int k = 0; k <= 1; ++k) {
                phi_[k].push_back(kron(phi_b, eta[k]));
                psi_[k].push_back(kron(psi_b, mu[k]));
            }
        }
    }

    int n_max() const { return n_max_; }

    const CVector& get(int n, int k, Family family) const {
        if (n < 0 || n > n_max_ || (k != 0 && k != 1)) throw std::out_of_range("LadderBasis: index out of range");
        return family == Family::Phi ? phi_[k][static_cast<std::size_t>(n)] : psi_[k][static_cast<std::size_t>(n)];
    }

private:
    int n_max_;
    std::vector<CVector> phi_[2];
    std::vector<CVector> psi_[2];
};

/// Φ_{n−1,1} + λ·Φ_{n,0}
inline CVector right_sector_vector(const TruncatedModel& tm, const SectorEigen& se) {
    return build_ladder(tm, se.n - 1, 1, Family::Phi).vec + se.lambda * build_ladder(tm, se.n, 0, Family::Phi).vec;
}
inline CVector right_sector_vector(const LadderBasis& basis, const SectorEigen& se) {
    return basis.get(se.n - 1, 1, Family::Phi) + se.lambda * basis.get(se.n, 0, Family::Phi);
}

/// Ψ_{n−1,1} + ξ·Ψ_{n,0}
inline CVector left_sector_vector(const TruncatedModel& tm, const SectorEigen& se) {
    return build_ladder(tm, se.n - 1, 1, Family::Psi).vec + se.xi * build_ladder(tm, se.n, 0, Family::Psi).vec;
}
inline CVector left_sector_vector(const LadderBasis& basis, const SectorEigen& se) {
    return basis.get(se.n - 1, 1, Family::Psi) + se.xi * basis.get(se.n, 0, Family::Psi);
}

namespace detail {
inline void require_closed_sector(const TruncatedModel& tm, int n) {
    if (n < 1) throw std::invalid_argument("sector index must be >= 1");
    if (n + 1 > tm.cutoff - 1) throw CutoffError();
}

inline double relative_residual(const CMatrix& h, const CVector& v, Complex e) {
    return (mat_vec(h, v) - e * v).norm() / v.norm();
}
}  // namespace detail

/// ‖H·v − E·v‖ / ‖v‖ with v = Φ_{n−1,1} + λ·Φ_{n,0}.
inline double residual_check(const TruncatedModel& tm, const SectorEigen& se) {
    detail::require_closed_sector(tm, se.n);
    return detail::relative_residual(tm.h_full, right_sector_vector(tm, se), se.energy);
}

/// ‖H†·w − conj(E)·w‖ / ‖w‖ with w = Ψ_{n−1,1} + ξ·Ψ_{n,0}.
inline double adjoint_residual_check(const TruncatedModel& tm, const SectorEigen& se) {
    detail::require_closed_sector(tm, se.n);
    return detail::relative_residual(tm.h_adjoint, left_sector_vector(tm, se), std::conj(se.energy));
}

inline double residual_check(const TruncatedModel& tm, const LadderBasis& basis, const SectorEigen& se) {
    detail::require_closed_sector(tm, se.n);
    return detail::relative_residual(tm.h_full, right_sector_vector(basis, se), se.energy);
}

inline double adjoint_residual_check(const TruncatedModel& tm, const LadderBasis& basis, const SectorEigen& se) {
    detail::require_closed_sector(tm, se.n);
    return detail::relative_residual(tm.h_adjoint, left_sector_vector(basis, se), std::conj(se.energy));
}

/// Residual of the single vacuum level Φ₀,₀ against E_{0,0}.
inline double ground_residual(const TruncatedModel& tm) {
    const auto phi00 = build_ladder(tm, 0, 0, Family::Phi).vec;
    return detail::relative_residual(tm.h_full, phi00, energy_nk(tm.params, 0, 0));
}

/// max |⟨Φ_{n,k}, Ψ_{m,l}⟩ − δ_{nm}δ_{kl}| over n, m ≤ n_max.
inline double biorthogonality_check(const TruncatedModel& tm, int n_max) {
    const LadderBasis basis(tm, n_max);
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= 1; ++k)
            for (int m = 0; m <= n_max; ++m)
                for (int l = 0; l <= 1; ++l) {
                    const double expected = (n == m && k == l) ? 1.0 : 0.0;
                    const Complex pair = inner(basis.get(n, k, Family::Phi), basis.get(m, l, Family::Psi));
                    worst = std::max(worst, std::abs(pair - expected));
                }
    return worst;
}

/// Matrix of H restricted to span{Φ_{n−1,1}, Φ_{n,0}} (in that order), with
/// coordinates read off through the dual Ψ family.
inline CMatrix sector_restriction(const TruncatedModel& tm, int n) {
    detail::require_closed_sector(tm, n);
    const LadderState phi[2] = {build_ladder(tm, n - 1, 1, Family::Phi), build_ladder(tm, n, 0, Family::Phi)};
    const LadderState psi[2] = {build_ladder(tm, n - 1, 1, Family::Psi), build_ladder(tm, n, 0, Family::Psi)};
    CMatrix r(2, 2);
    for (std::size_t a = 0; a < 2; ++a) {
        const CVector h_phi = mat_vec(tm.h_full, phi[a].vec);
        for (std::size_t b = 0; b < 2; ++b) r(b, a) = inner(psi[b].vec, h_phi);
    }
    return r;
}

/// Part of H·v that leaves span{Φ_{n−1,1}, Φ_{n,0}}, relative to ‖v‖, maximized over the two basis vectors.
inline double sector_leakage(const TruncatedModel& tm, int n) {
    const auto r = sector_restriction(tm, n);
    const LadderState phi[2] = {build_ladder(tm, n - 1, 1, Family::Phi), build_ladder(tm, n, 0, Family::Phi)};
    double worst = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
        CVector out = mat_vec(tm.h_full, phi[a].vec);
        out -= r(0, a) * phi[0].vec;
        out -= r(1, a) * phi[1].vec;
        worst = std::max(worst, out.norm() / phi[a].vec.norm());
    }
    return worst;
}

/// N = D·d ⊗ 1 + 1 ⊗ C·c on the truncated space.
inline CMatrix total_number_op(const TruncatedModel& tm) {
    return kron(mat_mul(tm.D_mat, tm.d_mat), CMatrix::identity(2)) +
           kron(CMatrix::identity(tm.d_mat.rows()), mat_mul(tm.C_mat, tm.c_mat));
}

}  // namespace nhjc
