// test_fock_oracle.cpp: Truncated-Fock matrices checked against the closed forms

#include <cmath>

#include <gtest/gtest.h>

#include "nhjc/fock_oracle.hpp"
#include "nhjc/sampling.hpp"
#include "oracles.hpp"

using namespace nhjc;

namespace {

oracle::Fermion2 to_fermion(const CMatrix& m) {
    oracle::Fermion2 f;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f.m[i][j] = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return f;
}

TruncatedModel random_model(std::uint64_t seed, int M, DrawnCase* out = nullptr) {
    ParameterSampler s(seed);
    const auto c = s.full_case();
    if (out) *out = c;
    return build_full_h(c.model, c.gmm, c.rep, M);
}

}  // namespace

TEST(BosonOps, LadderAction) {
    const auto [d, D] = build_boson_ops(2);
    EXPECT_EQ(d(0, 1), Complex(1.0));
    EXPECT_LT(std::abs(d(1, 2) - std::sqrt(2.0)), 1e-15);
    EXPECT_EQ((D - d.adjoint()).max_abs(), 0.0);
    EXPECT_THROW(build_boson_ops(1), std::invalid_argument);
}

TEST(BosonOps, TruncatedCommutator) {
    const int M = 12;
    const auto [d, D] = build_boson_ops(M);
    CMatrix expected = CMatrix::identity(M + 1);
    expected(M, M) = -static_cast<double>(M);
    EXPECT_LT((commutator(d, D) - expected).max_abs(), 1e-13);
}

TEST(BosonOps, NumberOperatorDiagonal) {
    const auto [d, D] = build_boson_ops(9);
    CMatrix expected(10, 10);
    for (std::size_t m = 0; m < 10; ++m) expected(m, m) = static_cast<double>(m);
    EXPECT_LT((mat_mul(D, d) - expected).max_abs(), 1e-13);
}

TEST(BuildFullH, UncoupledIsDiagonal) {
    ModelParams p;
    p.omega = 3.0;
    p.coupling = 0.0;
    const CMatrix h_gmm = build_gmm({0.4, -1.3, 0.0, 0.0, Complex{0.0}});
    const CMatrix c{{0.0, 1.0}, {0.0, 0.0}};
    const auto tm = build_full_h(p, h_gmm, c, c.adjoint(), 10);
    for (std::size_t i = 0; i < tm.dim(); ++i)
        for (std::size_t j = 0; j < tm.dim(); ++j) {
            if (i == j) {
                const double level = (i % 2 == 0) ? 0.4 : -1.3;
                EXPECT_LT(std::abs(tm.h_full(i, j) - (level + 3.0 * static_cast<double>(i / 2))), 1e-14);
            } else {
                EXPECT_EQ(tm.h_full(i, j), Complex(0.0));
            }
        }
}

TEST(BuildFullH, MatchesElementwiseAssembly) {
    DrawnCase c;
    const auto tm = random_model(31, 20, &c);
    const auto ref = oracle::bare_hamiltonian(to_fermion(build_gmm(c.gmm)), to_fermion(c.rep.c_mat),
                                              to_fermion(c.rep.C_mat), c.model.omega, c.model.coupling, 20);
    double worst = 0.0;
    for (std::size_t i = 0; i < tm.dim(); ++i)
        for (std::size_t j = 0; j < tm.dim(); ++j)
            worst = std::max(worst, std::abs(tm.h_full(i, j) - ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    EXPECT_LT(worst, 1e-13);
}

TEST(BuildFullH, DimensionAtDefaultCutoff) {
    EXPECT_EQ(random_model(32, 128).dim(), 258u);
}

TEST(BuildFullH, ConservesTotalExcitationBelowCutoff) {
    const int M = 16;
    const auto tm = random_model(33, M);
    const CMatrix comm = commutator(tm.h_full, total_number_op(tm));
    // rows and columns touching boson level M see the truncation
    double worst = 0.0;
    for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(M); ++i)
        for (std::size_t j = 0; j < 2 * static_cast<std::size_t>(M); ++j) worst = std::max(worst, std::abs(comm(i, j)));
    EXPECT_LT(worst, 1e-12);
}

TEST(BuildFullH, InconsistentParametersRejected) {
    DrawnCase c;
    (void)random_model(34, 8, &c);
    ModelParams p = c.model;
    p.rho += 0.1;
    EXPECT_THROW(build_full_h(p, c.gmm, c.rep, 8), std::invalid_argument);
}

TEST(Vacua, AnnihilationConditions) {
    ParameterSampler s(35);
    for (int i = 0; i < 20; ++i) {
        const auto c = s.full_case();
        const auto tm = build_full_h(c.model, c.gmm, c.rep, 6);
        const auto phi00 = build_ladder(tm, 0, 0, Family::Phi).vec;
        const auto psi00 = build_ladder(tm, 0, 0, Family::Psi).vec;
        const auto id_b = CMatrix::identity(tm.d_mat.rows());
        const auto id_f = CMatrix::identity(2);
        EXPECT_LT(mat_vec(kron(tm.d_mat, id_f), phi00).norm(), 1e-12);
        EXPECT_LT(mat_vec(kron(id_b, tm.c_mat), phi00).norm(), 1e-12);
        EXPECT_LT(mat_vec(kron(tm.D_mat.adjoint(), id_f), psi00).norm(), 1e-12);
        EXPECT_LT(mat_vec(kron(id_b, tm.C_mat.adjoint()), psi00).norm(), 1e-12);
    }
}

TEST(Vacua, SelfOrthogonalVacuaRejected) {
    ModelParams p;
    const CMatrix c{{0.0, 1.0}, {0.0, 0.0}};
    const auto tm = build_full_h(p, CMatrix::identity(2), c, c, 4);
    EXPECT_THROW(fermion_vacua(tm), VacuaError);
}

TEST(Vacua, GmmEpStopsUpstream) {
    EXPECT_THROW(pf_representation({0.0, 0.0, 0.0, 2.0, Complex{1.0}}, Branch::plus), GmmDegenerateError);
}

TEST(Ladder, CutoffEnforced) {
    const auto tm = random_model(36, 6);
    EXPECT_NO_THROW(build_ladder(tm, 5, 1, Family::Phi));
    EXPECT_THROW(build_ladder(tm, 6, 1, Family::Phi), CutoffError);
    EXPECT_THROW(LadderBasis(tm, 6), CutoffError);
}

TEST(Ladder, BasisMatchesDirectConstruction) {
    const auto tm = random_model(37, 24);
    const LadderBasis basis(tm, 20);
    for (int n : {0, 3, 20})
        for (int k : {0, 1})
            for (Family f : {Family::Phi, Family::Psi}) {
                const auto direct = build_ladder(tm, n, k, f).vec;
                EXPECT_LT((direct - basis.get(n, k, f)).norm(), 1e-12 * std::max(1.0, direct.norm()));
            }
}

TEST(Biorthogonality, AllPairsUpToTwenty) {
    for (std::uint64_t seed : {38u, 39u, 40u}) EXPECT_LE(biorthogonality_check(random_model(seed, 64), 20), 1e-9);
}

TEST(Biorthogonality, FermionBlockOnly) {
    const auto tm = random_model(41, 4);
    EXPECT_LE(biorthogonality_check(tm, 0), 1e-12);
}

TEST(Residuals, RandomDrawsAllSectors) {
    ParameterSampler s(42);
    for (int i = 0; i < 5; ++i) {
        const auto c = s.full_case();
        const auto tm = build_full_h(c.model, c.gmm, c.rep, 128);
        const LadderBasis basis(tm, 101);
        double right = 0.0, left = 0.0;
        for (int n = 1; n <= 100; ++n)
            for (Branch b : {Branch::plus, Branch::minus}) {
                const auto se = sector_eigen(c.model, n, b);
                right = std::max(right, residual_check(tm, basis, se));
                left = std::max(left, adjoint_residual_check(tm, basis, se));
            }
        EXPECT_LE(right, 1e-9);
        EXPECT_LE(left, 1e-9);
    }
}

TEST(Residuals, DirectAndCachedAgree) {
    DrawnCase c;
    const auto tm = random_model(43, 32, &c);
    const LadderBasis basis(tm, 30);
    const auto se = sector_eigen(c.model, 17, Branch::minus);
    EXPECT_NEAR(residual_check(tm, se), residual_check(tm, basis, se), 1e-12);
    EXPECT_NEAR(adjoint_residual_check(tm, se), adjoint_residual_check(tm, basis, se), 1e-12);
}

TEST(Residuals, SensitiveToEnergyAndLambda) {
    DrawnCase c;
    const auto tm = random_model(44, 32, &c);
    auto se = sector_eigen(c.model, 10, Branch::plus);
    se.energy += 1e-3;
    EXPECT_GE(residual_check(tm, se), 1e-4);
    se = sector_eigen(c.model, 10, Branch::plus);
    se.lambda = -se.lambda;
    EXPECT_GE(residual_check(tm, se), 1e-4);
}

TEST(Residuals, SectorAtCutoffRejected) {
    DrawnCase c;
    const auto tm = random_model(45, 10, &c);
    EXPECT_THROW(residual_check(tm, sector_eigen(c.model, 10, Branch::plus)), CutoffError);
}

TEST(Residuals, GroundState) {
    ParameterSampler s(46);
    for (int i = 0; i < 20; ++i) {
        const auto c = s.full_case();
        EXPECT_LE(ground_residual(build_full_h(c.model, c.gmm, c.rep, 8)), 1e-10);
    }
}

TEST(Restriction, EigenvaluesAndLeakage) {
    DrawnCase c;
    const auto tm = random_model(47, 40, &c);
    for (int n = 1; n <= 38; ++n) {
        const auto r = sector_restriction(tm, n);
        const auto q = oracle::quadratic_eigenvalues(r(0, 0), r(0, 1), r(1, 0), r(1, 1));
        const Complex ep = sector_eigen(c.model, n, Branch::plus).energy;
        const Complex em = sector_eigen(c.model, n, Branch::minus).energy;
        const double err = std::min(std::max(std::abs(q.first - ep), std::abs(q.second - em)),
                                    std::max(std::abs(q.first - em), std::abs(q.second - ep)));
        EXPECT_LT(err, 1e-9 * std::max(1.0, std::abs(ep)));
        EXPECT_LT(sector_leakage(tm, n), 1e-10 * std::max(1.0, std::abs(ep)));
    }
}

TEST(DenseSpectrum, ClosedFormsAppearInTruncatedSpectrum) {
    ParameterSampler s(48);
    for (int i = 0; i < 5; ++i) {
        const auto c = s.full_case();
        const int M = 40;
        const auto h = oracle::bare_hamiltonian(to_fermion(build_gmm(c.gmm)), to_fermion(c.rep.c_mat),
                                                to_fermion(c.rep.C_mat), c.model.omega, c.model.coupling, M);
        const auto spectrum = oracle::eigenvalues(h);
        EXPECT_LT(oracle::distance_to_spectrum(spectrum, energy_nk(c.model, 0, 0)), 1e-8);
        for (int n = 1; n <= M - 2; ++n)
            for (Branch b : {Branch::plus, Branch::minus}) {
                const Complex e = sector_eigen(c.model, n, b).energy;
                EXPECT_LT(oracle::distance_to_spectrum(spectrum, e), 1e-8 * std::max(1.0, std::abs(e)))
                    << "n=" << n << " draw " << i;
            }
    }
}
