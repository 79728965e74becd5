// test_gmm.cpp: Gain/loss two-level block and its pseudo-fermion representation

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nhjc/gmm.hpp"
#include "nhjc/sampling.hpp"
#include "oracles.hpp"

using namespace nhjc;

namespace {

const GmmParams kScanBase{0.5, 0.5, 0.0, 1.0, Complex{1.0}};

double diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST(BuildGmm, UncoupledHermitianLimit) {
    const CMatrix h = build_gmm({1.0, 2.0, 0.0, 0.0, Complex{0.0}});
    EXPECT_EQ(diff(h, CMatrix{{1.0, 0.0}, {0.0, 2.0}}), 0.0);
}

TEST(BuildGmm, ScanBaseMatrix) {
    const CMatrix h = build_gmm(kScanBase);
    EXPECT_EQ(diff(h, CMatrix{{0.5, 1.0}, {1.0, Complex{0.5, -1.0}}}), 0.0);
}

TEST(BuildGmm, TraceIdentity) {
    ParameterSampler s(1);
    for (int i = 0; i < 100; ++i) {
        const GmmParams p = s.gmm();
        const auto d = derived_quantities(p);
        EXPECT_LT(std::abs(build_gmm(p).trace() - Complex(d.t_eps, -d.t_gamma)), 1e-14);
    }
}

TEST(Validate, RejectsNegativeDecayAndNonFinite) {
    EXPECT_THROW(validate({0.0, 0.0, -0.1, 0.0, Complex{1.0}}), std::invalid_argument);
    EXPECT_THROW(validate({NAN, 0.0, 0.0, 0.0, Complex{1.0}}), std::invalid_argument);
    EXPECT_THROW(pf_representation({0.0, 1.0, 0.0, -1.0, Complex{1.0}}, Branch::plus), std::invalid_argument);
    EXPECT_NO_THROW(validate(kScanBase));
}

TEST(Derived, SymmetricCase) {
    const auto d = derived_quantities({0.7, 0.7, 0.3, 0.3, Complex{1.0}});
    EXPECT_EQ(d.d_eps, 0.0);
    EXPECT_EQ(d.d_gamma, 0.0);
}

TEST(Derived, ScanBase) {
    const auto d = derived_quantities(kScanBase);
    EXPECT_EQ(d.d_eps, 0.0);
    EXPECT_EQ(d.d_gamma, 1.0);
    EXPECT_EQ(d.t_eps, 1.0);
    EXPECT_EQ(d.t_gamma, 1.0);
}

TEST(Derived, SumIdentity) {
    ParameterSampler s(2);
    for (int i = 0; i < 100; ++i) {
        const GmmParams p = s.gmm();
        const auto d = derived_quantities(p);
        EXPECT_NEAR(d.d_eps + d.t_eps, 2.0 * p.eps2, 1e-14);
        EXPECT_NEAR(d.d_gamma + d.t_gamma, 2.0 * p.gamma2, 1e-14);
    }
}

TEST(Degeneracy, ForcedAndNonForcedCases) {
    EXPECT_TRUE(gmm_is_degenerate_relative({0.0, 0.0, 0.0, 2.0, Complex{1.0}}));
    EXPECT_FALSE(gmm_is_degenerate_relative({0.0, 0.0, 0.0, 1.0, Complex{1.0}}));
    EXPECT_TRUE(gmm_is_degenerate_relative({0.0, 2.0, 0.0, 0.0, kI}));
    EXPECT_EQ(gmm_discriminant({0.0, 0.0, 0.0, 1.0, Complex{1.0}}), Complex(3.0));
}

TEST(Representation, ScanBasePlusBranch) {
    const auto rep = pf_representation(kScanBase, Branch::plus);
    EXPECT_LT(std::abs(rep.omega0 - std::sqrt(3.0)), 1e-15);
    // with ω₀ = +√3 the identity H = ω₀Cc + ρ fixes ρ = ½(1 − i − √3)
    EXPECT_LT(std::abs(rep.rho - 0.5 * Complex(1.0 - std::sqrt(3.0), -1.0)), 1e-15);
    EXPECT_LT(verify_representation(kScanBase, rep), 1e-12);
}

TEST(Representation, ScanBaseMinusBranch) {
    const auto rep = pf_representation(kScanBase, Branch::minus);
    EXPECT_LT(std::abs(rep.omega0 + std::sqrt(3.0)), 1e-15);
    EXPECT_LT(std::abs(rep.rho - 0.5 * Complex(1.0 + std::sqrt(3.0), -1.0)), 1e-15);
    EXPECT_LT(verify_representation(kScanBase, rep), 1e-12);
}

TEST(Representation, HermitianSymmetricPoint) {
    const GmmParams p{0.25, 0.25, 0.0, 0.0, Complex{1.0}};
    const double t_eps = 0.5;
    const auto plus = pf_representation(p, Branch::plus);
    const auto minus = pf_representation(p, Branch::minus);
    EXPECT_LT(std::abs(plus.omega0 - 2.0), 1e-15);
    EXPECT_LT(std::abs(minus.omega0 + 2.0), 1e-15);
    // the ratios and ρ of the ω₀ = ±2 branches
    EXPECT_LT(std::abs(plus.alpha_ratio - 1.0), 1e-15);
    EXPECT_LT(std::abs(plus.beta_ratio + 1.0), 1e-15);
    EXPECT_LT(std::abs(minus.alpha_ratio + 1.0), 1e-15);
    EXPECT_LT(std::abs(minus.beta_ratio - 1.0), 1e-15);
    EXPECT_LT(std::abs(plus.rho - 0.5 * (t_eps - 2.0)), 1e-15);
    EXPECT_LT(std::abs(minus.rho - 0.5 * (t_eps + 2.0)), 1e-15);
}

TEST(Representation, RandomDrawsBothBranches) {
    ParameterSampler s(3);
    for (int i = 0; i < 100; ++i) {
        const GmmParams p = s.gmm();
        const Complex beta12 = s.polar(0.5, 2.0);
        for (Branch b : {Branch::plus, Branch::minus}) {
            const auto rep = pf_representation(p, b, beta12);
            const CMatrix rebuilt = rep.omega0 * rep.number_op() + rep.rho * CMatrix::identity(2);
            EXPECT_LT(diff(rebuilt, build_gmm(p)), 1e-12);
            EXPECT_LT(diff(anticommutator(rep.c_mat, rep.C_mat), CMatrix::identity(2)), 1e-12);
            EXPECT_LT(diff(mat_mul(rep.c_mat, rep.c_mat), CMatrix::zeros(2, 2)), 1e-12);
            EXPECT_LT(diff(mat_mul(rep.C_mat, rep.C_mat), CMatrix::zeros(2, 2)), 1e-12);
        }
    }
}

TEST(Representation, SpectrumIsRhoAndRhoPlusOmega0) {
    ParameterSampler s(4);
    for (int i = 0; i < 50; ++i) {
        const GmmParams p = s.gmm();
        const CMatrix h = build_gmm(p);
        const auto [l1, l2] = oracle::quadratic_eigenvalues(h(0, 0), h(0, 1), h(1, 0), h(1, 1));
        const auto rep = pf_representation(p, Branch::plus);
        const Complex a = rep.rho, b = rep.rho + rep.omega0;
        const double err = std::min(std::max(std::abs(l1 - a), std::abs(l2 - b)),
                                    std::max(std::abs(l1 - b), std::abs(l2 - a)));
        EXPECT_LT(err, 1e-12);
    }
}

TEST(Representation, ErrorsExactlyAtForcedDegeneracies) {
    const GmmParams forced[] = {
        {0.0, 0.0, 0.0, 2.0, Complex{1.0}},
        {0.0, 0.0, 2.0, 0.0, Complex{1.0}},
        {0.0, 2.0, 0.0, 0.0, kI},
        {0.0, 2.0, 0.0, 2.0, Complex{1.0, 1.0}},
        {1.0, 1.0, 0.5, 1.5, Complex{0.5}},
    };
    for (const auto& p : forced) {
        EXPECT_NEAR(std::abs(gmm_discriminant(p)), 0.0, 1e-15);
        EXPECT_THROW(pf_representation(p, Branch::plus), GmmDegenerateError);
        EXPECT_THROW(pf_representation(p, Branch::minus), GmmDegenerateError);
    }
    // a small step away from each degeneracy is accepted
    for (auto p : forced) {
        p.gamma2 += 1e-3;
        EXPECT_NO_THROW(pf_representation(p, Branch::plus));
    }
}

TEST(Representation, RejectsZeroCouplingAndZeroNormalization) {
    EXPECT_THROW(pf_representation({1.0, 2.0, 0.0, 0.0, Complex{0.0}}, Branch::plus), std::invalid_argument);
    EXPECT_THROW(pf_representation(kScanBase, Branch::plus, Complex{0.0}), std::invalid_argument);
}

TEST(VerifyRepresentation, DetectsPerturbedCoefficient) {
    auto rep = pf_representation(kScanBase, Branch::plus);
    EXPECT_LT(verify_representation(kScanBase, rep), 1e-12);
    rep.c_mat(0, 0) += 1e-3;
    EXPECT_GT(verify_representation(kScanBase, rep), 1e-4);
}

TEST(VerifyRepresentation, GammaTimesOmega0IsNu0) {
    ParameterSampler s(5);
    for (int i = 0; i < 50; ++i) {
        const GmmParams p = s.gmm();
        for (Branch b : {Branch::plus, Branch::minus}) {
            const auto rep = pf_representation(p, b, s.polar(0.5, 2.0));
            EXPECT_LT(std::abs(rep.omega0 * rep.gamma_pm - p.nu0), 1e-12 * std::max(1.0, std::abs(p.nu0)));
        }
    }
}
