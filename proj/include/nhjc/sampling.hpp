// sampling.hpp: Seeded random parameter draws for property checks and verify runs

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "nhjc/gmm.hpp"
#include "nhjc/spectrum.hpp"

namespace nhjc {

struct DrawnCase {
    GmmParams gmm;
    Branch branch{Branch::plus};
    Complex beta12{1.0};
    PseudoFermionRep rep;
    ModelParams model;  // ω₀ and ρ taken from rep
};

class ParameterSampler {
public:
    explicit ParameterSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Complex polar(double r_lo, double r_hi) {
        const double r = uniform(r_lo, r_hi);
        const double phi = uniform(-std::numbers::pi, std::numbers::pi);
        return std::polar(r, phi);
    }

    /// GMM parameters kept away from the level coalescence: |disc| ≥ 0.1·4|ν₀|².
    GmmParams gmm() {
        while (true) {
            GmmParams p{uniform(-2.0, 2.0), uniform(-2.0, 2.0), uniform(0.0, 2.0), uniform(0.0, 2.0), polar(0.3, 2.0)};
            if (std::abs(gmm_discriminant(p)) >= 0.4 * std::norm(p.nu0)) return p;
        }
    }

    DrawnCase full_case() {
        DrawnCase c;
        c.gmm = gmm();
        c.branch = uniform(0.0, 1.0) < 0.5 ? Branch::plus : Branch::minus;
        c.beta12 = polar(0.5, 2.0);
        c.rep = pf_representation(c.gmm, c.branch, c.beta12);
        c.model.omega = Complex{uniform(0.5, 4.0), uniform(-1.0, 1.0)};
        c.model.coupling = polar(0.3, 1.5);
        c.model = with_representation(c.model, c.rep);
        return c;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace nhjc
