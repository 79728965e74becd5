// oracles.hpp: Independent reference computations for the test suite
//
// Nothing here calls into the library's matrix algebra: products are plain
// loops, the full Hamiltonian is assembled element by element in the bare
// (boson level, fermion slot) basis, and eigenvalues of the truncated matrix
// come from Eigen's general complex eigensolver.

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Dense = std::vector<std::vector<Complex>>;

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Complex>(c)); }

inline Dense triple_loop(const Dense& a, const Dense& b) {
    Dense out = zeros(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline std::vector<Complex> double_loop(const Dense& a, const std::vector<Complex>& v) {
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) out[i] += a[i][k] * v[k];
    return out;
}

/// Roots of x² − t·x + d from the quadratic formula.
inline std::pair<Complex, Complex> quadratic_eigenvalues(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex root = std::sqrt(tr * tr - 4.0 * det);
    return {0.5 * (tr + root), 0.5 * (tr - root)};
}

struct Fermion2 {
    Complex m[2][2];
};

/// H = H_GMM + ω a†a + ε a C + ε* a† c on levels 0..M, index 2m + f.
inline Eigen::MatrixXcd bare_hamiltonian(const Fermion2& h_gmm, const Fermion2& c, const Fermion2& C, Complex omega,
                                         Complex coupling, int M) {
    const int dim = 2 * (M + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m <= M; ++m) {
        for (int f = 0; f < 2; ++f) {
            for (int g = 0; g < 2; ++g) h(2 * m + f, 2 * m + g) += h_gmm.m[f][g];
            h(2 * m + f, 2 * m + f) += omega * static_cast<double>(m);
        }
        if (m >= 1) {  // a|m⟩ = √m|m−1⟩
            for (int f = 0; f < 2; ++f)
                for (int g = 0; g < 2; ++g)
                    h(2 * (m - 1) + f, 2 * m + g) += coupling * std::sqrt(static_cast<double>(m)) * C.m[f][g];
        }
        if (m + 1 <= M) {  // a†|m⟩ = √(m+1)|m+1⟩
            for (int f = 0; f < 2; ++f)
                for (int g = 0; g < 2; ++g)
                    h(2 * (m + 1) + f, 2 * m + g) +=
                        std::conj(coupling) * std::sqrt(static_cast<double>(m + 1)) * c.m[f][g];
        }
    }
    return h;
}

inline Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& h) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, false);
    return solver.eigenvalues();
}

inline double distance_to_spectrum(const Eigen::VectorXcd& spectrum, Complex e) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) best = std::min(best, std::abs(spectrum(i) - e));
    return best;
}

inline Dense random_dense(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::normal_distribution<double> g;
    Dense out = zeros(r, c);
    for (auto& row : out)
        for (auto& x : row) x = {g(rng), g(rng)};
    return out;
}

}  // namespace oracle
