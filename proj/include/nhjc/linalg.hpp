// linalg.hpp: Minimal dense complex linear algebra (row-major, value semantics)

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhjc {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Principal square root, branch cut on the negative real axis. Arguments
/// lying exactly on the cut (either sign of zero imaginary part) take the
/// limit from above, so the result is +i·sqrt(|z|).
inline Complex principal_sqrt(Complex z) {
    if (z.imag() == 0.0 && z.real() < 0.0) {
        return {0.0, std::sqrt(-z.real())};
    }
    return std::sqrt(z);
}

class LinalgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t dim) : data_(dim, Complex{}) {}
    CVector(std::initializer_list<Complex> init) : data_(init) {}
    explicit CVector(std::vector<Complex> data) : data_(std::move(data)) {}

    static CVector unit(std::size_t dim, std::size_t index) {
        CVector v(dim);
        v[index] = 1.0;
        return v;
    }

    std::size_t dim() const { return data_.size(); }
    Complex& operator[](std::size_t i) { return data_[i]; }
    const Complex& operator[](std::size_t i) const { return data_[i]; }
    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    double norm() const {
        double s = 0.0;
        for (const auto& x : data_) s += std::norm(x);
        return std::sqrt(s);
    }

    CVector& operator+=(const CVector& o) {
        require_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    CVector& operator-=(const CVector& o) {
        require_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    CVector& operator*=(Complex s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend CVector operator+(CVector a, const CVector& b) { return a += b; }
    friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
    friend CVector operator*(Complex s, CVector v) { return v *= s; }
    friend CVector operator*(CVector v, Complex s) { return v *= s; }

private:
    void require_same(const CVector& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("vector dimension mismatch");
    }

    std::vector<Complex> data_;
};

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Row-major nested initializer: CMatrix{{a, b}, {c, d}}.
    CMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Complex> entries() const { return data_; }

    /// Conjugate transpose.
    CMatrix adjoint() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    CMatrix transpose() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    Complex trace() const {
        Complex t{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    /// Largest entry modulus.
    double max_abs() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    CMatrix& operator+=(const CMatrix& o) {
        require_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        require_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    CMatrix& operator*=(Complex s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
    friend CMatrix operator*(CMatrix m, Complex s) { return m *= s; }

private:
    void require_same(const CMatrix& o) const {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("matrix dimension mismatch");
    }

    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<Complex> data_;
};

inline CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mat_mul: dimension mismatch (" + std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    }
    CMatrix out(a.rows(), b.cols());
    // i-k-j order keeps the inner loop on contiguous rows of b and out
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline CVector mat_vec(const CMatrix& a, const CVector& v) {
    if (a.cols() != v.dim()) throw std::invalid_argument("mat_vec: dimension mismatch");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

/// Kronecker product, a-index major: out(i*b.rows()+k, j*b.cols()+l) = a(i,j)·b(k,l).
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

inline CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
    return out;
}

/// Physics convention: antilinear in the first argument.
inline Complex inner(const CVector& u, const CVector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return mat_mul(a, b) - mat_mul(b, a); }
inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return mat_mul(a, b) + mat_mul(b, a); }

/// Unit-norm kernel vector of a rank-1 2×2 matrix; the first nonzero entry
/// is made real and positive.
inline CVector nullspace_2x2(const CMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("nullspace_2x2: matrix must be 2x2");
    const double scale = m.max_abs();
    if (scale == 0.0) throw LinalgError("nullspace not unique");
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) > 1e-12 * scale * scale) throw LinalgError("no nullspace");

    // The row with the larger norm fixes the kernel direction: (a, b)·(b, −a) = 0.
    const double n0 = std::norm(m(0, 0)) + std::norm(m(0, 1));
    const double n1 = std::norm(m(1, 0)) + std::norm(m(1, 1));
    const std::size_t r = n0 >= n1 ? 0 : 1;
    CVector v{m(r, 1), -m(r, 0)};
    v *= 1.0 / v.norm();

    const std::size_t lead = std::abs(v[0]) > 1e-15 ? 0 : 1;
    const double phase_mod = std::abs(v[lead]);
    v *= std::conj(v[lead]) / phase_mod;
    v[lead] = phase_mod;
    return v;
}

}  // namespace nhjc
