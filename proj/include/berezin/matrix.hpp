#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "berezin/errors.hpp"

namespace berezin {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

// Library-wide matrix equality tolerances (absolute + relative, Frobenius).
inline constexpr double kEqualityAbsTol = 1e-12;
inline constexpr double kEqualityRelTol = 1e-10;

/// Dense square complex matrix, row-major storage. Immutable use is the norm:
/// all library operations take matrices by const reference and return fresh
/// values, so sharing across threads is safe.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
        if (dim == 0) throw DimMismatch("ComplexMatrix: dimension must be positive");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t n = rows.size();
        ComplexMatrix m(n);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != n) throw DimMismatch("from_rows: matrix must be square");
            std::size_t j = 0;
            for (const Complex& v : row) m(i, j++) = v;
            ++i;
        }
        if (!m.all_finite()) throw Error("from_rows: non-finite entry");
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const Complex* row(std::size_t i) const { return a_.data() + i * dim_; }
    Complex* row(std::size_t i) { return a_.data() + i * dim_; }

    const std::vector<Complex>& data() const { return a_; }

    bool all_finite() const {
        for (const Complex& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(Complex c) {
        for (Complex& v : a_) v *= c;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex c, ComplexMatrix a) { return a *= c; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex c) { return a *= c; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix c(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex* ai = a.row(i);
            Complex* ci = c.row(i);
            for (std::size_t k = 0; k < n; ++k) {
                const Complex aik = ai[k];
                if (aik == Complex{}) continue;
                const Complex* bk = b.row(k);
                for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
            }
        }
        return c;
    }

private:
    void check_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw DimMismatch("matrix dimension mismatch");
    }

    std::size_t dim_;
    std::vector<Complex> a_;
};

/// Conjugate transpose. adjoint(adjoint(M)) == M exactly.
inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

/// X = H + iK with H = (X+X*)/2 and K = (X-X*)/2i, both Hermitian.
inline std::pair<ComplexMatrix, ComplexMatrix> cartesian_parts(const ComplexMatrix& x) {
    const std::size_t n = x.dim();
    ComplexMatrix h(n), k(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex a = x(i, j);
            const Complex b = std::conj(x(j, i));
            h(i, j) = 0.5 * (a + b);
            k(i, j) = (a - b) / Complex(0.0, 2.0);
        }
    return {std::move(h), std::move(k)};
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double abs_tol = kEqualityAbsTol, double rel_tol = kEqualityRelTol) {
    if (a.dim() != b.dim()) return false;
    const double d = (a - b).frobenius_norm();
    const double scale = std::max(a.frobenius_norm(), b.frobenius_norm());
    return d <= abs_tol + rel_tol * scale;
}

inline Vector matvec(const ComplexMatrix& m, const Vector& x) {
    const std::size_t n = m.dim();
    if (x.size() != n) throw DimMismatch("matvec: size mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex* mi = m.row(i);
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) s += mi[j] * x[j];
        y[i] = s;
    }
    return y;
}

/// Inner product, conjugate-linear in the second argument: sum_i x_i * conj(y_i).
inline Complex inner(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw DimMismatch("inner: size mismatch");
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

inline double vec_norm(const Vector& x) {
    double s = 0.0;
    for (const Complex& v : x) s += std::norm(v);
    return std::sqrt(s);
}

inline ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned n) {
    ComplexMatrix r = ComplexMatrix::identity(m.dim());
    for (unsigned i = 0; i < n; ++i) r = r * m;
    return r;
}

} // namespace berezin
