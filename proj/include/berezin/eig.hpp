#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "berezin/matrix.hpp"

namespace berezin {

/// Result of a Hermitian eigendecomposition M = U diag(eigenvalues) U*.
/// Eigenvalues ascend; eigenvector k is column k of `eigenvectors`.
struct HermitianEig {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

namespace detail {

// Cyclic complex Jacobi sweep machinery shared by the value-only and
// full decompositions. Iterates until the off-diagonal Frobenius mass
// drops below 1e-13 * ||M||_F.
inline void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* u) {
    const std::size_t n = a.dim();
    const double input_norm = a.frobenius_norm();
    const double target = 1e-13 * (input_norm > 0.0 ? input_norm : 1.0);

    auto off_norm = [&a, n] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= target / static_cast<double>(n * n)) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex d = apq / b; // phase of the pivot

                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex dc = std::conj(d);

                // A <- V* A V with V_pp=c, V_pq=s, V_qp=-conj(d)s, V_qq=conj(d)c.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - dc * s * akq;
                    a(k, q) = s * akp + dc * c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - d * s * aqk;
                    a(q, k) = s * apk + d * c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                if (u) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex ukp = (*u)(k, p), ukq = (*u)(k, q);
                        (*u)(k, p) = c * ukp - dc * s * ukq;
                        (*u)(k, q) = s * ukp + dc * c * ukq;
                    }
                }
            }
        }
    }
}

inline ComplexMatrix hermitian_part_checked(const ComplexMatrix& m, const char* who) {
    const double skew = (m - adjoint(m)).frobenius_norm();
    if (skew > 1e-10 * m.frobenius_norm())
        throw NotHermitian(std::string(who) + ": input is not Hermitian");
    ComplexMatrix a = m;
    a += adjoint(m);
    a *= 0.5;
    return a;
}

} // namespace detail

/// Full decomposition via cyclic complex Jacobi rotations.
/// Throws NotHermitian when ||M - M*|| > 1e-10 ||M||.
inline HermitianEig hermitian_eig(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    ComplexMatrix a = detail::hermitian_part_checked(m, "hermitian_eig");
    ComplexMatrix u = ComplexMatrix::identity(n);
    detail::jacobi_diagonalize(a, &u);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = u(i, order[k]);
    }
    return out;
}

/// Eigenvalues only (ascending); skips accumulating the unitary.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    ComplexMatrix a = detail::hermitian_part_checked(m, "hermitian_eigenvalues");
    detail::jacobi_diagonalize(a, nullptr);
    std::vector<double> ev(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// |X| = (X*X)^{1/2}. Eigenvalues of X*X down to -1e-12 * ||X*X|| are
/// clamped to zero; anything more negative is an internal error.
inline ComplexMatrix abs_op(const ComplexMatrix& x) {
    ComplexMatrix g = adjoint(x) * x;
    const double scale = g.frobenius_norm();
    HermitianEig e = hermitian_eig(g);
    const std::size_t n = x.dim();
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lam = e.eigenvalues[i];
        if (lam < 0.0) {
            if (lam < -1e-12 * std::max(scale, 1.0))
                throw Error("abs_op: X*X has a significantly negative eigenvalue");
            lam = 0.0;
        }
        roots[i] = std::sqrt(lam);
    }
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k)
                s += e.eigenvectors(i, k) * roots[k] * std::conj(e.eigenvectors(j, k));
            r(i, j) = s;
        }
    return r;
}

/// Operator (spectral) norm: largest singular value of X.
inline double op_norm(const ComplexMatrix& x) {
    const std::vector<double> ev = hermitian_eigenvalues(adjoint(x) * x);
    const double lam = std::max(0.0, ev.back());
    return std::sqrt(lam);
}

} // namespace berezin
