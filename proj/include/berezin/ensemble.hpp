#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "berezin/matrix.hpp"
#include "berezin/toeplitz.hpp"

namespace berezin {

enum class EnsembleKind { Ginibre, Hermitian, UnitaryConjugatedJordan, Diagonal, ToeplitzPoly };

inline const char* to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::Ginibre: return "ginibre";
        case EnsembleKind::Hermitian: return "hermitian";
        case EnsembleKind::UnitaryConjugatedJordan: return "unitary-conjugated-jordan";
        case EnsembleKind::Diagonal: return "diagonal";
        case EnsembleKind::ToeplitzPoly: return "toeplitz-poly";
    }
    return "?";
}

inline EnsembleKind parse_ensemble_kind(std::string_view s) {
    if (s == "ginibre") return EnsembleKind::Ginibre;
    if (s == "hermitian") return EnsembleKind::Hermitian;
    if (s == "unitary-conjugated-jordan") return EnsembleKind::UnitaryConjugatedJordan;
    if (s == "diagonal") return EnsembleKind::Diagonal;
    if (s == "toeplitz-poly") return EnsembleKind::ToeplitzPoly;
    throw UnknownKind("unknown ensemble kind: " + std::string(s));
}

inline const std::vector<EnsembleKind>& all_ensemble_kinds() {
    static const std::vector<EnsembleKind> kinds{
        EnsembleKind::Ginibre, EnsembleKind::Hermitian, EnsembleKind::UnitaryConjugatedJordan,
        EnsembleKind::Diagonal, EnsembleKind::ToeplitzPoly};
    return kinds;
}

using Rng = std::mt19937_64;

/// Per-trial seed: base XOR FNV-1a(entry id, trial index). Parallel
/// scheduling cannot change a trial's draws.
inline std::uint64_t derive_trial_seed(std::uint64_t base, std::string_view entry_id,
                                       std::uint64_t trial) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint8_t b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    for (char c : entry_id) mix(static_cast<std::uint8_t>(c));
    for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(trial >> (8 * i)));
    return base ^ h;
}

inline Complex complex_gaussian(Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    const double re = n01(rng);
    const double im = n01(rng);
    return Complex(re, im) / std::sqrt(2.0);
}

inline ComplexMatrix ginibre_draw(std::size_t dim, Rng& rng) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = complex_gaussian(rng);
    return m;
}

inline ComplexMatrix hermitian_draw(std::size_t dim, Rng& rng) {
    ComplexMatrix g = ginibre_draw(dim, rng);
    ComplexMatrix h = g;
    h += adjoint(g);
    h *= 0.5;
    return h;
}

inline ComplexMatrix diagonal_draw(std::size_t dim, Rng& rng) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = complex_gaussian(rng);
    return m;
}

/// Modified Gram-Schmidt orthonormalization of a Ginibre draw's columns.
inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    ComplexMatrix g = ginibre_draw(dim, rng);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex proj{};
            for (std::size_t i = 0; i < dim; ++i) proj += g(i, j) * std::conj(g(i, k));
            for (std::size_t i = 0; i < dim; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            // Degenerate column (measure zero): fall back to a basis vector.
            for (std::size_t i = 0; i < dim; ++i) g(i, j) = (i == j) ? 1.0 : 0.0;
            nrm = 1.0;
        }
        for (std::size_t i = 0; i < dim; ++i) g(i, j) /= nrm;
    }
    return g;
}

inline ComplexMatrix unitary_conjugated_jordan_draw(std::size_t dim, Rng& rng) {
    ComplexMatrix j(dim);
    for (std::size_t i = 0; i + 1 < dim; ++i) j(i, i + 1) = 1.0;
    const ComplexMatrix u = random_unitary(dim, rng);
    return u * j * adjoint(u);
}

inline SymbolSeries random_symbol(Rng& rng, int max_abs_k = 3) {
    SymbolSeries s;
    for (int k = -max_abs_k; k <= max_abs_k; ++k) s.set(k, complex_gaussian(rng));
    return s;
}

inline ComplexMatrix draw_matrix(EnsembleKind kind, std::size_t dim, Rng& rng) {
    switch (kind) {
        case EnsembleKind::Ginibre: return ginibre_draw(dim, rng);
        case EnsembleKind::Hermitian: return hermitian_draw(dim, rng);
        case EnsembleKind::UnitaryConjugatedJordan: return unitary_conjugated_jordan_draw(dim, rng);
        case EnsembleKind::Diagonal: return diagonal_draw(dim, rng);
        case EnsembleKind::ToeplitzPoly: {
            const SymbolSeries s = random_symbol(rng, 3);
            return toeplitz_matrix(s, dim);
        }
    }
    throw UnknownKind("draw_matrix: bad kind");
}

inline std::vector<ComplexMatrix> generate_ensemble(EnsembleKind kind, std::size_t dim,
                                                    std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ComplexMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw_matrix(kind, dim, rng));
    return out;
}

inline Vector random_unit_vector(std::size_t dim, Rng& rng) {
    Vector v(dim);
    double nrm = 0.0;
    do {
        for (Complex& c : v) c = complex_gaussian(rng);
        nrm = vec_norm(v);
    } while (nrm < 1e-12);
    for (Complex& c : v) c /= nrm;
    return v;
}

/// X = H + iK with Hermitian H, K satisfying HK + KH = 0 (up to roundoff):
/// pairwise 2x2 blocks patterned on anticommuting Pauli matrices, conjugated
/// by a random unitary. Odd dimensions leave the last coordinate zero.
inline ComplexMatrix anticommuting_cartesian_draw(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    ComplexMatrix h(dim), k(dim);
    for (std::size_t b = 0; b + 1 < dim; b += 2) {
        const double d = n01(rng);
        const double e = n01(rng);
        h(b, b) = d;
        h(b + 1, b + 1) = -d;
        k(b, b + 1) = e;
        k(b + 1, b) = e;
    }
    const ComplexMatrix u = random_unitary(dim, rng);
    const ComplexMatrix x = u * (h + Complex(0.0, 1.0) * k) * adjoint(u);
    return x;
}

} // namespace berezin
