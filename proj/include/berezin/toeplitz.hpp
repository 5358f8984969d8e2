#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "berezin/core.hpp"
#include "berezin/matrix.hpp"

#include <nlohmann/json.hpp>

namespace berezin {

/// Finitely supported Fourier coefficient map k -> c_k describing a
/// trigonometric-polynomial Toeplitz symbol. Lookup outside the support is 0.
class SymbolSeries {
public:
    SymbolSeries() = default;

    void set(int k, Complex c) {
        if (c == Complex{})
            coeffs_.erase(k);
        else
            coeffs_[k] = c;
    }

    Complex coeff(int k) const {
        const auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Complex{} : it->second;
    }

    const std::map<int, Complex>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    /// c_k -> conj(c_{-k}); the matrix of the reflected symbol is exactly
    /// the adjoint of the original Toeplitz matrix.
    SymbolSeries conjugate_reflection() const {
        SymbolSeries s;
        for (const auto& [k, c] : coeffs_) s.set(-k, std::conj(c));
        return s;
    }

    /// Parses {"k": [re, im], ...}.
    static SymbolSeries from_json(const nlohmann::json& j) {
        if (!j.is_object()) throw ParseError("symbol: expected a JSON object");
        SymbolSeries s;
        for (const auto& [key, val] : j.items()) {
            int k = 0;
            try {
                k = std::stoi(key);
            } catch (const std::exception&) {
                throw ParseError("symbol: key '" + key + "' is not an integer");
            }
            if (!val.is_array() || val.size() != 2 || !val[0].is_number() || !val[1].is_number())
                throw ParseError("symbol: coefficient for '" + key + "' must be [re, im]");
            s.set(k, Complex(val[0].get<double>(), val[1].get<double>()));
        }
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, c] : coeffs_) j[std::to_string(k)] = {c.real(), c.imag()};
        return j;
    }

private:
    std::map<int, Complex> coeffs_;
};

/// Truncated Toeplitz matrix: entry (i, j) = c_{i-j}. This is the compression
/// of multiplication by the symbol to the degree-<N polynomial subspace in
/// the monomial basis.
inline ComplexMatrix toeplitz_matrix(const SymbolSeries& s, std::size_t n) {
    if (n < 1) throw DimMismatch("toeplitz_matrix: N must be >= 1");
    ComplexMatrix t(n);
    for (const auto& [k, c] : s.coeffs()) {
        for (std::size_t i = 0; i < n; ++i) {
            const long j = static_cast<long>(i) - k;
            if (j >= 0 && j < static_cast<long>(n)) t(i, static_cast<std::size_t>(j)) = c;
        }
    }
    return t;
}

/// Harmonic extension into the disk:
/// sum_{k>=0} c_k lambda^k + sum_{k<0} c_k conj(lambda)^{|k|}.
inline Complex harmonic_extension(const SymbolSeries& s, Complex lambda) {
    if (std::abs(lambda) >= 1.0) throw OutsideDisk("harmonic_extension: |lambda| must be < 1");
    Complex out{};
    for (const auto& [k, c] : s.coeffs()) {
        if (k >= 0)
            out += c * std::pow(lambda, k);
        else
            out += c * std::pow(std::conj(lambda), -k);
    }
    return out;
}

/// Lower estimate of ||phi||_inf with a Lipschitz-certified gap:
/// the true sup norm lies in [value, value + gap].
struct SupNormEstimate {
    double value = 0.0;
    double gap = 0.0;
};

inline SupNormEstimate symbol_sup_norm(const SymbolSeries& s, int circle_steps) {
    circle_steps = std::max(circle_steps, 16);
    auto eval = [&s](double theta) {
        Complex v{};
        for (const auto& [k, c] : s.coeffs()) v += c * std::polar(1.0, k * theta);
        return std::abs(v);
    };
    double best = 0.0, best_theta = 0.0;
    for (int m = 0; m < circle_steps; ++m) {
        const double theta = 2.0 * std::numbers::pi * m / circle_steps;
        const double v = eval(theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    const double h = 2.0 * std::numbers::pi / circle_steps;
    best = std::max(best, detail::golden_max(eval, best_theta - h, best_theta + h, 48));
    double lipschitz = 0.0;
    for (const auto& [k, c] : s.coeffs()) lipschitz += std::abs(k) * std::abs(c);
    return {best, lipschitz * std::numbers::pi / circle_steps};
}

} // namespace berezin
