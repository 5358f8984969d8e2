#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "berezin/eig.hpp"
#include "berezin/matrix.hpp"
#include "berezin/rkhs.hpp"

namespace berezin {

struct BerezinSample {
    DomainPoint point;
    Complex value;
};

/// Sampled Berezin symbol of one operator on one model. ber_estimate is the
/// exact max of |value| over the samples, hence a certified lower bound of
/// the model's true Berezin number.
struct BerezinProfile {
    std::vector<BerezinSample> samples;
    double ber_estimate = 0.0;
    DomainPoint argmax_point;
    int refinement_depth = 0;
};

/// <A k_hat, k_hat> at the given point. Throws DimMismatch / InadmissiblePoint.
inline Complex berezin_symbol(const RkhsModel& model, const ComplexMatrix& a,
                              const DomainPoint& p) {
    if (a.dim() != model.dim()) throw DimMismatch("berezin_symbol: operator/model dims differ");
    const Vector k = model.normalized_kernel(p);
    return inner(matvec(a, k), k);
}

inline Complex berezin_symbol(const RkhsModel& model, const ComplexMatrix& a, Complex lambda) {
    if (a.dim() != model.dim()) throw DimMismatch("berezin_symbol: operator/model dims differ");
    Vector k = model.kernel_coords(lambda);
    const double nrm = vec_norm(k);
    for (Complex& v : k) v /= nrm;
    return inner(matvec(a, k), k);
}

namespace detail {

inline constexpr int kRefineTopPoints = 5;
inline constexpr int kRefineDepthCap = 6;

} // namespace detail

/// Incremental grid evaluation with local subdivision. Each refinement round
/// bisects (in r and theta) the neighborhoods of the current top-5 samples;
/// samples are only ever added, so the estimate is monotone nondecreasing.
class ProfileRefiner {
public:
    ProfileRefiner(const RkhsModel& model, const ComplexMatrix& a, const DomainGrid& grid,
                   const std::vector<DomainPoint>& extra_points = {})
        : model_(&model), op_(&a) {
        if (a.dim() != model.dim())
            throw DimMismatch("berezin_profile: operator/model dims differ");
        const double dr = grid.radial > 0 ? grid.max_radius / grid.radial : 0.0;
        const double dtheta = grid.angular > 0 ? 2.0 * std::numbers::pi / grid.angular : 0.0;
        for (const DomainPoint& p : grid.points) add_candidate(p, dr, dtheta);
        for (const DomainPoint& p : extra_points) add_candidate(p, dr, dtheta);
    }

    double ber_estimate() const { return best_abs_; }
    int depth() const { return depth_; }

    /// One subdivision round; no-op on finite domains.
    double refine_round() {
        if (!model_->is_disk() || depth_ >= detail::kRefineDepthCap) return best_abs_;
        std::vector<std::size_t> order(cands_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [this](std::size_t i, std::size_t j) {
            return std::abs(cands_[i].value) > std::abs(cands_[j].value);
        });
        const std::size_t top = std::min<std::size_t>(detail::kRefineTopPoints, order.size());
        const double max_r = model_->max_radius();
        for (std::size_t t = 0; t < top; ++t) {
            const Candidate c = cands_[order[t]]; // copy: cands_ grows below
            const double hr = c.dr / 2.0, ht = c.dtheta / 2.0;
            for (int er = -1; er <= 1; ++er)
                for (int et = -1; et <= 1; ++et) {
                    if (er == 0 && et == 0) continue;
                    double r = c.point.r + er * hr;
                    r = std::clamp(r, hr > 0.0 ? hr / 2.0 : c.point.r, max_r);
                    add_candidate(DomainPoint::disk_point(r, c.point.theta + et * ht), hr, ht);
                }
        }
        ++depth_;
        return best_abs_;
    }

    /// Refine until two successive rounds agree to `rel_tol` relative
    /// (used to stabilize sup terms on the right-hand side of inequalities).
    double refine_until_stable(double rel_tol = 1e-6) {
        double prev = best_abs_;
        while (depth_ < detail::kRefineDepthCap && model_->is_disk()) {
            const double cur = refine_round();
            if (std::abs(cur - prev) < rel_tol * (1.0 + cur)) break;
            prev = cur;
        }
        return best_abs_;
    }

    BerezinProfile profile() const {
        BerezinProfile p;
        p.samples.reserve(cands_.size());
        for (const Candidate& c : cands_) p.samples.push_back({c.point, c.value});
        p.ber_estimate = best_abs_;
        p.argmax_point = argmax_;
        p.refinement_depth = depth_;
        return p;
    }

    Complex value_at_argmax() const { return best_value_; }
    const DomainPoint& argmax_point() const { return argmax_; }

private:
    struct Candidate {
        DomainPoint point;
        double dr, dtheta;
        Complex value;
    };

    void add_candidate(const DomainPoint& p, double dr, double dtheta) {
        const Complex v = berezin_symbol(*model_, *op_, p);
        const bool first = cands_.empty();
        cands_.push_back({p, dr, dtheta, v});
        const double av = std::abs(v);
        // `first` keeps the argmax a valid domain point even for the zero symbol.
        if (first || av > best_abs_) {
            best_abs_ = av;
            best_value_ = v;
            argmax_ = p;
        }
    }

    const RkhsModel* model_;
    const ComplexMatrix* op_;
    std::vector<Candidate> cands_;
    double best_abs_ = 0.0;
    Complex best_value_{};
    DomainPoint argmax_{};
    int depth_ = 0;
};

inline BerezinProfile berezin_profile(const RkhsModel& model, const ComplexMatrix& a,
                                      const DomainGrid& grid, int refine_steps,
                                      const std::vector<DomainPoint>& extra_points = {}) {
    ProfileRefiner ref(model, a, grid, extra_points);
    for (int i = 0; i < refine_steps; ++i) ref.refine_round();
    return ref.profile();
}

/// Certified enclosure of the numerical radius w(A) = sup_theta
/// lambda_max(Re(e^{i theta} A)). The grid maximum is refined by
/// golden-section search; the upper bound uses the Lipschitz constant ||A||.
struct RadiusEnclosure {
    double lower = 0.0;
    double upper = 0.0;
};

namespace detail {

inline double rotated_real_part_max_eig(const ComplexMatrix& a, double theta) {
    const std::size_t n = a.dim();
    const Complex e = std::polar(1.0, theta);
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (e * a(i, j) + std::conj(e * a(j, i)));
    return hermitian_eigenvalues(h).back();
}

/// Golden-section maximization of f on [lo, hi] (assumed locally unimodal).
template <class F>
double golden_max(F&& f, double lo, double hi, int iterations) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    double best = std::max(f1, f2);
    for (int i = 0; i < iterations; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

} // namespace detail

inline RadiusEnclosure numerical_radius(const ComplexMatrix& a, int angular_steps = 720,
                                        int refine_steps = 40) {
    angular_steps = std::max(angular_steps, 8);
    double grid_max = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int i = 0; i < angular_steps; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / angular_steps;
        const double f = detail::rotated_real_part_max_eig(a, theta);
        if (f > grid_max) {
            grid_max = f;
            best_theta = theta;
        }
    }
    const double h = 2.0 * std::numbers::pi / angular_steps;
    double lower = grid_max;
    if (refine_steps > 0)
        lower = std::max(lower,
                         detail::golden_max(
                             [&a](double t) { return detail::rotated_real_part_max_eig(a, t); },
                             best_theta - h, best_theta + h, refine_steps));
    const double lipschitz = op_norm(a);
    const double upper = std::max(lower, grid_max + lipschitz * std::numbers::pi / angular_steps);
    return {lower, upper};
}

/// ||(A* - conj(A~(lambda))) k_hat_lambda||: the boundary-defect quantity.
/// Works on any model (on the diagonal model at point i this expands to
/// sqrt(sum_{j != i} |a_ij|^2)).
inline double point_defect(const RkhsModel& model, const ComplexMatrix& a, const DomainPoint& p) {
    if (a.dim() != model.dim()) throw DimMismatch("point_defect: operator/model dims differ");
    const Vector k = model.normalized_kernel(p);
    Vector v = matvec(adjoint(a), k);
    const Complex c = std::conj(inner(matvec(a, k), k));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * k[i];
    return vec_norm(v);
}

struct DefectCurve {
    std::vector<double> radii;
    std::vector<double> values; // max over the theta grid at each radius
};

inline DefectCurve boundary_defect(const RkhsModel& model, const ComplexMatrix& a,
                                   const std::vector<double>& radii, int angular_steps) {
    if (!model.is_disk()) throw NotDiskModel("boundary_defect requires a disk model");
    angular_steps = std::max(angular_steps, 1);
    DefectCurve curve;
    for (double r : radii) {
        double worst = 0.0;
        for (int m = 0; m < angular_steps; ++m) {
            const double theta = 2.0 * std::numbers::pi * m / angular_steps;
            worst = std::max(worst, point_defect(model, a, DomainPoint::disk_point(r, theta)));
        }
        curve.radii.push_back(r);
        curve.values.push_back(worst);
    }
    return curve;
}

/// min over the outermost radius ring of |(A^n)~(lambda)|: the finite
/// truncation proxy for the non-vanishing boundary condition.
inline double symbol_power_floor(const RkhsModel& model, const ComplexMatrix& a, unsigned n,
                                 const std::vector<double>& radii, int angular_steps) {
    if (!model.is_disk()) throw NotDiskModel("symbol_power_floor requires a disk model");
    if (n < 1) throw Error("symbol_power_floor: n must be >= 1");
    const double r = radii.empty() ? model.max_radius() : *std::max_element(radii.begin(), radii.end());
    const ComplexMatrix an = matrix_power(a, n);
    angular_steps = std::max(angular_steps, 1);
    double floor = std::numeric_limits<double>::infinity();
    for (int m = 0; m < angular_steps; ++m) {
        const double theta = 2.0 * std::numbers::pi * m / angular_steps;
        floor = std::min(floor,
                         std::abs(berezin_symbol(model, an, DomainPoint::disk_point(r, theta))));
    }
    return floor;
}

} // namespace berezin
