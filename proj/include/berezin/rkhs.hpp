#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "berezin/matrix.hpp"

#include <nlohmann/json.hpp>

namespace berezin {

enum class ModelKind { Hardy, Bergman, Diagonal };

inline const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Hardy: return "hardy";
        case ModelKind::Bergman: return "bergman";
        case ModelKind::Diagonal: return "diagonal";
    }
    return "?";
}

/// A point of the model's domain. Disk points carry exact polar parameters
/// so that grid refinement can subdivide deterministically; finite domains
/// use the label index.
struct DomainPoint {
    bool disk = true;
    double r = 0.0;
    double theta = 0.0;
    std::size_t label = 0;

    Complex z() const { return std::polar(r, theta); }

    static DomainPoint disk_point(double r, double theta) { return {true, r, theta, 0}; }
    static DomainPoint finite_point(std::size_t label) { return {false, 0.0, 0.0, label}; }
};

/// Deterministic sampling of the domain.
struct DomainGrid {
    std::vector<DomainPoint> points;
    int radial = 0;
    int angular = 0;
    double max_radius = 0.0;
    int refinement_depth = 0;
};

inline constexpr double kDefaultMaxRadius = 0.995;

/// Finite-dimensional functional Hilbert space model. The truncated disk
/// models are genuine RKHSs (polynomials of degree < N), so Berezin symbols
/// computed on them are exact, not approximations.
class RkhsModel {
public:
    static RkhsModel hardy(std::size_t n, double max_radius = kDefaultMaxRadius) {
        check_radius(max_radius);
        return RkhsModel(ModelKind::Hardy, n, max_radius,
                         "hardy" + std::to_string(n));
    }

    static RkhsModel bergman(std::size_t n, double max_radius = kDefaultMaxRadius) {
        check_radius(max_radius);
        return RkhsModel(ModelKind::Bergman, n, max_radius,
                         "bergman" + std::to_string(n));
    }

    /// Orthonormal-kernel model on `count` labels: k_i = e_i, so the Berezin
    /// symbol of A at point i is the diagonal entry a_ii.
    static RkhsModel diagonal(std::size_t count) {
        RkhsModel m(ModelKind::Diagonal, count, 0.0, "diagonal" + std::to_string(count));
        for (std::size_t i = 0; i < count; ++i) m.labels_.push_back(std::to_string(i));
        return m;
    }

    ModelKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    double max_radius() const { return max_radius_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool is_disk() const { return kind_ != ModelKind::Diagonal; }

    /// Coordinates of the unnormalized kernel k_lambda in the fixed
    /// orthonormal basis. Hardy: conj(lambda)^n. Bergman: sqrt(n+1) conj(lambda)^n.
    Vector kernel_coords(const DomainPoint& p) const {
        if (is_disk()) {
            if (p.disk) return disk_kernel(p.z());
            throw InadmissiblePoint("kernel_coords: finite point on a disk model");
        }
        if (p.disk) throw InadmissiblePoint("kernel_coords: disk point on a finite model");
        if (p.label >= dim_) throw InadmissiblePoint("kernel_coords: label out of range");
        Vector k(dim_);
        k[p.label] = 1.0;
        return k;
    }

    Vector kernel_coords(Complex lambda) const {
        if (!is_disk()) throw NotDiskModel("kernel_coords(lambda): model has a finite domain");
        return disk_kernel(lambda);
    }

    Vector normalized_kernel(const DomainPoint& p) const {
        Vector k = kernel_coords(p);
        const double nrm = vec_norm(k);
        for (Complex& v : k) v /= nrm;
        return k;
    }

    /// Disk: points r_j e^{i theta_m}, r_j = maxRadius (j+1)/radialCount,
    /// theta_m = 2 pi m / angularCount. Finite: all labels (counts ignored).
    DomainGrid make_grid(int radial_count, int angular_count) const {
        DomainGrid g;
        if (!is_disk()) {
            for (std::size_t i = 0; i < dim_; ++i) g.points.push_back(DomainPoint::finite_point(i));
            return g;
        }
        radial_count = std::max(radial_count, 1);
        angular_count = std::max(angular_count, 1);
        g.radial = radial_count;
        g.angular = angular_count;
        g.max_radius = max_radius_;
        g.points.reserve(static_cast<std::size_t>(radial_count) * angular_count);
        for (int j = 0; j < radial_count; ++j) {
            const double r = max_radius_ * (j + 1) / radial_count;
            for (int m = 0; m < angular_count; ++m) {
                const double theta = 2.0 * std::numbers::pi * m / angular_count;
                g.points.push_back(DomainPoint::disk_point(r, theta));
            }
        }
        return g;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"name", name_}, {"kind", to_string(kind_)}, {"dim", dim_}};
        if (is_disk())
            j["maxRadius"] = max_radius_;
        else
            j["labels"] = labels_;
        return j;
    }

private:
    RkhsModel(ModelKind kind, std::size_t dim, double max_radius, std::string name)
        : kind_(kind), dim_(dim), max_radius_(max_radius), name_(std::move(name)) {
        if (dim == 0) throw DimMismatch("RkhsModel: dimension must be >= 1");
    }

    static void check_radius(double r) {
        if (!(r > 0.0 && r < 1.0)) throw BadRadius("maxRadius must lie in (0, 1)");
    }

    Vector disk_kernel(Complex lambda) const {
        if (std::abs(lambda) >= 1.0)
            throw InadmissiblePoint("kernel_coords: |lambda| must be < 1");
        Vector k(dim_);
        const Complex lc = std::conj(lambda);
        Complex p = 1.0;
        for (std::size_t n = 0; n < dim_; ++n) {
            k[n] = (kind_ == ModelKind::Bergman) ? std::sqrt(double(n + 1)) * p : p;
            p *= lc;
        }
        return k;
    }

    ModelKind kind_;
    std::size_t dim_;
    double max_radius_;
    std::string name_;
    std::vector<std::string> labels_;
};

} // namespace berezin
