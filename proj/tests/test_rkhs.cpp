#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "berezin/rkhs.hpp"

using namespace berezin;

TEST_CASE("model factories validate inputs") {
    CHECK_THROWS_AS(RkhsModel::hardy(8, 1.0), BadRadius);
    CHECK_THROWS_AS(RkhsModel::hardy(8, 0.0), BadRadius);
    CHECK_THROWS_AS(RkhsModel::bergman(8, -0.5), BadRadius);
    CHECK_NOTHROW(RkhsModel::hardy(8, 0.995));
}

TEST_CASE("hardy kernel coordinates") {
    const RkhsModel m = RkhsModel::hardy(4);
    const Complex lambda(0.3, 0.4);
    const Vector k = m.kernel_coords(lambda);
    REQUIRE(k.size() == 4);
    const Complex lc = std::conj(lambda);
    CHECK(std::abs(k[0] - Complex(1.0)) < 1e-15);
    CHECK(std::abs(k[1] - lc) < 1e-15);
    CHECK(std::abs(k[2] - lc * lc) < 1e-15);
    CHECK(std::abs(k[3] - lc * lc * lc) < 1e-14);

    const Vector nk = m.normalized_kernel(DomainPoint::disk_point(0.5, 1.0));
    CHECK(vec_norm(nk) == Catch::Approx(1.0));
}

TEST_CASE("bergman kernel coordinates carry sqrt(n+1) weights") {
    const RkhsModel m = RkhsModel::bergman(3);
    const Vector k = m.kernel_coords(Complex(0.5, 0.0));
    CHECK(std::abs(k[0] - Complex(1.0)) < 1e-15);
    CHECK(std::abs(k[1] - Complex(std::sqrt(2.0) * 0.5)) < 1e-15);
    CHECK(std::abs(k[2] - Complex(std::sqrt(3.0) * 0.25)) < 1e-15);
}

TEST_CASE("diagonal model uses basis vectors") {
    const RkhsModel m = RkhsModel::diagonal(3);
    CHECK_FALSE(m.is_disk());
    CHECK(m.labels().size() == 3);
    const Vector k = m.kernel_coords(DomainPoint::finite_point(1));
    CHECK(k[0] == Complex(0.0));
    CHECK(k[1] == Complex(1.0));
    CHECK(k[2] == Complex(0.0));
    CHECK_THROWS_AS(m.kernel_coords(DomainPoint::finite_point(3)), InadmissiblePoint);
    CHECK_THROWS_AS(m.kernel_coords(DomainPoint::disk_point(0.5, 0.0)), InadmissiblePoint);
    CHECK_THROWS_AS(m.kernel_coords(Complex(0.1, 0.1)), NotDiskModel);
}

TEST_CASE("disk models reject points outside the open disk") {
    const RkhsModel m = RkhsModel::hardy(4);
    CHECK_THROWS_AS(m.kernel_coords(Complex(1.0, 0.0)), InadmissiblePoint);
    CHECK_THROWS_AS(m.kernel_coords(DomainPoint::finite_point(0)), InadmissiblePoint);
}

TEST_CASE("grid construction") {
    const RkhsModel m = RkhsModel::hardy(4, 0.9);
    const DomainGrid g = m.make_grid(5, 12);
    CHECK(g.points.size() == 60);
    CHECK(g.radial == 5);
    CHECK(g.angular == 12);
    double max_r = 0.0;
    for (const DomainPoint& p : g.points) {
        CHECK(p.disk);
        CHECK(p.r > 0.0);
        max_r = std::max(max_r, p.r);
    }
    CHECK(max_r == Catch::Approx(0.9));

    const RkhsModel d = RkhsModel::diagonal(4);
    const DomainGrid gd = d.make_grid(5, 12);
    CHECK(gd.points.size() == 4);
    CHECK_FALSE(gd.points[0].disk);
}

TEST_CASE("model serialization") {
    const auto jh = RkhsModel::hardy(8).to_json();
    CHECK(jh["kind"] == "hardy");
    CHECK(jh["dim"] == 8);
    CHECK(jh["maxRadius"] == Catch::Approx(0.995));
    const auto jd = RkhsModel::diagonal(2).to_json();
    CHECK(jd["kind"] == "diagonal");
    CHECK(jd["labels"].size() == 2);
}
