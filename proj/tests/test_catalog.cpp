#include <catch_amalgamated.hpp>

#include <cmath>

#include "berezin/catalog.hpp"

using namespace berezin;

namespace {

const SamplingPlan kSmallPlan = [] {
    SamplingPlan p;
    p.radial = 12;
    p.angular = 48;
    p.refine_steps = 2;
    p.theta_steps = 360;
    p.radius_theta_steps = 96;
    return p;
}();

} // namespace

TEST_CASE("catalog listing") {
    const auto& cat = list_catalog();
    CHECK(cat.size() == 27);
    for (std::size_t i = 1; i < cat.size(); ++i) CHECK(cat[i - 1].id < cat[i].id);

    const CatalogEntry& c13 = find_entry("C13");
    CHECK(c13.roles == std::vector<std::string>{"X"});
    CHECK(c13.kind == CheckKind::SupLevel);
    CHECK(c13.pointwise);

    CHECK(find_entry("C24").kind == CheckKind::Diagnostic);
    CHECK(find_entry("L2").kind == CheckKind::SupLevel);
    CHECK_THROWS_AS(find_entry("C99"), UnknownEntry);

    int pointwise = 0;
    for (const CatalogEntry& e : cat) pointwise += e.pointwise ? 1 : 0;
    CHECK(pointwise == 8);
}

TEST_CASE("C13 on the diagonal model: hand-computed example") {
    // X = [[0,1],[0,0]]: every diagonal entry of X is 0 so lhs = 0;
    // X*X + XX* = I so rhs = 1/2.
    const RkhsModel d = RkhsModel::diagonal(2);
    Operands ops;
    ops.X = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    const CheckResult r = evaluate_check("C13", d, ops, kSmallPlan);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.lhs == Catch::Approx(0.0).margin(1e-14));
    CHECK(r.rhs == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("C01 with the identity: equality") {
    for (const RkhsModel& m : {RkhsModel::diagonal(3), RkhsModel::hardy(6)}) {
        Operands ops;
        ops.A = ComplexMatrix::identity(m.dim());
        const CheckResult r = evaluate_check("C01", m, ops, kSmallPlan);
        CHECK(r.outcome == Outcome::Pass);
        CHECK(std::abs(r.margin) < 1e-10);
        CHECK(r.ratio == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("C15 with A = B = X = I: equality") {
    const RkhsModel m = RkhsModel::hardy(5);
    Operands ops;
    ops.A = ops.B = ops.X = ComplexMatrix::identity(5);
    const CheckResult r = evaluate_check("C15", m, ops, kSmallPlan);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.lhs == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.rhs == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("C12 with X = 0: ratio 0") {
    const RkhsModel m = RkhsModel::diagonal(3);
    Operands ops;
    ops.X = ComplexMatrix(3);
    const CheckResult r = evaluate_check("C12", m, ops, kSmallPlan);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.lhs == Catch::Approx(0.0).margin(1e-14));
    CHECK(r.rhs == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.ratio == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("C22 on the diagonal model: normal diagonal powers") {
    const RkhsModel d = RkhsModel::diagonal(3);
    Operands ops;
    ComplexMatrix a(3);
    a(0, 0) = Complex(0.5, 0.0);
    a(1, 1) = Complex(0.0, -2.0);
    a(2, 2) = Complex(1.0, 1.0);
    ops.A = a;
    ops.power = 3;
    const CheckResult r = evaluate_check("C22", d, ops, kSmallPlan);
    CHECK(r.outcome == Outcome::Pass);
    // lhs = max|d|^n exactly.
    CHECK(r.lhs == Catch::Approx(std::pow(2.0, 3)).margin(1e-10));
    CHECK(r.margin >= -1e-12);
}

TEST_CASE("mixed Schwarz lemma (L2) oracles") {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const Vector e0{Complex(1.0), Complex(0.0)};
    const Vector e1{Complex(0.0), Complex(1.0)};

    CheckResult r = mixed_schwarz_check(id, e0, e0);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.lhs == Catch::Approx(1.0));
    CHECK(r.rhs == Catch::Approx(1.0));

    r = mixed_schwarz_check(ComplexMatrix(2), e0, e1);
    CHECK(r.lhs == Catch::Approx(0.0).margin(1e-15));

    // X = [[0,1],[0,0]], x = e1, y = e0: both sides equal 1.
    const ComplexMatrix j = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    r = mixed_schwarz_check(j, e1, e0);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.lhs == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.rhs == Catch::Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(mixed_schwarz_check(j, Vector(3), e0), DimMismatch);
}

TEST_CASE("hypothesis gating yields NotApplicable, never Fail") {
    const RkhsModel m = RkhsModel::hardy(4);
    Rng rng(5);

    // C07 needs HK + KH = 0; a generic draw does not satisfy it.
    Operands ops;
    ops.A = ginibre_draw(4, rng);
    ops.X = ginibre_draw(4, rng);
    CHECK(evaluate_check("C07", m, ops, kSmallPlan).outcome == Outcome::NotApplicable);

    // A constructed anticommuting pair does satisfy it.
    ops.X = anticommuting_cartesian_draw(4, rng);
    const CheckResult c07 = evaluate_check("C07", m, ops, kSmallPlan);
    CHECK(c07.outcome == Outcome::Pass);

    // C08/C09 need Hermitian X.
    ops.X = ginibre_draw(4, rng);
    CHECK(evaluate_check("C08", m, ops, kSmallPlan).outcome == Outcome::NotApplicable);
    CHECK(evaluate_check("C09", m, ops, kSmallPlan).outcome == Outcome::NotApplicable);
    ops.X = hermitian_draw(4, rng);
    CHECK(evaluate_check("C08", m, ops, kSmallPlan).outcome == Outcome::Pass);
    CHECK(evaluate_check("C09", m, ops, kSmallPlan).outcome == Outcome::Pass);

    // C22 needs ber(A) above the ratio threshold; the zero operator fails it.
    ops.A = ComplexMatrix(4);
    CHECK(evaluate_check("C22", m, ops, kSmallPlan).outcome == Outcome::NotApplicable);

    // Disk-only diagnostics on a finite model.
    const RkhsModel d = RkhsModel::diagonal(4);
    Operands ab;
    ab.A = ginibre_draw(4, rng);
    ab.B = ginibre_draw(4, rng);
    CHECK(evaluate_check("C25", d, ab, kSmallPlan).outcome == Outcome::NotApplicable);
    CHECK(evaluate_check("C26", d, ab, kSmallPlan).outcome == Outcome::NotApplicable);
    Operands sym;
    sym.symbol = random_symbol(rng, 2);
    CHECK(evaluate_check("C23", d, sym, kSmallPlan).outcome == Outcome::NotApplicable);
}

TEST_CASE("C02 homogeneity holds to equality tolerance") {
    const RkhsModel m = RkhsModel::hardy(6);
    Rng rng(31);
    Operands ops;
    ops.A = ginibre_draw(6, rng);
    ops.alpha = Complex(1.7, -2.2);
    const CheckResult r = evaluate_check("C02", m, ops, kSmallPlan);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(std::abs(r.lhs - r.rhs) <= r.tolerance);
}

TEST_CASE("C04 rotation-sup identity on random operators") {
    const RkhsModel m = RkhsModel::hardy(8);
    Rng rng(41);
    for (int t = 0; t < 3; ++t) {
        Operands ops;
        ops.X = ginibre_draw(8, rng);
        const CheckResult r = evaluate_check("C04", m, ops, kSmallPlan);
        CHECK(r.outcome == Outcome::Pass);
        CHECK(std::abs(r.lhs - r.rhs) <= 1e-6 * (1.0 + r.rhs));
    }
}

TEST_CASE("exact-pointwise forms on random draws") {
    const RkhsModel m = RkhsModel::hardy(6);
    Rng rng(53);
    for (const std::string id : {"C06", "C10", "C11", "C13", "C15", "C16", "C19", "C20"}) {
        const CatalogEntry& e = find_entry(id);
        const Operands ops = draw_operands(e, EnsembleKind::Ginibre, 6, rng);
        const CheckResult r = evaluate_pointwise(id, m, ops, kSmallPlan);
        INFO(id);
        CHECK(r.outcome == Outcome::Pass);
    }
    Operands ops;
    ops.A = ginibre_draw(6, rng);
    CHECK_THROWS_AS(evaluate_pointwise("C01", m, ops, kSmallPlan), UnknownEntry);
}

TEST_CASE("missing operands raise ConfigError") {
    const RkhsModel m = RkhsModel::hardy(4);
    Operands empty;
    CHECK_THROWS_AS(evaluate_check("C06", m, empty, kSmallPlan), ConfigError);
    CHECK_THROWS_AS(evaluate_check("C19", m, empty, kSmallPlan), ConfigError);
    CHECK_THROWS_AS(evaluate_check("bogus", m, empty, kSmallPlan), UnknownEntry);
}

TEST_CASE("mini soundness sweep across entries, models, and kinds") {
    const std::vector<RkhsModel> models{RkhsModel::diagonal(3), RkhsModel::hardy(6)};
    for (const CatalogEntry& e : list_catalog()) {
        if (e.kind != CheckKind::SupLevel) continue;
        for (const RkhsModel& m : models) {
            for (int t = 0; t < 3; ++t) {
                const EnsembleKind kind = all_ensemble_kinds()[t % all_ensemble_kinds().size()];
                Rng rng(derive_trial_seed(7, e.id, t));
                const Operands ops = draw_operands(e, kind, m.dim(), rng);
                const CheckResult r = evaluate_check(e.id, m, ops, kSmallPlan);
                INFO(e.id << " on " << m.name() << " trial " << t);
                CHECK(r.outcome != Outcome::Fail);
            }
        }
    }
}

TEST_CASE("diagnostic entries on a disk model") {
    const RkhsModel m = RkhsModel::hardy(8);
    Rng rng(61);
    Operands ops;
    ops.A = ginibre_draw(8, rng);
    ops.B = ginibre_draw(8, rng);
    ops.power = 2;
    for (const std::string id : {"C24", "C25", "C26"}) {
        const CheckResult r = evaluate_check(id, m, ops, kSmallPlan);
        INFO(id << " note: " << r.note);
        CHECK(r.outcome != Outcome::Fail);
    }
}

TEST_CASE("tightness search") {
    // Diagonal matrices on the diagonal model: ber = max|diag| = norm,
    // so C01 is tight with ratio 1.
    const RkhsModel d = RkhsModel::diagonal(3);
    const CheckResult r =
        tightness_search("C01", d, EnsembleKind::Diagonal, 12, 77, kSmallPlan);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.ratio == Catch::Approx(1.0).margin(1e-9));

    // Generic search never exceeds ratio 1 + tolerance.
    const RkhsModel m = RkhsModel::hardy(4);
    const CheckResult g =
        tightness_search("C13", m, EnsembleKind::Ginibre, 10, 99, kSmallPlan);
    CHECK(g.outcome == Outcome::Pass);
    CHECK(g.ratio <= 1.0 + 1e-6);

    CHECK_THROWS_AS(tightness_search("C01", d, EnsembleKind::Ginibre, 0, 1, kSmallPlan),
                    ConfigError);
}
