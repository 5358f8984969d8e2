#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "berezin/core.hpp"
#include "berezin/eig.hpp"
#include "berezin/ensemble.hpp"
#include "berezin/matrix.hpp"
#include "berezin/rkhs.hpp"
#include "berezin/toeplitz.hpp"

namespace berezin {

enum class CheckKind { SupLevel, Diagnostic };
enum class Outcome { Pass, Fail, NotApplicable };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::NotApplicable: return "na";
    }
    return "?";
}

inline const char* to_string(CheckKind k) {
    return k == CheckKind::SupLevel ? "sup-level" : "diagnostic";
}

/// One checkable inequality. `anchor` names the statement the check covers;
/// `pointwise` marks entries that additionally admit an exact per-point form
/// with no sampling gap.
struct CatalogEntry {
    std::string id;
    std::vector<std::string> roles; // operand slots: subset of A, B, X, Y
    std::string hypothesis;         // textual predicate; empty when unconditional
    CheckKind kind = CheckKind::SupLevel;
    bool pointwise = false;
    std::string anchor;
};

/// Sampling parameters shared by all checks.
struct SamplingPlan {
    int radial = 24;
    int angular = 96;
    double max_radius = kDefaultMaxRadius;
    int refine_steps = 3;
    int theta_steps = 720;        // rotation-sup grids
    int theta_refine = 40;        // golden-section iterations
    int radius_theta_steps = 128; // numerical-radius grid inside power checks
    int boundary_angular = 64;    // ring samples for boundary diagnostics
};

struct Operands {
    std::optional<ComplexMatrix> A, B, X, Y;
    Complex alpha{1.0, 0.0};
    unsigned power = 2;
    std::optional<SymbolSeries> symbol;
    Vector x, y;
    std::string descriptor;
};

struct CheckResult {
    std::string id;
    std::string model;
    std::size_t dim = 0;
    int trial = -1;
    std::uint64_t seed = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double ratio = 0.0;
    Outcome outcome = Outcome::Pass;
    double tolerance = 0.0;
    int grid_radial = 0;
    int grid_angular = 0;
    int refinement = 0;
    std::string operand_desc;
    std::string note;

    bool pass() const { return outcome != Outcome::Fail; }
};

inline const std::vector<CatalogEntry>& list_catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        auto add = [&v](std::string id, std::vector<std::string> roles, std::string hyp,
                        CheckKind kind, bool pw, std::string anchor) {
            v.push_back({std::move(id), std::move(roles), std::move(hyp), kind, pw,
                         std::move(anchor)});
        };
        add("C01", {"A"}, "", CheckKind::SupLevel, false, "ber(A) <= ||A||");
        add("C02", {"A"}, "", CheckKind::SupLevel, false, "ber(aA) = |a| ber(A)");
        add("C03", {"A", "B"}, "", CheckKind::SupLevel, false, "ber(A+B) <= ber(A)+ber(B)");
        add("C04", {"X"}, "", CheckKind::SupLevel, false,
            "rotation-sup identity ber(X) = sup_t ber(Re(e^{it}X)) = sup_t ber(Im(e^{it}X))");
        add("C05", {"X"}, "", CheckKind::SupLevel, false,
            "ber(H) <= ber(X) <= sqrt(ber^2(H)+ber^2(K))");
        add("C06", {"A", "X"}, "", CheckKind::SupLevel, true,
            "ber^2(AX+-XA*) <= 2||A||^2 (ber(H^2)+ber(K^2)+sqrt((ber(H^2)-ber(K^2))^2+ber^2(HK+KH)))");
        add("C07", {"A", "X"}, "HK + KH = 0", CheckKind::SupLevel, false,
            "ber(AX+-XA*) <= 2||A|| max(ber^{1/2}(H^2), ber^{1/2}(K^2))");
        add("C08", {"A", "X"}, "X self-adjoint", CheckKind::SupLevel, false,
            "ber(AX+-XA*) <= 2||A|| ber^{1/2}(X^2)");
        add("C09", {"A", "X"}, "X self-adjoint", CheckKind::SupLevel, false,
            "ber(AX) <= ||A|| ber^{1/2}(X^2)");
        add("C10", {"A", "X"}, "", CheckKind::SupLevel, true,
            "ber(AX+-XA) <= ber^{1/2}(A*A+AA*) ber^{1/2}(X*X+XX*)");
        add("C11", {"A", "X"}, "", CheckKind::SupLevel, true,
            "ber(AX+-XA) <= ber^{1/2}(A*A+X*X) ber^{1/2}(AA*+XX*)");
        add("C12", {"X"}, "", CheckKind::SupLevel, false,
            "ber^2(X) <= ber(I+X*X) ber(I+XX*)");
        add("C13", {"X"}, "", CheckKind::SupLevel, true,
            "ber^2(X) <= (1/2) ber(X*X+XX*)");
        add("C14", {"X"}, "", CheckKind::SupLevel, false,
            "chain (1/2)ber(X*X+XX*) <= (1/2)(ber(X*X)+ber(XX*)) <= (1/2)(||X*X||+||XX*||) = ||X||^2");
        add("C15", {"A", "B", "X"}, "", CheckKind::SupLevel, true,
            "ber^2(A*XB) <= ||X||^2 ber(A*A) ber(B*B)");
        add("C16", {"A", "B", "X"}, "", CheckKind::SupLevel, true,
            "ber(A*XB) <= (1/2) ber(B*|X|B + A*|X*|A)");
        add("C17", {"A", "B"}, "", CheckKind::SupLevel, false,
            "ber^2(A*B) <= ber(A*A) ber(B*B); ber(A*B) <= (1/2) ber(A*A+B*B)");
        add("C18", {"A", "B", "X"}, "||A|| > 0 and ||B|| > 0 (weighted form)",
            CheckKind::SupLevel, false,
            "geometric-mean and weighted forms of the A*XB bound");
        add("C19", {"A", "B", "X", "Y"}, "", CheckKind::SupLevel, true,
            "ber(A*XB+B*YA) <= sqrt(2)|| |X|+|Y*| || ber^{1/2}(B*B) ber^{1/2}(A*A)");
        add("C20", {"A", "B", "X", "Y"}, "", CheckKind::SupLevel, true,
            "ber(A*XB+B*YA) <= (||X||+||Y||) ber^{1/2}(B*B) ber^{1/2}(A*A)");
        add("C21", {"A", "B", "X"}, "", CheckKind::SupLevel, false,
            "ber(A*X+-XA) <= 2||X|| ber^{1/2}(A*A); ber(A*B+-B*A) <= 2 ber^{1/2}(B*B) ber^{1/2}(A*A)");
        add("C22", {"A"}, "ber(A) > 1e-8 ||A||", CheckKind::SupLevel, false,
            "ber(A^n) <= ber^n(A) (w(A)/ber(A))^n = w^n(A)");
        add("C23", {}, "hardy model with trigonometric-polynomial symbol",
            CheckKind::Diagnostic, false,
            "truncated Toeplitz: ber(T_phi) <= ||phi||_inf, with convergence in N");
        add("C24", {"A"}, "boundary defect small and power floor positive",
            CheckKind::Diagnostic, false,
            "conditional power inequality ber(A^n) <= ber^n(A) via boundary-defect diagnostics");
        add("C25", {"A", "B"}, "disk model", CheckKind::Diagnostic, false,
            "|AB~(l)| <= ber(A)ber(B) + ||B|| defect_A(l) on the outermost ring");
        add("C26", {"A", "B"}, "disk model", CheckKind::Diagnostic, false,
            "ber(AB) - ber(A)ber(B) <= sqrt(B*B~(l0)(AA*~(l0)-|A~(l0)|^2)) at some point");
        add("L2", {"X"}, "", CheckKind::SupLevel, false,
            "mixed Schwarz |<Xx,y>|^2 <= <|X|x,x><|X*|y,y>");
        std::sort(v.begin(), v.end(),
                  [](const CatalogEntry& a, const CatalogEntry& b) { return a.id < b.id; });
        return v;
    }();
    return entries;
}

inline const CatalogEntry& find_entry(const std::string& id) {
    for (const CatalogEntry& e : list_catalog())
        if (e.id == id) return e;
    throw UnknownEntry("unknown catalog entry: " + id);
}

namespace detail {

inline double comparison_tol(double rhs) { return 1e-8 * (1.0 + std::abs(rhs)); }

inline CheckResult make_result(const std::string& id, double lhs, double rhs, double tol,
                               bool equality = false) {
    CheckResult r;
    r.id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.ratio = lhs / std::max(rhs, 1e-300);
    r.tolerance = tol;
    const bool ok = equality ? std::abs(rhs - lhs) <= tol : lhs <= rhs + tol;
    r.outcome = ok ? Outcome::Pass : Outcome::Fail;
    return r;
}

inline CheckResult not_applicable(const std::string& id, std::string note) {
    CheckResult r;
    r.id = id;
    r.outcome = Outcome::NotApplicable;
    r.note = std::move(note);
    return r;
}

/// Keeps whichever of two part-results is closer to violation; a Fail on
/// either side dominates.
inline CheckResult worst_of(CheckResult a, CheckResult b) {
    const bool fa = a.outcome == Outcome::Fail;
    const bool fb = b.outcome == Outcome::Fail;
    CheckResult r = (fa == fb) ? (a.margin <= b.margin ? a : b) : (fa ? a : b);
    if (fa || fb) r.outcome = Outcome::Fail;
    return r;
}

/// Shared evaluation state for one (model, plan) pair. Left-hand sups use the
/// fixed refinement budget; right-hand sups refine until 1e-6-relative
/// stability and always have the left side's argmax injected into their grid,
/// so a sup on the right is never evaluated on a coarser set than the left.
class EvalCtx {
public:
    EvalCtx(const RkhsModel& model, const SamplingPlan& plan)
        : model_(model), plan_(plan), grid_(model.make_grid(plan.radial, plan.angular)) {}

    const RkhsModel& model() const { return model_; }
    const SamplingPlan& plan() const { return plan_; }
    const DomainGrid& grid() const { return grid_; }

    ProfileRefiner lhs_profile(const ComplexMatrix& m) const {
        ProfileRefiner r(model_, m, grid_);
        for (int i = 0; i < plan_.refine_steps; ++i) r.refine_round();
        return r;
    }

    double rhs_ber(const ComplexMatrix& m, const DomainPoint& inject) const {
        ProfileRefiner r(model_, m, grid_, {inject});
        return r.refine_until_stable();
    }

    std::vector<Complex> symbols_on_grid(const ComplexMatrix& m) const {
        std::vector<Complex> s;
        s.reserve(grid_.points.size());
        for (const DomainPoint& p : grid_.points) s.push_back(berezin_symbol(model_, m, p));
        return s;
    }

    void stamp(CheckResult& r) const {
        r.model = model_.name();
        r.dim = model_.dim();
        r.grid_radial = grid_.radial;
        r.grid_angular = grid_.angular;
    }

private:
    const RkhsModel& model_;
    const SamplingPlan& plan_;
    DomainGrid grid_;
};

inline const ComplexMatrix& need(const std::optional<ComplexMatrix>& m, const char* role,
                                 const std::string& id) {
    if (!m) throw ConfigError("entry " + id + " requires operand " + role);
    return *m;
}

inline bool is_hermitian(const ComplexMatrix& m) {
    return (m - adjoint(m)).frobenius_norm() <= 1e-10 * m.frobenius_norm();
}

/// sup over theta of max_i |Re(e^{i theta} s_i)| (or the Im variant),
/// via a theta grid, golden-section refinement around the best cell, and
/// candidate angles seeded from the top samples.
inline double rotation_sup(const std::vector<Complex>& samples, bool imaginary_part,
                           int theta_steps, int theta_refine) {
    auto f = [&samples, imaginary_part](double theta) {
        const Complex e = std::polar(1.0, theta);
        double best = 0.0;
        for (const Complex& s : samples) {
            const Complex v = e * s;
            best = std::max(best, std::abs(imaginary_part ? v.imag() : v.real()));
        }
        return best;
    };
    double best = 0.0, best_theta = 0.0;
    for (int i = 0; i < theta_steps; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / theta_steps;
        const double v = f(theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    const double h = 2.0 * std::numbers::pi / theta_steps;
    best = std::max(best, golden_max(f, best_theta - h, best_theta + h, theta_refine));

    // Candidate angles where individual samples peak.
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&samples](std::size_t i, std::size_t j) {
        return std::abs(samples[i]) > std::abs(samples[j]);
    });
    const std::size_t top = std::min<std::size_t>(8, order.size());
    for (std::size_t t = 0; t < top; ++t) {
        const double phase = std::arg(samples[order[t]]);
        const double seed = imaginary_part ? std::numbers::pi / 2.0 - phase : -phase;
        best = std::max(best, f(seed));
    }
    return best;
}

} // namespace detail

/// Vector-level mixed Schwarz inequality; unit vectors are not required.
inline CheckResult mixed_schwarz_check(const ComplexMatrix& x, const Vector& xs,
                                       const Vector& ys) {
    if (xs.size() != x.dim() || ys.size() != x.dim())
        throw DimMismatch("mixed_schwarz_check: vector sizes must match the operator");
    const double lhs = std::norm(inner(matvec(x, xs), ys));
    const ComplexMatrix ax = abs_op(x);
    const ComplexMatrix axs = abs_op(adjoint(x));
    const double rhs =
        inner(matvec(ax, xs), xs).real() * inner(matvec(axs, ys), ys).real();
    CheckResult r = detail::make_result("L2", lhs, rhs, 1e-10 * (1.0 + rhs));
    r.dim = x.dim();
    return r;
}

// --- sup-level evaluation -------------------------------------------------

namespace detail {

inline CheckResult check_c01(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C01");
    const double lhs = ctx.lhs_profile(a).ber_estimate();
    const double rhs = op_norm(a);
    return make_result("C01", lhs, rhs, comparison_tol(rhs));
}

inline CheckResult check_c02(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C02");
    ProfileRefiner base = ctx.lhs_profile(a);
    const BerezinProfile prof = base.profile();
    const ComplexMatrix scaled = ops.alpha * a;
    double lhs = 0.0;
    for (const BerezinSample& s : prof.samples)
        lhs = std::max(lhs, std::abs(berezin_symbol(ctx.model(), scaled, s.point)));
    const double rhs = std::abs(ops.alpha) * prof.ber_estimate;
    return make_result("C02", lhs, rhs, 1e-12 * (1.0 + rhs), /*equality=*/true);
}

inline CheckResult check_c03(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C03");
    const ComplexMatrix& b = need(ops.B, "B", "C03");
    ProfileRefiner lp = ctx.lhs_profile(a + b);
    const double rhs = ctx.rhs_ber(a, lp.argmax_point()) + ctx.rhs_ber(b, lp.argmax_point());
    return make_result("C03", lp.ber_estimate(), rhs, comparison_tol(rhs));
}

inline CheckResult check_c04(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& x = need(ops.X, "X", "C04");
    ProfileRefiner lp = ctx.lhs_profile(x);
    const BerezinProfile prof = lp.profile();
    std::vector<Complex> samples;
    samples.reserve(prof.samples.size());
    for (const BerezinSample& s : prof.samples) samples.push_back(s.value);
    const double rhs = prof.ber_estimate;
    const double re_sup = rotation_sup(samples, false, ctx.plan().theta_steps,
                                       ctx.plan().theta_refine);
    const double im_sup = rotation_sup(samples, true, ctx.plan().theta_steps,
                                       ctx.plan().theta_refine);
    const double tol = 1e-6 * (1.0 + rhs);
    const double lhs = std::abs(re_sup - rhs) >= std::abs(im_sup - rhs) ? re_sup : im_sup;
    CheckResult r = make_result("C04", lhs, rhs, tol, /*equality=*/true);
    r.note = "re_sup=" + std::to_string(re_sup) + " im_sup=" + std::to_string(im_sup);
    return r;
}

inline CheckResult check_c05(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& x = need(ops.X, "X", "C05");
    const auto [h, k] = cartesian_parts(x);
    ProfileRefiner lph = ctx.lhs_profile(h);
    const double rhs1 = ctx.rhs_ber(x, lph.argmax_point());
    CheckResult lower = make_result("C05", lph.ber_estimate(), rhs1, comparison_tol(rhs1));

    ProfileRefiner lpx = ctx.lhs_profile(x);
    const double bh = ctx.rhs_ber(h, lpx.argmax_point());
    const double bk = ctx.rhs_ber(k, lpx.argmax_point());
    const double rhs2 = std::sqrt(bh * bh + bk * bk);
    CheckResult upper = make_result("C05", lpx.ber_estimate(), rhs2, comparison_tol(rhs2));
    return worst_of(lower, upper);
}

inline CheckResult check_c06(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C06");
    const ComplexMatrix& x = need(ops.X, "X", "C06");
    const auto [h, k] = cartesian_parts(x);
    const ComplexMatrix h2 = h * h, k2 = k * k, hk = h * k + k * h;
    const ComplexMatrix xa = x * adjoint(a);
    const double na2 = op_norm(a) * op_norm(a);
    std::optional<CheckResult> out;
    for (int sign : {+1, -1}) {
        ComplexMatrix m = a * x;
        if (sign > 0)
            m += xa;
        else
            m -= xa;
        ProfileRefiner lp = ctx.lhs_profile(m);
        const double bh = ctx.rhs_ber(h2, lp.argmax_point());
        const double bk = ctx.rhs_ber(k2, lp.argmax_point());
        const double bc = ctx.rhs_ber(hk, lp.argmax_point());
        const double rhs = 2.0 * na2 * (bh + bk + std::sqrt((bh - bk) * (bh - bk) + bc * bc));
        const double lhs = lp.ber_estimate() * lp.ber_estimate();
        CheckResult r = make_result("C06", lhs, rhs, comparison_tol(rhs));
        out = out ? worst_of(*out, r) : r;
    }
    return *out;
}

inline CheckResult check_c07(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C07");
    const ComplexMatrix& x = need(ops.X, "X", "C07");
    const auto [h, k] = cartesian_parts(x);
    const double anti = op_norm(h * k + k * h);
    if (anti > 1e-10 * op_norm(h) * op_norm(k))
        return not_applicable("C07", "hypothesis HK+KH=0 not met");
    const ComplexMatrix h2 = h * h, k2 = k * k;
    const ComplexMatrix xa = x * adjoint(a);
    const double na = op_norm(a);
    std::optional<CheckResult> out;
    for (int sign : {+1, -1}) {
        ComplexMatrix m = a * x;
        if (sign > 0)
            m += xa;
        else
            m -= xa;
        ProfileRefiner lp = ctx.lhs_profile(m);
        const double bh = ctx.rhs_ber(h2, lp.argmax_point());
        const double bk = ctx.rhs_ber(k2, lp.argmax_point());
        const double rhs = 2.0 * na * std::sqrt(std::max(bh, bk));
        CheckResult r = make_result("C07", lp.ber_estimate(), rhs, comparison_tol(rhs));
        out = out ? worst_of(*out, r) : r;
    }
    return *out;
}

inline CheckResult check_c08_c09(const EvalCtx& ctx, const Operands& ops, bool with_adjoint) {
    const std::string id = with_adjoint ? "C08" : "C09";
    const ComplexMatrix& a = need(ops.A, "A", id);
    const ComplexMatrix& x = need(ops.X, "X", id);
    if (!is_hermitian(x)) return not_applicable(id, "hypothesis X self-adjoint not met");
    const ComplexMatrix x2 = x * x;
    const double na = op_norm(a);
    if (!with_adjoint) {
        ProfileRefiner lp = ctx.lhs_profile(a * x);
        const double rhs = na * std::sqrt(ctx.rhs_ber(x2, lp.argmax_point()));
        return make_result(id, lp.ber_estimate(), rhs, comparison_tol(rhs));
    }
    const ComplexMatrix xa = x * adjoint(a);
    std::optional<CheckResult> out;
    for (int sign : {+1, -1}) {
        ComplexMatrix m = a * x;
        if (sign > 0)
            m += xa;
        else
            m -= xa;
        ProfileRefiner lp = ctx.lhs_profile(m);
        const double rhs = 2.0 * na * std::sqrt(ctx.rhs_ber(x2, lp.argmax_point()));
        CheckResult r = make_result(id, lp.ber_estimate(), rhs, comparison_tol(rhs));
        out = out ? worst_of(*out, r) : r;
    }
    return *out;
}

inline CheckResult check_c10_c11(const EvalCtx& ctx, const Operands& ops, bool symmetric_split) {
    const std::string id = symmetric_split ? "C10" : "C11";
    const ComplexMatrix& a = need(ops.A, "A", id);
    const ComplexMatrix& x = need(ops.X, "X", id);
    const ComplexMatrix aa = adjoint(a) * a, aas = a * adjoint(a);
    const ComplexMatrix xx = adjoint(x) * x, xxs = x * adjoint(x);
    const ComplexMatrix left = symmetric_split ? aa + aas : aa + xx;
    const ComplexMatrix right = symmetric_split ? xx + xxs : aas + xxs;
    std::optional<CheckResult> out;
    for (int sign : {+1, -1}) {
        ComplexMatrix m = a * x;
        if (sign > 0)
            m += x * a;
        else
            m -= x * a;
        ProfileRefiner lp = ctx.lhs_profile(m);
        const double rhs = std::sqrt(ctx.rhs_ber(left, lp.argmax_point())) *
                           std::sqrt(ctx.rhs_ber(right, lp.argmax_point()));
        CheckResult r = make_result(id, lp.ber_estimate(), rhs, comparison_tol(rhs));
        out = out ? worst_of(*out, r) : r;
    }
    return *out;
}

inline CheckResult check_c12(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& x = need(ops.X, "X", "C12");
    const ComplexMatrix id = ComplexMatrix::identity(x.dim());
    ProfileRefiner lp = ctx.lhs_profile(x);
    const double lhs = lp.ber_estimate() * lp.ber_estimate();
    const double rhs = ctx.rhs_ber(id + adjoint(x) * x, lp.argmax_point()) *
                       ctx.rhs_ber(id + x * adjoint(x), lp.argmax_point());
    return make_result("C12", lhs, rhs, comparison_tol(rhs));
}

inline CheckResult check_c13(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& x = need(ops.X, "X", "C13");
    ProfileRefiner lp = ctx.lhs_profile(x);
    const double lhs = lp.ber_estimate() * lp.ber_estimate();
    const double rhs =
        0.5 * ctx.rhs_ber(adjoint(x) * x + x * adjoint(x), lp.argmax_point());
    return make_result("C13", lhs, rhs, comparison_tol(rhs));
}

inline CheckResult check_c14(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& x = need(ops.X, "X", "C14");
    const ComplexMatrix g = adjoint(x) * x, gs = x * adjoint(x);
    const ComplexMatrix sum = g + gs;
    ProfileRefiner lpx = ctx.lhs_profile(x);
    const double link0_lhs = lpx.ber_estimate() * lpx.ber_estimate();
    const double link0_rhs = 0.5 * ctx.rhs_ber(sum, lpx.argmax_point());
    CheckResult r0 = make_result("C14", link0_lhs, link0_rhs, comparison_tol(link0_rhs));

    ProfileRefiner lps = ctx.lhs_profile(sum);
    const double link1_lhs = 0.5 * lps.ber_estimate();
    const double link1_rhs = 0.5 * (ctx.rhs_ber(g, lps.argmax_point()) +
                                    ctx.rhs_ber(gs, lps.argmax_point()));
    CheckResult r1 = make_result("C14", link1_lhs, link1_rhs, comparison_tol(link1_rhs));

    const double norms = 0.5 * (op_norm(g) + op_norm(gs));
    CheckResult r2 = make_result("C14", link1_rhs, norms, comparison_tol(norms));

    const double nx = op_norm(x);
    CheckResult r3 = make_result("C14", norms, nx * nx, 1e-10 * (1.0 + nx * nx),
                                 /*equality=*/true);
    return worst_of(worst_of(r0, r1), worst_of(r2, r3));
}

inline CheckResult check_c15(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C15");
    const ComplexMatrix& b = need(ops.B, "B", "C15");
    const ComplexMatrix& x = need(ops.X, "X", "C15");
    ProfileRefiner lp = ctx.lhs_profile(adjoint(a) * x * b);
    const double lhs = lp.ber_estimate() * lp.ber_estimate();
    const double nx = op_norm(x);
    const double rhs = nx * nx * ctx.rhs_ber(adjoint(a) * a, lp.argmax_point()) *
                       ctx.rhs_ber(adjoint(b) * b, lp.argmax_point());
    return make_result("C15", lhs, rhs, comparison_tol(rhs));
}

inline CheckResult check_c16(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C16");
    const ComplexMatrix& b = need(ops.B, "B", "C16");
    const ComplexMatrix& x = need(ops.X, "X", "C16");
    ProfileRefiner lp = ctx.lhs_profile(adjoint(a) * x * b);
    const ComplexMatrix mix =
        adjoint(b) * abs_op(x) * b + adjoint(a) * abs_op(adjoint(x)) * a;
    const double rhs = 0.5 * ctx.rhs_ber(mix, lp.argmax_point());
    return make_result("C16", lp.ber_estimate(), rhs, comparison_tol(rhs));
}

inline CheckResult check_c17(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C17");
    const ComplexMatrix& b = need(ops.B, "B", "C17");
    ProfileRefiner lp = ctx.lhs_profile(adjoint(a) * b);
    const double ber_ab = lp.ber_estimate();
    const double rhs1 = ctx.rhs_ber(adjoint(a) * a, lp.argmax_point()) *
                        ctx.rhs_ber(adjoint(b) * b, lp.argmax_point());
    CheckResult part1 = make_result("C17", ber_ab * ber_ab, rhs1, comparison_tol(rhs1));
    const double rhs2 =
        0.5 * ctx.rhs_ber(adjoint(a) * a + adjoint(b) * b, lp.argmax_point());
    CheckResult part2 = make_result("C17", ber_ab, rhs2, comparison_tol(rhs2));
    return worst_of(part1, part2);
}

inline CheckResult check_c18(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C18");
    const ComplexMatrix& b = need(ops.B, "B", "C18");
    const ComplexMatrix& x = need(ops.X, "X", "C18");
    const ComplexMatrix bx = adjoint(b) * abs_op(x) * b;
    const ComplexMatrix ax = adjoint(a) * abs_op(adjoint(x)) * a;
    ProfileRefiner lp = ctx.lhs_profile(adjoint(a) * x * b);
    const double lhs = lp.ber_estimate();
    const double rhs1 = std::sqrt(ctx.rhs_ber(bx, lp.argmax_point())) *
                        std::sqrt(ctx.rhs_ber(ax, lp.argmax_point()));
    CheckResult part1 = make_result("C18", lhs, rhs1, comparison_tol(rhs1));

    const double na = op_norm(a), nb = op_norm(b);
    if (na <= 0.0 || nb <= 0.0)
        return worst_of(part1, not_applicable("C18", "weighted form needs ||A||,||B|| > 0"));
    const double rhs2 = 0.5 * ctx.rhs_ber(Complex(nb / na) * bx + Complex(na / nb) * ax,
                                          lp.argmax_point());
    CheckResult part2 = make_result("C18", lhs, rhs2, comparison_tol(rhs2));
    return worst_of(part1, part2);
}

inline CheckResult check_c19_c20(const EvalCtx& ctx, const Operands& ops, bool via_abs) {
    const std::string id = via_abs ? "C19" : "C20";
    const ComplexMatrix& a = need(ops.A, "A", id);
    const ComplexMatrix& b = need(ops.B, "B", id);
    const ComplexMatrix& x = need(ops.X, "X", id);
    const ComplexMatrix& y = need(ops.Y, "Y", id);
    ProfileRefiner lp = ctx.lhs_profile(adjoint(a) * x * b + adjoint(b) * y * a);
    const double factor = via_abs
                              ? std::sqrt(2.0) * op_norm(abs_op(x) + abs_op(adjoint(y)))
                              : op_norm(x) + op_norm(y);
    const double rhs = factor * std::sqrt(ctx.rhs_ber(adjoint(b) * b, lp.argmax_point())) *
                       std::sqrt(ctx.rhs_ber(adjoint(a) * a, lp.argmax_point()));
    return make_result(id, lp.ber_estimate(), rhs, comparison_tol(rhs));
}

inline CheckResult check_c21(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C21");
    const ComplexMatrix& b = need(ops.B, "B", "C21");
    const ComplexMatrix& x = need(ops.X, "X", "C21");
    std::optional<CheckResult> out;
    const double nx = op_norm(x);
    for (int sign : {+1, -1}) {
        ComplexMatrix m1 = adjoint(a) * x;
        ComplexMatrix m2 = adjoint(a) * b;
        if (sign > 0) {
            m1 += x * a;
            m2 += adjoint(b) * a;
        } else {
            m1 -= x * a;
            m2 -= adjoint(b) * a;
        }
        ProfileRefiner lp1 = ctx.lhs_profile(m1);
        const double rhs1 =
            2.0 * nx * std::sqrt(ctx.rhs_ber(adjoint(a) * a, lp1.argmax_point()));
        CheckResult part1 = make_result("C21", lp1.ber_estimate(), rhs1, comparison_tol(rhs1));

        ProfileRefiner lp2 = ctx.lhs_profile(m2);
        const double rhs2 =
            2.0 * std::sqrt(ctx.rhs_ber(adjoint(b) * b, lp2.argmax_point())) *
            std::sqrt(ctx.rhs_ber(adjoint(a) * a, lp2.argmax_point()));
        CheckResult part2 = make_result("C21", lp2.ber_estimate(), rhs2, comparison_tol(rhs2));
        CheckResult r = worst_of(part1, part2);
        out = out ? worst_of(*out, r) : r;
    }
    return *out;
}

inline CheckResult check_c22(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& a = need(ops.A, "A", "C22");
    ProfileRefiner base = ctx.lhs_profile(a);
    if (base.ber_estimate() <= 1e-8 * op_norm(a) || a.frobenius_norm() == 0.0)
        return not_applicable("C22", "ber(A) below ratio threshold");
    const unsigned n = std::max(1u, ops.power);
    ProfileRefiner lp = ctx.lhs_profile(matrix_power(a, n));
    const RadiusEnclosure w = numerical_radius(a, ctx.plan().radius_theta_steps, 30);
    const double rhs = std::pow(w.upper, n);
    CheckResult r = make_result("C22", lp.ber_estimate(), rhs, comparison_tol(rhs));
    r.note = "n=" + std::to_string(n);
    return r;
}

inline CheckResult check_c23(const EvalCtx& ctx, const Operands& ops) {
    if (ctx.model().kind() != ModelKind::Hardy)
        return not_applicable("C23", "needs a hardy model");
    if (!ops.symbol) return not_applicable("C23", "needs a toeplitz symbol operand");
    const ComplexMatrix t = toeplitz_matrix(*ops.symbol, ctx.model().dim());
    ProfileRefiner lp = ctx.lhs_profile(t);
    const SupNormEstimate ssn = symbol_sup_norm(*ops.symbol, 4096);
    const double rhs = ssn.value + ssn.gap;
    CheckResult r = make_result("C23", lp.ber_estimate(), rhs, comparison_tol(rhs));
    std::ostringstream os;
    os << "opnorm=" << op_norm(t) << " sup_norm=" << ssn.value;
    r.note = os.str();
    return r;
}

inline CheckResult check_c24(const EvalCtx& ctx, const Operands& ops) {
    if (!ctx.model().is_disk()) return not_applicable("C24", "needs a disk model");
    const ComplexMatrix& a = need(ops.A, "A", "C24");
    const unsigned n = std::max(1u, ops.power);
    std::vector<double> radii;
    for (int j = 1; j <= 6; ++j) radii.push_back(ctx.model().max_radius() * j / 6.0);
    const DefectCurve curve = boundary_defect(ctx.model(), a, radii, ctx.plan().boundary_angular);
    const double floor =
        symbol_power_floor(ctx.model(), a, n, radii, ctx.plan().boundary_angular);

    ProfileRefiner lpn = ctx.lhs_profile(matrix_power(a, n));
    const double base = ctx.rhs_ber(a, lpn.argmax_point());
    const double rhs = std::pow(base, n);
    CheckResult r = make_result("C24", lpn.ber_estimate(), rhs, comparison_tol(rhs));
    std::ostringstream os;
    os << "n=" << n << " defect_outer=" << curve.values.back() << " power_floor=" << floor;
    r.note = os.str();
    // The conclusion is only asserted under the empirical gates; otherwise
    // the measured quantities are reported without a verdict.
    if (!(curve.values.back() < 0.05 && floor > 1e-3)) {
        r.outcome = Outcome::NotApplicable;
        r.note += " (gates not met)";
    }
    return r;
}

inline CheckResult check_c25(const EvalCtx& ctx, const Operands& ops) {
    if (!ctx.model().is_disk()) return not_applicable("C25", "needs a disk model");
    const ComplexMatrix& a = need(ops.A, "A", "C25");
    const ComplexMatrix& b = need(ops.B, "B", "C25");
    const ComplexMatrix ab = a * b;
    const double r_out = ctx.model().max_radius();
    double ring_max = 0.0;
    DomainPoint argmax = DomainPoint::disk_point(r_out, 0.0);
    for (int m = 0; m < ctx.plan().boundary_angular; ++m) {
        const double theta = 2.0 * std::numbers::pi * m / ctx.plan().boundary_angular;
        const DomainPoint p = DomainPoint::disk_point(r_out, theta);
        const double v = std::abs(berezin_symbol(ctx.model(), ab, p));
        if (v > ring_max) {
            ring_max = v;
            argmax = p;
        }
    }
    const double ber_a = ctx.rhs_ber(a, argmax);
    const double ber_b = ctx.rhs_ber(b, argmax);
    const double defect = point_defect(ctx.model(), a, argmax);
    const double rhs = ber_a * ber_b + op_norm(b) * defect;
    CheckResult r = make_result("C25", ring_max, rhs, comparison_tol(rhs));
    std::ostringstream os;
    os << "ring_max=" << ring_max << " ber_product=" << ber_a * ber_b
       << " defect=" << defect;
    r.note = os.str();
    return r;
}

inline CheckResult check_c26(const EvalCtx& ctx, const Operands& ops) {
    if (!ctx.model().is_disk()) return not_applicable("C26", "needs a disk model");
    const ComplexMatrix& a = need(ops.A, "A", "C26");
    const ComplexMatrix& b = need(ops.B, "B", "C26");
    const ComplexMatrix ab = a * b;
    const ComplexMatrix bb = adjoint(b) * b;
    const ComplexMatrix aas = a * adjoint(a);
    ProfileRefiner lp = ctx.lhs_profile(ab);
    const double ber_a = ctx.rhs_ber(a, lp.argmax_point());
    const double ber_b = ctx.rhs_ber(b, lp.argmax_point());
    const double gap = lp.ber_estimate() - ber_a * ber_b;

    auto bound_at = [&](const DomainPoint& p) {
        const double sb = inner(matvec(bb, ctx.model().normalized_kernel(p)),
                                ctx.model().normalized_kernel(p))
                              .real();
        const Vector k = ctx.model().normalized_kernel(p);
        const double sa = inner(matvec(aas, k), k).real();
        const double sym = std::norm(inner(matvec(a, k), k));
        return std::sqrt(std::max(0.0, sb * (sa - sym)));
    };

    double best_bound = bound_at(lp.argmax_point());
    const double tol = comparison_tol(std::abs(gap));
    if (gap > best_bound + tol) {
        for (const BerezinSample& s : lp.profile().samples) {
            best_bound = std::max(best_bound, bound_at(s.point));
            if (gap <= best_bound + tol) break;
        }
    }
    CheckResult r = make_result("C26", gap, best_bound, tol);
    double ring_max = 0.0;
    for (int m = 0; m < ctx.plan().boundary_angular; ++m) {
        const double theta = 2.0 * std::numbers::pi * m / ctx.plan().boundary_angular;
        ring_max = std::max(ring_max, std::abs(berezin_symbol(
                                          ctx.model(), ab,
                                          DomainPoint::disk_point(ctx.model().max_radius(),
                                                                  theta))));
    }
    std::ostringstream os;
    os << "outer_ring_max_AB=" << ring_max;
    r.note = os.str();
    return r;
}

inline CheckResult check_l2(const EvalCtx& ctx, const Operands& ops) {
    const ComplexMatrix& x = need(ops.X, "X", "L2");
    if (ops.x.empty() || ops.y.empty())
        throw ConfigError("entry L2 requires vectors x and y");
    CheckResult r = mixed_schwarz_check(x, ops.x, ops.y);
    (void)ctx;
    return r;
}

} // namespace detail

inline CheckResult evaluate_check(const std::string& id, const RkhsModel& model,
                                  const Operands& ops, const SamplingPlan& plan) {
    find_entry(id); // throws UnknownEntry
    detail::EvalCtx ctx(model, plan);
    CheckResult r;
    if (id == "C01") r = detail::check_c01(ctx, ops);
    else if (id == "C02") r = detail::check_c02(ctx, ops);
    else if (id == "C03") r = detail::check_c03(ctx, ops);
    else if (id == "C04") r = detail::check_c04(ctx, ops);
    else if (id == "C05") r = detail::check_c05(ctx, ops);
    else if (id == "C06") r = detail::check_c06(ctx, ops);
    else if (id == "C07") r = detail::check_c07(ctx, ops);
    else if (id == "C08") r = detail::check_c08_c09(ctx, ops, true);
    else if (id == "C09") r = detail::check_c08_c09(ctx, ops, false);
    else if (id == "C10") r = detail::check_c10_c11(ctx, ops, true);
    else if (id == "C11") r = detail::check_c10_c11(ctx, ops, false);
    else if (id == "C12") r = detail::check_c12(ctx, ops);
    else if (id == "C13") r = detail::check_c13(ctx, ops);
    else if (id == "C14") r = detail::check_c14(ctx, ops);
    else if (id == "C15") r = detail::check_c15(ctx, ops);
    else if (id == "C16") r = detail::check_c16(ctx, ops);
    else if (id == "C17") r = detail::check_c17(ctx, ops);
    else if (id == "C18") r = detail::check_c18(ctx, ops);
    else if (id == "C19") r = detail::check_c19_c20(ctx, ops, true);
    else if (id == "C20") r = detail::check_c19_c20(ctx, ops, false);
    else if (id == "C21") r = detail::check_c21(ctx, ops);
    else if (id == "C22") r = detail::check_c22(ctx, ops);
    else if (id == "C23") r = detail::check_c23(ctx, ops);
    else if (id == "C24") r = detail::check_c24(ctx, ops);
    else if (id == "C25") r = detail::check_c25(ctx, ops);
    else if (id == "C26") r = detail::check_c26(ctx, ops);
    else if (id == "L2") r = detail::check_l2(ctx, ops);
    else throw UnknownEntry("unknown catalog entry: " + id);
    ctx.stamp(r);
    r.id = id;
    r.refinement = plan.refine_steps;
    r.operand_desc = ops.descriptor;
    return r;
}

// --- exact-pointwise evaluation --------------------------------------------

namespace detail {

struct PointwiseAcc {
    double worst_margin = std::numeric_limits<double>::infinity();
    double lhs = 0.0, rhs = 0.0;
    bool fail = false;

    void feed(double lhs_p, double rhs_p) {
        const double tol = 1e-10 * (1.0 + std::abs(rhs_p));
        const double margin = rhs_p - lhs_p;
        if (lhs_p > rhs_p + tol) fail = true;
        if (margin < worst_margin) {
            worst_margin = margin;
            lhs = lhs_p;
            rhs = rhs_p;
        }
    }

    CheckResult result(const std::string& id) const {
        CheckResult r = make_result(id, lhs, rhs, 1e-10 * (1.0 + std::abs(rhs)));
        r.outcome = fail ? Outcome::Fail : Outcome::Pass;
        r.margin = worst_margin;
        return r;
    }
};

inline double grid_sup(const std::vector<Complex>& symbols) {
    double m = 0.0;
    for (const Complex& s : symbols) m = std::max(m, std::abs(s));
    return m;
}

} // namespace detail

/// Per-point inequality forms (available where the underlying argument is a
/// genuine per-point bound). Sup terms appearing on the right are taken over
/// the same grid the left side is evaluated on, so no sampling gap applies
/// and the tolerance is a pure roundoff allowance.
inline CheckResult evaluate_pointwise(const std::string& id, const RkhsModel& model,
                                      const Operands& ops, const SamplingPlan& plan) {
    const CatalogEntry& entry = find_entry(id);
    if (!entry.pointwise)
        throw UnknownEntry("entry " + id + " has no exact-pointwise form");
    detail::EvalCtx ctx(model, plan);
    detail::PointwiseAcc acc;
    const std::size_t npts = ctx.grid().points.size();

    if (id == "C06") {
        const ComplexMatrix& a = detail::need(ops.A, "A", id);
        const ComplexMatrix& x = detail::need(ops.X, "X", id);
        const auto [h, k] = cartesian_parts(x);
        const auto sh2 = ctx.symbols_on_grid(h * h);
        const auto sk2 = ctx.symbols_on_grid(k * k);
        const auto shk = ctx.symbols_on_grid(h * k + k * h);
        const double bh = detail::grid_sup(sh2), bk = detail::grid_sup(sk2);
        const double na2 = op_norm(a) * op_norm(a);
        const ComplexMatrix xa = x * adjoint(a);
        for (int sign : {+1, -1}) {
            ComplexMatrix m = a * x;
            if (sign > 0) m += xa; else m -= xa;
            const auto sm = ctx.symbols_on_grid(m);
            for (std::size_t i = 0; i < npts; ++i) {
                const double c = shk[i].real();
                const double rhs =
                    2.0 * na2 * (bh + bk + std::sqrt((bh - bk) * (bh - bk) + c * c));
                acc.feed(std::norm(sm[i]), rhs);
            }
        }
    } else if (id == "C10" || id == "C11") {
        const ComplexMatrix& a = detail::need(ops.A, "A", id);
        const ComplexMatrix& x = detail::need(ops.X, "X", id);
        const ComplexMatrix aa = adjoint(a) * a, aas = a * adjoint(a);
        const ComplexMatrix xx = adjoint(x) * x, xxs = x * adjoint(x);
        const auto sl = ctx.symbols_on_grid(id == "C10" ? aa + aas : aa + xx);
        const auto sr = ctx.symbols_on_grid(id == "C10" ? xx + xxs : aas + xxs);
        for (int sign : {+1, -1}) {
            ComplexMatrix m = a * x;
            if (sign > 0) m += x * a; else m -= x * a;
            const auto sm = ctx.symbols_on_grid(m);
            for (std::size_t i = 0; i < npts; ++i)
                acc.feed(std::abs(sm[i]),
                         std::sqrt(std::max(0.0, sl[i].real())) *
                             std::sqrt(std::max(0.0, sr[i].real())));
        }
    } else if (id == "C13") {
        const ComplexMatrix& x = detail::need(ops.X, "X", id);
        const auto sx = ctx.symbols_on_grid(x);
        const auto ss = ctx.symbols_on_grid(adjoint(x) * x + x * adjoint(x));
        for (std::size_t i = 0; i < npts; ++i)
            acc.feed(std::norm(sx[i]), 0.5 * ss[i].real());
    } else if (id == "C15" || id == "C16") {
        const ComplexMatrix& a = detail::need(ops.A, "A", id);
        const ComplexMatrix& b = detail::need(ops.B, "B", id);
        const ComplexMatrix& x = detail::need(ops.X, "X", id);
        const auto sm = ctx.symbols_on_grid(adjoint(a) * x * b);
        if (id == "C15") {
            const auto sa = ctx.symbols_on_grid(adjoint(a) * a);
            const auto sb = ctx.symbols_on_grid(adjoint(b) * b);
            const double nx2 = op_norm(x) * op_norm(x);
            for (std::size_t i = 0; i < npts; ++i)
                acc.feed(std::norm(sm[i]),
                         nx2 * std::max(0.0, sa[i].real()) * std::max(0.0, sb[i].real()));
        } else {
            const auto smix = ctx.symbols_on_grid(
                adjoint(b) * abs_op(x) * b + adjoint(a) * abs_op(adjoint(x)) * a);
            for (std::size_t i = 0; i < npts; ++i)
                acc.feed(std::abs(sm[i]), 0.5 * smix[i].real());
        }
    } else if (id == "C19" || id == "C20") {
        const ComplexMatrix& a = detail::need(ops.A, "A", id);
        const ComplexMatrix& b = detail::need(ops.B, "B", id);
        const ComplexMatrix& x = detail::need(ops.X, "X", id);
        const ComplexMatrix& y = detail::need(ops.Y, "Y", id);
        const auto sm = ctx.symbols_on_grid(adjoint(a) * x * b + adjoint(b) * y * a);
        const auto sa = ctx.symbols_on_grid(adjoint(a) * a);
        const auto sb = ctx.symbols_on_grid(adjoint(b) * b);
        const double factor =
            id == "C19" ? std::sqrt(2.0) * op_norm(abs_op(x) + abs_op(adjoint(y)))
                        : op_norm(x) + op_norm(y);
        for (std::size_t i = 0; i < npts; ++i)
            acc.feed(std::abs(sm[i]),
                     factor * std::sqrt(std::max(0.0, sb[i].real())) *
                         std::sqrt(std::max(0.0, sa[i].real())));
    }

    CheckResult r = acc.result(id);
    ctx.stamp(r);
    r.refinement = 0;
    r.operand_desc = ops.descriptor;
    return r;
}

// --- operand generation & tightness search ---------------------------------

/// Draws one operand tuple for an entry, honoring its hypothesis (C07 gets a
/// constructed anticommuting Cartesian pair, C08/C09 a Hermitian X, etc.).
inline Operands draw_operands(const CatalogEntry& entry, EnsembleKind kind, std::size_t dim,
                              Rng& rng) {
    Operands ops;
    for (const std::string& role : entry.roles) {
        ComplexMatrix m = draw_matrix(kind, dim, rng);
        if (role == "A") ops.A = std::move(m);
        else if (role == "B") ops.B = std::move(m);
        else if (role == "X") ops.X = std::move(m);
        else if (role == "Y") ops.Y = std::move(m);
    }
    if (entry.id == "C07") ops.X = anticommuting_cartesian_draw(dim, rng);
    if (entry.id == "C08" || entry.id == "C09") {
        const auto [h, k] = cartesian_parts(*ops.X);
        ops.X = h;
    }
    if (entry.id == "C02") ops.alpha = complex_gaussian(rng);
    if (entry.id == "C22" || entry.id == "C24")
        ops.power = 2 + static_cast<unsigned>(rng() % 3);
    if (entry.id == "C23") ops.symbol = random_symbol(rng, 3);
    if (entry.id == "L2") {
        ops.x = random_unit_vector(dim, rng);
        ops.y = random_unit_vector(dim, rng);
    }
    std::ostringstream os;
    os << "kind=" << to_string(kind) << " dim=" << dim;
    if (entry.id == "C22" || entry.id == "C24") os << " n=" << ops.power;
    ops.descriptor = os.str();
    return ops;
}

/// Random restarts plus Gaussian local perturbation, accepting lhs/rhs ratio
/// improvements. A ratio beyond 1 + tolerance is a genuine violation and is
/// surfaced immediately.
inline CheckResult tightness_search(const std::string& id, const RkhsModel& model,
                                    EnsembleKind kind, int iterations, std::uint64_t seed,
                                    const SamplingPlan& plan = {}) {
    const CatalogEntry& entry = find_entry(id);
    if (iterations < 1) throw ConfigError("tightness_search: iterations must be >= 1");
    Rng rng(seed);
    std::normal_distribution<double> n01(0.0, 1.0);

    auto perturb = [&](const Operands& base) {
        Operands ops = base;
        const double sigma = 0.2;
        for (std::optional<ComplexMatrix>* slot : {&ops.A, &ops.B, &ops.X, &ops.Y}) {
            if (!*slot) continue;
            ComplexMatrix& m = **slot;
            for (std::size_t i = 0; i < m.dim(); ++i)
                for (std::size_t j = 0; j < m.dim(); ++j)
                    m(i, j) += sigma * complex_gaussian(rng);
        }
        if (entry.id == "C07") ops.X = anticommuting_cartesian_draw(model.dim(), rng);
        if (entry.id == "C08" || entry.id == "C09") {
            const auto [h, k] = cartesian_parts(*ops.X);
            ops.X = h;
        }
        return ops;
    };

    std::optional<CheckResult> best;
    Operands best_ops;
    for (int it = 0; it < iterations; ++it) {
        Operands ops = (!best || it % 8 == 0) ? draw_operands(entry, kind, model.dim(), rng)
                                              : perturb(best_ops);
        CheckResult r = evaluate_check(id, model, ops, plan);
        if (r.outcome == Outcome::Fail) return r;
        if (r.outcome == Outcome::NotApplicable) continue;
        if (!best || r.ratio > best->ratio) {
            best = r;
            best_ops = ops;
        }
    }
    if (!best) return detail::not_applicable(id, "no applicable draws in search");
    return *best;
}

} // namespace berezin
