// berezin-audit: command-line front end for the Berezin-number toolkit.
//
// Subcommands:
//   audit    run the inequality catalog over seeded random ensembles
//   profile  sample the Berezin symbol of one operator to CSV
//   toeplitz truncated-Toeplitz convergence study over a dimension list
//   power    power-inequality and boundary-defect diagnostics
//   tighten  random search for the largest lhs/rhs ratio of one entry
//
// Exit codes: 0 success, 1 inequality failure(s), 2 config/IO error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "berezin/berezin.hpp"

namespace {

using namespace berezin;
using nlohmann::json;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

/// --model accepts explicit descriptors ("hardy:16,diagonal:4") or a bare
/// family name to be combined with --dims.
std::vector<ModelDescriptor> resolve_models(const std::string& model_arg,
                                            const std::string& dims_arg) {
    std::vector<ModelDescriptor> out;
    if (model_arg.empty()) return out;
    const std::vector<std::string> parts = split_commas(model_arg);
    std::vector<std::size_t> dims;
    for (const std::string& d : split_commas(dims_arg)) {
        const long v = std::stol(d);
        if (v < 1) throw ConfigError("--dims entries must be >= 1");
        dims.push_back(static_cast<std::size_t>(v));
    }
    for (const std::string& p : parts) {
        if (p.find(':') != std::string::npos) {
            out.push_back(ModelDescriptor::parse(p));
            continue;
        }
        if (dims.empty())
            throw ConfigError("model family '" + p + "' needs --dims or an explicit ':N'");
        for (std::size_t d : dims) out.push_back(ModelDescriptor::parse(p + ":" + std::to_string(d)));
    }
    return out;
}

json load_json_arg(const std::string& arg, const char* what) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw IoError(std::string("cannot open ") + what + " file: " + arg.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON for ") + what + ": " + e.what());
    }
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
    const std::size_t n = j.size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != n)
            throw ParseError("matrix: row " + std::to_string(i) + " must have " +
                             std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) {
            const json& e = row[k];
            if (e.is_number()) {
                m(i, k) = Complex(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw ParseError("matrix: entries must be numbers or [re, im] pairs");
            }
        }
    }
    if (!m.all_finite()) throw ParseError("matrix: non-finite entry");
    return m;
}

/// Operator sources: {"matrix": [[...]]}, {"toeplitz": {"k": [re,im], ...}},
/// {"ensemble": {"kind": ..., "dim": ..., "index": ..., "seed": ...}},
/// {"shift": N} (the truncated unilateral shift).
ComplexMatrix parse_operator(const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ParseError("operator: expected exactly one of matrix/toeplitz/ensemble/shift");
    if (j.contains("matrix")) return matrix_from_json(j["matrix"]);
    if (j.contains("toeplitz")) {
        const json& t = j["toeplitz"];
        if (!t.is_object() || !t.contains("symbol") || !t.contains("dim"))
            throw ParseError("toeplitz operator needs {\"symbol\": {...}, \"dim\": N}");
        const SymbolSeries s = SymbolSeries::from_json(t["symbol"]);
        return toeplitz_matrix(s, t["dim"].get<std::size_t>());
    }
    if (j.contains("ensemble")) {
        const json& e = j["ensemble"];
        if (!e.is_object() || !e.contains("kind") || !e.contains("dim"))
            throw ParseError("ensemble operator needs {\"kind\", \"dim\"[, \"index\", \"seed\"]}");
        const EnsembleKind kind = parse_ensemble_kind(e["kind"].get<std::string>());
        const std::size_t dim = e["dim"].get<std::size_t>();
        const std::size_t index = e.value("index", std::size_t{0});
        const std::uint64_t seed = e.value("seed", std::uint64_t{42});
        return generate_ensemble(kind, dim, index + 1, seed).back();
    }
    if (j.contains("shift")) {
        const std::size_t n = j["shift"].get<std::size_t>();
        if (n < 2) throw ParseError("shift dimension must be >= 2");
        ComplexMatrix s(n);
        for (std::size_t i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
        return s;
    }
    throw ParseError("operator: expected one of matrix/toeplitz/ensemble/shift");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw IoError("cannot write to " + path);
    return file;
}

int cmd_audit(const std::string& config_path, const std::string& entries_arg,
              const std::string& model_arg, const std::string& dims_arg,
              const std::string& kinds_arg, int trials, std::uint64_t seed, int refine,
              unsigned workers, const std::string& out_json, const std::string& out_csv,
              bool have_trials, bool have_seed, bool have_refine, bool have_workers) {
    AuditConfig config;
    if (!config_path.empty()) config = AuditConfig::from_file(config_path);
    if (!entries_arg.empty()) config.entries = split_commas(entries_arg);
    const std::vector<ModelDescriptor> models = resolve_models(model_arg, dims_arg);
    if (!models.empty()) config.models = models;
    if (!kinds_arg.empty()) {
        config.kinds.clear();
        for (const std::string& k : split_commas(kinds_arg))
            config.kinds.push_back(parse_ensemble_kind(k));
    }
    if (have_trials) config.trials = trials;
    if (have_seed) config.seed = seed;
    if (have_refine) config.plan.refine_steps = refine;
    if (have_workers) config.workers = workers;
    if (!out_json.empty()) config.out_json = out_json;
    if (!out_csv.empty()) config.out_csv = out_csv;
    config.apply_defaults();
    config.validate();

    const AuditReport report = run_audit(config);
    for (const EntryAggregate& a : report.aggregates) {
        std::cout << a.id << ": trials=" << a.trials << " failures=" << a.failures
                  << " na=" << a.not_applicable;
        if (!std::isnan(a.max_ratio))
            std::cout << " min_margin=" << a.min_margin << " max_ratio=" << a.max_ratio;
        std::cout << '\n';
    }
    std::cout << "total failures: " << report.failures() << " (" << report.rows.size()
              << " rows, " << report.duration_ms << " ms)\n";
    return report.failures() == 0 ? 0 : 1;
}

int cmd_profile(const std::string& model_arg, const std::string& op_arg, int radial,
                int angular, double max_radius, int refine, const std::string& out_csv) {
    const ModelDescriptor desc = ModelDescriptor::parse(model_arg);
    ModelDescriptor with_radius = desc;
    with_radius.max_radius = max_radius;
    const RkhsModel model = with_radius.make();
    const ComplexMatrix a = parse_operator(load_json_arg(op_arg, "operator"));
    const DomainGrid grid = model.make_grid(radial, angular);
    const BerezinProfile profile = berezin_profile(model, a, grid, refine);
    std::ofstream file;
    std::ostream& os = open_out(file, out_csv);
    write_profile_csv(model, profile, os);
    std::cerr << "ber_estimate=" << profile.ber_estimate << " samples=" << profile.samples.size()
              << '\n';
    return 0;
}

int cmd_toeplitz(const std::string& symbol_arg, const std::string& dims_arg, int radial,
                 int angular, int refine, const std::string& out_json) {
    const SymbolSeries symbol = SymbolSeries::from_json(load_json_arg(symbol_arg, "symbol"));
    std::vector<std::size_t> dims;
    for (const std::string& d : split_commas(dims_arg.empty() ? "16,32,64,128" : dims_arg))
        dims.push_back(static_cast<std::size_t>(std::stol(d)));
    const SupNormEstimate ssn = symbol_sup_norm(symbol, 4096);
    std::cout << "symbol sup norm in [" << ssn.value << ", " << ssn.value + ssn.gap << "]\n";
    json rows = json::array();
    double prev = 0.0;
    bool monotone = true;
    int failures = 0;
    for (std::size_t n : dims) {
        const RkhsModel model = RkhsModel::hardy(n);
        Operands ops;
        ops.symbol = symbol;
        SamplingPlan plan;
        plan.radial = radial;
        plan.angular = angular;
        plan.refine_steps = refine;
        const CheckResult r = evaluate_check("C23", model, ops, plan);
        if (r.outcome == Outcome::Fail) ++failures;
        monotone = monotone && r.lhs >= prev - 1e-9 * (1.0 + r.lhs);
        prev = r.lhs;
        std::cout << "N=" << n << " ber=" << r.lhs << " bound=" << r.rhs
                  << " outcome=" << to_string(r.outcome) << " " << r.note << '\n';
        rows.push_back({{"dim", n},
                        {"ber", r.lhs},
                        {"bound", r.rhs},
                        {"outcome", to_string(r.outcome)}});
    }
    std::cout << "ber nondecreasing in N: " << (monotone ? "yes" : "no") << '\n';
    if (!out_json.empty()) {
        std::ofstream os(out_json);
        if (!os) throw IoError("cannot write to " + out_json);
        os << json{{"symbol", symbol.to_json()},
                   {"sup_norm", ssn.value},
                   {"sup_norm_gap", ssn.gap},
                   {"rows", rows}}
                  .dump(2)
           << '\n';
    }
    return failures == 0 ? 0 : 1;
}

int cmd_power(const std::string& model_arg, const std::string& op_arg, unsigned max_power,
              int radial, int angular, int refine, const std::string& out_json) {
    const RkhsModel model = ModelDescriptor::parse(model_arg).make();
    const ComplexMatrix a = parse_operator(load_json_arg(op_arg, "operator"));
    SamplingPlan plan;
    plan.radial = radial;
    plan.angular = angular;
    plan.refine_steps = refine;
    json rows = json::array();
    int failures = 0;
    for (unsigned n = 2; n <= max_power; ++n) {
        Operands ops;
        ops.A = a;
        ops.power = n;
        const CheckResult c22 = evaluate_check("C22", model, ops, plan);
        const CheckResult c24 = evaluate_check("C24", model, ops, plan);
        if (c22.outcome == Outcome::Fail || c24.outcome == Outcome::Fail) ++failures;
        std::cout << "n=" << n << " C22 lhs=" << c22.lhs << " rhs=" << c22.rhs << " outcome="
                  << to_string(c22.outcome) << " | C24 lhs=" << c24.lhs << " rhs=" << c24.rhs
                  << " outcome=" << to_string(c24.outcome) << " " << c24.note << '\n';
        rows.push_back({{"n", n},
                        {"c22", {{"lhs", c22.lhs}, {"rhs", c22.rhs}, {"outcome", to_string(c22.outcome)}}},
                        {"c24",
                         {{"lhs", c24.lhs},
                          {"rhs", c24.rhs},
                          {"outcome", to_string(c24.outcome)},
                          {"note", c24.note}}}});
    }
    if (model.is_disk()) {
        std::vector<double> radii;
        for (int j = 1; j <= 6; ++j) radii.push_back(model.max_radius() * j / 6.0);
        const DefectCurve curve = boundary_defect(model, a, radii, plan.boundary_angular);
        std::cout << "defect curve:";
        for (std::size_t i = 0; i < curve.radii.size(); ++i)
            std::cout << " (" << curve.radii[i] << ", " << curve.values[i] << ")";
        std::cout << '\n';
        rows.push_back({{"defect_radii", curve.radii}, {"defect_values", curve.values}});
    }
    if (!out_json.empty()) {
        std::ofstream os(out_json);
        if (!os) throw IoError("cannot write to " + out_json);
        os << json{{"model", model.to_json()}, {"rows", rows}}.dump(2) << '\n';
    }
    return failures == 0 ? 0 : 1;
}

int cmd_tighten(const std::string& entry, const std::string& model_arg, const std::string& kind,
                int iterations, std::uint64_t seed, int refine) {
    const RkhsModel model = ModelDescriptor::parse(model_arg).make();
    SamplingPlan plan;
    plan.refine_steps = refine;
    const CheckResult r = tightness_search(entry, model, parse_ensemble_kind(kind), iterations,
                                           seed, plan);
    std::cout << entry << " on " << model.name() << ": best ratio=" << r.ratio
              << " lhs=" << r.lhs << " rhs=" << r.rhs << " outcome=" << to_string(r.outcome)
              << " operands{" << r.operand_desc << "}\n";
    return r.outcome == Outcome::Fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berezin-number inequality audit toolkit"};
    app.require_subcommand(1);

    // audit
    auto* audit = app.add_subcommand("audit", "run the inequality catalog over random ensembles");
    std::string config_path, entries_arg, model_arg, dims_arg, kinds_arg, out_json, out_csv;
    int trials = 200, refine = 3;
    std::uint64_t seed = 42;
    unsigned workers = 0;
    audit->add_option("--config", config_path, "JSON config file");
    audit->add_option("--entries", entries_arg, "comma-separated entry ids, or 'all'");
    audit->add_option("--model", model_arg, "model descriptors (hardy:16,...) or family names");
    audit->add_option("--dims", dims_arg, "dimensions combined with bare family names");
    audit->add_option("--kinds", kinds_arg, "ensemble kinds");
    auto* opt_trials = audit->add_option("--trials", trials, "trials per entry");
    auto* opt_seed = audit->add_option("--seed", seed, "base seed");
    auto* opt_refine = audit->add_option("--refine", refine, "grid refinement rounds");
    auto* opt_workers = audit->add_option("--workers", workers, "worker threads (0 = auto)");
    audit->add_option("--out-json", out_json, "JSON report path");
    audit->add_option("--out-csv", out_csv, "CSV rows path");

    // profile
    auto* profile = app.add_subcommand("profile", "sample one operator's Berezin symbol");
    std::string p_model = "hardy:32", p_op, p_out;
    int p_radial = 24, p_angular = 96, p_refine = 3;
    double p_max_radius = kDefaultMaxRadius;
    profile->add_option("--model", p_model, "model descriptor");
    profile->add_option("--op", p_op, "operator JSON (or @file)")->required();
    profile->add_option("--radial", p_radial, "radial grid count");
    profile->add_option("--angular", p_angular, "angular grid count");
    profile->add_option("--max-radius", p_max_radius, "outermost sampling radius");
    profile->add_option("--refine", p_refine, "refinement rounds");
    profile->add_option("--out-csv", p_out, "output CSV path ('-' for stdout)");

    // toeplitz
    auto* toeplitz = app.add_subcommand("toeplitz", "truncated-Toeplitz convergence study");
    std::string t_symbol, t_dims, t_out;
    int t_radial = 24, t_angular = 96, t_refine = 3;
    toeplitz->add_option("--symbol", t_symbol, "symbol JSON {\"k\": [re,im], ...} (or @file)")
        ->required();
    toeplitz->add_option("--dims", t_dims, "dimension list (default 16,32,64,128)");
    toeplitz->add_option("--radial", t_radial, "radial grid count");
    toeplitz->add_option("--angular", t_angular, "angular grid count");
    toeplitz->add_option("--refine", t_refine, "refinement rounds");
    toeplitz->add_option("--out-json", t_out, "output JSON path");

    // power
    auto* power = app.add_subcommand("power", "power-inequality and defect diagnostics");
    std::string w_model = "hardy:32", w_op, w_out;
    unsigned w_nmax = 4;
    int w_radial = 24, w_angular = 96, w_refine = 3;
    power->add_option("--model", w_model, "model descriptor");
    power->add_option("--op", w_op, "operator JSON (or @file)")->required();
    power->add_option("--nmax", w_nmax, "largest power to check (from 2)");
    power->add_option("--radial", w_radial, "radial grid count");
    power->add_option("--angular", w_angular, "angular grid count");
    power->add_option("--refine", w_refine, "refinement rounds");
    power->add_option("--out-json", w_out, "output JSON path");

    // tighten
    auto* tighten = app.add_subcommand("tighten", "search for the largest lhs/rhs ratio");
    std::string g_entry, g_model = "hardy:16", g_kind = "ginibre";
    int g_iters = 200, g_refine = 3;
    std::uint64_t g_seed = 42;
    tighten->add_option("--entries", g_entry, "catalog entry id")->required();
    tighten->add_option("--model", g_model, "model descriptor");
    tighten->add_option("--kind", g_kind, "ensemble kind");
    tighten->add_option("--iterations", g_iters, "search iterations");
    tighten->add_option("--seed", g_seed, "search seed");
    tighten->add_option("--refine", g_refine, "refinement rounds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*audit)
            return cmd_audit(config_path, entries_arg, model_arg, dims_arg, kinds_arg, trials,
                             seed, refine, workers, out_json, out_csv, opt_trials->count() > 0,
                             opt_seed->count() > 0, opt_refine->count() > 0,
                             opt_workers->count() > 0);
        if (*profile)
            return cmd_profile(p_model, p_op, p_radial, p_angular, p_max_radius, p_refine, p_out);
        if (*toeplitz) return cmd_toeplitz(t_symbol, t_dims, t_radial, t_angular, t_refine, t_out);
        if (*power) return cmd_power(w_model, w_op, w_nmax, w_radial, w_angular, w_refine, w_out);
        if (*tighten) return cmd_tighten(g_entry, g_model, g_kind, g_iters, g_seed, g_refine);
    } catch (const berezin::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
