#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "berezin/catalog.hpp"
#include "berezin/ensemble.hpp"
#include "berezin/rkhs.hpp"

#include <nlohmann/json.hpp>

namespace berezin {

inline constexpr const char* kVersion = "0.1.0";

/// "hardy:32", "bergman:8", "diagonal:4".
struct ModelDescriptor {
    ModelKind kind = ModelKind::Hardy;
    std::size_t dim = 0;
    double max_radius = kDefaultMaxRadius;

    static ModelDescriptor parse(const std::string& s) {
        const auto colon = s.find(':');
        if (colon == std::string::npos || colon + 1 >= s.size())
            throw ConfigError("model descriptor must look like 'hardy:32': " + s);
        ModelDescriptor d;
        const std::string family = s.substr(0, colon);
        if (family == "hardy") d.kind = ModelKind::Hardy;
        else if (family == "bergman") d.kind = ModelKind::Bergman;
        else if (family == "diagonal") d.kind = ModelKind::Diagonal;
        else throw ConfigError("unknown model family: " + family);
        try {
            const long n = std::stol(s.substr(colon + 1));
            if (n < 1) throw ConfigError("model dimension must be >= 1: " + s);
            d.dim = static_cast<std::size_t>(n);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad model dimension in descriptor: " + s);
        }
        return d;
    }

    RkhsModel make() const {
        switch (kind) {
            case ModelKind::Hardy: return RkhsModel::hardy(dim, max_radius);
            case ModelKind::Bergman: return RkhsModel::bergman(dim, max_radius);
            case ModelKind::Diagonal: return RkhsModel::diagonal(dim);
        }
        throw ConfigError("bad model kind");
    }

    std::string to_string() const {
        return std::string(berezin::to_string(kind)) + ":" + std::to_string(dim);
    }
};

struct AuditConfig {
    std::vector<ModelDescriptor> models;   // empty -> defaults
    std::vector<std::string> entries;      // empty -> sup-level; "all" -> whole catalog
    std::vector<EnsembleKind> kinds;       // empty -> all kinds
    int trials = 200;
    std::uint64_t seed = 42;
    SamplingPlan plan;
    unsigned workers = 0; // 0 -> hardware concurrency
    std::string out_json;
    std::string out_csv;

    static AuditConfig defaults() {
        AuditConfig c;
        c.apply_defaults();
        return c;
    }

    void apply_defaults() {
        if (models.empty()) {
            for (std::size_t d = 2; d <= 8; ++d)
                models.push_back({ModelKind::Diagonal, d, kDefaultMaxRadius});
            for (std::size_t d : {8, 16, 32})
                models.push_back({ModelKind::Hardy, d, kDefaultMaxRadius});
        }
        if (entries.empty()) {
            for (const CatalogEntry& e : list_catalog())
                if (e.kind == CheckKind::SupLevel) entries.push_back(e.id);
        } else if (entries.size() == 1 && entries[0] == "all") {
            entries.clear();
            for (const CatalogEntry& e : list_catalog()) entries.push_back(e.id);
        }
        if (kinds.empty()) kinds = all_ensemble_kinds();
    }

    void validate() const {
        if (trials < 0) throw ConfigError("trials must be >= 0");
        for (const std::string& id : entries) {
            try {
                find_entry(id);
            } catch (const UnknownEntry& e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        }
        for (const ModelDescriptor& m : models)
            if (m.dim < 2 && m.kind != ModelKind::Diagonal)
                throw ConfigError("disk models need dim >= 2: " + m.to_string());
    }

    /// Loads a JSON config document; unknown keys are rejected so typos
    /// cannot silently fall back to defaults.
    static AuditConfig from_json(const nlohmann::json& j) {
        if (!j.is_object()) throw ConfigError("config: expected a JSON object");
        AuditConfig c;
        for (const auto& [key, val] : j.items()) {
            try {
                if (key == "models") {
                    for (const auto& m : val)
                        c.models.push_back(ModelDescriptor::parse(m.get<std::string>()));
                } else if (key == "entries") {
                    for (const auto& e : val) c.entries.push_back(e.get<std::string>());
                } else if (key == "kinds") {
                    for (const auto& k : val)
                        c.kinds.push_back(parse_ensemble_kind(k.get<std::string>()));
                } else if (key == "trials") {
                    c.trials = val.get<int>();
                } else if (key == "seed") {
                    c.seed = val.get<std::uint64_t>();
                } else if (key == "grid") {
                    if (!val.is_object()) throw ConfigError("config: grid must be an object");
                    if (val.contains("radial")) c.plan.radial = val["radial"].get<int>();
                    if (val.contains("angular")) c.plan.angular = val["angular"].get<int>();
                    if (val.contains("max_radius"))
                        c.plan.max_radius = val["max_radius"].get<double>();
                } else if (key == "refine_steps") {
                    c.plan.refine_steps = val.get<int>();
                } else if (key == "workers") {
                    c.workers = val.get<unsigned>();
                } else if (key == "out_json") {
                    c.out_json = val.get<std::string>();
                } else if (key == "out_csv") {
                    c.out_csv = val.get<std::string>();
                } else {
                    throw ConfigError("config: unknown key '" + key + "'");
                }
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("config: bad value for '" + key + "': " + e.what());
            }
        }
        c.apply_defaults();
        c.validate();
        return c;
    }

    static AuditConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config: invalid JSON in " + path + ": " + e.what());
        }
        return from_json(j);
    }

    nlohmann::json to_json() const {
        nlohmann::json jm = nlohmann::json::array();
        for (const ModelDescriptor& m : models) jm.push_back(m.to_string());
        nlohmann::json jk = nlohmann::json::array();
        for (EnsembleKind k : kinds) jk.push_back(berezin::to_string(k));
        return {{"models", jm},
                {"entries", entries},
                {"kinds", jk},
                {"trials", trials},
                {"seed", seed},
                {"grid",
                 {{"radial", plan.radial},
                  {"angular", plan.angular},
                  {"max_radius", plan.max_radius}}},
                {"refine_steps", plan.refine_steps}};
    }
};

struct EntryAggregate {
    std::string id;
    int trials = 0;
    int failures = 0;
    int not_applicable = 0;
    double min_margin = std::numeric_limits<double>::quiet_NaN();
    double max_ratio = std::numeric_limits<double>::quiet_NaN();
    CheckResult witness; // row attaining max_ratio
};

struct AuditReport {
    AuditConfig config;
    std::vector<CheckResult> rows; // ordered: entry-major, trial-minor
    std::vector<EntryAggregate> aggregates;
    std::int64_t duration_ms = 0;

    int failures() const {
        int n = 0;
        for (const EntryAggregate& a : aggregates) n += a.failures;
        return n;
    }
};

namespace detail {

inline std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline nlohmann::json result_to_json(const CheckResult& r) {
    return {{"id", r.id},
            {"model", r.model},
            {"dim", r.dim},
            {"trial", r.trial},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"margin", r.margin},
            {"ratio", r.ratio},
            {"outcome", to_string(r.outcome)},
            {"tolerance", r.tolerance},
            {"seed", r.seed},
            {"grid", {{"radial", r.grid_radial}, {"angular", r.grid_angular}}},
            {"refinement", r.refinement},
            {"operands", r.operand_desc},
            {"note", r.note}};
}

} // namespace detail

inline void write_csv(const AuditReport& report, std::ostream& os) {
    os << "id,model,dim,trial,lhs,rhs,margin,ratio,outcome,seed\n";
    for (const CheckResult& r : report.rows) {
        os << r.id << ',' << r.model << ',' << r.dim << ',' << r.trial << ','
           << detail::format_g12(r.lhs) << ',' << detail::format_g12(r.rhs) << ','
           << detail::format_g12(r.margin) << ',' << detail::format_g12(r.ratio) << ','
           << to_string(r.outcome) << ',' << r.seed << '\n';
    }
}

inline nlohmann::json report_to_json(const AuditReport& report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const EntryAggregate& a : report.aggregates) {
        nlohmann::json e{{"id", a.id},
                         {"trials", a.trials},
                         {"failures", a.failures},
                         {"not_applicable", a.not_applicable}};
        if (std::isnan(a.min_margin)) {
            e["min_margin"] = nullptr;
            e["max_ratio"] = nullptr;
            e["witness"] = nullptr;
        } else {
            e["min_margin"] = a.min_margin;
            e["max_ratio"] = a.max_ratio;
            e["witness"] = detail::result_to_json(a.witness);
        }
        entries.push_back(std::move(e));
    }
    return {{"config", report.config.to_json()},
            {"entries", entries},
            {"duration_ms", report.duration_ms},
            {"version", kVersion}};
}

/// Computes per-entry aggregates from ordered rows (also used by tests to
/// confirm report consistency).
inline std::vector<EntryAggregate> aggregate_rows(const std::vector<std::string>& entry_ids,
                                                  const std::vector<CheckResult>& rows) {
    std::vector<EntryAggregate> out;
    for (const std::string& id : entry_ids) {
        EntryAggregate a;
        a.id = id;
        for (const CheckResult& r : rows) {
            if (r.id != id) continue;
            ++a.trials;
            if (r.outcome == Outcome::Fail) ++a.failures;
            if (r.outcome == Outcome::NotApplicable) {
                ++a.not_applicable;
                continue;
            }
            if (std::isnan(a.min_margin) || r.margin < a.min_margin) a.min_margin = r.margin;
            if (std::isnan(a.max_ratio) || r.ratio > a.max_ratio) {
                a.max_ratio = r.ratio;
                a.witness = r;
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

/// Runs the full sweep. Each (entry, trial) pair maps deterministically to a
/// model, an ensemble kind, and a derived seed, so the rows are identical for
/// any worker count; workers pick tasks off a shared counter and write their
/// results into a pre-sized, index-addressed vector.
inline AuditReport run_audit(const AuditConfig& config_in) {
    AuditConfig config = config_in;
    config.apply_defaults();
    config.validate();

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<RkhsModel> models;
    for (const ModelDescriptor& d : config.models) models.push_back(d.make());

    struct Task {
        std::size_t entry_index;
        int trial;
    };
    std::vector<Task> tasks;
    for (std::size_t e = 0; e < config.entries.size(); ++e)
        for (int t = 0; t < config.trials; ++t) tasks.push_back({e, t});

    std::vector<CheckResult> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> aborted{false};
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || aborted.load()) break;
            const Task& task = tasks[i];
            const std::string& id = config.entries[task.entry_index];
            const RkhsModel& model = models[task.trial % models.size()];
            const EnsembleKind kind = config.kinds[task.trial % config.kinds.size()];
            const std::uint64_t seed = derive_trial_seed(config.seed, id, task.trial);
            try {
                Rng rng(seed);
                const CatalogEntry& entry = find_entry(id);
                Operands ops = draw_operands(entry, kind, model.dim(), rng);
                CheckResult r = evaluate_check(id, model, ops, config.plan);
                r.trial = task.trial;
                r.seed = seed;
                r.model = model.name();
                r.dim = model.dim();
                rows[i] = std::move(r);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty())
                    first_error = "trial " + std::to_string(task.trial) + " of " + id +
                                  ": " + ex.what();
                aborted.store(true);
                break;
            }
        }
    };

    unsigned n_workers = config.workers != 0 ? config.workers
                                             : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, std::max<std::size_t>(tasks.size(), 1));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (!first_error.empty()) throw Error("audit aborted: " + first_error);

    AuditReport report;
    report.config = config;
    report.rows = std::move(rows);
    report.aggregates = aggregate_rows(config.entries, report.rows);
    report.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

    if (!config.out_csv.empty()) {
        std::ofstream os(config.out_csv);
        if (!os) throw IoError("cannot write CSV to " + config.out_csv);
        write_csv(report, os);
    }
    if (!config.out_json.empty()) {
        std::ofstream os(config.out_json);
        if (!os) throw IoError("cannot write JSON report to " + config.out_json);
        os << report_to_json(report).dump(2) << '\n';
    }
    return report;
}

/// Profile CSV: one row per sampled point with the symbol value.
inline void write_profile_csv(const RkhsModel& model, const BerezinProfile& profile,
                              std::ostream& os) {
    os << "point,re_lambda,im_lambda,re_symbol,im_symbol,abs_symbol\n";
    for (const BerezinSample& s : profile.samples) {
        std::string label;
        double re = 0.0, im = 0.0;
        if (s.point.disk) {
            const Complex z = s.point.z();
            re = z.real();
            im = z.imag();
            label = "r=" + detail::format_g12(s.point.r) +
                    ";t=" + detail::format_g12(s.point.theta);
        } else {
            label = model.labels().at(s.point.label);
        }
        os << label << ',' << detail::format_g12(re) << ',' << detail::format_g12(im) << ','
           << detail::format_g12(s.value.real()) << ',' << detail::format_g12(s.value.imag())
           << ',' << detail::format_g12(std::abs(s.value)) << '\n';
    }
}

} // namespace berezin
