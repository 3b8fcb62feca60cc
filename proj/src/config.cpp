#include "oeb/config.hpp"

#include <fstream>

#include "oeb/errors.hpp"
#include "oeb/prng.hpp"

namespace oeb {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    raise(Errc::ConfigError, "field '" + field + "': " + why);
}

double get_number(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number()) bad(field, "expected a number");
    return j[field].get<double>();
}

SeriesClass series_class_from(const json& j, const char* field) {
    if (!j.contains(field)) bad(field, "missing series_class");
    const std::string s = j[field].get<std::string>();
    if (s == "divergent") return SeriesClass::Divergent;
    if (s == "convergent") return SeriesClass::Convergent;
    if (s == "unknown") return SeriesClass::Unknown;
    bad(field, "expected divergent|convergent|unknown");
}

Eigen::VectorXd vector_from(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) bad(field, "expected a non-empty array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) bad(field, "expected numbers");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
}

NormKind norm_from(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "euclidean") return NormKind::Euclidean;
    if (s == "max") return NormKind::Max;
    if (s == "sum") return NormKind::Sum;
    bad("norm", "expected euclidean|max|sum");
}

json normalize_schedule(const json& spec, const std::string& field) {
    if (spec.is_string()) return json{{"catalog", spec.get<std::string>()}};
    if (!spec.is_object()) bad(field, "expected a catalog key or an object");
    if (spec.contains("catalog")) {
        json out{{"catalog", spec["catalog"].get<std::string>()}};
        if (spec.contains("seed")) out["seed"] = spec["seed"].get<std::uint64_t>();
        return out;
    }
    if (!spec.contains("kind")) bad(field, "inline spec needs a 'kind'");
    json out = spec;
    return out;
}

json normalize_pair(const json& spec) {
    if (spec.is_string()) return json{{"catalog", spec.get<std::string>()}};
    if (!spec.is_object()) bad("pair", "expected a key or an object");
    return spec;
}

NonExpansiveMap resolve_map(const json& spec, const std::string& field) {
    if (!spec.is_object()) bad(field, "expected a map object");
    const std::string rule = spec.value("rule", "");
    const double alpha = get_number(spec, "alpha");
    if (!spec.contains("domain")) bad(field, "map needs a 'domain'");
    const json& dj = spec["domain"];
    Domain dom;
    dom.lower = vector_from(dj.value("lower", json::array()), field + ".domain.lower");
    dom.upper = vector_from(dj.value("upper", json::array()), field + ".domain.upper");
    if (dom.lower.size() != dom.upper.size() || (dom.lower.array() > dom.upper.array()).any())
        bad(field + ".domain", "lower must be <= upper componentwise");
    if (dj.contains("norm")) dom.norm_kind = norm_from(dj["norm"]);

    if (rule == "affine-toward-fp" || rule == "affine-reflected-fp") {
        if (!spec.contains("x_star")) bad(field, "affine rule needs 'x_star'");
        Eigen::VectorXd xs = vector_from(spec["x_star"], field + ".x_star");
        return rule == "affine-toward-fp" ? make_extremal_upper(alpha, xs, dom)
                                          : make_extremal_lower(alpha, xs, dom);
    }
    if (rule == "sqrt-contraction") return make_paper_sqrt(alpha, dom);
    if (rule == "sine-nonexpansive") return make_paper_sine(alpha, dom);
    bad(field + ".rule",
        "expected affine-toward-fp|affine-reflected-fp|sqrt-contraction|sine-nonexpansive");
}

} // namespace

Schedule resolve_schedule(const json& spec, double alpha1, double alpha2,
                          std::uint64_t default_seed) {
    if (spec.contains("catalog")) {
        const std::string key = spec["catalog"].get<std::string>();
        const std::uint64_t seed =
            spec.contains("seed") ? spec["seed"].get<std::uint64_t>() : default_seed;
        return catalog_schedule(key, seed);
    }
    const std::string kind = spec.value("kind", "");
    if (kind == "constant")
        return Schedule::constant(get_number(spec, "value"),
                                  series_class_from(spec, "series_class"));
    if (kind == "rational") {
        std::vector<double> num = spec.value("num", std::vector<double>{});
        std::vector<double> den = spec.value("den", std::vector<double>{});
        if (num.empty() || den.empty()) bad("schedule", "rational needs 'num' and 'den'");
        return Schedule::rational(num, den, series_class_from(spec, "series_class"));
    }
    if (kind == "random-uniform")
        return Schedule::random_uniform(
            spec.contains("seed") ? spec["seed"].get<std::uint64_t>() : default_seed);
    if (kind == "derived-comparison") {
        if (!spec.contains("base")) bad("schedule", "derived-comparison needs 'base'");
        Schedule base = resolve_schedule(normalize_schedule(spec["base"], "base"), alpha1,
                                         alpha2, default_seed);
        return derived_comparison_schedule(
            base, alpha1, alpha2,
            spec.contains("seed") ? spec["seed"].get<std::uint64_t>() : default_seed);
    }
    bad("schedule.kind", "expected constant|rational|random-uniform|derived-comparison");
}

MapPair resolve_pair(const json& spec, double alpha1, double alpha2) {
    if (spec.contains("catalog")) {
        const std::string key = spec["catalog"].get<std::string>();
        if (key == "paper") return paper_pair(alpha1, alpha2);
        Eigen::VectorXd xs = spec.contains("x_star")
                                 ? vector_from(spec["x_star"], "pair.x_star")
                                 : Eigen::VectorXd::Constant(1, 1.0);
        const double radius = spec.value("radius", 1.0);
        NormKind nk = spec.contains("norm") ? norm_from(spec["norm"]) : NormKind::Euclidean;
        Domain dom = Domain::symmetric_box(xs, radius, nk);
        if (key == "extremal-upper") return extremal_upper_pair(alpha1, alpha2, xs, dom);
        if (key == "extremal-lower") return extremal_lower_pair(alpha1, alpha2, xs, dom);
        if (key == "extremal-reflected")
            return extremal_reflected_pair(alpha1, alpha2, xs, dom);
        bad("pair", "unknown pair key '" + key + "'");
    }
    if (!spec.contains("t1") || !spec.contains("t2") || !spec.contains("fixed_point"))
        bad("pair", "inline pair needs 't1', 't2' and 'fixed_point'");
    MapPair p{resolve_map(spec["t1"], "pair.t1"), resolve_map(spec["t2"], "pair.t2"),
              vector_from(spec["fixed_point"], "pair.fixed_point")};
    const double tol = 1e-12 * std::max(1.0, p.domain().norm(p.common_fixed_point));
    if (fixed_point_residual(p.t1, p.common_fixed_point) > tol ||
        fixed_point_residual(p.t2, p.common_fixed_point) > tol)
        bad("pair.fixed_point", "not a common fixed point of t1 and t2");
    return p;
}

RunConfig parse_run_config(const json& doc) {
    if (!doc.is_object()) raise(Errc::ConfigError, "config root must be an object");
    RunConfig cfg;
    if (!doc.contains("scheme")) bad("scheme", "missing");
    cfg.scheme = scheme_from_string(doc["scheme"].get<std::string>());
    cfg.alpha1 = get_number(doc, "alpha1");
    cfg.alpha2 = get_number(doc, "alpha2");
    if (!doc.contains("pair")) bad("pair", "missing");
    cfg.pair = normalize_pair(doc["pair"]);
    if (!doc.contains("schedule_a")) bad("schedule_a", "missing");
    if (!doc.contains("schedule_b")) bad("schedule_b", "missing");
    cfg.schedule_a = normalize_schedule(doc["schedule_a"], "schedule_a");
    cfg.schedule_b = normalize_schedule(doc["schedule_b"], "schedule_b");
    if (!doc.contains("x0")) bad("x0", "missing");
    cfg.x0 = vector_from(doc["x0"], "x0");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) bad("n", "expected an integer");
    cfg.horizon = doc["n"].get<std::int64_t>();
    if (cfg.horizon < 1) bad("n", "must be >= 1");
    cfg.seed = doc.value("seed", kDefaultSeed);
    cfg.floor = doc.value("floor", 0.0);
    if (cfg.floor < 0.0) bad("floor", "must be >= 0");
    if (doc.contains("outputs")) {
        if (!doc["outputs"].is_array()) bad("outputs", "expected an array");
        for (const auto& o : doc["outputs"]) {
            OutputSpec spec{o.value("kind", ""), o.value("path", "")};
            if (spec.kind != "trace" && spec.kind != "bounds" && spec.kind != "rate" &&
                spec.kind != "compare")
                bad("outputs.kind", "expected trace|bounds|rate|compare");
            if (spec.path.empty()) bad("outputs.path", "missing");
            cfg.outputs.push_back(std::move(spec));
        }
    }

    // Validate resolvability and the start point now: these are config-stage
    // failures, not runtime ones.
    MapPair pair = resolve_pair(cfg.pair, cfg.alpha1, cfg.alpha2);
    resolve_schedule(cfg.schedule_a, cfg.alpha1, cfg.alpha2, cfg.seed);
    resolve_schedule(cfg.schedule_b, cfg.alpha1, cfg.alpha2, cfg.seed + 1);
    if (static_cast<int>(cfg.x0.size()) != pair.domain().dimension())
        bad("x0", "dimension mismatch with the pair's domain");
    if (!pair.domain().contains(cfg.x0)) bad("x0", "outside the pair's domain");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::ConfigError, "cannot open config '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        raise(Errc::ConfigError, "config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_run_config(doc);
}

json to_json(const RunConfig& cfg) {
    json doc;
    doc["scheme"] = to_string(cfg.scheme);
    doc["alpha1"] = cfg.alpha1;
    doc["alpha2"] = cfg.alpha2;
    doc["pair"] = cfg.pair;
    doc["schedule_a"] = cfg.schedule_a;
    doc["schedule_b"] = cfg.schedule_b;
    doc["x0"] = std::vector<double>(cfg.x0.data(), cfg.x0.data() + cfg.x0.size());
    doc["n"] = cfg.horizon;
    doc["seed"] = cfg.seed;
    doc["floor"] = cfg.floor;
    json outs = json::array();
    for (const auto& o : cfg.outputs) outs.push_back({{"kind", o.kind}, {"path", o.path}});
    doc["outputs"] = outs;
    return doc;
}

} // namespace oeb
