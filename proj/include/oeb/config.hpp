#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "oeb/iteration.hpp"
#include "oeb/mapping.hpp"
#include "oeb/schedule.hpp"

namespace oeb {

struct OutputSpec {
    std::string kind; // trace | bounds | rate | compare
    std::string path;
};

// One experiment: a scheme, a map pair, two parameter schedules, a start
// point and a horizon, plus the CSV products to emit. Parsing normalizes the
// document (bare catalog strings become {"catalog": ...}) so that
// serialize/parse round-trips are stable.
struct RunConfig {
    SchemeId scheme = SchemeId::Ishikawa;
    double alpha1 = 0.5;
    double alpha2 = 0.2;
    nlohmann::json pair;       // normalized pair spec
    nlohmann::json schedule_a; // normalized schedule specs
    nlohmann::json schedule_b;
    Eigen::VectorXd x0;
    std::int64_t horizon = 1;
    std::uint64_t seed = 42;
    double floor = 0.0;
    std::vector<OutputSpec> outputs;
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

// Schedule spec forms: "catalog-key", {"catalog": key, "seed": s}, or inline
// {"kind": "constant"|"rational"|"random-uniform"|"derived-comparison", ...}.
// Random-based entries without an explicit seed draw their stream from
// `default_seed`. Derived specs take the run's alpha values.
Schedule resolve_schedule(const nlohmann::json& spec, double alpha1, double alpha2,
                          std::uint64_t default_seed);

// Pair spec forms: "paper", "extremal-upper", "extremal-lower",
// "extremal-reflected" (with optional {"x_star": [...], "radius": r}), or an
// inline {"t1": map, "t2": map, "fixed_point": [...]} object.
MapPair resolve_pair(const nlohmann::json& spec, double alpha1, double alpha2);

} // namespace oeb
