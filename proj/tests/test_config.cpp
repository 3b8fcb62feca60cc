#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oeb/cli.hpp"
#include "oeb/config.hpp"
#include "oeb/errors.hpp"
#include "oeb/figures.hpp"

using namespace oeb;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "oeb-tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_temp(const std::string& name, const std::string& contents) {
    const auto path = temp_dir() / name;
    std::ofstream out(path);
    out << contents;
    return path.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json minimal_picard() {
    return json{{"scheme", "picard"},
                {"alpha1", 0.5},
                {"alpha2", 0.5},
                {"pair", json{{"catalog", "extremal-upper"}, {"x_star", {1.0}}, {"radius", 1.5}}},
                {"schedule_a", "zero"},
                {"schedule_b", "one"},
                {"x0", {2.0}},
                {"n", 10},
                {"seed", 42},
                {"outputs", json::array()}};
}

} // namespace

TEST_CASE("config round-trips through serialization") {
    json doc = minimal_picard();
    doc["schedule_b"] = json{{"kind", "constant"}, {"value", 1.0}, {"series_class", "divergent"}};
    RunConfig cfg = parse_run_config(doc);
    json emitted = to_json(cfg);
    RunConfig cfg2 = parse_run_config(emitted);
    CHECK(to_json(cfg2).dump() == emitted.dump());
    CHECK(cfg2.scheme == SchemeId::Picard);
    CHECK(cfg2.horizon == 10);
}

TEST_CASE("config validation failures name the field") {
    json doc = minimal_picard();
    doc["x0"] = {9.0}; // outside [x*-1.5, x*+1.5]
    try {
        parse_run_config(doc);
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ConfigError);
        CHECK(std::string(e.what()).find("x0") != std::string::npos);
    }

    doc = minimal_picard();
    doc["schedule_a"] = "no-such-schedule";
    CHECK_THROWS_AS(parse_run_config(doc), Error);

    doc = minimal_picard();
    doc["outputs"] = json::array({json{{"kind", "bogus"}, {"path", "x.csv"}}});
    CHECK_THROWS_AS(parse_run_config(doc), Error);

    doc = minimal_picard();
    doc["n"] = 0;
    CHECK_THROWS_AS(parse_run_config(doc), Error);
}

TEST_CASE("inline pair and schedule specs resolve") {
    json pair = {{"t1",
                  {{"rule", "sqrt-contraction"},
                   {"alpha", 0.5},
                   {"domain", {{"lower", {0.25}}, {"upper", {3.0}}}}}},
                 {"t2",
                  {{"rule", "sine-nonexpansive"},
                   {"alpha", 0.2},
                   {"domain", {{"lower", {0.25}}, {"upper", {3.0}}}}}},
                 {"fixed_point", {1.0}}};
    MapPair p = resolve_pair(pair, 0.5, 0.2);
    CHECK(p.common_fixed_point[0] == 1.0);

    Schedule s = resolve_schedule(json{{"kind", "rational"},
                                       {"num", {3.0, 2.0}},
                                       {"den", {4.0, 9.0, 9.0, 3.0}},
                                       {"series_class", "convergent"}},
                                  0.5, 0.2, 42);
    CHECK(s.eval(0) == 0.75);

    Schedule d = resolve_schedule(
        json{{"kind", "derived-comparison"}, {"base", "cmp-test1-b"}, {"seed", 42}}, 0.5, 0.2,
        42);
    CHECK(d.eval(0) >= 0.0);
    CHECK(d.kind() == FormulaKind::DerivedFromSchedule);
}

TEST_CASE("cmd_run writes the geometric trace and is deterministic") {
    const auto dir = temp_dir();
    const std::string trace_path = (dir / "picard.csv").string();
    json doc = minimal_picard();
    doc["outputs"] = json::array({json{{"kind", "trace"}, {"path", trace_path}}});
    const std::string cfg_path = write_temp("picard.json", doc.dump(2));

    REQUIRE(cli::cmd_run(cfg_path) == 0);
    const std::string first = slurp(trace_path);

    // err column decays like 0.5^n
    std::istringstream is(first);
    std::string line;
    std::getline(is, line); // header
    double expected = 1.0;
    while (std::getline(is, line)) {
        std::size_t p = 0;
        for (int c = 0; c < 3; ++c) p = line.find(',', p) + 1;
        const double err = std::strtod(line.c_str() + p, nullptr);
        CHECK(err == doctest::Approx(expected).epsilon(1e-12));
        expected *= 0.5;
    }

    REQUIRE(cli::cmd_run(cfg_path) == 0);
    CHECK(slurp(trace_path) == first); // bitwise-identical rerun
}

TEST_CASE("cmd_run exit codes") {
    json doc = minimal_picard();
    doc["x0"] = {9.0};
    CHECK(cli::cmd_run(write_temp("bad_x0.json", doc.dump())) == 2);
    CHECK(cli::cmd_run(write_temp("not_json.json", "{nope")) == 2);
    CHECK(cli::cmd_run("/does/not/exist.json") == 2);
}

TEST_CASE("OEB_SEED overrides the configured stream") {
    const auto dir = temp_dir();
    const std::string path_a = (dir / "seed_a.csv").string();
    json doc{{"scheme", "ishikawa"},
             {"alpha1", 0.5},
             {"alpha2", 0.2},
             {"pair", "paper"},
             {"schedule_a", "rand"},
             {"schedule_b", "eqbn-test2"},
             {"x0", {2.0}},
             {"n", 40},
             {"seed", 42},
             {"outputs", json::array({json{{"kind", "trace"}, {"path", path_a}}})}};
    const std::string cfg_path = write_temp("seeded.json", doc.dump());

    REQUIRE(cli::cmd_run(cfg_path) == 0);
    const std::string with_42 = slurp(path_a);

    setenv("OEB_SEED", "1234", 1);
    REQUIRE(cli::cmd_run(cfg_path) == 0);
    const std::string with_env = slurp(path_a);
    unsetenv("OEB_SEED");
    CHECK(with_env != with_42);

    REQUIRE(cli::cmd_run(cfg_path) == 0);
    CHECK(slurp(path_a) == with_42);
}

TEST_CASE("bounds, rate and compare outputs are emitted") {
    const auto dir = temp_dir();
    json doc{{"scheme", "ishikawa"},
             {"alpha1", 0.5},
             {"alpha2", 0.2},
             {"pair", "paper"},
             {"schedule_a", "na-a"},
             {"schedule_b", "na-b"},
             {"x0", {2.0}},
             {"n", 60},
             {"outputs",
              json::array({json{{"kind", "bounds"}, {"path", (dir / "b.csv").string()}},
                           json{{"kind", "rate"}, {"path", (dir / "r.csv").string()}},
                           json{{"kind", "compare"}, {"path", (dir / "c.csv").string()}}})}};
    REQUIRE(cli::cmd_run(write_temp("multi.json", doc.dump())) == 0);
    CHECK(slurp((dir / "b.csv").string()).starts_with("n,U_n,L_n,u_factor,l_factor,A_k"));
    CHECK(slurp((dir / "r.csv").string()).starts_with("n,err_next"));
    CHECK(slurp((dir / "c.csv").string()).starts_with("n,err_I,err_IM,ratio,log10_ratio"));
}

TEST_CASE("figure recipes expand to the advertised curve counts") {
    int count = 0;
    for (const auto& f : figure_index()) {
        ++count;
        if (f.id == "fig1a") CHECK(f.curve_count == 4);
        if (f.id == "fig1b") CHECK(f.curve_count == 2);
        if (f.id == "fig1c") CHECK(f.curve_count == 6);
        if (f.id == "fig3") CHECK(f.curve_count == 4);
        if (f.id == "fig5a") CHECK(f.curve_count == 3);
        if (f.id == "fig8c") CHECK(f.curve_count == 1);
    }
    CHECK(count == 20);
}

TEST_CASE("every figure renders its advertised files") {
    const auto base = temp_dir() / "all-figures";
    fs::remove_all(base);
    for (const auto& f : figure_index()) {
        const auto dir = base / f.id;
        render_figure(f.id, dir.string());
        int csvs = 0;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".csv") ++csvs;
        CHECK_MESSAGE(csvs == f.curve_count, f.id);
        CHECK(fs::exists(dir / (f.id + "-manifest.json")));
    }
}

TEST_CASE("figure rendering drops CSVs plus a manifest") {
    const auto dir = temp_dir() / "fig1a";
    fs::remove_all(dir);
    REQUIRE(cli::cmd_figure("fig1a", dir.string()) == 0);
    int csvs = 0;
    bool manifest = false;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".csv") ++csvs;
        if (e.path().filename() == "fig1a-manifest.json") manifest = true;
    }
    CHECK(csvs == 4);
    CHECK(manifest);

    json m = json::parse(slurp((dir / "fig1a-manifest.json").string()));
    CHECK(m["curves"].size() == 4);
    CHECK(m["scale"] == "log-y");

    CHECK(cli::cmd_figure("fig99", temp_dir().string()) == 2);
}
