#include "oeb/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "oeb/analysis.hpp"
#include "oeb/bounds.hpp"
#include "oeb/config.hpp"
#include "oeb/csv.hpp"
#include "oeb/errors.hpp"
#include "oeb/figures.hpp"

namespace oeb::cli {

namespace {

// Effective (a, b) schedules driving the bound/rate formulas: the one-step
// schemes are the two-step one with a == 0 (and b == 1 for the single-map
// iteration).
std::pair<Schedule, Schedule> effective_schedules(SchemeId scheme, const Schedule& a,
                                                  const Schedule& b) {
    switch (scheme) {
        case SchemeId::Picard:
            return {Schedule::constant(0.0, SeriesClass::Convergent, "zero"),
                    Schedule::constant(1.0, SeriesClass::Divergent, "one")};
        case SchemeId::Mann:
            return {Schedule::constant(0.0, SeriesClass::Convergent, "zero"), b};
        default:
            return {a, b};
    }
}

void execute(const RunConfig& cfg) {
    MapPair pair = resolve_pair(cfg.pair, cfg.alpha1, cfg.alpha2);
    Schedule a = resolve_schedule(cfg.schedule_a, cfg.alpha1, cfg.alpha2, cfg.seed);
    Schedule b = resolve_schedule(cfg.schedule_b, cfg.alpha1, cfg.alpha2, cfg.seed + 1);

    IterationTrace primary = run(cfg.scheme, pair, a, b, cfg.x0, cfg.horizon, cfg.floor);
    auto [ea, eb] = effective_schedules(cfg.scheme, a, b);
    const bool modified = cfg.scheme == SchemeId::ModifiedIshikawa;

    for (const auto& out : cfg.outputs) {
        std::ostringstream os;
        if (out.kind == "trace") {
            write_trace_csv(os, primary);
        } else if (out.kind == "bounds") {
            BoundsTrace upper = modified
                                    ? oueb_modified(ea, eb, cfg.alpha1, cfg.alpha2, cfg.horizon)
                                    : oueb_ishikawa(ea, eb, cfg.alpha1, cfg.alpha2, cfg.horizon);
            BoundsTrace lower =
                modified ? oleb_modified_signed(ea, eb, cfg.alpha1, cfg.alpha2, cfg.horizon)
                         : oleb_ishikawa_signed(ea, eb, cfg.alpha1, cfg.alpha2, cfg.horizon);
            write_bounds_csv(os, &upper, &lower);
        } else if (out.kind == "rate") {
            RateReport rr = modified ? rate_modified(primary, ea, eb, cfg.alpha1, cfg.alpha2)
                                     : rate_ishikawa(primary, ea, eb, cfg.alpha1, cfg.alpha2);
            write_rate_csv(os, rr, primary);
        } else { // compare
            IterationTrace ti = cfg.scheme == SchemeId::Ishikawa
                                    ? primary
                                    : run(SchemeId::Ishikawa, pair, a, b, cfg.x0, cfg.horizon,
                                          cfg.floor);
            IterationTrace tm = modified ? primary
                                         : run(SchemeId::ModifiedIshikawa, pair, a, b, cfg.x0,
                                               cfg.horizon, cfg.floor);
            ComparisonReport cmp = compare_schemes(tm, ti, a, b, cfg.alpha1, cfg.alpha2);
            write_compare_csv(os, ti, tm, cmp);
        }
        write_file(out.path, os.str());
    }
}

} // namespace

int cmd_run(const std::string& config_path) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
        if (const char* env = std::getenv("OEB_SEED"))
            cfg.seed = std::strtoull(env, nullptr, 10);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        execute(cfg);
    } catch (const Error& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int cmd_figure(const std::string& figure_id, const std::string& out_dir) {
    bool known = false;
    for (const auto& f : figure_index()) known = known || f.id == figure_id;
    if (!known) {
        std::cerr << "config error: unknown figure '" << figure_id << "'\n";
        return 2;
    }
    try {
        render_figure(figure_id, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "figure sub-run failed: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

int cmd_verify(accept::Level level) {
    const auto results = accept::run_all(level);
    const int failures = accept::print_report(std::cout, results);
    return failures == 0 ? 0 : 1;
}

int cmd_catalog() {
    std::cout << "schedules:\n";
    for (const auto& e : schedule_catalog())
        std::cout << "  " << e.key << "  [" << to_string(e.series_class) << "]  " << e.formula
                  << "\n";
    std::cout << "\nmaps:\n"
              << "  paper-T1        sqrt(a1 x + 1 - a1) on [1/4, 3]\n"
              << "  paper-T2        a2 sin(x - 1) + 1 on [1/4, 3]\n"
              << "  extremal-upper  a x + (1 - a) x*\n"
              << "  extremal-lower  -a x + (1 + a) x*\n";
    std::cout << "\npairs:\n"
              << "  paper               (paper-T1, paper-T2), x* = 1\n"
              << "  extremal-upper      both maps affine toward x*\n"
              << "  extremal-lower      T1 toward, T2 reflected (symmetric box)\n"
              << "  extremal-reflected  both maps reflected (symmetric box)\n";
    std::cout << "\nfigures:\n";
    for (const auto& f : figure_index())
        std::cout << "  " << f.id << "  (" << f.curve_count << " curves)  " << f.description
                  << "\n";
    return 0;
}

} // namespace oeb::cli
