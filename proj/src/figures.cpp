#include "oeb/figures.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <future>
#include <sstream>

#include "oeb/analysis.hpp"
#include "oeb/bounds.hpp"
#include "oeb/csv.hpp"
#include "oeb/errors.hpp"
#include "oeb/prng.hpp"

namespace oeb {

namespace {

struct Curve {
    std::string file;
    std::string label;
    std::string role; // trace | rate | refline | ratio
    std::function<std::string()> render;
};

struct Recipe {
    std::string id;
    std::string description;
    std::string x_axis;
    std::string y_axis;
    std::string scale; // log-y | log-log | linear
    std::vector<Curve> curves;
};

Eigen::VectorXd x0_paper() { return Eigen::VectorXd::Constant(1, 2.0); }

std::string render_trace(SchemeId scheme, double a1, double a2, const Schedule& a,
                         const Schedule& b, std::int64_t N) {
    MapPair pair = paper_pair(a1, a2);
    IterationTrace tr = run(scheme, pair, a, b, x0_paper(), N, 0.0);
    std::ostringstream os;
    write_trace_csv(os, tr);
    return os.str();
}

std::string render_rate(SchemeId scheme, double a1, double a2, const Schedule& a,
                        const Schedule& b, std::int64_t N) {
    MapPair pair = paper_pair(a1, a2);
    IterationTrace tr = run(scheme, pair, a, b, x0_paper(), N, 1e-13);
    RateReport rr = scheme == SchemeId::ModifiedIshikawa ? rate_modified(tr, a, b, a1, a2)
                                                         : rate_ishikawa(tr, a, b, a1, a2);
    std::ostringstream os;
    write_rate_csv(os, rr, tr);
    return os.str();
}

// Y = beta X over the realized denominator grid (natural-log convention).
std::string render_refline(SchemeId scheme, double a1, double a2, const Schedule& a,
                           const Schedule& b, std::int64_t N, bool top) {
    MapPair pair = paper_pair(a1, a2);
    IterationTrace tr = run(scheme, pair, a, b, x0_paper(), N, 1e-13);
    RateReport rr = scheme == SchemeId::ModifiedIshikawa ? rate_modified(tr, a, b, a1, a2)
                                                         : rate_ishikawa(tr, a, b, a1, a2);
    const double beta = top ? rr.beta_max_guaranteed : rr.beta_min;
    std::ostringstream os;
    os << "x,y\n";
    for (double d : rr.denominator)
        os << format_full(d) << ',' << format_full(beta * d) << '\n';
    return os.str();
}

std::string render_ratio(double a1, double a2, const Schedule& a, const Schedule& b,
                         std::int64_t N) {
    MapPair pair = paper_pair(a1, a2);
    IterationTrace ti = run(SchemeId::Ishikawa, pair, a, b, x0_paper(), N, 0.0);
    IterationTrace tm = run(SchemeId::ModifiedIshikawa, pair, a, b, x0_paper(), N, 0.0);
    ComparisonReport cmp = compare_schemes(tm, ti, a, b, a1, a2);
    std::ostringstream os;
    write_compare_csv(os, ti, tm, cmp);
    return os.str();
}

Schedule cat(const char* key) { return catalog_schedule(key); }
Schedule cat_b(const char* key) { return catalog_schedule(key, kDefaultSeed + 1); }

// (eq:bn)-family error figures share this layout.
Recipe bn_family(const std::string& id, double a2, std::int64_t N, bool last_two_only) {
    Recipe r;
    r.id = id;
    r.description = "errors of the two-map two-step scheme for the four b-sequence tests, "
                    "a_n random";
    r.x_axis = "n";
    r.y_axis = "Err_n";
    r.scale = "log-y";
    static const char* keys[4] = {"eqbn-test1", "eqbn-test2", "eqbn-test3", "eqbn-test4"};
    for (int t = last_two_only ? 2 : 0; t < 4; ++t) {
        const std::string key = keys[t];
        r.curves.push_back(
            {id + "-test" + std::to_string(t + 1) + ".csv", "b: " + key, "trace",
             [a2, key, N] {
                 return render_trace(SchemeId::Ishikawa, 0.5, a2,
                                     catalog_schedule("rand"), cat_b(key.c_str()), N);
             }});
    }
    return r;
}

Recipe make_recipe(const std::string& id) {
    if (id == "fig1a") return bn_family(id, 0.2, 50, false);
    if (id == "fig1b") return bn_family(id, 0.2, 500, true);
    if (id == "fig2a") return bn_family(id, 1.0, 50, false);
    if (id == "fig2b") return bn_family(id, 1.0, 500, true);

    if (id == "fig1c") {
        Recipe r{id,
                 "insensitivity of convergence to the a-sequence: two b-sequences, three "
                 "a-sequences each",
                 "n",
                 "Err_n",
                 "log-y",
                 {}};
        const char* bs[2] = {"fig1b-b1", "fig1b-b2"};
        const char* as[3] = {"rand", "fig1b-a2", "fig1b-a3"};
        for (int bi = 0; bi < 2; ++bi)
            for (int ai = 0; ai < 3; ++ai) {
                std::string bkey = bs[bi], akey = as[ai];
                r.curves.push_back({id + "-b" + std::to_string(bi + 1) + "-a" +
                                        std::to_string(ai + 1) + ".csv",
                                    "panel b" + std::to_string(bi + 1) + ", a: " + akey,
                                    "trace", [akey, bkey] {
                                        return render_trace(SchemeId::Ishikawa, 0.5, 0.2,
                                                            cat(akey.c_str()),
                                                            cat_b(bkey.c_str()), 500);
                                    }});
            }
        return r;
    }

    if (id == "fig3") {
        Recipe r{id, "alpha2 = 1 regime for the four (a_n, b_n) pairings", "n", "Err_n",
                 "log-y", {}};
        const char* as[4] = {"anbn-test1-a", "anbn-test2-a", "anbn-test3-a", "anbn-test4-a"};
        const char* bs[4] = {"anbn-test1-b", "anbn-test2-b", "anbn-test3-b", "anbn-test4-b"};
        for (int t = 0; t < 4; ++t) {
            std::string akey = as[t], bkey = bs[t];
            r.curves.push_back({id + "-test" + std::to_string(t + 1) + ".csv",
                                "a: " + akey + ", b: " + bkey, "trace", [akey, bkey] {
                                    return render_trace(SchemeId::Ishikawa, 0.5, 1.0,
                                                        cat(akey.c_str()),
                                                        cat_b(bkey.c_str()), 500);
                                }});
        }
        return r;
    }

    if (id == "fig4a" || id == "fig4b") {
        const std::int64_t N = id == "fig4a" ? 20 : 100000;
        Recipe r{id, "modified-scheme errors for the four series test cases", "n", "Err_n",
                 "log-y", {}};
        const char* as[4] = {"im-test1-a", "im-test2-a", "im-test3-a", "im-test4-a"};
        const char* bs[4] = {"im-test1-b", "im-test2-b", "im-test3-b", "im-test4-b"};
        for (int t = 0; t < 4; ++t) {
            std::string akey = as[t], bkey = bs[t];
            r.curves.push_back({id + "-test" + std::to_string(t + 1) + ".csv",
                                "a: " + akey + ", b: " + bkey, "trace", [akey, bkey, N] {
                                    return render_trace(SchemeId::ModifiedIshikawa, 0.5, 0.2,
                                                        cat(akey.c_str()),
                                                        cat_b(bkey.c_str()), N);
                                }});
        }
        return r;
    }

    if (id == "fig5a" || id == "fig5b" || id == "fig6a" || id == "fig6b") {
        const bool modified = id[3] == '6';
        const SchemeId scheme = modified ? SchemeId::ModifiedIshikawa : SchemeId::Ishikawa;
        std::string akey, bkey;
        if (id == "fig5a" || id == "fig6a") { akey = "na-a"; bkey = "na-b"; }
        else if (id == "fig5b") { akey = "nb-a"; bkey = "nb-b"; }
        else { akey = "na2-a"; bkey = "na2-b"; }
        Recipe r{id,
                 "observed rate -ln(Err_{n+1}) against the schedule partial sum, with the "
                 "two sandwich reference slopes",
                 modified ? "sum_{k<=n} (a_k + b_k)" : "sum_{k<=n} b_k",
                 "-ln Err_{n+1}",
                 "linear",
                 {}};
        r.curves.push_back({id + "-rate.csv", "observed rate", "rate", [scheme, akey, bkey] {
                                return render_rate(scheme, 0.5, 0.2, cat(akey.c_str()),
                                                   cat(bkey.c_str()), 2000);
                            }});
        r.curves.push_back(
            {id + "-beta-min.csv", "Y = beta_min X", "refline", [scheme, akey, bkey] {
                 return render_refline(scheme, 0.5, 0.2, cat(akey.c_str()), cat(bkey.c_str()),
                                       2000, false);
             }});
        r.curves.push_back(
            {id + "-beta-max.csv", "Y = beta_max X", "refline", [scheme, akey, bkey] {
                 return render_refline(scheme, 0.5, 0.2, cat(akey.c_str()), cat(bkey.c_str()),
                                       2000, true);
             }});
        return r;
    }

    if (id == "fig8a" || id == "fig8b") {
        const int t = id == "fig8a" ? 1 : 2;
        std::string akey = t == 1 ? "cmp-test1-a" : "cmp-test2-a";
        std::string bkey = t == 1 ? "cmp-test1-b" : "cmp-test2-b";
        Recipe r{id, "scheme error comparison without the termwise condition", "n", "Err_n",
                 "log-y", {}};
        r.curves.push_back({id + "-ishikawa.csv", "two-step scheme", "trace", [akey, bkey] {
                                return render_trace(SchemeId::Ishikawa, 0.5, 0.2,
                                                    cat(akey.c_str()), cat(bkey.c_str()), 500);
                            }});
        r.curves.push_back({id + "-modified.csv", "modified scheme", "trace", [akey, bkey] {
                                return render_trace(SchemeId::ModifiedIshikawa, 0.5, 0.2,
                                                    cat(akey.c_str()), cat(bkey.c_str()), 500);
                            }});
        return r;
    }
    if (id == "fig8c" || id == "fig8d") {
        const int t = id == "fig8c" ? 1 : 2;
        std::string akey = t == 1 ? "cmp-test1-a" : "cmp-test2-a";
        std::string bkey = t == 1 ? "cmp-test1-b" : "cmp-test2-b";
        Recipe r{id, "cross-scheme error ratio without the termwise condition", "n",
                 "log10 R_n", "linear", {}};
        r.curves.push_back({id + "-ratio.csv", "R(x_IM, x_I, x*)", "ratio", [akey, bkey] {
                                return render_ratio(0.5, 0.2, cat(akey.c_str()),
                                                    cat(bkey.c_str()), 500);
                            }});
        return r;
    }

    if (id == "figcompare-a" || id == "figcompare-b") {
        const int t = id == "figcompare-a" ? 3 : 4;
        std::string akey = t == 3 ? "cmp-test3-a" : "cmp-test4-a";
        std::string bkey = t == 3 ? "cmp-test1-b" : "cmp-test2-b";
        Recipe r{id, "slower scheme's error when the termwise condition holds", "n", "Err_n",
                 "log-y", {}};
        r.curves.push_back({id + "-ishikawa.csv", "two-step scheme", "trace", [akey, bkey] {
                                return render_trace(SchemeId::Ishikawa, 0.5, 0.2,
                                                    cat(akey.c_str()), cat(bkey.c_str()), 500);
                            }});
        return r;
    }
    if (id == "figcompare-c" || id == "figcompare-d") {
        const int t = id == "figcompare-c" ? 3 : 4;
        std::string akey = t == 3 ? "cmp-test3-a" : "cmp-test4-a";
        std::string bkey = t == 3 ? "cmp-test1-b" : "cmp-test2-b";
        Recipe r{id, "cross-scheme error ratio under the termwise condition", "n",
                 "log10 R_n", "linear", {}};
        r.curves.push_back({id + "-ratio.csv", "R(x_IM, x_I, x*)", "ratio", [akey, bkey] {
                                return render_ratio(0.5, 0.2, cat(akey.c_str()),
                                                    cat(bkey.c_str()), 500);
                            }});
        return r;
    }

    raise(Errc::UnknownFigure, id);
}

const char* kFigureIds[] = {"fig1a", "fig1b", "fig1c", "fig2a", "fig2b",
                            "fig3",  "fig4a", "fig4b", "fig5a", "fig5b",
                            "fig6a", "fig6b", "fig8a", "fig8b", "fig8c",
                            "fig8d", "figcompare-a", "figcompare-b",
                            "figcompare-c", "figcompare-d"};

} // namespace

const std::vector<FigureInfo>& figure_index() {
    static const std::vector<FigureInfo> idx = [] {
        std::vector<FigureInfo> v;
        for (const char* id : kFigureIds) {
            Recipe r = make_recipe(id);
            v.push_back({r.id, r.description, static_cast<int>(r.curves.size())});
        }
        return v;
    }();
    return idx;
}

void render_figure(const std::string& figure_id, const std::string& out_dir) {
    Recipe recipe = make_recipe(figure_id);
    std::filesystem::create_directories(out_dir);

    std::vector<std::future<std::string>> jobs;
    jobs.reserve(recipe.curves.size());
    for (const auto& c : recipe.curves)
        jobs.push_back(std::async(std::launch::async, c.render));
    for (std::size_t i = 0; i < jobs.size(); ++i)
        write_file(out_dir + "/" + recipe.curves[i].file, jobs[i].get());

    nlohmann::json manifest;
    manifest["figure"] = recipe.id;
    manifest["description"] = recipe.description;
    manifest["x_axis"] = recipe.x_axis;
    manifest["y_axis"] = recipe.y_axis;
    manifest["scale"] = recipe.scale;
    nlohmann::json curves = nlohmann::json::array();
    for (const auto& c : recipe.curves)
        curves.push_back({{"label", c.label}, {"file", c.file}, {"role", c.role}});
    manifest["curves"] = curves;
    write_file(out_dir + "/" + recipe.id + "-manifest.json", manifest.dump(2) + "\n");
}

} // namespace oeb
