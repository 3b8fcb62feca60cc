#include <CLI11.hpp>

#include <string>

#include "oeb/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fixed-point iteration runner with optimal error bounds"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "execute a run-config and write its CSV outputs");
    run->add_option("config", config_path, "path to a JSON run-config")->required();

    std::string figure_id, out_dir = ".";
    auto* fig = app.add_subcommand("figure", "reproduce one experiment figure as CSV + manifest");
    fig->add_option("id", figure_id, "figure identifier (see `catalog`)")->required();
    fig->add_option("--out", out_dir, "output directory");

    std::string level = "fast";
    auto* verify = app.add_subcommand("verify", "run the built-in verification suite");
    verify->add_option("--level", level, "fast | full")
        ->check(CLI::IsMember({"fast", "full"}));

    auto* cat = app.add_subcommand("catalog", "list schedules, maps, pairs and figures");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return oeb::cli::cmd_run(config_path);
    if (fig->parsed()) return oeb::cli::cmd_figure(figure_id, out_dir);
    if (verify->parsed())
        return oeb::cli::cmd_verify(level == "full" ? oeb::accept::Level::Full
                                                    : oeb::accept::Level::Fast);
    if (cat->parsed()) return oeb::cli::cmd_catalog();
    return 0;
}
