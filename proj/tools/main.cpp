#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "stirap2d/grid_io.hpp"
#include "stirap2d/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw stirap2d::IoError("cannot open config: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    unsigned threads = 0;
    bool heavy = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
    cmd->add_option("--threads", args.threads, "worker threads, 0 = all cores");
    cmd->add_flag("--heavy", args.heavy, "use the paper-scale 513x513 grid");
}

int run_mode(const CommonArgs& args, stirap2d::RunMode expected) {
    const stirap2d::RunConfig cfg = stirap2d::parse_config(read_file(args.config_path));
    if (cfg.mode != expected) {
        std::cerr << "[error] config mode is '" << stirap2d::to_string(cfg.mode)
                  << "' but the command expects '" << stirap2d::to_string(expected) << "'\n";
        return 1;
    }
    stirap2d::RunContext ctx{args.out_dir, args.threads, args.heavy};
    const auto res = stirap2d::execute(cfg, ctx);
    std::cerr << "[info] wrote " << res.manifest_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D STIRAP localization and three-component GPE simulator"};
    app.require_subcommand(1);

    CommonArgs loc, cpt, adia, ground, evolve, analyze;
    auto* cmd_loc = app.add_subcommand("localize", "population map / radial scan after the pulse sequence");
    add_common(cmd_loc, loc);
    auto* cmd_cpt = app.add_subcommand("cpt-map", "population map with overlapping pulses");
    add_common(cmd_cpt, cpt);
    auto* cmd_adia = app.add_subcommand("adiabaticity-map", "spatial adiabaticity margin");
    add_common(cmd_adia, adia);

    auto* cmd_gpe = app.add_subcommand("gpe", "condensate solvers");
    cmd_gpe->require_subcommand(1);
    auto* cmd_ground = cmd_gpe->add_subcommand("ground", "trap ground state by imaginary time");
    add_common(cmd_ground, ground);
    auto* cmd_evolve = cmd_gpe->add_subcommand("evolve", "three-component real-time evolution");
    add_common(cmd_evolve, evolve);

    auto* cmd_analyze = app.add_subcommand("analyze", "post-process saved grids");
    add_common(cmd_analyze, analyze);

    std::string render_in, render_out, render_scale = "linear";
    auto* cmd_render = app.add_subcommand("render", "grid file to PGM image");
    cmd_render->add_option("--input", render_in, "input .f64g grid")->required()
        ->check(CLI::ExistingFile);
    cmd_render->add_option("--output", render_out, "output .pgm image")->required();
    cmd_render->add_option("--scale", render_scale, "linear or log")
        ->check(CLI::IsMember({"linear", "log"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_loc->parsed()) return run_mode(loc, stirap2d::RunMode::Localize);
        if (cmd_cpt->parsed()) return run_mode(cpt, stirap2d::RunMode::CptMap);
        if (cmd_adia->parsed()) return run_mode(adia, stirap2d::RunMode::AdiabaticityMap);
        if (cmd_ground->parsed()) return run_mode(ground, stirap2d::RunMode::GpeGround);
        if (cmd_evolve->parsed()) return run_mode(evolve, stirap2d::RunMode::GpeEvolve);
        if (cmd_analyze->parsed()) return run_mode(analyze, stirap2d::RunMode::Analyze);
        if (cmd_render->parsed()) {
            const auto field = stirap2d::read_grid(render_in);
            const auto scale = render_scale == "log" ? stirap2d::HeatmapScale::Log
                                                     : stirap2d::HeatmapScale::Linear;
            stirap2d::render_heatmap(field, render_out, scale);
            std::cerr << "[info] wrote " << render_out << "\n";
            return 0;
        }
    } catch (const stirap2d::ConfigError& e) {
        std::cerr << "[error] " << e.what() << "\n";
        return 2;
    } catch (const stirap2d::SimError& e) {
        std::cerr << "[error] " << e.what() << "\n";
        return 1;
    }
    return 0;
}
