#include "stirap2d/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "stirap2d/gpe.hpp"
#include "stirap2d/grid_io.hpp"
#include "stirap2d/localization.hpp"

namespace stirap2d {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Emitter {
    fs::path dir;
    std::vector<std::string> formats;
    json outputs = json::array();

    bool wants(const std::string& fmt) const {
        return std::find(formats.begin(), formats.end(), fmt) != formats.end();
    }

    void track(const std::string& name) {
        const fs::path p = dir / name;
        json o;
        o["file"] = name;
        o["bytes"] = static_cast<std::uint64_t>(fs::file_size(p));
        o["fnv1a64"] = hex64(fnv1a64_file(p.string()));
        outputs.push_back(o);
    }

    void grid(const ScalarField2D& field, const std::string& stem,
              HeatmapScale scale = HeatmapScale::Linear) {
        if (wants("f64g")) {
            write_grid(field, (dir / (stem + ".f64g")).string());
            track(stem + ".f64g");
        }
        if (wants("pgm")) {
            render_heatmap(field, (dir / (stem + ".pgm")).string(), scale);
            track(stem + ".pgm");
        }
    }

    void csv(const std::string& stem, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& columns) {
        if (!wants("csv")) return;
        write_csv((dir / (stem + ".csv")).string(), header, columns);
        track(stem + ".csv");
    }
};

MapSetup map_setup(const RunConfig& cfg) {
    return {cfg.beams, cfg.stokes, cfg.schedule, cfg.lambda};
}

MapOptions map_options(const RunConfig& cfg, const RunContext& ctx) {
    MapOptions opt;
    opt.dt = cfg.solver.dt;
    opt.threads = ctx.threads;
    if (cfg.solver.explicit_window) {
        opt.explicit_window = true;
        opt.t0 = cfg.solver.t0;
        opt.t_final = cfg.solver.t_final;
    }
    return opt;
}

json fwhm_report(const Profile1D& radial, double waist) {
    json rep;
    const double peak = *std::max_element(radial.values.begin(), radial.values.end());
    rep["peak_population"] = peak;
    try {
        const FwhmResult res = fwhm(mirror_radial_profile(radial));
        rep["fwhm"] = res.width;
        rep["fwhm_over_waist"] = res.width / waist;
        rep["under_resolved"] = res.under_resolved;
    } catch (const NotLocalizedError& e) {
        rep["fwhm"] = nullptr;
        rep["error"] = e.what();
    }
    return rep;
}

void run_population_mode(const RunConfig& cfg, const RunContext& ctx, Emitter& em, json& results) {
    const MapSetup setup = map_setup(cfg);
    const MapOptions opt = map_options(cfg, ctx);
    const bool cpt = cfg.mode == RunMode::CptMap;

    if (cfg.has_scan) {
        const Profile1D radial = radial_scan(setup, cfg.scan.r_max, cfg.scan.points, opt);
        em.csv("radial_profile", {"r", "population_a"}, {radial.coords, radial.values});
        results["radial"] = fwhm_report(radial, cfg.beams.components.front().waist);
    }
    if (cfg.has_grid) {
        const ScalarField2D map = cpt ? cpt_population_map(cfg.grid, setup, opt)
                                      : stirap_population_map(cfg.grid, setup, opt);
        em.grid(map, "population_map");
        results["map_max"] = *std::max_element(map.values.begin(), map.values.end());
        results["map_min"] = *std::min_element(map.values.begin(), map.values.end());
    }
}

void run_adiabaticity_mode(const RunConfig& cfg, const RunContext& ctx, Emitter& em,
                           json& results) {
    const AdiabaticityMap amap = adiabaticity_map(cfg.grid, cfg.beams, cfg.stokes,
                                                  cfg.schedule.delay(), cfg.beta, ctx.threads);
    em.grid(amap.margin, "margin_map", HeatmapScale::Log);
    results["satisfied"] = amap.satisfied_everywhere;
    results["min_lhs"] = amap.min_lhs;
    results["rhs"] = amap.rhs;
    results["min_margin"] = amap.min_lhs / amap.rhs;
}

GroundStateOptions ground_options(const RunConfig& cfg) {
    GroundStateOptions opt;
    opt.dtau = cfg.solver.dtau;
    opt.energy_tolerance = cfg.solver.energy_tolerance;
    opt.residual_tolerance = cfg.solver.residual_tolerance;
    opt.max_iterations = cfg.solver.max_iterations;
    return opt;
}

json ground_report(const GroundStateResult& gs, const BECParams& bec) {
    json rep;
    rep["mu_joule"] = gs.mu;
    rep["mu_over_hbar_omega_r"] = gs.mu / (kHbar * bec.omega_r);
    rep["energy_joule"] = gs.energy;
    rep["iterations"] = gs.iterations;
    rep["residual"] = gs.residual;
    rep["resolution_warning"] = gs.resolution_warning;
    rep["pancake_warning"] = gs.pancake_warning;
    rep["domain_warning"] = gs.domain_warning;
    return rep;
}

ScalarField2D density_of(const ComplexField2D& psi) {
    ScalarField2D out(psi.grid);
    for (std::size_t i = 0; i < psi.values.size(); ++i) out.values[i] = std::norm(psi.values[i]);
    return out;
}

void run_gpe_ground(const RunConfig& cfg, Emitter& em, json& results) {
    const GroundStateResult gs = ground_state(cfg.grid, cfg.bec, ground_options(cfg));
    em.grid(density_of(gs.psi), "ground_density");
    results["ground_state"] = ground_report(gs, cfg.bec);
}

void run_gpe_evolve(const RunConfig& cfg, const RunContext& ctx, Emitter& em, json& results) {
    const GroundStateResult gs = ground_state(cfg.grid, cfg.bec, ground_options(cfg));
    results["ground_state"] = ground_report(gs, cfg.bec);

    SpinorField2D initial(cfg.grid);
    initial.a = gs.psi.values;

    EvolveGpeOptions opt;
    opt.dt = cfg.solver.dt;
    opt.threads = ctx.threads;
    opt.snapshot_times = cfg.solver.snapshot_times;
    if (cfg.solver.snapshot_interval > 0.0)
        for (double t = cfg.solver.t0 + cfg.solver.snapshot_interval; t < cfg.solver.t_final;
             t += cfg.solver.snapshot_interval)
            opt.snapshot_times.push_back(t);

    std::vector<double> times, na, nb, nc;
    std::vector<double> fw_t, fw_w, fw_loc, fw_res;
    Snapshot last;
    int index = 0;
    char stem[64];

    evolve_spinor(initial, cfg.beams, cfg.stokes, cfg.schedule, cfg.bec, cfg.lambda.gamma,
                  cfg.solver.t0, cfg.solver.t_final, opt, [&](const Snapshot& snap) {
                      std::snprintf(stem, sizeof(stem), "snap_%03d", index);
                      em.grid(snap.fields.density(Component::A), std::string(stem) + "_density_a",
                              HeatmapScale::Log);
                      em.grid(snap.fields.density(Component::B), std::string(stem) + "_density_b",
                              HeatmapScale::Log);
                      em.grid(snap.fields.density(Component::C), std::string(stem) + "_density_c",
                              HeatmapScale::Log);
                      em.grid(phase_map(ComplexField2D(snap.fields.grid, snap.fields.b)),
                              std::string(stem) + "_phase_b");
                      times.push_back(snap.t);
                      na.push_back(snap.norms[0]);
                      nb.push_back(snap.norms[1]);
                      nc.push_back(snap.norms[2]);
                      const std::vector<Snapshot> one{snap};
                      const auto fw = fwhm_timeseries(one, Component::A, Axis::X).front();
                      fw_t.push_back(fw.t);
                      fw_w.push_back(fw.localized ? fw.width
                                                  : std::numeric_limits<double>::quiet_NaN());
                      fw_loc.push_back(fw.localized ? 1.0 : 0.0);
                      fw_res.push_back(fw.under_resolved ? 1.0 : 0.0);
                      last = snap;
                      ++index;
                  });

    em.csv("norms", {"t", "norm_a", "norm_b", "norm_c"}, {times, na, nb, nc});
    em.csv("fwhm_a", {"t", "fwhm", "localized", "under_resolved"}, {fw_t, fw_w, fw_loc, fw_res});

    json windings = json::array();
    std::vector<WindingLoop> loops = cfg.winding_loops;
    if (loops.empty()) {
        const double extent = std::min(cfg.grid.nx * cfg.grid.dx, cfg.grid.ny * cfg.grid.dy);
        loops.push_back({{0.0, 0.0}, 0.25 * extent});
    }
    for (const auto& loop : loops) {
        json w;
        w["center"] = {loop.center.x, loop.center.y};
        w["radius"] = loop.radius;
        try {
            w["winding"] = winding_number(ComplexField2D(cfg.grid, last.fields.b), loop.center,
                                          loop.radius);
        } catch (const UndefinedWindingError& e) {
            w["winding"] = nullptr;
            w["error"] = e.what();
        }
        windings.push_back(w);
    }
    results["winding_b"] = windings;
    results["final_norms"] = {{"a", last.norms[0]}, {"b", last.norms[1]}, {"c", last.norms[2]}};
    results["snapshots"] = index;
}

void run_analyze(const RunConfig& cfg, Emitter& em, json& results) {
    const auto& a = cfg.analyze;
    if (a.op == "slice") {
        const ScalarField2D field = read_grid(a.input);
        const Profile1D prof = slice(field, a.axis, a.offset);
        em.csv("slice", {"coordinate", "value"}, {prof.coords, prof.values});
        results["actual_offset"] = prof.actual_offset;
    } else if (a.op == "log-density") {
        const ScalarField2D field = read_grid(a.input);
        em.grid(log_density(field, a.floor), "log_density");
    } else {
        const ScalarField2D fa = read_grid(a.input);
        const ScalarField2D fb = read_grid(a.input_b);
        const MapComparison cmp = compare_maps(fa, fb);
        em.csv("comparison", {"max_abs_diff", "l2_diff", "fwhm_ratio"},
               {{cmp.max_abs_diff}, {cmp.l2_diff}, {cmp.fwhm_ratio}});
        results["max_abs_diff"] = cmp.max_abs_diff;
        results["l2_diff"] = cmp.l2_diff;
        if (cmp.fwhm_defined) results["fwhm_ratio"] = cmp.fwhm_ratio;
    }
}

} // namespace

ExecResult execute(const RunConfig& config, const RunContext& context) {
    const auto t_start = std::chrono::steady_clock::now();

    RunConfig cfg = config;
    if (context.heavy && cfg.has_grid) {
        const double ex = cfg.grid.nx * cfg.grid.dx;
        const double ey = cfg.grid.ny * cfg.grid.dy;
        cfg.grid.nx = 513;
        cfg.grid.ny = 513;
        cfg.grid.dx = ex / 513;
        cfg.grid.dy = ey / 513;
    }

    Emitter em;
    em.dir = context.out_dir.empty() ? fs::path(cfg.output.directory)
                                     : fs::path(context.out_dir);
    em.formats = cfg.output.formats;
    fs::create_directories(em.dir);

    const std::string config_echo = serialize_config(cfg);
    json results;
    switch (cfg.mode) {
        case RunMode::Localize:
        case RunMode::CptMap:
            run_population_mode(cfg, context, em, results);
            break;
        case RunMode::AdiabaticityMap:
            run_adiabaticity_mode(cfg, context, em, results);
            break;
        case RunMode::GpeGround:
            run_gpe_ground(cfg, em, results);
            break;
        case RunMode::GpeEvolve:
            run_gpe_evolve(cfg, context, em, results);
            break;
        case RunMode::Analyze:
            run_analyze(cfg, em, results);
            break;
    }

    json manifest;
    manifest["run_id"] = hex64(fnv1a64(config_echo.data(), config_echo.size()));
    manifest["mode"] = to_string(cfg.mode);
    manifest["config"] = json::parse(config_echo);
    manifest["constants"] = {{"hbar", kHbar}};
    manifest["conventions"] = {
        {"lambda_coupling", "H = -hbar*(Omega_s|c><b| + Omega_p|c><a|) + h.c."},
        {"gpe_coupling",
         "+0.5*hbar*Omega, unconjugated on the excited-state row; a charge-l pump "
         "imprints winding +l on psi_b"},
        {"decay", cfg.lambda.recycle ? "recycle" : "lossy"},
        {"branching", {cfg.lambda.branch_a, cfg.lambda.branch_b}}};
    if (cfg.has_grid) {
        manifest["grid"] = {{"nx", cfg.grid.nx},
                            {"ny", cfg.grid.ny},
                            {"dx", cfg.grid.dx},
                            {"dy", cfg.grid.dy},
                            {"min_discernible_distance", std::max(cfg.grid.dx, cfg.grid.dy)}};
    }
    manifest["results"] = results;
    manifest["outputs"] = em.outputs;
    const auto t_end = std::chrono::steady_clock::now();
    manifest["timing"] = {
        {"wall_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_start).count()}};

    const fs::path manifest_path = em.dir / "manifest.json";
    {
        std::ofstream os(manifest_path);
        if (!os) throw IoError("cannot write manifest: " + manifest_path.string());
        os << manifest.dump(2) << "\n";
    }
    return {em.dir.string(), manifest_path.string()};
}

} // namespace stirap2d
