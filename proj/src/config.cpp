#include "stirap2d/config.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace stirap2d {

using nlohmann::json;

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Localize: return "localize";
        case RunMode::CptMap: return "cpt-map";
        case RunMode::AdiabaticityMap: return "adiabaticity-map";
        case RunMode::GpeGround: return "gpe-ground";
        case RunMode::GpeEvolve: return "gpe-evolve";
        case RunMode::Analyze: return "analyze";
    }
    return "?";
}

namespace {

struct Parser {
    std::vector<std::string> errors;

    void fail(const std::string& msg) { errors.push_back(msg); }

    void check_keys(const json& obj, const std::string& where,
                    const std::set<std::string>& known) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!known.count(it.key())) fail(where + ": unknown key '" + it.key() + "'");
    }

    bool require(const json& obj, const std::string& where, const char* key) {
        if (!obj.contains(key)) {
            fail(where + ": missing required key '" + key + "'");
            return false;
        }
        return true;
    }

    double num(const json& obj, const std::string& where, const char* key, bool* ok = nullptr) {
        if (ok) *ok = false;
        if (!require(obj, where, key)) return 0.0;
        if (!obj[key].is_number()) {
            fail(where + ": '" + std::string(key) + "' must be a number");
            return 0.0;
        }
        if (ok) *ok = true;
        return obj[key].get<double>();
    }

    double num_or(const json& obj, const std::string& where, const char* key, double fallback) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_number()) {
            fail(where + ": '" + std::string(key) + "' must be a number");
            return fallback;
        }
        return obj[key].get<double>();
    }

    long integer_or(const json& obj, const std::string& where, const char* key, long fallback) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_number_integer()) {
            fail(where + ": '" + std::string(key) + "' must be an integer");
            return fallback;
        }
        return obj[key].get<long>();
    }

    Vec2 vec2_or(const json& obj, const std::string& where, const char* key, Vec2 fallback) {
        if (!obj.contains(key)) return fallback;
        const auto& v = obj[key];
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            fail(where + ": '" + std::string(key) + "' must be [x, y]");
            return fallback;
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }
};

RunMode parse_mode(Parser& p, const json& root) {
    if (!root.contains("mode")) {
        p.fail("config: missing required key 'mode'");
        return RunMode::Localize;
    }
    const std::string m = root["mode"].is_string() ? root["mode"].get<std::string>() : "";
    if (m == "localize") return RunMode::Localize;
    if (m == "cpt-map") return RunMode::CptMap;
    if (m == "adiabaticity-map") return RunMode::AdiabaticityMap;
    if (m == "gpe-ground") return RunMode::GpeGround;
    if (m == "gpe-evolve") return RunMode::GpeEvolve;
    if (m == "analyze") return RunMode::Analyze;
    p.fail("config: mode must be one of localize, cpt-map, adiabaticity-map, "
           "gpe-ground, gpe-evolve, analyze");
    return RunMode::Localize;
}

void parse_fields(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("fields")) return;
    const json& f = root["fields"];
    cfg.has_fields = true;
    p.check_keys(f, "fields", {"beams", "stokes", "schedule"});

    if (p.require(f, "fields", "beams")) {
        const json& beams = f["beams"];
        if (!beams.is_array() || beams.empty() || beams.size() > 2) {
            p.fail("fields.beams: must be an array of 1 or 2 beam objects");
        } else {
            for (std::size_t k = 0; k < beams.size(); ++k) {
                const std::string where = "fields.beams[" + std::to_string(k) + "]";
                const json& b = beams[k];
                p.check_keys(b, where,
                             {"amplitude", "waist", "charge", "center", "relative_phase_rad"});
                VortexBeamSpec spec;
                spec.waist = p.num(b, where, "waist");
                spec.charge = static_cast<int>(p.integer_or(b, where, "charge", 1));
                if (p.require(b, where, "charge") && !b["charge"].is_number_integer())
                    p.fail(where + ": 'charge' must be an integer");
                spec.center = p.vec2_or(b, where, "center", {0.0, 0.0});
                const double phase = p.num_or(b, where, "relative_phase_rad", 0.0);
                spec.relative_phase = std::polar(1.0, phase);
                spec.amplitude = p.num_or(b, where, "amplitude", -1.0);  // -1 = not given
                if (!(spec.waist > 0.0)) p.fail(where + ": waist must be > 0");
                cfg.beams.components.push_back(spec);
            }
        }
    }

    if (p.require(f, "fields", "stokes")) {
        const json& s = f["stokes"];
        p.check_keys(s, "fields.stokes", {"amplitude", "profile", "waist"});
        cfg.stokes.amplitude = p.num(s, "fields.stokes", "amplitude");
        const std::string profile =
            s.contains("profile") && s["profile"].is_string() ? s["profile"].get<std::string>()
                                                              : "top-hat";
        if (profile == "gaussian") {
            cfg.stokes.gaussian_waist = p.num(s, "fields.stokes", "waist");
        } else if (profile == "top-hat") {
            if (s.contains("waist"))
                p.fail("fields.stokes: 'waist' is only valid with the gaussian profile");
        } else {
            p.fail("fields.stokes: profile must be 'top-hat' or 'gaussian'");
        }
        if (cfg.stokes.amplitude < 0.0) p.fail("fields.stokes: amplitude must be >= 0");
    }

    if (p.require(f, "fields", "schedule")) {
        const json& s = f["schedule"];
        p.check_keys(s, "fields.schedule", {"T", "tau", "t_stokes", "t_pump"});
        const double width = p.num(s, "fields.schedule", "T");
        const bool by_delay = s.contains("tau");
        const bool by_centers = s.contains("t_stokes") || s.contains("t_pump");
        if (by_delay && by_centers) {
            p.fail("fields.schedule: give either 'tau' or 't_stokes'/'t_pump', not both");
        } else if (by_delay) {
            cfg.schedule = PulseSchedule::from_delay(width, p.num(s, "fields.schedule", "tau"));
            cfg.schedule_by_delay = true;
        } else if (by_centers) {
            cfg.schedule = PulseSchedule::from_centers(width,
                                                       p.num(s, "fields.schedule", "t_stokes"),
                                                       p.num(s, "fields.schedule", "t_pump"));
        } else {
            p.fail("fields.schedule: missing 'tau' (or 't_stokes'/'t_pump')");
        }
        if (!(width > 0.0)) p.fail("fields.schedule: T must be > 0");
    }
}

void parse_lambda(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("lambda")) return;
    const json& l = root["lambda"];
    cfg.has_lambda = true;
    p.check_keys(l, "lambda",
                 {"gamma", "alpha", "branching", "decay", "detuning_p", "detuning_s", "beta"});
    cfg.lambda.gamma = p.num(l, "lambda", "gamma");
    if (cfg.lambda.gamma < 0.0) p.fail("lambda: gamma must be >= 0");
    cfg.alpha = p.num_or(l, "lambda", "alpha", 0.0);
    if (l.contains("alpha") && !(cfg.alpha > 0.0)) p.fail("lambda: alpha must be > 0");
    cfg.beta = p.num_or(l, "lambda", "beta", 10.0);
    cfg.lambda.detuning_p = p.num_or(l, "lambda", "detuning_p", 0.0);
    cfg.lambda.detuning_s = p.num_or(l, "lambda", "detuning_s", 0.0);
    if (l.contains("branching")) {
        const json& b = l["branching"];
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
            p.fail("lambda: 'branching' must be [b_a, b_b]");
        } else {
            cfg.lambda.branch_a = b[0].get<double>();
            cfg.lambda.branch_b = b[1].get<double>();
            if (std::abs(cfg.lambda.branch_a + cfg.lambda.branch_b - 1.0) > 1e-12)
                p.fail("lambda: branching fractions must sum to 1");
        }
    }
    if (l.contains("decay")) {
        const std::string d = l["decay"].is_string() ? l["decay"].get<std::string>() : "";
        if (d == "recycle")
            cfg.lambda.recycle = true;
        else if (d == "lossy")
            cfg.lambda.recycle = false;
        else
            p.fail("lambda: decay must be 'recycle' or 'lossy'");
    }
}

void parse_grid(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("grid")) return;
    const json& g = root["grid"];
    cfg.has_grid = true;
    p.check_keys(g, "grid", {"nx", "ny", "x0", "y0", "dx", "dy"});
    cfg.grid.nx = static_cast<std::int32_t>(p.integer_or(g, "grid", "nx", 0));
    cfg.grid.ny = static_cast<std::int32_t>(p.integer_or(g, "grid", "ny", 0));
    if (!g.contains("nx") || !g.contains("ny")) p.fail("grid: 'nx' and 'ny' are required");
    cfg.grid.x0 = p.num(g, "grid", "x0");
    cfg.grid.y0 = p.num(g, "grid", "y0");
    cfg.grid.dx = p.num(g, "grid", "dx");
    cfg.grid.dy = p.num(g, "grid", "dy");
    if (cfg.grid.nx < 2 || cfg.grid.ny < 2) p.fail("grid: nx and ny must be >= 2");
    if (!(cfg.grid.dx > 0.0) || !(cfg.grid.dy > 0.0)) p.fail("grid: dx and dy must be > 0");
}

void parse_scan(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("scan")) return;
    const json& s = root["scan"];
    cfg.has_scan = true;
    p.check_keys(s, "scan", {"r_max", "points"});
    cfg.scan.r_max = p.num(s, "scan", "r_max");
    cfg.scan.points = static_cast<int>(p.integer_or(s, "scan", "points", 0));
    if (!s.contains("points")) p.fail("scan: 'points' is required");
    if (!(cfg.scan.r_max > 0.0)) p.fail("scan: r_max must be > 0");
    if (cfg.scan.points < 2) p.fail("scan: points must be >= 2");
}

void parse_bec(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("bec")) return;
    const json& b = root["bec"];
    cfg.has_bec = true;
    p.check_keys(b, "bec",
                 {"mass", "atom_number", "omega_r", "omega_perp", "a_aa", "a_ab", "a_bb"});
    cfg.bec.mass = p.num(b, "bec", "mass");
    cfg.bec.atom_number = p.num(b, "bec", "atom_number");
    cfg.bec.omega_r = p.num(b, "bec", "omega_r");
    cfg.bec.omega_perp = p.num(b, "bec", "omega_perp");
    cfg.bec.a_aa = p.num(b, "bec", "a_aa");
    cfg.bec.a_ab = p.num(b, "bec", "a_ab");
    cfg.bec.a_bb = p.num(b, "bec", "a_bb");
    if (!(cfg.bec.mass > 0.0) || !(cfg.bec.atom_number > 0.0) || !(cfg.bec.omega_r > 0.0) ||
        !(cfg.bec.omega_perp > 0.0))
        p.fail("bec: mass, atom_number and trap frequencies must be > 0");
    if (cfg.bec.a_aa < 0.0 || cfg.bec.a_ab < 0.0 || cfg.bec.a_bb < 0.0)
        p.fail("bec: scattering lengths must be >= 0");
}

void parse_solver(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("solver")) return;
    const json& s = root["solver"];
    p.check_keys(s, "solver",
                 {"dt", "t0", "t_final", "snapshot_interval", "snapshot_times", "dtau",
                  "energy_tolerance", "residual_tolerance", "max_iterations"});
    cfg.solver.dt = p.num_or(s, "solver", "dt", 0.0);
    if (s.contains("t0") != s.contains("t_final")) {
        p.fail("solver: 't0' and 't_final' must be given together");
    } else if (s.contains("t0")) {
        cfg.solver.t0 = p.num(s, "solver", "t0");
        cfg.solver.t_final = p.num(s, "solver", "t_final");
        cfg.solver.explicit_window = true;
        if (!(cfg.solver.t_final > cfg.solver.t0)) p.fail("solver: t_final must be > t0");
    }
    cfg.solver.snapshot_interval = p.num_or(s, "solver", "snapshot_interval", 0.0);
    if (s.contains("snapshot_times")) {
        if (!s["snapshot_times"].is_array()) {
            p.fail("solver: 'snapshot_times' must be an array of numbers");
        } else {
            for (const auto& v : s["snapshot_times"]) {
                if (!v.is_number()) {
                    p.fail("solver: 'snapshot_times' must contain only numbers");
                    break;
                }
                cfg.solver.snapshot_times.push_back(v.get<double>());
            }
        }
    }
    cfg.solver.dtau = p.num_or(s, "solver", "dtau", 1e-3);
    cfg.solver.energy_tolerance = p.num_or(s, "solver", "energy_tolerance", 1e-10);
    cfg.solver.residual_tolerance = p.num_or(s, "solver", "residual_tolerance", 1e-5);
    cfg.solver.max_iterations = p.integer_or(s, "solver", "max_iterations", 400000);
}

void parse_output(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("output")) {
        p.fail("config: missing required key 'output'");
        return;
    }
    const json& o = root["output"];
    p.check_keys(o, "output", {"directory", "formats"});
    if (o.contains("directory") && o["directory"].is_string())
        cfg.output.directory = o["directory"].get<std::string>();
    else if (!o.contains("directory"))
        p.fail("output: missing required key 'directory'");
    else
        p.fail("output: 'directory' must be a string");
    if (o.contains("formats")) {
        if (!o["formats"].is_array()) {
            p.fail("output: 'formats' must be an array");
        } else {
            cfg.output.formats.clear();
            for (const auto& v : o["formats"]) {
                const std::string fmt = v.is_string() ? v.get<std::string>() : "";
                if (fmt != "f64g" && fmt != "csv" && fmt != "pgm") {
                    p.fail("output: formats must be among f64g, csv, pgm");
                } else {
                    cfg.output.formats.push_back(fmt);
                }
            }
        }
    }
}

void parse_analyze(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("analyze")) return;
    const json& a = root["analyze"];
    p.check_keys(a, "analyze", {"op", "input", "input_b", "axis", "offset", "floor"});
    if (p.require(a, "analyze", "op") && a["op"].is_string())
        cfg.analyze.op = a["op"].get<std::string>();
    if (p.require(a, "analyze", "input") && a["input"].is_string())
        cfg.analyze.input = a["input"].get<std::string>();
    if (a.contains("input_b") && a["input_b"].is_string())
        cfg.analyze.input_b = a["input_b"].get<std::string>();
    if (a.contains("axis")) {
        const std::string ax = a["axis"].is_string() ? a["axis"].get<std::string>() : "";
        if (ax == "x")
            cfg.analyze.axis = Axis::X;
        else if (ax == "y")
            cfg.analyze.axis = Axis::Y;
        else
            p.fail("analyze: axis must be 'x' or 'y'");
    }
    cfg.analyze.offset = p.num_or(a, "analyze", "offset", 0.0);
    cfg.analyze.floor = p.num_or(a, "analyze", "floor", 0.0);
    if (cfg.analyze.op != "slice" && cfg.analyze.op != "log-density" &&
        cfg.analyze.op != "compare" && !cfg.analyze.op.empty())
        p.fail("analyze: op must be 'slice', 'log-density' or 'compare'");
    if (cfg.analyze.op == "compare" && cfg.analyze.input_b.empty())
        p.fail("analyze: 'compare' requires 'input_b'");
}

void parse_winding(Parser& p, const json& root, RunConfig& cfg) {
    if (!root.contains("winding_loops")) return;
    const json& w = root["winding_loops"];
    if (!w.is_array()) {
        p.fail("winding_loops: must be an array");
        return;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        const std::string where = "winding_loops[" + std::to_string(k) + "]";
        const json& loop = w[k];
        p.check_keys(loop, where, {"center", "radius"});
        WindingLoop wl;
        wl.center = p.vec2_or(loop, where, "center", {0.0, 0.0});
        wl.radius = p.num(loop, where, "radius");
        if (!(wl.radius > 0.0)) p.fail(where + ": radius must be > 0");
        cfg.winding_loops.push_back(wl);
    }
}

void resolve_amplitudes(Parser& p, RunConfig& cfg) {
    if (!cfg.has_fields) return;
    bool any_explicit = false, all_explicit = true;
    for (const auto& b : cfg.beams.components) {
        if (b.amplitude >= 0.0)
            any_explicit = true;
        else
            all_explicit = false;
    }
    if (cfg.alpha > 0.0) {
        if (any_explicit) {
            p.fail("lambda.alpha and explicit beam amplitudes are mutually exclusive");
            return;
        }
        const double amp = cfg.stokes.amplitude * std::sqrt(cfg.alpha);
        for (auto& b : cfg.beams.components) b.amplitude = amp;
    } else if (!all_explicit) {
        p.fail("fields.beams: every component needs 'amplitude' when lambda.alpha is not set");
        for (auto& b : cfg.beams.components) b.amplitude = std::max(b.amplitude, 0.0);
    }
}

void check_mode_requirements(Parser& p, RunConfig& cfg) {
    auto need = [&](bool present, const char* key) {
        if (!present)
            p.fail("config: mode '" + to_string(cfg.mode) + "' requires the '" + key +
                   "' sub-object");
    };
    switch (cfg.mode) {
        case RunMode::Localize:
        case RunMode::CptMap:
            need(cfg.has_fields, "fields");
            need(cfg.has_lambda, "lambda");
            if (!cfg.has_grid && !cfg.has_scan)
                p.fail("config: localization modes require 'grid' and/or 'scan'");
            if (cfg.mode == RunMode::CptMap && cfg.has_fields && cfg.schedule.delay() != 0.0)
                p.fail("config: cpt-map requires overlapping pulses (tau = 0)");
            break;
        case RunMode::AdiabaticityMap:
            need(cfg.has_fields, "fields");
            need(cfg.has_lambda, "lambda");
            need(cfg.has_grid, "grid");
            if (cfg.has_fields && !(cfg.schedule.delay() > 0.0))
                p.fail("config: adiabaticity-map requires a positive pulse delay");
            break;
        case RunMode::GpeGround:
            need(cfg.has_bec, "bec");
            need(cfg.has_grid, "grid");
            break;
        case RunMode::GpeEvolve:
            need(cfg.has_fields, "fields");
            need(cfg.has_lambda, "lambda");
            need(cfg.has_bec, "bec");
            need(cfg.has_grid, "grid");
            if (!(cfg.solver.dt > 0.0)) p.fail("config: gpe-evolve requires solver.dt > 0");
            if (!cfg.solver.explicit_window)
                p.fail("config: gpe-evolve requires solver.t0 and solver.t_final");
            break;
        case RunMode::Analyze:
            if (cfg.analyze.op.empty())
                p.fail("config: mode 'analyze' requires the 'analyze' sub-object");
            break;
    }
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("not well-formed JSON: ") + e.what()});
    }
    if (!root.is_object()) throw ConfigError({"config: top level must be a JSON object"});

    Parser p;
    p.check_keys(root, "config",
                 {"mode", "fields", "lambda", "grid", "scan", "bec", "solver", "output",
                  "analyze", "winding_loops"});

    RunConfig cfg;
    cfg.mode = parse_mode(p, root);
    parse_fields(p, root, cfg);
    parse_lambda(p, root, cfg);
    parse_grid(p, root, cfg);
    parse_scan(p, root, cfg);
    parse_bec(p, root, cfg);
    parse_solver(p, root, cfg);
    parse_output(p, root, cfg);
    parse_analyze(p, root, cfg);
    parse_winding(p, root, cfg);
    resolve_amplitudes(p, cfg);
    check_mode_requirements(p, cfg);

    if (!p.errors.empty()) throw ConfigError(p.errors);
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    root["mode"] = to_string(cfg.mode);

    if (cfg.has_fields) {
        json beams = json::array();
        for (const auto& b : cfg.beams.components) {
            json jb;
            if (!(cfg.alpha > 0.0)) jb["amplitude"] = b.amplitude;
            jb["waist"] = b.waist;
            jb["charge"] = b.charge;
            jb["center"] = {b.center.x, b.center.y};
            const double phase = std::arg(b.relative_phase);
            if (phase != 0.0) jb["relative_phase_rad"] = phase;
            beams.push_back(jb);
        }
        json stokes;
        stokes["amplitude"] = cfg.stokes.amplitude;
        if (cfg.stokes.gaussian_waist) {
            stokes["profile"] = "gaussian";
            stokes["waist"] = *cfg.stokes.gaussian_waist;
        } else {
            stokes["profile"] = "top-hat";
        }
        json schedule;
        schedule["T"] = cfg.schedule.width;
        if (cfg.schedule_by_delay) {
            schedule["tau"] = cfg.schedule.delay();
        } else {
            schedule["t_stokes"] = cfg.schedule.t_stokes;
            schedule["t_pump"] = cfg.schedule.t_pump;
        }
        root["fields"] = {{"beams", beams}, {"stokes", stokes}, {"schedule", schedule}};
    }

    if (cfg.has_lambda) {
        json l;
        l["gamma"] = cfg.lambda.gamma;
        if (cfg.alpha > 0.0) l["alpha"] = cfg.alpha;
        l["branching"] = {cfg.lambda.branch_a, cfg.lambda.branch_b};
        l["decay"] = cfg.lambda.recycle ? "recycle" : "lossy";
        if (cfg.lambda.detuning_p != 0.0) l["detuning_p"] = cfg.lambda.detuning_p;
        if (cfg.lambda.detuning_s != 0.0) l["detuning_s"] = cfg.lambda.detuning_s;
        if (cfg.beta != 10.0) l["beta"] = cfg.beta;
        root["lambda"] = l;
    }

    if (cfg.has_grid)
        root["grid"] = {{"nx", cfg.grid.nx}, {"ny", cfg.grid.ny}, {"x0", cfg.grid.x0},
                        {"y0", cfg.grid.y0}, {"dx", cfg.grid.dx}, {"dy", cfg.grid.dy}};
    if (cfg.has_scan)
        root["scan"] = {{"r_max", cfg.scan.r_max}, {"points", cfg.scan.points}};
    if (cfg.has_bec)
        root["bec"] = {{"mass", cfg.bec.mass},         {"atom_number", cfg.bec.atom_number},
                       {"omega_r", cfg.bec.omega_r},   {"omega_perp", cfg.bec.omega_perp},
                       {"a_aa", cfg.bec.a_aa},         {"a_ab", cfg.bec.a_ab},
                       {"a_bb", cfg.bec.a_bb}};

    json solver;
    if (cfg.solver.dt > 0.0) solver["dt"] = cfg.solver.dt;
    if (cfg.solver.explicit_window) {
        solver["t0"] = cfg.solver.t0;
        solver["t_final"] = cfg.solver.t_final;
    }
    if (cfg.solver.snapshot_interval > 0.0)
        solver["snapshot_interval"] = cfg.solver.snapshot_interval;
    if (!cfg.solver.snapshot_times.empty()) solver["snapshot_times"] = cfg.solver.snapshot_times;
    if (cfg.solver.dtau != 1e-3) solver["dtau"] = cfg.solver.dtau;
    if (cfg.solver.energy_tolerance != 1e-10)
        solver["energy_tolerance"] = cfg.solver.energy_tolerance;
    if (cfg.solver.residual_tolerance != 1e-5)
        solver["residual_tolerance"] = cfg.solver.residual_tolerance;
    if (cfg.solver.max_iterations != 400000) solver["max_iterations"] = cfg.solver.max_iterations;
    if (!solver.empty()) root["solver"] = solver;

    root["output"] = {{"directory", cfg.output.directory}, {"formats", cfg.output.formats}};

    if (!cfg.analyze.op.empty()) {
        json a;
        a["op"] = cfg.analyze.op;
        a["input"] = cfg.analyze.input;
        if (!cfg.analyze.input_b.empty()) a["input_b"] = cfg.analyze.input_b;
        a["axis"] = cfg.analyze.axis == Axis::X ? "x" : "y";
        if (cfg.analyze.offset != 0.0) a["offset"] = cfg.analyze.offset;
        if (cfg.analyze.floor != 0.0) a["floor"] = cfg.analyze.floor;
        root["analyze"] = a;
    }

    if (!cfg.winding_loops.empty()) {
        json loops = json::array();
        for (const auto& w : cfg.winding_loops)
            loops.push_back({{"center", {w.center.x, w.center.y}}, {"radius", w.radius}});
        root["winding_loops"] = loops;
    }

    return root.dump(2);
}

} // namespace stirap2d
