#pragma once

#include <string>
#include <vector>

#include "stirap2d/analysis.hpp"
#include "stirap2d/fields.hpp"
#include "stirap2d/gpe.hpp"
#include "stirap2d/lambda_system.hpp"

namespace stirap2d {

enum class RunMode { Localize, CptMap, AdiabaticityMap, GpeGround, GpeEvolve, Analyze };

std::string to_string(RunMode mode);

struct ScanConfig {
    double r_max = 0.0;
    int points = 0;
};

struct SolverConfig {
    double dt = 0.0;  ///< 0 = per-point step guard (map modes); required for gpe evolution
    double t0 = 0.0;
    double t_final = 0.0;
    bool explicit_window = false;
    double snapshot_interval = 0.0;
    std::vector<double> snapshot_times;
    double dtau = 1e-3;
    double energy_tolerance = 1e-10;
    double residual_tolerance = 1e-5;
    long max_iterations = 400000;
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<std::string> formats = {"f64g", "csv", "pgm"};
};

struct AnalyzeConfig {
    std::string op;  ///< "slice", "log-density" or "compare"
    std::string input;
    std::string input_b;
    Axis axis = Axis::X;
    double offset = 0.0;
    double floor = 0.0;
};

struct WindingLoop {
    Vec2 center{};
    double radius = 0.0;
};

/// Validated run configuration. Beam amplitudes are already resolved: when the
/// document specifies the intensity ratio alpha instead of explicit pump
/// amplitudes, every component carries amplitude Omega_s0 * sqrt(alpha).
struct RunConfig {
    RunMode mode = RunMode::Localize;

    CompositeBeamSpec beams;
    StokesSpec stokes;
    PulseSchedule schedule;
    bool schedule_by_delay = false;  ///< how the document expressed the timing
    bool has_fields = false;

    LambdaParams lambda;
    double alpha = 0.0;  ///< 0 = explicit amplitudes were given
    double beta = 10.0;
    bool has_lambda = false;

    GridSpec2D grid{};
    bool has_grid = false;

    ScanConfig scan;
    bool has_scan = false;

    BECParams bec;
    bool has_bec = false;

    SolverConfig solver;
    OutputConfig output;
    AnalyzeConfig analyze;
    std::vector<WindingLoop> winding_loops;
};

/// Parses and validates a JSON document. Unknown keys are rejected; every
/// validation failure is reported (ConfigError carries the full list).
RunConfig parse_config(const std::string& json_text);

/// Canonical JSON form; parse(serialize(config)) == config.
std::string serialize_config(const RunConfig& config);

} // namespace stirap2d
