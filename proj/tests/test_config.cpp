#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "stirap2d/config.hpp"

using namespace stirap2d;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

bool mentions(const ConfigError& e, const std::string& needle) {
    for (const auto& m : e.messages())
        if (m.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("bundled fig2a config parses to the single-vortex localization run") {
    const RunConfig cfg = parse_config(read_file(std::string(CONFIG_DIR) + "/fig2a.json"));
    CHECK(cfg.mode == RunMode::Localize);
    CHECK(cfg.alpha == 100.0);
    REQUIRE(cfg.beams.components.size() == 1);
    CHECK(cfg.beams.components[0].charge == 1);
    // alpha resolves every pump amplitude to Omega_s0 * sqrt(alpha)
    CHECK(cfg.beams.components[0].amplitude ==
          doctest::Approx(cfg.stokes.amplitude * 10.0).epsilon(1e-12));
    // delay is 10 periods of the bare linewidth; gamma carries the population rate (2x)
    CHECK(cfg.schedule.delay() == doctest::Approx(20.0 / cfg.lambda.gamma).epsilon(1e-6));
    CHECK(cfg.has_scan);
    CHECK(cfg.scan.points == 2000);
}

TEST_CASE("every bundled config parses") {
    for (const char* name :
         {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig4d",
          "appendixA", "fig5-7", "fig8", "fig9"}) {
        CAPTURE(name);
        CHECK_NOTHROW(parse_config(read_file(std::string(CONFIG_DIR) + "/" + name + ".json")));
    }
}

TEST_CASE("an empty document reports every missing required key") {
    try {
        parse_config("{}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.messages().size() >= 2);
        CHECK(mentions(e, "'mode'"));
        CHECK(mentions(e, "'output'"));
    }
}

TEST_CASE("malformed JSON is reported as such") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
}

TEST_CASE("alpha and explicit amplitudes are mutually exclusive") {
    const std::string doc = R"({
      "mode": "localize",
      "fields": {
        "beams": [{"amplitude": 1e8, "waist": 1e-6, "charge": 1}],
        "stokes": {"amplitude": 1e7},
        "schedule": {"T": 1e-7, "tau": 2e-7}
      },
      "lambda": {"gamma": 3e7, "alpha": 100},
      "scan": {"r_max": 1e-7, "points": 100},
      "output": {"directory": "out"}
    })";
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "mutually exclusive"));
    }
}

TEST_CASE("unknown keys are rejected") {
    const std::string doc = R"({
      "mode": "analyze",
      "analyze": {"op": "slice", "input": "x.f64g", "axis": "x"},
      "output": {"directory": "out"},
      "typo_key": 1
    })";
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "typo_key"));
    }
}

TEST_CASE("cpt-map rejects a nonzero delay") {
    const std::string doc = R"({
      "mode": "cpt-map",
      "fields": {
        "beams": [{"waist": 1e-6, "charge": 1}],
        "stokes": {"amplitude": 1e7},
        "schedule": {"T": 1e-7, "tau": 2e-7}
      },
      "lambda": {"gamma": 3e7, "alpha": 100},
      "scan": {"r_max": 1e-7, "points": 100},
      "output": {"directory": "out"}
    })";
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "tau = 0"));
    }
}

TEST_CASE("gpe evolution demands an explicit dt and time window") {
    const std::string doc = R"({
      "mode": "gpe-evolve",
      "fields": {
        "beams": [{"waist": 2e-5, "charge": 1}],
        "stokes": {"amplitude": 6.28e7},
        "schedule": {"T": 5e-6, "t_stokes": 2e-5, "t_pump": 3e-5}
      },
      "lambda": {"gamma": 3.4e7, "alpha": 100},
      "grid": {"nx": 129, "ny": 129, "x0": -5e-5, "y0": -5e-5, "dx": 7.75e-7, "dy": 7.75e-7},
      "bec": {"mass": 1.44e-25, "atom_number": 5e5, "omega_r": 88.0, "omega_perp": 4493.0,
              "a_aa": 5.665e-9, "a_ab": 5.5e-9, "a_bb": 5.335e-9},
      "output": {"directory": "out"}
    })";
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "solver.dt"));
        CHECK(mentions(e, "t_final"));
    }
}

TEST_CASE("configs survive a serialize/parse round trip") {
    for (const char* name : {"fig2a", "fig4b", "appendixA", "fig5-7", "fig8"}) {
        CAPTURE(name);
        const RunConfig a =
            parse_config(read_file(std::string(CONFIG_DIR) + "/" + name + ".json"));
        const std::string sa = serialize_config(a);
        const RunConfig b = parse_config(sa);
        CHECK(serialize_config(b) == sa);
    }
}

TEST_CASE("mode strings round trip") {
    for (RunMode m : {RunMode::Localize, RunMode::CptMap, RunMode::AdiabaticityMap,
                      RunMode::GpeGround, RunMode::GpeEvolve, RunMode::Analyze}) {
        const std::string doc = R"({"mode": ")" + to_string(m) + R"("})";
        try {
            parse_config(doc);
        } catch (const ConfigError& e) {
            CHECK_FALSE(mentions(e, "mode must be one of"));
        }
    }
}
