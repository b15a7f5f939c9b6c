#include <catch_amalgamated.hpp>

#include <cstdlib>

#include "qrad/config.hpp"
#include "qrad/scenario.hpp"

namespace config = qrad::config;
namespace scenario = qrad::scenario;

namespace {

const char* kMirrorConfig = R"(# moving mirror, Gaussian pulse
[scenario]
kind = mirror

[profile]
family = gaussian
amplitude = 1.0
tau = 1.0

[temperature]
T = 0 0.5

[numerics]
grid_nodes = 400
)";

}  // namespace

TEST_CASE("config parses, renders, and round-trips") {
  const auto parsed = config::parse_scenario(kMirrorConfig);
  REQUIRE(parsed.ok());
  CHECK(parsed.config->kind == config::ScenarioKind::mirror);
  CHECK(parsed.config->number("profile.tau", 0.0) == 1.0);
  CHECK(parsed.config->list("temperature.T", {}).size() == 2);

  const auto again = config::parse_scenario(config::render(*parsed.config));
  REQUIRE(again.ok());
  CHECK(again.config->kind == parsed.config->kind);
  CHECK(again.config->numbers == parsed.config->numbers);
  CHECK(again.config->words == parsed.config->words);
}

TEST_CASE("config errors are all collected, with line numbers") {
  const auto parsed = config::parse_scenario(
      "[scenario]\nkind = mirror\n[profile]\ntau = -1\nbogus = 3\n"
      "[temperature]\nT = -2\n");
  REQUIRE_FALSE(parsed.ok());
  CHECK(parsed.errors.size() >= 3);  // unknown key, tau <= 0, negative T
  const auto text = parsed.error_text();
  CHECK(text.find("bogus") != std::string::npos);
  CHECK(text.find("tau") != std::string::npos);
  CHECK(text.find("negative temperature") != std::string::npos);
}

TEST_CASE("unknown scenario kinds and malformed lines are rejected") {
  CHECK_FALSE(config::parse_scenario("[scenario]\nkind = warp\n").ok());
  CHECK_FALSE(config::parse_scenario("kind = mirror\n").ok());  // no section
  CHECK_FALSE(
      config::parse_scenario("[scenario]\nkind = mirror\nnot a kv line\n")
          .ok());
  CHECK_FALSE(config::parse_scenario("[scenario]\nkind = mirror\n"
                                     "[scenario]\nkind = mirror\n")
                  .ok());  // duplicate key
  // Keys legal for one scenario are unknown for another.
  CHECK_FALSE(config::parse_scenario(
                  "[scenario]\nkind = frw\n[profile]\ntau = 1\n")
                  .ok());
}

TEST_CASE("scenario run: decomposition invariant and determinism") {
  const auto parsed = config::parse_scenario(kMirrorConfig);
  REQUIRE(parsed.ok());
  const auto records = scenario::run_sweep(*parsed.config, 2);
  REQUIRE(records.size() == 2);
  CHECK(records[0].temperature == 0.0);
  CHECK(records[1].temperature == 0.5);
  for (const auto& rec : records) {
    REQUIRE_FALSE(rec.rows.empty());
    for (const auto& row : rec.rows)
      CHECK(row.dn_vacuum + row.dn_thermal ==
            Catch::Approx(row.dn_total).margin(1e-12));
  }
  // Byte-identical output across repeated runs.
  const auto again = scenario::run_sweep(*parsed.config, 1);
  CHECK(scenario::to_csv(records[1]) == scenario::to_csv(again[1]));
  CHECK(scenario::to_plot(records[0]) == scenario::to_plot(again[0]));
}

TEST_CASE("cavity scenario surfaces scalars and lab units") {
  const auto parsed = config::parse_scenario(
      "[scenario]\nkind = cavity\n[cavity]\nedge_cm = 1\nepsilon = 1e-9\n"
      "omega_ts = 2000\n[temperature]\nkelvin = 290\n");
  REQUIRE(parsed.ok());
  const auto records = scenario::run_sweep(*parsed.config);
  REQUIRE(records.size() == 1);
  double factor = 0.0;
  for (const auto& [k, v] : records[0].scalars)
    if (k == "thermal_factor") factor = v;
  CHECK(factor == Catch::Approx(465.48381020881658).epsilon(1e-12));
}

TEST_CASE("worker count env override") {
  setenv("QRAD_WORKERS", "3", 1);
  CHECK(scenario::worker_count() == 3);
  setenv("QRAD_WORKERS", "junk", 1);
  CHECK(scenario::worker_count() >= 1);
  unsetenv("QRAD_WORKERS");
  CHECK(scenario::worker_count() >= 1);
}

TEST_CASE("json summary is well-formed enough to round-trip key facts") {
  const auto parsed = config::parse_scenario(kMirrorConfig);
  REQUIRE(parsed.ok());
  const auto records = scenario::run_sweep(*parsed.config, 2);
  const auto json = scenario::to_json_summary(records);
  CHECK(json.find("\"records\"") != std::string::npos);
  CHECK(json.find("\"scenario\": \"mirror\"") != std::string::npos);
  CHECK(json.find("\"scalars\"") != std::string::npos);
  CHECK(json.find("\"energy_vacuum\"") != std::string::npos);
}
