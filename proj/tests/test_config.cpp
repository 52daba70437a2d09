#include "doctest.h"

#include <fstream>
#include <string>

#include "mbt/config.hpp"
#include "mbt/errors.hpp"

using namespace mbt;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "system": {"n_barriers": 2, "width": 4, "period": 10, "height": 10},
    "scan": {"omega_min": 0.5, "omega_max": 9.5, "steps": 100}
  })");
}

std::string error_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal document fills defaults") {
  const RunConfig cfg = parse_config(minimal());
  CHECK(cfg.model.barrier_height() == 10.0);
  CHECK(cfg.tolerances.unitarity == 1e-10);
  CHECK(cfg.tolerances.continuity == 1e-9);
  CHECK(cfg.tolerances.opaque_rel == 1e-3);
  CHECK(cfg.output.path.empty());
  CHECK(cfg.output.format == OutputFormat::Csv);
}

TEST_CASE("round trip through JSON is exact") {
  RunConfig cfg = parse_config(minimal());
  cfg.tolerances.opaque_rel = 2.5e-4;
  cfg.output = {"out.json", OutputFormat::Json};
  const RunConfig back = parse_config(to_json(cfg));
  CHECK(to_json(back) == to_json(cfg));
}

TEST_CASE("shipped default config equals the built-in default") {
  std::ifstream in(MBT_DEFAULT_CONFIG);
  REQUIRE(in);
  CHECK(to_json(load_config(MBT_DEFAULT_CONFIG)) == to_json(default_config()));
}

TEST_CASE("unknown keys are rejected at every level") {
  json doc = minimal();
  doc["tolerance"] = json::object();
  CHECK(error_of(doc).find("unknown key 'tolerance'") != std::string::npos);
  doc = minimal();
  doc["tolerances"] = {{"unitarty", 1e-10}};
  CHECK(error_of(doc).find("unknown key 'unitarty' in tolerances") != std::string::npos);
  doc = minimal();
  doc["system"]["depth"] = 1;
  CHECK(error_of(doc).find("unknown key 'depth' in system") != std::string::npos);
}

TEST_CASE("constraint violations name the constraint") {
  json doc = minimal();
  doc["system"]["period"] = 3.0;
  CHECK(error_of(doc).find("L >= a") != std::string::npos);
  doc = minimal();
  doc["scan"]["omega_max"] = 12.0;
  CHECK(error_of(doc).find("(0, 10)") != std::string::npos);
  doc = minimal();
  doc["scan"]["steps"] = 1;
  CHECK(error_of(doc).find("steps") != std::string::npos);
  doc = minimal();
  doc["scan"]["omega_min"] = 9.6;
  CHECK(error_of(doc).find("omega_min < omega_max") != std::string::npos);
  doc = minimal();
  doc["model"] = {{"barrier_height", 9.0}};
  CHECK(error_of(doc).find("must equal") != std::string::npos);
  doc = minimal();
  doc["output"] = {{"format", "xml"}};
  CHECK(error_of(doc).find("csv") != std::string::npos);
  doc = minimal();
  doc.erase("scan");
  CHECK(error_of(doc).find("missing key 'scan'") != std::string::npos);
  doc = minimal();
  doc["system"]["width"] = "four";
  CHECK(error_of(doc).find("bad value for 'width'") != std::string::npos);
}

TEST_CASE("file errors are config errors") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  const std::string path = "test_config_broken.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_config(path), ConfigError);
}
