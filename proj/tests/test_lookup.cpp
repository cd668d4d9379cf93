#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ampc/lookup_table.hpp"

using namespace ampc;

namespace {

TableEntry make_entry(double speed, double offset, int np = 45) {
  TableEntry entry;
  entry.key = {speed, offset};
  entry.params = AdaptiveParams{};
  entry.params.pred_horizon = np;
  entry.fitness = 0.1;
  entry.seed = 7;
  return entry;
}

LookupTable small_table() {
  LookupTable table;
  table.speed_breakpoints = {3, 9, 15, 21, 27};
  table.offset_breakpoints = {0, 4, 8, 15};
  table.entries = {make_entry(9, 0, 40), make_entry(9, 4, 41), make_entry(15, 0, 42),
                   make_entry(27, 0, 43), make_entry(27, 15, 44)};
  return table;
}

}  // namespace

TEST_CASE("exact key hits its entry") {
  const LookupTable table = small_table();
  CHECK(nearest_entry(table, 9, 4).params.pred_horizon == 41);
  CHECK(nearest_entry(table, 27, 15).params.pred_horizon == 44);
}

TEST_CASE("queries outside the grid clamp to the boundary") {
  const LookupTable table = small_table();
  CHECK(nearest_entry(table, 30, 0).params.pred_horizon ==
        nearest_entry(table, 27, 0).params.pred_horizon);
  CHECK(nearest_entry(table, 9, -3).params.pred_horizon ==
        nearest_entry(table, 9, 0).params.pred_horizon);
}

TEST_CASE("equidistant entries resolve to the lower speed key") {
  LookupTable table;
  table.speed_breakpoints = {3, 27};
  table.offset_breakpoints = {0, 15};
  table.entries = {make_entry(9, 4, 50), make_entry(15, 4, 60)};
  // query exactly between the two speed keys
  CHECK(nearest_entry(table, 12, 4).params.pred_horizon == 50);
}

TEST_CASE("scheduler hysteresis suppresses midline chattering") {
  LookupTable table;
  table.speed_breakpoints = {3, 27};
  table.offset_breakpoints = {0, 15};
  table.entries = {make_entry(9, 0, 50), make_entry(15, 0, 60)};
  ParameterScheduler scheduler(table);

  CHECK(scheduler.select(9, 0).params.pred_horizon == 50);
  CHECK(scheduler.switched());
  // barely past the midline: nearest changes but not by the 10% margin
  CHECK(scheduler.select(12.05, 0).params.pred_horizon == 50);
  CHECK_FALSE(scheduler.switched());
  // decisive move: adopt the new entry
  CHECK(scheduler.select(14.8, 0).params.pred_horizon == 60);
  CHECK(scheduler.switched());
  // stays there when wobbling back toward the midline
  CHECK(scheduler.select(12.1, 0).params.pred_horizon == 60);
  CHECK_FALSE(scheduler.switched());
}

TEST_CASE("round trip through json is exact") {
  LookupTable table = small_table();
  table.entries[0].params.weight_track = 0.1 + 0.2;  // not representable nicely
  table.entries[0].params.weight_ctrl = 1.0 / 3.0;
  table.entries[0].params.laguerre_scale = 0.7500000000000013;
  table.entries[0].timestamp = "2026-08-09";
  table.vehicle_hash = vehicle_config_hash(VehicleParams{}, PacejkaCoeffs{});

  const std::string path =
      (std::filesystem::temp_directory_path() / "ampc_table_test.json").string();
  save_table(table, path);
  const LookupTable loaded = load_table(path);
  CHECK(loaded == table);
  std::remove(path.c_str());
}

TEST_CASE("load rejects documents violating the schema") {
  CHECK_THROWS_WITH_AS(
      table_from_json(R"({"schema_version": 1, "entries": []})"),
      doctest::Contains("at least one entry"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      table_from_json(R"({"schema_version": 2, "entries": []})"),
      doctest::Contains("schema_version"), std::runtime_error);

  // nc > np names the violated invariant
  const char* bad_entry = R"({
    "schema_version": 1,
    "entries": [{"long_vel": 9, "lateral_offset": 0,
      "params": {"np": 10, "nc": 20, "q_y": 10, "r": 0.01, "lag_n": 5, "lag_alpha": 0.75}}]
  })";
  CHECK_THROWS_WITH_AS(table_from_json(bad_entry), doctest::Contains("ctrl_horizon"),
                       std::runtime_error);

  CHECK_THROWS_WITH_AS(table_from_json("{not json"), doctest::Contains("parse"),
                       std::runtime_error);

  // key outside the operating grid
  const char* off_grid = R"({
    "schema_version": 1,
    "entries": [{"long_vel": 40, "lateral_offset": 0,
      "params": {"np": 45, "nc": 15, "q_y": 10, "r": 0.01, "lag_n": 5, "lag_alpha": 0.75}}]
  })";
  CHECK_THROWS_WITH_AS(table_from_json(off_grid), doctest::Contains("grid"),
                       std::runtime_error);
}

TEST_CASE("duplicate keys are rejected") {
  LookupTable table = small_table();
  table.entries.push_back(make_entry(9, 0, 99));
  CHECK_THROWS_WITH_AS(table.validate(), doctest::Contains("duplicate"),
                       std::runtime_error);
}

TEST_CASE("vehicle hash is stable and sensitive") {
  const VehicleParams params;
  const PacejkaCoeffs coeffs;
  const std::string h1 = vehicle_config_hash(params, coeffs);
  CHECK(h1 == vehicle_config_hash(params, coeffs));
  VehicleParams other = params;
  other.mass += 1.0;
  CHECK(h1 != vehicle_config_hash(other, coeffs));
}
