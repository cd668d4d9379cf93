#include <doctest.h>

#include <cmath>

#include "ampc/scenario.hpp"

using namespace ampc;

TEST_CASE("double lane change profile shape") {
  const double start = 40, ramp = 25, plateau = 30, offset = 3.5;
  CHECK(double_lane_change(0, start, ramp, plateau, offset) == 0.0);
  CHECK(double_lane_change(39.9, start, ramp, plateau, offset) == 0.0);
  // plateau is exact
  for (double x = 65.0; x <= 95.0; x += 5.0) {
    CHECK(double_lane_change(x, start, ramp, plateau, offset) == offset);
  }
  CHECK(double_lane_change(150, start, ramp, plateau, offset) == 0.0);
  // monotone up-ramp
  CHECK(double_lane_change(50, start, ramp, plateau, offset) >
        double_lane_change(45, start, ramp, plateau, offset));
}

TEST_CASE("double lane change is C1 across the ramp joins") {
  const double start = 40, ramp = 25, plateau = 30, offset = 3.5;
  const double eps = 1e-6;
  const auto f = [&](double x) {
    return double_lane_change(x, start, ramp, plateau, offset);
  };
  for (double join : {start, start + ramp, start + ramp + plateau,
                      start + 2 * ramp + plateau}) {
    const double slope_left = (f(join) - f(join - eps)) / eps;
    const double slope_right = (f(join + eps) - f(join)) / eps;
    CHECK(std::abs(slope_right - slope_left) < 1e-6);
  }
}

TEST_CASE("piecewise-linear profiles interpolate and clamp") {
  Profile profile;
  profile.times = {0, 10, 20};
  profile.values = {10, 10, 20};
  CHECK(profile_at(profile, 10) == 10.0);
  CHECK(profile_at(profile, 15) == doctest::Approx(15.0));
  CHECK(profile_at(profile, -5) == 10.0);
  CHECK(profile_at(profile, 50) == 20.0);
}

TEST_CASE("constant-speed scenario returns 9 everywhere") {
  Scenario scenario;
  scenario.duration = 20.0;
  scenario.speed.times = {0.0};
  scenario.speed.values = {9.0};
  for (double t = 0; t <= 20; t += 2.5) {
    CHECK(speed_profile(scenario, t) == 9.0);
  }
  CHECK(wind_profile(scenario, 5.0) == 0.0);  // no wind configured
}

TEST_CASE("scenario validation") {
  Scenario scenario;
  scenario.duration = 10.0;
  scenario.speed.times = {0, 5};
  scenario.speed.values = {9, 0.05};  // dips below the floor
  CHECK_THROWS_AS(scenario.validate(), std::runtime_error);

  scenario.speed.values = {9, 9};
  scenario.duration = -1.0;
  CHECK_THROWS_AS(scenario.validate(), std::runtime_error);

  Scenario no_speed;
  no_speed.duration = 10.0;
  CHECK_THROWS_AS(no_speed.validate(), std::runtime_error);
}

TEST_CASE("scenario parsing from a config document") {
  const auto cfg = Config::from_string(
      "name = test_dlc\n"
      "duration = 18\n"
      "reference.type = dlc\n"
      "reference.offset = 3.5\n"
      "reference.start = 40\n"
      "speed.t = 0, 9\n"
      "speed.v = 9, 12\n"
      "wind.t = 0, 5, 6\n"
      "wind.f = 0, 0, 400\n"
      "initial.y = 0.25\n");
  const Scenario scenario = scenario_from_config(cfg);
  CHECK(scenario.name == "test_dlc");
  CHECK(scenario.duration == 18.0);
  CHECK(scenario.reference.type == ReferenceType::double_lane_change);
  CHECK(reference_at(scenario.reference, 0.0) == 0.0);
  CHECK(speed_profile(scenario, 4.5) == doctest::Approx(10.5));
  CHECK(wind_profile(scenario, 6.0) == 400.0);
  CHECK(scenario.initial.global_y == 0.25);

  const auto bad = Config::from_string(
      "duration = 5\nspeed.t = 0, 1\nspeed.v = 9\n");
  CHECK_THROWS_WITH_AS(scenario_from_config(bad), doctest::Contains("length"),
                       std::runtime_error);
}

TEST_CASE("sine-sum reference evaluates both components") {
  Reference ref;
  ref.type = ReferenceType::sine_sum;
  ref.amp1 = 8;
  ref.wavelength1 = 200;
  ref.amp2 = 4;
  ref.wavelength2 = 90;
  CHECK(reference_at(ref, 0.0) == 0.0);
  const double x = 37.0;
  const double expected = 8 * std::sin(2 * M_PI * x / 200) + 4 * std::sin(2 * M_PI * x / 90);
  CHECK(reference_at(ref, x) == doctest::Approx(expected));
}
