#include <doctest.h>

#include <cmath>

#include "ampc/plant.hpp"

using namespace ampc;

namespace {

struct PlantFixture {
  VehicleParams params{};
  TireSet tires{make_tires(params, PacejkaCoeffs{})};
};

}  // namespace

TEST_CASE("straight driving stays straight and advances by long_vel * T") {
  const PlantFixture f;
  PlantState state;
  state.long_vel = 9.0;
  const PlantState next = plant_step(state, 0.0, 0.0, f.params, f.tires, 0.1);
  CHECK(next.lat_vel == 0.0);
  CHECK(next.heading == 0.0);
  CHECK(next.yaw_rate == 0.0);
  CHECK(next.global_y == 0.0);
  CHECK(next.global_x == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(next.long_vel == 9.0);
}

TEST_CASE("positive steer yields positive yaw rate and lateral velocity") {
  const PlantFixture f;
  PlantState state;
  state.long_vel = 9.0;
  const PlantState next = plant_step(state, 0.05, 0.0, f.params, f.tires, 0.1);
  CHECK(next.yaw_rate > 0.0);
  CHECK(next.lat_vel > 0.0);
}

TEST_CASE("positive wind with zero steer pushes the car left") {
  const PlantFixture f;
  PlantState state;
  state.long_vel = 9.0;
  const PlantState next = plant_step(state, 0.0, 500.0, f.params, f.tires, 0.1);
  CHECK(next.lat_vel > 0.0);
}

TEST_CASE("forward speed is preserved across steps") {
  const PlantFixture f;
  PlantState state;
  state.long_vel = 12.5;
  state.lat_vel = 0.4;
  state.yaw_rate = 0.1;
  for (int i = 0; i < 20; ++i) {
    state = plant_step(state, 0.02, 0.0, f.params, f.tires, 0.05);
    CHECK(state.long_vel == 12.5);
  }
}

TEST_CASE("plant rejects out-of-range steer and flags divergence") {
  const PlantFixture f;
  PlantState state;
  state.long_vel = 9.0;
  CHECK_THROWS_AS(plant_step(state, 1.8, 0.0, f.params, f.tires, 0.1),
                  std::invalid_argument);

  PlantState huge;
  huge.long_vel = 9.0;
  huge.global_y = 2e6;
  CHECK(plant_diverged(huge));
  PlantState nan_state;
  nan_state.long_vel = 9.0;
  nan_state.lat_vel = std::nan("");
  CHECK(plant_diverged(nan_state));
  CHECK_FALSE(plant_diverged(state));
}

TEST_CASE("small-signal behavior matches the linearized model") {
  // Compare against the bicycle model built from the plant's own small-slip
  // axle stiffness, so both systems share the same linear range.
  const PlantFixture f;
  VehicleParams linear_params = f.params;
  linear_params.stiff_front = f.tires.front.linear_stiffness() / 2.0;
  linear_params.stiff_rear = f.tires.rear.linear_stiffness() / 2.0;

  // Euler discretization is only faithful at the plant substep rate; the
  // comparison runs at 0.01 s where both integrators resolve the fast modes.
  const double vx = 9.0;
  const double ts = 0.01;
  const DiscreteModel dm = discretize(build_continuous_model(linear_params, vx), ts);

  const double steer = 1e-3;
  Eigen::Vector4d lin(1e-3, 1e-3, 1e-3, 1e-3);
  PlantState nl;
  nl.lat_vel = lin[0];
  nl.heading = lin[1];
  nl.yaw_rate = lin[2];
  nl.global_y = lin[3];
  nl.long_vel = vx;

  double worst_diff = 0.0;
  double scale = lin.norm();
  for (int k = 0; k < 10; ++k) {
    lin = dm.a_mat * lin + dm.b_vec * steer;
    nl = plant_step(nl, steer, 0.0, f.params, f.tires, ts);
    const Eigen::Vector4d nl_vec(nl.lat_vel, nl.heading, nl.yaw_rate, nl.global_y);
    worst_diff = std::max(worst_diff, (nl_vec - lin).norm());
    scale = std::max(scale, lin.norm());
  }
  CHECK(worst_diff / scale < 0.05);
}
