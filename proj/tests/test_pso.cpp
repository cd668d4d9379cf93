#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ampc/pso.hpp"

using namespace ampc;

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

SearchBounds cube(int dims, double half_width) {
  SearchBounds bounds;
  bounds.lower = Eigen::VectorXd::Constant(dims, -half_width);
  bounds.upper = Eigen::VectorXd::Constant(dims, half_width);
  return bounds;
}

}  // namespace

TEST_CASE("linear inertia schedule endpoints") {
  PsoHyper hyper;
  hyper.generations = 10;
  CHECK(inertia_linear(0, hyper) == doctest::Approx(0.99));
  CHECK(inertia_linear(10, hyper) == doctest::Approx(0.1));
  CHECK(inertia_linear(5, hyper) == doctest::Approx(0.545).epsilon(1e-12));
}

TEST_CASE("exponential inertia schedule") {
  PsoHyper hyper;
  hyper.generations = 15;
  CHECK(inertia_exponential(0, hyper) == doctest::Approx(0.9971).epsilon(1e-3));
  CHECK(inertia_exponential(15, hyper) == doctest::Approx(0.1).epsilon(1e-6));
  double prev = inertia_exponential(0, hyper);
  for (int g = 1; g <= 15; ++g) {
    const double w = inertia_exponential(g, hyper);
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("acceleration phase bands") {
  // g/G = 0.10 -> exploration band
  auto [c1, c2] = update_accelerations(2.0, 2.0, 1, 10);
  CHECK(c1 == doctest::Approx(2.05));
  CHECK(c2 == doctest::Approx(1.95));
  // g/G = 0.50 -> convergence band
  std::tie(c1, c2) = update_accelerations(2.0, 2.0, 5, 10);
  CHECK(c1 == doctest::Approx(1.965));
  CHECK(c2 == doctest::Approx(2.035));
  // g/G = 0.90 -> jumping-out band
  std::tie(c1, c2) = update_accelerations(2.0, 2.0, 9, 10);
  CHECK(c1 == doctest::Approx(1.9985));
  CHECK(c2 == doctest::Approx(2.0015));
  // half-open boundaries
  std::tie(c1, c2) = update_accelerations(2.0, 2.0, 2, 10);   // exactly 20%
  CHECK(c1 == doctest::Approx(2.02));
  std::tie(c1, c2) = update_accelerations(2.0, 2.0, 35, 100); // exactly 35%
  CHECK(c1 == doctest::Approx(1.965));
  std::tie(c1, c2) = update_accelerations(2.0, 2.0, 75, 100); // exactly 75%
  CHECK(c1 == doctest::Approx(1.9985));
}

TEST_CASE("acceleration sum is preserved before clamping") {
  for (int g : {1, 3, 5, 8, 10}) {
    const auto [c1, c2] = update_accelerations(2.0, 2.0, g, 10);
    CHECK(c1 + c2 == doctest::Approx(4.0).epsilon(1e-12));
  }
  // clamping engages at the extremes
  const auto [hi, lo] = update_accelerations(3.97, 0.51, 1, 10);
  CHECK(hi == doctest::Approx(4.0));
  CHECK(lo == doctest::Approx(0.5));
}

TEST_CASE("sphere benchmark values") {
  CHECK(sphere(Eigen::VectorXd::Zero(4)) == 0.0);
  Eigen::VectorXd x(2);
  x << 1, 2;
  CHECK(sphere(x) == 5.0);
  x << 3, 4;
  CHECK(sphere(x) == 25.0);
}

TEST_CASE("pso is deterministic for a fixed seed") {
  PsoHyper hyper;
  hyper.generations = 8;
  hyper.seed = 42;
  const auto a = pso_run(sphere, cube(3, 10.0), hyper);
  const auto b = pso_run(sphere, cube(3, 10.0), hyper);
  CHECK(a.best_fitness == b.best_fitness);
  CHECK(a.best_position == b.best_position);
  CHECK(a.fitness_history == b.fitness_history);

  hyper.seed = 43;
  const auto c = pso_run(sphere, cube(3, 10.0), hyper);
  CHECK(a.best_fitness != c.best_fitness);
}

TEST_CASE("evaluation accounting: init plus one generation") {
  PsoHyper hyper;
  hyper.population = 2;
  hyper.generations = 1;
  long calls = 0;
  const auto result = pso_run(
      [&](const Eigen::VectorXd& x) {
        ++calls;
        return sphere(x);
      },
      cube(2, 5.0), hyper);
  CHECK(calls == 4);
  CHECK(result.evaluations == 4);
}

TEST_CASE("constant objective keeps the history flat at the optimum value") {
  PsoHyper hyper;
  hyper.generations = 6;
  const auto result = pso_run([](const Eigen::VectorXd&) { return 3.25; }, cube(2, 1.0), hyper);
  CHECK(result.best_fitness == 3.25);
  for (double f : result.fitness_history) CHECK(f == 3.25);
}

TEST_CASE("fitness history is non-increasing") {
  PsoHyper hyper;
  hyper.generations = 25;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    hyper.seed = seed;
    hyper.variant = seed % 2 == 0 ? PsoVariant::improved : PsoVariant::classic;
    const auto result = pso_run(sphere, cube(4, 10.0), hyper);
    for (std::size_t g = 1; g < result.fitness_history.size(); ++g) {
      CHECK(result.fitness_history[g] <= result.fitness_history[g - 1]);
    }
  }
}

TEST_CASE("improved variant solves the 2-d sphere within a 200-evaluation budget") {
  PsoHyper hyper;
  hyper.generations = 9;  // 20 * (9 + 1) = 200 evaluations
  hyper.variant = PsoVariant::improved;
  std::vector<double> finals;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    hyper.seed = seed;
    finals.push_back(pso_run(sphere, cube(2, 10.0), hyper).best_fitness);
  }
  CHECK(median_of(finals) < 1e-2);
}

TEST_CASE("non-finite objective aborts with a diagnostic") {
  PsoHyper hyper;
  CHECK_THROWS_AS(
      pso_run([](const Eigen::VectorXd&) { return std::nan(""); }, cube(2, 1.0), hyper),
      std::runtime_error);
}

TEST_CASE("input validation") {
  PsoHyper hyper;
  SearchBounds degenerate;
  degenerate.lower = Eigen::VectorXd::Constant(2, 1.0);
  degenerate.upper = Eigen::VectorXd::Constant(2, 1.0);
  CHECK_THROWS_AS(pso_run(sphere, degenerate, hyper), std::invalid_argument);

  PsoHyper bad = hyper;
  bad.population = 1;
  CHECK_THROWS_AS(pso_run(sphere, cube(2, 1.0), bad), std::invalid_argument);
  CHECK_THROWS_AS(pso_variant_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("variant ordering on the 10-d sphere") {
  const auto run_variant = [](PsoVariant variant) {
    PsoHyper hyper;
    hyper.generations = 41;
    hyper.population = 20;
    hyper.variant = variant;
    std::vector<double> finals;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      hyper.seed = seed;
      finals.push_back(pso_run(sphere, cube(10, 10.0), hyper).best_fitness);
    }
    return median_of(finals);
  };
  const double improved = run_variant(PsoVariant::improved);
  const double damped = run_variant(PsoVariant::damped);
  const double classic = run_variant(PsoVariant::classic);
  CHECK(improved < damped);
  CHECK(damped < classic);
  CHECK(improved < 1e-2);
}
