#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "ccmnet/errors.hpp"
#include "ccmnet/percolation.hpp"

using namespace ccmnet;

TEST_CASE("threshold at an exact half crossing") {
  CHECK(percolation_threshold({{0.1, 0.2}, {0.2, 0.5}, {0.3, 0.9}}) ==
        doctest::Approx(0.2));
}

TEST_CASE("threshold interpolates linearly between brackets") {
  // Crossing between (0.2, 0.4) and (0.4, 0.8): 0.5 sits a quarter of the way.
  CHECK(percolation_threshold({{0.1, 0.1}, {0.2, 0.4}, {0.4, 0.8}}) ==
        doctest::Approx(0.25));
}

TEST_CASE("first upward crossing wins when the curve wiggles") {
  auto rho = percolation_threshold(
      {{0.1, 0.3}, {0.2, 0.6}, {0.3, 0.45}, {0.4, 0.7}});
  CHECK(rho == doctest::Approx(0.1 + 0.1 * (0.5 - 0.3) / (0.6 - 0.3)));
}

TEST_CASE("a curve that never reaches one half is rejected") {
  CHECK_THROWS_AS(percolation_threshold({{0.1, 0.1}, {0.5, 0.45}}),
                  NotBracketedError);
  CHECK_THROWS_AS(percolation_threshold({}), NotBracketedError);
}

TEST_CASE("curve starting above one half returns the first point") {
  CHECK(percolation_threshold({{0.05, 0.7}, {0.1, 0.9}}) ==
        doctest::Approx(0.05));
}

TEST_CASE("theta fit recovers a clean finite-size decay") {
  std::map<int, double> thresholds;
  for (int n : {128, 256, 512, 1024, 2048})
    thresholds[n] = 3.7 * std::pow(n, -0.88);
  auto fit = fit_theta(thresholds);
  CHECK(fit.theta == doctest::Approx(0.88).epsilon(1e-9));
  CHECK(fit.stderr_ == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("theta fit needs at least three sizes") {
  std::map<int, double> two{{128, 0.1}, {256, 0.05}};
  CHECK_THROWS_AS(fit_theta(two), InsufficientDataError);
}
