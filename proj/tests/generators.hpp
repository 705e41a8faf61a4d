#pragma once

// Random inputs shared by the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "intercept/core.hpp"
#include "intercept/io.hpp"

namespace intercept::testkit {

/// Random piecewise-linear trajectory with speed at most v_max, starting at
/// a point drawn from the annulus 0.5 <= |y| <= radius.
template <class Rng>
std::vector<TimedPoint> random_polyline(Rng& rng, double v_max, int segments = 8, double radius = 4.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r0 = 0.5 + (radius - 0.5) * unit(rng);
  const double a0 = 2.0 * std::numbers::pi * unit(rng);
  std::vector<TimedPoint> out{{0.0, {r0 * std::cos(a0), r0 * std::sin(a0)}}};
  for (int k = 0; k < segments; ++k) {
    const double dt = 0.2 + 1.8 * unit(rng);
    const double speed = v_max * unit(rng);
    const double dir = 2.0 * std::numbers::pi * unit(rng);
    const PlanarPoint last = out.back().point;
    out.push_back({out.back().t + dt, last + (speed * dt) * PlanarPoint{std::cos(dir), std::sin(dir)}});
  }
  return out;
}

/// Random valid scenario covering every trajectory kind and optional field.
template <class Rng>
io::ScenarioFile random_scenario(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  const auto chance = [&] { return unit(rng) < 0.5; };
  io::ScenarioFile s;
  s.plant = chance() ? "simple" : "dubins";
  switch (static_cast<int>(unit(rng) * 3.0)) {
    case 0:
      s.trajectory = LineParams{coord(rng), coord(rng), 2.0 * std::numbers::pi * unit(rng), 2.0 * unit(rng)};
      break;
    case 1: {
      io::LissajousSpec l{{coord(rng), coord(rng), 0.1 + 3.0 * unit(rng), 0.1 + 3.0 * unit(rng), 2.0 * unit(rng)},
                          std::nullopt};
      if (chance()) l.speed_bound = l.params.v * std::numbers::sqrt2;
      s.trajectory = l;
      break;
    }
    default:
      s.trajectory = PiecewiseLinearParams{random_polyline(rng, 1.5, 1 + static_cast<int>(unit(rng) * 6))};
      break;
  }
  s.ell = chance() ? 0.1 : unit(rng);
  s.epsilon = std::pow(10.0, -12.0 * unit(rng));
  if (chance()) s.absolute_tolerance = 1e-9 * (1.0 + unit(rng));
  s.estimator = chance() ? EstimatorKind::Best : EstimatorKind::Simple;
  s.horizon = 1.0 + 100.0 * unit(rng);
  if (chance()) s.max_iterations = static_cast<std::size_t>(1 + unit(rng) * 1e6);
  if (chance()) s.resolution = 1e-3 * unit(rng) + 1e-9;
  return s;
}

}  // namespace intercept::testkit
