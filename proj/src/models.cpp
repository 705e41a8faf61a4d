#include "intercept/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace intercept {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
}

}  // namespace

double InterceptionPath::total_duration() const noexcept {
  double total = 0.0;
  for (const auto& s : segments) total += s.duration;
  return total;
}

std::vector<PlanarPoint> flatten_path(const InterceptionPath& path, double max_turn) {
  if (!(max_turn > 0.0)) throw std::invalid_argument("max_turn must be > 0");
  std::vector<PlanarPoint> out{{0.0, 0.0}};
  PlanarPoint p{0.0, 0.0};
  double heading = path.initial_heading;
  for (const auto& seg : path.segments) {
    switch (seg.kind) {
      case PathSegment::Kind::Wait:
        break;
      case PathSegment::Kind::Straight:
        p = p + seg.duration * PlanarPoint{std::cos(heading), std::sin(heading)};
        out.push_back(p);
        break;
      case PathSegment::Kind::Arc: {
        // Unit turning radius: the arc length equals the heading change.
        const double sign = seg.direction == TurnDirection::Left ? 1.0 : -1.0;
        const PlanarPoint center = p + sign * PlanarPoint{-std::sin(heading), std::cos(heading)};
        const int steps = std::max(1, static_cast<int>(std::ceil(seg.duration / max_turn)));
        for (int k = 1; k <= steps; ++k) {
          const double h = heading + sign * seg.duration * k / steps;
          out.push_back(center - sign * PlanarPoint{-std::sin(h), std::cos(h)});
        }
        heading += sign * seg.duration;
        p = out.back();
        break;
      }
    }
  }
  return out;
}

std::optional<double> Plant::closed_form_best_estimator(double, PlanarPoint, double, double) const {
  return std::nullopt;
}

std::vector<std::vector<PlanarPoint>> Plant::boundary_branches(double, int) const { return {}; }

double simple_distance(double t, PlanarPoint y) {
  require_time(t);
  return std::max(y.norm() - t, 0.0);
}

bool simple_contains(double t, PlanarPoint y) {
  require_time(t);
  return y.norm() <= t;
}

double simple_best_estimator(double t, PlanarPoint y, double v, double ell) {
  require_time(t);
  const double r = y.norm();
  if (r > t + ell) return (r + v * t - ell) / (1.0 + v);
  return t;
}

InterceptionPath simple_path(double t_star, PlanarPoint y_target, double ell) {
  require_time(t_star);
  const double gap = simple_distance(t_star, y_target);
  if (gap > ell + 1e-6) {
    throw std::invalid_argument("simple_path: target is " + std::to_string(gap) +
                                " away from the reachable set, capture radius is " + std::to_string(ell));
  }
  const double r = y_target.norm();
  const PlanarPoint dir = r > 0.0 ? (1.0 / r) * y_target : PlanarPoint{1.0, 0.0};
  const double run = std::min(t_star, std::max(r - ell, 0.0));

  InterceptionPath path;
  path.initial_heading = std::atan2(dir.y, dir.x);
  path.segments.push_back(PathSegment::straight(run));
  if (t_star > run) path.segments.push_back(PathSegment::wait(t_star - run));
  path.endpoint = run * dir;
  return path;
}

std::vector<std::vector<PlanarPoint>> SimpleMotionPlant::boundary_branches(double t, int n) const {
  require_time(t);
  if (n < 2) throw std::invalid_argument("boundary sampling needs n >= 2");
  std::vector<PlanarPoint> circle;
  circle.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * k / (n - 1);
    circle.push_back({t * std::cos(a), t * std::sin(a)});
  }
  return {circle};
}

}  // namespace intercept
