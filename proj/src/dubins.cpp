#include "intercept/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "intercept/polynomial.hpp"

namespace intercept::dubins {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAcosSlack = 1e-12;

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
}

// Arguments a rounding error outside [-1, 1] are clamped; anything farther
// out means the geometry was evaluated off its domain.
double checked_acos(double a) {
  if (a > 1.0 + kAcosSlack || a < -1.0 - kAcosSlack || std::isnan(a)) {
    throw std::domain_error("arccos argument out of range: " + std::to_string(a));
  }
  return std::acos(std::clamp(a, -1.0, 1.0));
}

double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

bool is_origin(PlanarPoint y) { return y.x == 0.0 && y.y == 0.0; }

double theta_cs_unchecked(double abs_x, double y, double a_cs) {
  const double root = std::sqrt(a_cs);
  const double c = checked_acos((1.0 - abs_x + y * root) / (1.0 + a_cs));
  return y >= (1.0 - abs_x) * root ? c : kTwoPi - c;
}

double theta_cc(double abs_x, double y, double a_cc, double sign) {
  const double w = 1.0 + abs_x;
  const double s = std::sqrt(std::max(0.0, 1.0 - a_cc * a_cc));
  return checked_acos((w * (2.0 - a_cc) + sign * y * s) / (w * w + y * y));
}

bool cs_applies(double t, const Geometry& g) {
  if (g.region == Region::I || !g.theta_cs || !g.v_cs) return false;
  if (*g.theta_cs > t) return false;
  return g.region == Region::II || *g.v_cs >= t;
}

double rho_cc(double t, PlanarPoint y) {
  const PlanarPoint folded{std::abs(y.x), y.y};
  double best = std::numeric_limits<double>::infinity();
  for (double tau : cc_candidates(t, y)) best = std::min(best, distance_between(folded, cc_boundary_point(tau, t)));
  return best;
}

// First-arc length tau with cc_boundary_point(tau, length) closest to
// `folded`: coarse scan, then golden-section refinement of the best cell.
double locate_cc_split(double length, PlanarPoint folded) {
  const double top = std::min(length, kTwoPi);
  const auto gap = [&](double tau) { return distance_between(folded, cc_boundary_point(tau, length)); };
  constexpr int kCells = 4096;
  const double h = top / kCells;
  int best = 0;
  for (int k = 1; k <= kCells; ++k) {
    if (gap(k * h) < gap(best * h)) best = k;
  }
  double a = std::max(0.0, (best - 1) * h);
  double b = std::min(top, (best + 1) * h);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 100 && b - a > 1e-15; ++i) {
    const double c = b - r * (b - a);
    const double d = a + r * (b - a);
    if (gap(c) < gap(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return 0.5 * (a + b);
}

// Target strictly inside R(t_star): drive the shortest CS or CC path to it
// and mark the remaining time as Wait.
InterceptionPath interior_path(double t_star, PlanarPoint y, TurnDirection first, TurnDirection second) {
  const Geometry g = geometry(y);
  const PlanarPoint folded{g.abs_x, y.y};
  InterceptionPath out;
  out.initial_heading = kPi / 2.0;
  double used = 0.0;
  if (g.v_cs && *g.v_cs <= t_star) {
    out.segments = {PathSegment::arc(first, *g.theta_cs), PathSegment::straight(*g.v_cs - *g.theta_cs)};
    out.endpoint = y;
    used = *g.v_cs;
  } else {
    const double length = g.v_cc_minus.value();
    const double tau = locate_cc_split(length, folded);
    out.segments = {PathSegment::arc(second, tau), PathSegment::arc(first, length - tau)};
    const PlanarPoint end = cc_boundary_point(tau, length);
    out.endpoint = {y.x >= 0.0 ? end.x : -end.x, end.y};
    used = length;
  }
  if (t_star > used) out.segments.push_back(PathSegment::wait(t_star - used));
  return out;
}

}  // namespace

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::I: return "D_I";
    case Region::II: return "D_II";
    case Region::III: return "D_III";
  }
  return "?";
}

double alpha_cs(PlanarPoint y) noexcept {
  const double u = 1.0 - std::abs(y.x);
  return u * u + y.y * y.y - 1.0;
}

double alpha_cc(PlanarPoint y) noexcept {
  const double w = 1.0 + std::abs(y.x);
  return (5.0 - w * w - y.y * y.y) / 4.0;
}

Region classify(PlanarPoint y) noexcept {
  if (alpha_cs(y) < 0.0 || is_origin(y)) return Region::I;
  if (alpha_cc(y) > -1.0 && y.y > 0.0) return Region::III;
  return Region::II;
}

double theta_cs(PlanarPoint y) {
  const double a = alpha_cs(y);
  if (a < 0.0) throw std::domain_error("theta_cs: point lies inside a turning circle");
  return theta_cs_unchecked(std::abs(y.x), y.y, a);
}

double v_cs(PlanarPoint y) {
  if (classify(y) == Region::I && !is_origin(y)) throw std::domain_error("v_cs: point lies in D_I");
  return theta_cs(y) + std::sqrt(alpha_cs(y));
}

CcLengths v_cc(PlanarPoint y) {
  const Region r = classify(y);
  CcLengths out;
  if (r == Region::II) return out;
  const double ax = std::abs(y.x);
  const double a = alpha_cc(y);
  const double arc = checked_acos(a);
  out.minus = theta_cc(ax, y.y, a, -1.0) + kTwoPi - arc;
  if (r == Region::III) out.plus = theta_cc(ax, y.y, a, 1.0) + arc;
  return out;
}

Geometry geometry(PlanarPoint y) {
  Geometry g;
  g.abs_x = std::abs(y.x);
  g.alpha_cs = alpha_cs(y);
  g.alpha_cc = alpha_cc(y);
  g.region = classify(y);
  if (g.alpha_cs >= 0.0) g.theta_cs = theta_cs_unchecked(g.abs_x, y.y, g.alpha_cs);
  if (g.region != Region::I || is_origin(y)) g.v_cs = *g.theta_cs + std::sqrt(g.alpha_cs);
  const auto cc = v_cc(y);
  g.v_cc_plus = cc.plus;
  g.v_cc_minus = cc.minus;
  return g;
}

bool contains(double t, PlanarPoint y) {
  require_time(t);
  if (t == 0.0 && is_origin(y)) return true;
  switch (classify(y)) {
    case Region::I:
      return t >= *v_cc(y).minus;
    case Region::II:
      return t >= v_cs(y);
    case Region::III: {
      if (t < v_cs(y)) return false;
      const auto cc = v_cc(y);
      return t >= *cc.minus || *cc.plus >= t;
    }
  }
  return false;
}

std::array<double, 4> cc_cubic_coefficients(double t, PlanarPoint y) noexcept {
  const double s = std::sin(t / 3.0);
  const double c = std::cos(t / 3.0);
  const double ax = std::abs(y.x);
  return {-(y.y + s), 3.0 + 3.0 * ax + c, 3.0 * y.y - s, c - (1.0 + ax)};
}

std::vector<double> cc_cubic_roots(double t, PlanarPoint y) {
  require_time(t);
  const auto k = cc_cubic_coefficients(t, y);
  return cubic_real_roots(k[0], k[1], k[2], k[3]);
}

PlanarPoint cs_boundary_point(double theta, double t) noexcept {
  const double run = t - theta;
  return {run * std::sin(theta) - std::cos(theta) + 1.0, run * std::cos(theta) + std::sin(theta)};
}

PlanarPoint cc_boundary_point(double tau, double t) noexcept {
  return {2.0 * std::cos(tau) - std::cos(t - 2.0 * tau) - 1.0, 2.0 * std::sin(tau) + std::sin(t - 2.0 * tau)};
}

std::vector<double> cc_candidates(double t, PlanarPoint y) {
  require_time(t);
  const double upper = std::min(t, kPi / 2.0);
  std::vector<double> out{0.0, upper};
  const auto k = cc_cubic_coefficients(t, y);
  const double scale = std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2]), std::abs(k[3])});
  // A vanishing leading coefficient sends one root to infinity, where
  // 2*atan(xi) -> +-pi; both signs give the same angle mod 2pi.
  if (std::abs(k[0]) <= 1e-12 * scale) {
    const double tau = wrap_two_pi(t / 3.0 - kPi);
    if (tau <= upper) out.push_back(tau);
  }
  for (double xi : cubic_real_roots(k[0], k[1], k[2], k[3])) {
    const double tau = wrap_two_pi(t / 3.0 - 2.0 * std::atan(xi));
    if (tau <= upper) out.push_back(tau);
  }
  return out;
}

double distance(double t, PlanarPoint y) {
  require_time(t);
  if (contains(t, y)) return 0.0;
  const Geometry g = geometry(y);
  if (cs_applies(t, g)) return *g.v_cs - t;
  return rho_cc(t, y);
}

bool cs_estimator_applies(double t, PlanarPoint y) {
  require_time(t);
  return cs_applies(t, geometry(y));
}

double best_estimator(double t, PlanarPoint y, double v, double ell) {
  const double rho = distance(t, y);
  if (rho <= ell) return t;
  const Geometry g = geometry(y);
  if (cs_applies(t, g)) return t + (*g.v_cs - t - ell) / (1.0 + v);
  return t + (rho - ell) / (1.0 + v);
}

std::vector<std::vector<PlanarPoint>> boundary_branches(double t, int n) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("boundary sampling needs t > 0");
  if (n < 2) throw std::invalid_argument("boundary sampling needs n >= 2");
  const double cs_end = std::min(t, kTwoPi);
  const double cc_end = std::min(t, kPi / 2.0);
  std::vector<PlanarPoint> cs, cc;
  cs.reserve(static_cast<std::size_t>(n));
  cc.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    cs.push_back(cs_boundary_point(s * cs_end, t));
    cc.push_back(cc_boundary_point(s * cc_end, t));
  }
  auto mirror = [](std::vector<PlanarPoint> pts) {
    for (auto& p : pts) p.x = -p.x;
    return pts;
  };
  auto cs_left = mirror(cs);
  auto cc_left = mirror(cc);
  return {std::move(cs), std::move(cc), std::move(cs_left), std::move(cc_left)};
}

std::vector<PlanarPoint> boundary_points(double t, int n) {
  std::vector<PlanarPoint> out;
  for (auto& branch : boundary_branches(t, n)) out.insert(out.end(), branch.begin(), branch.end());
  return out;
}

InterceptionPath path(double t_star, PlanarPoint y_target, double ell) {
  require_time(t_star);
  const double gap = distance(t_star, y_target);
  if (gap > ell + 1e-6) {
    throw std::invalid_argument("dubins path: target is " + std::to_string(gap) +
                                " away from the reachable set, capture radius is " + std::to_string(ell));
  }
  const PlanarPoint folded{std::abs(y_target.x), y_target.y};
  const bool right_half = y_target.x >= 0.0;
  const TurnDirection first = right_half ? TurnDirection::Right : TurnDirection::Left;
  const TurnDirection second = right_half ? TurnDirection::Left : TurnDirection::Right;
  if (gap == 0.0) return interior_path(t_star, y_target, first, second);

  double cs_dist = std::numeric_limits<double>::infinity();
  double theta = 0.0;
  PlanarPoint cs_end;
  if (alpha_cs(y_target) >= 0.0) {
    theta = theta_cs(y_target);
    if (theta <= t_star) {
      cs_end = cs_boundary_point(theta, t_star);
      cs_dist = distance_between(folded, cs_end);
    }
  }

  double cc_dist = std::numeric_limits<double>::infinity();
  double tau_best = 0.0;
  for (double tau : cc_candidates(t_star, y_target)) {
    const double d = distance_between(folded, cc_boundary_point(tau, t_star));
    if (d < cc_dist) {
      cc_dist = d;
      tau_best = tau;
    }
  }

  InterceptionPath out;
  out.initial_heading = std::numbers::pi / 2.0;
  PlanarPoint end;
  if (cs_dist <= cc_dist + 1e-12) {
    out.segments = {PathSegment::arc(first, theta), PathSegment::straight(t_star - theta)};
    end = cs_end;
  } else {
    out.segments = {PathSegment::arc(second, tau_best), PathSegment::arc(first, t_star - tau_best)};
    end = cc_boundary_point(tau_best, t_star);
  }
  out.endpoint = {right_half ? end.x : -end.x, end.y};
  return out;
}

}  // namespace intercept::dubins

namespace intercept {

std::optional<double> DubinsPlant::closed_form_best_estimator(double t, PlanarPoint y, double v, double ell) const {
  if (dubins::distance(t, y) <= ell) return t;
  if (!dubins::cs_estimator_applies(t, y)) return std::nullopt;
  return dubins::best_estimator(t, y, v, ell);
}

}  // namespace intercept
