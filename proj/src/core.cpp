#include "intercept/core.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

namespace intercept {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

PlanarPoint interpolate(const std::vector<TimedPoint>& samples, double t) {
  if (t <= samples.front().t) return samples.front().point;
  if (t >= samples.back().t) return samples.back().point;
  auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double value, const TimedPoint& s) { return value < s.t; });
  auto lo = std::prev(hi);
  const double s = (t - lo->t) / (hi->t - lo->t);
  return {lo->point.x + s * (hi->point.x - lo->point.x), lo->point.y + s * (hi->point.y - lo->point.y)};
}

}  // namespace

CaptureSpec::CaptureSpec(double ell_in, double epsilon_in, double absolute_tolerance_in)
    : ell(ell_in), epsilon(epsilon_in), absolute_tolerance(absolute_tolerance_in) {
  require(std::isfinite(ell) && ell >= 0.0, "capture radius ell must be finite and >= 0");
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be finite and > 0");
  require(std::isfinite(absolute_tolerance) && absolute_tolerance > 0.0, "absolute tolerance must be > 0");
}

std::string_view to_string(TrajectoryKind kind) noexcept {
  switch (kind) {
    case TrajectoryKind::Line: return "line";
    case TrajectoryKind::Lissajous: return "lissajous";
    case TrajectoryKind::PiecewiseLinear: return "piecewise_linear";
    case TrajectoryKind::Custom: return "custom";
  }
  return "unknown";
}

PlanarPoint TargetTrajectory::position(double t) const {
  return std::visit(
      Overloaded{
          [t](const LineParams& p) -> PlanarPoint {
            return {p.xi + p.v * t * std::cos(p.phi), p.eta + p.v * t * std::sin(p.phi)};
          },
          [t](const LissajousParams& p) -> PlanarPoint {
            return {p.xi + p.v / p.omega_x * std::sin(p.omega_x * t), p.eta + p.v / p.omega_y * std::sin(p.omega_y * t)};
          },
          [t](const PiecewiseLinearParams& p) { return interpolate(p.samples, t); },
          [t](const CustomParams& p) { return p.position(t); },
      },
      params_);
}

TargetTrajectory make_line_trajectory(double xi, double eta, double phi, double v) {
  require(std::isfinite(xi) && std::isfinite(eta) && std::isfinite(phi), "line parameters must be finite");
  require(std::isfinite(v) && v >= 0.0, "line speed v must be >= 0");
  return TargetTrajectory(LineParams{xi, eta, phi, v}, v);
}

TargetTrajectory make_lissajous_trajectory(double xi, double eta, double omega_x, double omega_y, double v,
                                           std::optional<double> speed_bound_override) {
  require(std::isfinite(xi) && std::isfinite(eta), "lissajous center must be finite");
  require(std::isfinite(omega_x) && omega_x > 0.0, "lissajous omega_x must be > 0");
  require(std::isfinite(omega_y) && omega_y > 0.0, "lissajous omega_y must be > 0");
  require(std::isfinite(v) && v >= 0.0, "lissajous speed v must be >= 0");
  if (speed_bound_override) {
    require(std::isfinite(*speed_bound_override) && *speed_bound_override >= 0.0, "speed bound must be >= 0");
    return TargetTrajectory(LissajousParams{xi, eta, omega_x, omega_y, v}, *speed_bound_override);
  }
  return TargetTrajectory(LissajousParams{xi, eta, omega_x, omega_y, v}, v, true);
}

TargetTrajectory make_piecewise_linear_trajectory(std::vector<TimedPoint> samples) {
  require(!samples.empty(), "piecewise-linear trajectory needs at least one sample");
  require(samples.front().t == 0.0, "piecewise-linear samples must start at t = 0");
  double bound = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    require(std::isfinite(s.t) && std::isfinite(s.point.x) && std::isfinite(s.point.y),
            "piecewise-linear samples must be finite");
    if (i == 0) continue;
    const double dt = s.t - samples[i - 1].t;
    if (!(dt > 0.0)) {
      throw std::invalid_argument("piecewise-linear sample times must be strictly increasing (sample " +
                                  std::to_string(i) + ")");
    }
    bound = std::max(bound, distance_between(s.point, samples[i - 1].point) / dt);
  }
  return TargetTrajectory(PiecewiseLinearParams{std::move(samples)}, bound);
}

TargetTrajectory make_custom_trajectory(std::function<PlanarPoint(double)> position, double speed_bound) {
  require(static_cast<bool>(position), "custom trajectory needs a callable");
  require(std::isfinite(speed_bound) && speed_bound >= 0.0, "speed bound must be >= 0");
  return TargetTrajectory(CustomParams{std::move(position)}, speed_bound);
}

}  // namespace intercept
