#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace intercept {

/// A point of the target plane.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  [[nodiscard]] double norm() const noexcept { return std::hypot(x, y); }

  friend PlanarPoint operator+(PlanarPoint a, PlanarPoint b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend PlanarPoint operator-(PlanarPoint a, PlanarPoint b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend PlanarPoint operator*(double s, PlanarPoint p) noexcept { return {s * p.x, s * p.y}; }
  friend bool operator==(PlanarPoint, PlanarPoint) = default;
};

[[nodiscard]] inline double distance_between(PlanarPoint a, PlanarPoint b) noexcept { return (a - b).norm(); }

/// Capture radius and stopping tolerance of the fixed-point loop.
///
/// With `ell > 0` the loop stops once the distance to the reachable set is at
/// most `ell * (1 + epsilon)`. With `ell == 0` the relative criterion is
/// meaningless and `absolute_tolerance` is used instead.
struct CaptureSpec {
  double ell = 0.1;
  double epsilon = 1e-6;
  double absolute_tolerance = 1e-9;

  CaptureSpec() = default;
  CaptureSpec(double ell, double epsilon, double absolute_tolerance = 1e-9);

  [[nodiscard]] double stopping_threshold() const noexcept {
    return ell > 0.0 ? ell * (1.0 + epsilon) : absolute_tolerance;
  }
};

struct LineParams {
  double xi = 0.0;
  double eta = 0.0;
  double phi = 0.0;
  double v = 0.0;

  friend bool operator==(const LineParams&, const LineParams&) = default;
};

struct LissajousParams {
  double xi = 0.0;
  double eta = 0.0;
  double omega_x = 1.0;
  double omega_y = 1.0;
  double v = 0.0;

  friend bool operator==(const LissajousParams&, const LissajousParams&) = default;
};

struct TimedPoint {
  double t = 0.0;
  PlanarPoint point;

  friend bool operator==(const TimedPoint&, const TimedPoint&) = default;
};

struct PiecewiseLinearParams {
  std::vector<TimedPoint> samples;

  friend bool operator==(const PiecewiseLinearParams&, const PiecewiseLinearParams&) = default;
};

struct CustomParams {
  std::function<PlanarPoint(double)> position;
};

enum class TrajectoryKind { Line, Lissajous, PiecewiseLinear, Custom };

[[nodiscard]] std::string_view to_string(TrajectoryKind kind) noexcept;

/// Target trajectory t -> position, together with the speed bound the solver
/// is told to assume. Immutable once built; use the make_* factories.
class TargetTrajectory {
 public:
  using Params = std::variant<LineParams, LissajousParams, PiecewiseLinearParams, CustomParams>;

  [[nodiscard]] PlanarPoint position(double t) const;
  [[nodiscard]] double speed_bound() const noexcept { return speed_bound_; }
  [[nodiscard]] TrajectoryKind kind() const noexcept { return static_cast<TrajectoryKind>(params_.index()); }
  [[nodiscard]] const Params& params() const noexcept { return params_; }

  /// True for a Lissajous trajectory built without an explicit bound: the
  /// solver then assumes the nominal `v`, although the Euclidean speed
  /// reaches v*sqrt(2).
  [[nodiscard]] bool speed_bound_is_nominal() const noexcept { return nominal_bound_; }

 private:
  friend TargetTrajectory make_line_trajectory(double, double, double, double);
  friend TargetTrajectory make_lissajous_trajectory(double, double, double, double, double, std::optional<double>);
  friend TargetTrajectory make_piecewise_linear_trajectory(std::vector<TimedPoint>);
  friend TargetTrajectory make_custom_trajectory(std::function<PlanarPoint(double)>, double);

  TargetTrajectory(Params params, double speed_bound, bool nominal = false)
      : params_(std::move(params)), speed_bound_(speed_bound), nominal_bound_(nominal) {}

  Params params_;
  double speed_bound_ = 0.0;
  bool nominal_bound_ = false;
};

/// (xi + v t cos phi, eta + v t sin phi). Throws std::invalid_argument for v < 0.
[[nodiscard]] TargetTrajectory make_line_trajectory(double xi, double eta, double phi, double v);

/// (xi + v/omega_x sin(omega_x t), eta + v/omega_y sin(omega_y t)).
///
/// The speed bound defaults to `v`, which is what the published iteration
/// counts assume; the true Euclidean bound is v*sqrt(2). Pass
/// `speed_bound_override` to use a different constant.
[[nodiscard]] TargetTrajectory make_lissajous_trajectory(double xi, double eta, double omega_x, double omega_y,
                                                         double v,
                                                         std::optional<double> speed_bound_override = std::nullopt);

/// Linear interpolation between samples, constant after the last one. Sample
/// times must start at 0 and be strictly increasing.
[[nodiscard]] TargetTrajectory make_piecewise_linear_trajectory(std::vector<TimedPoint> samples);

/// Arbitrary callable. The caller vouches for `speed_bound`.
[[nodiscard]] TargetTrajectory make_custom_trajectory(std::function<PlanarPoint(double)> position, double speed_bound);

}  // namespace intercept
