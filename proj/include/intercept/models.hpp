#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "intercept/core.hpp"

namespace intercept {

enum class TurnDirection { Left, Right };

/// One primitive of a unit-speed path. `Wait` is a zero-displacement filler
/// used when the target is caught before the requested time.
struct PathSegment {
  enum class Kind { Arc, Straight, Wait };

  Kind kind = Kind::Straight;
  TurnDirection direction = TurnDirection::Right;  // meaningful for arcs only
  double duration = 0.0;

  static PathSegment arc(TurnDirection d, double duration) { return {Kind::Arc, d, duration}; }
  static PathSegment straight(double duration) { return {Kind::Straight, TurnDirection::Right, duration}; }
  static PathSegment wait(double duration) { return {Kind::Wait, TurnDirection::Right, duration}; }

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

/// Segments start at the origin with heading `initial_heading` (radians from
/// +x); `endpoint` is where they end.
struct InterceptionPath {
  double initial_heading = 0.0;
  std::vector<PathSegment> segments;
  PlanarPoint endpoint;

  [[nodiscard]] double total_duration() const noexcept;
};

/// Positions along the path, starting at the origin. Arcs are flattened so
/// that consecutive samples differ by at most `max_turn` radians of heading.
[[nodiscard]] std::vector<PlanarPoint> flatten_path(const InterceptionPath& path, double max_turn = 0.01);

struct PlantCapabilities {
  bool has_closed_form_best_estimator = false;
  bool has_boundary_sampler = false;
  bool has_path_reconstruction = false;
};

/// A plant seen only through its reachable set R(t) projected onto the
/// plane: the distance from a point to R(t) and the queries derived from it.
/// Implementations have unit maximal speed, so distance() is 1-Lipschitz in
/// both arguments.
class Plant {
 public:
  virtual ~Plant() = default;

  [[nodiscard]] virtual std::string_view name() const noexcept = 0;
  [[nodiscard]] virtual PlantCapabilities capabilities() const noexcept = 0;

  [[nodiscard]] virtual double distance(double t, PlanarPoint y) const = 0;
  [[nodiscard]] virtual bool contains(double t, PlanarPoint y) const = 0;

  /// Best-estimator value where the plant knows it in closed form, nullopt
  /// where it does not (the solver then falls back to a root search).
  [[nodiscard]] virtual std::optional<double> closed_form_best_estimator(double t, PlanarPoint y, double v,
                                                                         double ell) const;

  /// Boundary polylines of R(t), one per smooth branch.
  [[nodiscard]] virtual std::vector<std::vector<PlanarPoint>> boundary_branches(double t, int n) const;

  [[nodiscard]] virtual InterceptionPath path(double t_star, PlanarPoint y_target, double ell) const = 0;
};

// Simple motions: velocity is any vector of norm <= 1, so R(t) is the disk of
// radius t around the origin.

[[nodiscard]] double simple_distance(double t, PlanarPoint y);
[[nodiscard]] bool simple_contains(double t, PlanarPoint y);
[[nodiscard]] double simple_best_estimator(double t, PlanarPoint y, double v, double ell);
[[nodiscard]] InterceptionPath simple_path(double t_star, PlanarPoint y_target, double ell);

class SimpleMotionPlant final : public Plant {
 public:
  [[nodiscard]] std::string_view name() const noexcept override { return "simple"; }
  [[nodiscard]] PlantCapabilities capabilities() const noexcept override { return {true, true, true}; }
  [[nodiscard]] double distance(double t, PlanarPoint y) const override { return simple_distance(t, y); }
  [[nodiscard]] bool contains(double t, PlanarPoint y) const override { return simple_contains(t, y); }
  [[nodiscard]] std::optional<double> closed_form_best_estimator(double t, PlanarPoint y, double v,
                                                                 double ell) const override {
    return simple_best_estimator(t, y, v, ell);
  }
  [[nodiscard]] std::vector<std::vector<PlanarPoint>> boundary_branches(double t, int n) const override;
  [[nodiscard]] InterceptionPath path(double t_star, PlanarPoint y_target, double ell) const override {
    return simple_path(t_star, y_target, ell);
  }
};

}  // namespace intercept
