#pragma once

// JSON scenario/result documents and SVG rendering. The schemas are
// described in docs/formats.md.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "intercept/core.hpp"
#include "intercept/models.hpp"
#include "intercept/solver.hpp"

namespace intercept::io {

/// Parse or validation failure. `field` is a JSON-pointer-like path
/// ("capture/ell"); `line`/`column` are set for syntax errors.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message, std::size_t line = 0, std::size_t column = 0);

  [[nodiscard]] const std::string& field() const noexcept { return field_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::string field_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

struct LissajousSpec {
  LissajousParams params;
  std::optional<double> speed_bound;

  friend bool operator==(const LissajousSpec&, const LissajousSpec&) = default;
};

using TrajectorySpec = std::variant<LineParams, LissajousSpec, PiecewiseLinearParams>;

struct ScenarioFile {
  std::string plant = "simple";
  TrajectorySpec trajectory;
  double ell = 0.1;
  double epsilon = 1e-6;
  std::optional<double> absolute_tolerance;
  EstimatorKind estimator = EstimatorKind::Best;
  double horizon = 100.0;
  std::optional<std::size_t> max_iterations;
  std::optional<double> resolution;

  friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

[[nodiscard]] ScenarioFile parse_scenario(std::string_view text);
[[nodiscard]] std::string emit_scenario(const ScenarioFile& scenario);

[[nodiscard]] TargetTrajectory build_trajectory(const TrajectorySpec& spec);
[[nodiscard]] CaptureSpec build_capture(const ScenarioFile& scenario);

/// "simple" or "dubins"; throws ScenarioError for anything else.
[[nodiscard]] std::unique_ptr<Plant> make_plant(std::string_view name);

/// Result document: status, t_star, iteration count, the full trace and the
/// path when there is one. Floating-point values carry 17 significant digits.
[[nodiscard]] std::string emit_result(const SolveResult& result, const std::vector<std::string>& notes = {});

/// Inverse of emit_result (notes are dropped).
[[nodiscard]] SolveResult parse_result(std::string_view text);

/// %.17g, which round-trips every finite double.
[[nodiscard]] std::string format_number(double value);

struct SvgOptions {
  int boundary_samples = 400;
  int trajectory_samples = 600;
  double max_arc_turn = 0.01;
};

/// SVG 1.1 picture of an interception: reachable-set boundaries at `times`
/// (group id "reachable-sets", one element each), the target trajectory on
/// [0, t_star], the plant path and the capture circle around the target at
/// t_star. Throws std::invalid_argument when the result carries no path.
[[nodiscard]] std::string render_svg(const Plant& plant, const TargetTrajectory& trajectory, double ell,
                                     const SolveResult& result, const std::vector<double>& times,
                                     const SvgOptions& options = {});

}  // namespace intercept::io
