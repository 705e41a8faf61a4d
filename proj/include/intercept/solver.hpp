#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "intercept/core.hpp"
#include "intercept/models.hpp"

namespace intercept {

/// Which universal lower estimator drives the fixed-point loop.
///
/// Simple: t + (rho - ell)/(1 + v), the head-on closure step.
/// Best:   the first tau >= t with rho(tau, y) = v (tau - t) + ell, the
///         largest step that is safe for every v-Lipschitz target. Uses the
///         plant's closed form where it has one.
enum class EstimatorKind { Simple, Best };

enum class Termination { Captured, MaxIterations, StepUnderflow };

enum class SolveStatus { Intercepted, Unreachable, Budget };

[[nodiscard]] std::string_view to_string(EstimatorKind k) noexcept;
[[nodiscard]] std::string_view to_string(Termination k) noexcept;
[[nodiscard]] std::string_view to_string(SolveStatus k) noexcept;

struct Iterate {
  double t = 0.0;
  double rho = 0.0;
};

struct SolveTrace {
  std::vector<Iterate> iterates;
  Termination termination = Termination::MaxIterations;

  [[nodiscard]] std::size_t iterations() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
};

struct SolveResult {
  SolveStatus status = SolveStatus::Budget;
  double t_star = 0.0;
  SolveTrace trace;
  std::optional<InterceptionPath> path;
};

struct SolveOptions {
  EstimatorKind estimator = EstimatorKind::Best;
  std::size_t max_iterations = 100000;
};

[[nodiscard]] double simple_estimator(const Plant& plant, double t, PlanarPoint y, double v, double ell);

/// Best estimator. Returns t when rho(t, y) <= ell. Where the plant has no
/// closed form, runs s <- s + (rho(s, y) - v (s - t) - ell)/(1 + v) from
/// s = t; every iterate is a lower bound of the smallest root, so stopping
/// early (step underflow or `inner_cap` iterations) stays safe.
[[nodiscard]] double best_estimator(const Plant& plant, double t, PlanarPoint y, double v, double ell,
                                    std::size_t inner_cap = 1000000);

/// The inner root iteration alone, ignoring any closed form.
[[nodiscard]] double best_estimator_by_iteration(const Plant& plant, double t, PlanarPoint y, double v, double ell,
                                                 std::size_t inner_cap = 1000000);

[[nodiscard]] double estimate(EstimatorKind kind, const Plant& plant, double t, PlanarPoint y, double v, double ell);

/// Fixed-point loop t_0 = 0, t_n = theta(t_{n-1}, y_T(t_{n-1})) until the
/// distance drops to capture.stopping_threshold().
///
/// Status Unreachable is a heuristic: 10 consecutive steps below
/// 1e-15 (1 + t) with the target still out of reach. An infinite
/// interception time cannot be certified in finite time.
[[nodiscard]] SolveResult solve(const Plant& plant, const TargetTrajectory& trajectory, const CaptureSpec& capture,
                                const SolveOptions& options = {});

/// Reference interception time: the Best iteration run until its step drops
/// below 1e-14 (1 + t). Throws std::runtime_error if that takes more than
/// `cap` iterations.
[[nodiscard]] double refine_ground_truth(const Plant& plant, const TargetTrajectory& trajectory, double ell,
                                         std::size_t cap = 10000000);

/// Iterates t_0..t_n of the given estimator with no capture-based stop,
/// until `reference - t_n < stop_gap`, rho <= ell, or `cap` steps.
[[nodiscard]] std::vector<double> iterate_towards(const Plant& plant, const TargetTrajectory& trajectory, double ell,
                                                  EstimatorKind estimator, double reference, double stop_gap,
                                                  std::size_t cap = 100000);

/// Smallest n with reference - t_n < delta, or nullopt.
[[nodiscard]] std::optional<std::size_t> iterations_to_precision(const std::vector<double>& iterates,
                                                                 double reference, double delta);

/// Brute-force first crossing of g(t) = rho(t, y_T(t)) - ell.
///
/// g is (1 + v)-Lipschitz, so a step of g(t)/(1 + v) cannot skip a root; the
/// scan advances by max(resolution, g/(1 + v)) and bisects the first bracket.
/// The returned time satisfies g <= 0 and lies within resolution/4 of the
/// bracketed crossing. Returns nullopt if no crossing is found up to
/// `horizon`.
[[nodiscard]] std::optional<double> grid_oracle(const Plant& plant, const TargetTrajectory& trajectory, double ell,
                                                double horizon, double resolution);

}  // namespace intercept
