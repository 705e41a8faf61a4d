#include "intercept/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace intercept {

namespace {

constexpr double kUnderflowRelStep = 1e-15;
constexpr int kUnderflowStreak = 10;

void require_estimator_inputs(double t, double v, double ell) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("estimator time must be finite and >= 0");
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("target speed bound must be finite and >= 0");
  if (!(ell >= 0.0) || !std::isfinite(ell)) throw std::invalid_argument("capture radius must be finite and >= 0");
}

}  // namespace

std::string_view to_string(EstimatorKind k) noexcept {
  return k == EstimatorKind::Simple ? "simple" : "best";
}

std::string_view to_string(Termination k) noexcept {
  switch (k) {
    case Termination::Captured: return "captured";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::StepUnderflow: return "step_underflow";
  }
  return "?";
}

std::string_view to_string(SolveStatus k) noexcept {
  switch (k) {
    case SolveStatus::Intercepted: return "intercepted";
    case SolveStatus::Unreachable: return "unreachable";
    case SolveStatus::Budget: return "budget";
  }
  return "?";
}

double simple_estimator(const Plant& plant, double t, PlanarPoint y, double v, double ell) {
  require_estimator_inputs(t, v, ell);
  const double rho = plant.distance(t, y);
  if (rho > ell) return t + (rho - ell) / (1.0 + v);
  return t;
}

double best_estimator_by_iteration(const Plant& plant, double t, PlanarPoint y, double v, double ell,
                                   std::size_t inner_cap) {
  require_estimator_inputs(t, v, ell);
  if (plant.distance(t, y) <= ell) return t;
  // Smallest root of h(s) = rho(s, y) - v (s - t) - ell. h is
  // (1 + v)-Lipschitz, so each step h/(1 + v) stays below the root.
  double s = t;
  for (std::size_t k = 0; k < inner_cap; ++k) {
    const double h = plant.distance(s, y) - v * (s - t) - ell;
    if (h <= 0.0) return s;
    const double next = s + h / (1.0 + v);
    if (next - s <= kUnderflowRelStep * (1.0 + s)) return next;
    s = next;
  }
  return s;
}

double best_estimator(const Plant& plant, double t, PlanarPoint y, double v, double ell, std::size_t inner_cap) {
  require_estimator_inputs(t, v, ell);
  if (plant.capabilities().has_closed_form_best_estimator) {
    if (auto closed = plant.closed_form_best_estimator(t, y, v, ell)) return *closed;
  }
  return best_estimator_by_iteration(plant, t, y, v, ell, inner_cap);
}

double estimate(EstimatorKind kind, const Plant& plant, double t, PlanarPoint y, double v, double ell) {
  return kind == EstimatorKind::Simple ? simple_estimator(plant, t, y, v, ell) : best_estimator(plant, t, y, v, ell);
}

SolveResult solve(const Plant& plant, const TargetTrajectory& trajectory, const CaptureSpec& capture,
                  const SolveOptions& options) {
  if (!(capture.ell >= 0.0) || !(capture.epsilon > 0.0) || !(capture.absolute_tolerance > 0.0)) {
    throw std::invalid_argument("invalid capture specification");
  }
  const double v = trajectory.speed_bound();
  if (!std::isfinite(v)) throw std::invalid_argument("trajectory speed bound must be finite");
  const double threshold = capture.stopping_threshold();

  SolveResult result;
  auto& iterates = result.trace.iterates;
  double t = 0.0;
  PlanarPoint y = trajectory.position(t);
  double rho = plant.distance(t, y);
  iterates.push_back({t, rho});

  int underflow = 0;
  for (;;) {
    if (rho <= threshold) {
      result.status = SolveStatus::Intercepted;
      result.trace.termination = Termination::Captured;
      break;
    }
    if (underflow >= kUnderflowStreak) {
      result.status = SolveStatus::Unreachable;
      result.trace.termination = Termination::StepUnderflow;
      break;
    }
    if (result.trace.iterations() >= options.max_iterations) {
      result.status = SolveStatus::Budget;
      result.trace.termination = Termination::MaxIterations;
      break;
    }
    const double next = estimate(options.estimator, plant, t, y, v, capture.ell);
    underflow = next - t < kUnderflowRelStep * (1.0 + t) ? underflow + 1 : 0;
    t = std::max(t, next);
    y = trajectory.position(t);
    rho = plant.distance(t, y);
    iterates.push_back({t, rho});
  }

  result.t_star = t;
  if (result.status == SolveStatus::Intercepted) {
    result.path = plant.path(t, y, std::max(capture.ell, rho));
  }
  return result;
}

double refine_ground_truth(const Plant& plant, const TargetTrajectory& trajectory, double ell, std::size_t cap) {
  const double v = trajectory.speed_bound();
  double t = 0.0;
  for (std::size_t k = 0; k < cap; ++k) {
    const PlanarPoint y = trajectory.position(t);
    if (plant.distance(t, y) <= ell) return t;
    const double next = best_estimator(plant, t, y, v, ell);
    if (next - t < 1e-14 * (1.0 + t)) return next;
    t = next;
  }
  throw std::runtime_error("refine_ground_truth: no convergence within " + std::to_string(cap) + " iterations");
}

std::vector<double> iterate_towards(const Plant& plant, const TargetTrajectory& trajectory, double ell,
                                    EstimatorKind estimator, double reference, double stop_gap, std::size_t cap) {
  const double v = trajectory.speed_bound();
  std::vector<double> ts{0.0};
  double t = 0.0;
  while (reference - t >= stop_gap && ts.size() <= cap) {
    const PlanarPoint y = trajectory.position(t);
    if (plant.distance(t, y) <= ell) break;
    t = std::max(t, estimate(estimator, plant, t, y, v, ell));
    ts.push_back(t);
  }
  return ts;
}

std::optional<std::size_t> iterations_to_precision(const std::vector<double>& iterates, double reference,
                                                   double delta) {
  for (std::size_t n = 0; n < iterates.size(); ++n) {
    if (reference - iterates[n] < delta) return n;
  }
  return std::nullopt;
}

std::optional<double> grid_oracle(const Plant& plant, const TargetTrajectory& trajectory, double ell, double horizon,
                                  double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid_oracle: resolution must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("grid_oracle: horizon must be > 0");
  const double v = trajectory.speed_bound();
  auto gap = [&](double t) { return plant.distance(t, trajectory.position(t)) - ell; };

  double lo = 0.0;
  double g_lo = gap(lo);
  if (g_lo <= 0.0) return lo;
  while (lo < horizon) {
    const double hi = std::min(horizon, lo + std::max(resolution, g_lo / (1.0 + v)));
    const double g_hi = gap(hi);
    if (g_hi <= 0.0) {
      double a = lo;
      double b = hi;
      while (b - a > 0.25 * resolution) {
        const double mid = 0.5 * (a + b);
        if (gap(mid) <= 0.0) {
          b = mid;
        } else {
          a = mid;
        }
      }
      return b;
    }
    lo = hi;
    g_lo = g_hi;
  }
  return std::nullopt;
}

}  // namespace intercept
