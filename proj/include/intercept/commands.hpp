#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "intercept/io.hpp"
#include "intercept/solver.hpp"

namespace intercept::cli {

inline constexpr std::array<double, 3> kTablePrecisions{1e-3, 1e-6, 1e-9};
inline constexpr double kTableEll = 0.1;

/// One published row: a trajectory and the iteration counts printed for
/// both plants at the three precisions.
struct TableRow {
  std::string label;
  io::TrajectorySpec trajectory;
  std::array<int, 3> simple_counts{};
  std::array<int, 3> dubins_counts{};
};

[[nodiscard]] const std::vector<TableRow>& table_rows();

struct TableCell {
  std::string plant;
  std::size_t row = 0;
  double delta = 0.0;
  std::optional<std::size_t> computed;
  int published = 0;

  [[nodiscard]] bool matches() const noexcept {
    if (!computed) return false;
    const long diff = static_cast<long>(*computed) - published;
    return diff >= -1 && diff <= 1;
  }
};

struct TableReport {
  std::vector<TableCell> cells;
  std::vector<double> references_simple;
  std::vector<double> references_dubins;
};

/// Recomputes every row, one asynchronous task per row. Counts are the
/// smallest n with T*_ref - t_n < delta, T*_ref from refine_ground_truth.
[[nodiscard]] TableReport reproduce_table(EstimatorKind estimator);

/// Iteration counts to each precision for one scenario.
[[nodiscard]] std::array<std::optional<std::size_t>, 3> precision_counts(const Plant& plant,
                                                                         const TargetTrajectory& trajectory, double ell,
                                                                         EstimatorKind estimator, double reference);

/// Entry point of the `intercept` binary. Exit codes: 0 success, 1 input
/// error, 2 budget exhausted, unreachable target, or oracle found nothing.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace intercept::cli
