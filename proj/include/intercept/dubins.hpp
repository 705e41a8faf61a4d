#pragma once

// Planar reachable set of the Dubins car.
//
// The car starts at the origin heading along +y (state (0, 0, pi/2)), moves
// at unit speed and turns with unit minimal radius. Everything here is
// symmetric in x, so formulas work with |x| and mirror at the end.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "intercept/core.hpp"
#include "intercept/models.hpp"

namespace intercept::dubins {

enum class Region { I, II, III };

[[nodiscard]] std::string_view to_string(Region r) noexcept;

[[nodiscard]] double alpha_cs(PlanarPoint y) noexcept;
[[nodiscard]] double alpha_cc(PlanarPoint y) noexcept;

/// D_I: inside either unit turning circle (alpha_cs < 0) or the origin.
/// D_III: alpha_cc > -1, y > 0 and not in D_I. D_II: everything else.
[[nodiscard]] Region classify(PlanarPoint y) noexcept;

/// First-arc angle of the CS path to y, in [0, 2pi). Throws
/// std::domain_error inside the turning circles (alpha_cs < 0).
[[nodiscard]] double theta_cs(PlanarPoint y);

/// Length of the CS path to y. Defined on D_II, D_III and at the origin.
[[nodiscard]] double v_cs(PlanarPoint y);

struct CcLengths {
  std::optional<double> plus;   // D_III only
  std::optional<double> minus;  // D_I and D_III
};

[[nodiscard]] CcLengths v_cc(PlanarPoint y);

/// Per-point scratch values. Optional members are set only where their
/// defining region condition holds.
struct Geometry {
  double abs_x = 0.0;
  double alpha_cs = 0.0;
  double alpha_cc = 0.0;
  Region region = Region::I;
  std::optional<double> theta_cs;
  std::optional<double> v_cs;
  std::optional<double> v_cc_plus;
  std::optional<double> v_cc_minus;
};

[[nodiscard]] Geometry geometry(PlanarPoint y);

/// Membership in R(t), evaluated as the explicit region/length disjunction.
[[nodiscard]] bool contains(double t, PlanarPoint y);

/// Real roots xi of
///   -(y + sin(t/3)) xi^3 + (3 + 3|x| + cos(t/3)) xi^2 + (3y - sin(t/3)) xi + cos(t/3) - (1 + |x|)
/// whose arctangents parameterize the stationary points of the distance
/// from y to the CC boundary branch.
[[nodiscard]] std::vector<double> cc_cubic_roots(double t, PlanarPoint y);

/// Coefficients (cubic first) of the polynomial above.
[[nodiscard]] std::array<double, 4> cc_cubic_coefficients(double t, PlanarPoint y) noexcept;

/// End of the path "turn right by theta, then go straight" of total length t.
[[nodiscard]] PlanarPoint cs_boundary_point(double theta, double t) noexcept;

/// End of the path "turn left by tau, then turn right" of total length t.
[[nodiscard]] PlanarPoint cc_boundary_point(double tau, double t) noexcept;

/// Parameters tau in [0, min(t, pi/2)] that can minimize the distance from
/// y to the CC branch: 0, min(t, pi/2) and the cubic's stationary points.
[[nodiscard]] std::vector<double> cc_candidates(double t, PlanarPoint y);

/// Distance from y to R(t).
[[nodiscard]] double distance(double t, PlanarPoint y);

/// True where the closed-form best estimator applies: y outside the turning
/// circles, theta_cs(y) <= t, and y in D_II or (D_III with V_CS(y) >= t).
[[nodiscard]] bool cs_estimator_applies(double t, PlanarPoint y);

/// t + (V_CS(y) - t - ell)/(1 + v) where cs_estimator_applies(), otherwise
/// the simple estimator t + (distance - ell)/(1 + v). Returns t when the
/// point is already within ell.
[[nodiscard]] double best_estimator(double t, PlanarPoint y, double v, double ell);

/// n samples per branch of the CS and CC boundary curves, both mirrored:
/// four polylines in the order CS right, CC right, CS left, CC left.
[[nodiscard]] std::vector<std::vector<PlanarPoint>> boundary_branches(double t, int n);

/// The same samples concatenated.
[[nodiscard]] std::vector<PlanarPoint> boundary_points(double t, int n);

/// Path of length t_star ending at the reachable point nearest to y_target.
/// A target already inside R(t_star) is reached by its shortest CS or CC
/// path and the remaining time is a Wait segment (the car would loiter).
/// Throws std::invalid_argument when y_target is farther than ell (+1e-6)
/// from R(t_star).
[[nodiscard]] InterceptionPath path(double t_star, PlanarPoint y_target, double ell);

}  // namespace intercept::dubins

namespace intercept {

class DubinsPlant final : public Plant {
 public:
  [[nodiscard]] std::string_view name() const noexcept override { return "dubins"; }
  [[nodiscard]] PlantCapabilities capabilities() const noexcept override { return {true, true, true}; }
  [[nodiscard]] double distance(double t, PlanarPoint y) const override { return dubins::distance(t, y); }
  [[nodiscard]] bool contains(double t, PlanarPoint y) const override { return dubins::contains(t, y); }
  [[nodiscard]] std::optional<double> closed_form_best_estimator(double t, PlanarPoint y, double v,
                                                                 double ell) const override;
  [[nodiscard]] std::vector<std::vector<PlanarPoint>> boundary_branches(double t, int n) const override {
    return dubins::boundary_branches(t, n);
  }
  [[nodiscard]] InterceptionPath path(double t_star, PlanarPoint y_target, double ell) const override {
    return dubins::path(t_star, y_target, ell);
  }
};

}  // namespace intercept
