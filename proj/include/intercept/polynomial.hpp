#pragma once

#include <stdexcept>
#include <vector>

namespace intercept {

struct DegeneratePolynomial : std::domain_error {
  using std::domain_error::domain_error;
};

/// Real roots of a*x^3 + b*x^2 + c*x + d, ascending.
///
/// Coefficients whose magnitude is below `degenerate_tol` times the largest
/// coefficient are treated as zero, so the degree drops to quadratic or
/// linear when the leading terms vanish. Complex pairs whose imaginary part is
/// below 1e-10 are reported as a (double) real root. Every root gets one
/// Newton step against the original cubic.
///
/// Throws DegeneratePolynomial when all coefficients are zero.
[[nodiscard]] std::vector<double> cubic_real_roots(double a, double b, double c, double d,
                                                   double degenerate_tol = 1e-12);

/// Real roots of a*x^2 + b*x + c with the same conventions.
[[nodiscard]] std::vector<double> quadratic_real_roots(double a, double b, double c, double degenerate_tol = 1e-12);

[[nodiscard]] inline double eval_cubic(double a, double b, double c, double d, double x) noexcept {
  return ((a * x + b) * x + c) * x + d;
}

}  // namespace intercept
