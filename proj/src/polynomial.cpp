#include "intercept/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace intercept {

namespace {

constexpr double kImagTol = 1e-10;

double newton_step(double a, double b, double c, double d, double x) {
  const double f = eval_cubic(a, b, c, d, x);
  const double df = (3.0 * a * x + 2.0 * b) * x + c;
  if (df == 0.0 || !std::isfinite(df)) return x;
  const double next = x - f / df;
  if (!std::isfinite(next)) return x;
  return std::abs(eval_cubic(a, b, c, d, next)) <= std::abs(f) ? next : x;
}

// Roots of a*x^2 + b*x + c with a != 0.
void proper_quadratic(double a, double b, double c, std::vector<double>& out) {
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(s, b));
    if (q == 0.0) {
      out.push_back(0.0);
      out.push_back(0.0);
      return;
    }
    out.push_back(q / a);
    out.push_back(c / q);
    return;
  }
  const double imag = std::sqrt(-disc) / (2.0 * std::abs(a));
  if (imag < kImagTol) {
    const double re = -b / (2.0 * a);
    out.push_back(re);
    out.push_back(re);
  }
}

// One real root of the monic cubic x^3 + B x^2 + C x + D.
double one_real_root(double B, double C, double D) {
  const double p = C - B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const double delta = 0.25 * q * q + p * p * p / 27.0;
  double z = 0.0;
  if (delta > 0.0) {
    const double s = std::sqrt(delta);
    // Pick the larger-magnitude term first to avoid cancellation.
    const double u = std::cbrt(-0.5 * q - std::copysign(s, q));
    z = u != 0.0 ? u - p / (3.0 * u) : 0.0;
  } else if (p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    z = m * std::cos(std::acos(arg) / 3.0);
  }
  return z - B / 3.0;
}

// a*x^2 + b*x + c, coefficients at or below `zero` in magnitude count as 0.
std::vector<double> low_degree_roots(double a, double b, double c, double zero) {
  std::vector<double> out;
  if (std::abs(a) <= zero) {
    if (std::abs(b) <= zero) {
      if (std::abs(c) <= zero) throw DegeneratePolynomial("polynomial is numerically zero");
      return out;
    }
    out.push_back(-c / b);
    return out;
  }
  proper_quadratic(a, b, c, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> quadratic_real_roots(double a, double b, double c, double degenerate_tol) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) throw DegeneratePolynomial("polynomial is identically zero");
  return low_degree_roots(a, b, c, degenerate_tol * scale);
}

std::vector<double> cubic_real_roots(double a, double b, double c, double d, double degenerate_tol) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) throw DegeneratePolynomial("polynomial is identically zero");
  if (std::abs(a) <= degenerate_tol * scale) {
    auto roots = low_degree_roots(b, c, d, degenerate_tol * scale);
    for (double& r : roots) r = newton_step(0.0, b, c, d, r);
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  double r = one_real_root(b / a, c / a, d / a);
  for (int i = 0; i < 3; ++i) r = newton_step(a, b, c, d, r);

  // Deflate: a x^3 + b x^2 + c x + d = (x - r)(a x^2 + e x + f) + remainder.
  const double e = b + a * r;
  const double f = c + e * r;
  std::vector<double> out{r};
  proper_quadratic(a, e, f, out);
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = newton_step(a, b, c, d, out[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace intercept
