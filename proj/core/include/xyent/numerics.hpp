#pragma once

// Numerical primitives shared by the physics modules: adaptive Gauss-Legendre
// quadrature with declared breakpoints, bracketed bisection and the
// power-law-times-exponential decay fit used for finite-size corrections.

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xyent::numerics {

using RealFunction = std::function<double(double)>;

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 4000;
  /// Interior points where the integrand may have kinks or integrable
  /// singularities. Points outside (a, b) are rejected.
  std::vector<double> breakpoints;
};

/// Thrown when the adaptive refinement exhausts its panel budget.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double estimate, double residual);

  double estimate() const noexcept { return estimate_; }
  double residual() const noexcept { return residual_; }

 private:
  double estimate_;
  double residual_;
};

/// Integral of f over [a, b]. Each breakpoint starts a separate panel, then
/// panels with the largest error estimate are bisected until the summed
/// estimate is below max(abs_tol, rel_tol * |I|).
double integrate(const RealFunction& f, double a, double b,
                 const QuadratureSpec& spec = {});

struct RootBracket {
  double lower;
  double upper;
  double f_tol = 1e-14;
  double x_tol = 1e-14;
};

class BracketError : public std::invalid_argument {
 public:
  BracketError() : std::invalid_argument("bracket invalid") {}
};

/// Root of a continuous f with f(lower) * f(upper) <= 0. The result always
/// lies inside the bracket.
double bisect(const RealFunction& f, const RootBracket& bracket);

struct DecaySample {
  int length;
  double correction;
};

/// Parameters of correction(L) ~ amplitude * L^-exponent * exp(-L / decay_length).
struct DecayFit {
  double amplitude = 0.0;
  double exponent = 0.0;
  /// Infinite when the fitted inverse length is zero.
  double decay_length = std::numeric_limits<double>::infinity();
  double inverse_length = 0.0;
  double residual = 0.0;
};

class InvalidSampleError : public std::invalid_argument {
 public:
  InvalidSampleError() : std::invalid_argument("invalid correction sample") {}
};

/// Least-squares fit of log(correction) = log A - a log L - L / L0 with
/// a in [0, 2] and 1/L0 in [0, 1].
DecayFit fit_decay(std::span<const DecaySample> samples);

}  // namespace xyent::numerics
