#include "xyent/quench.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xyent {

using std::numbers::pi;

namespace {

// (cos p - h0)(cos p - h) + gamma gamma0 sin^2 p
double overlap_numerator(const QuenchParams& qp, double p) {
  const double c = std::cos(p);
  const double s = std::sin(p);
  return (c - qp.initial.h) * (c - qp.final.h) + qp.initial.gamma * qp.final.gamma * s * s;
}

// cos Delta without the gapless check; the value at a gapless momentum has
// zero measure in every integral.
double cos_delta_unchecked(const QuenchParams& qp, double p) {
  const double denom = dispersion(qp.initial, p) * dispersion(qp.final, p);
  if (denom == 0.0) return 1.0;
  return std::clamp(4.0 * overlap_numerator(qp, p) / denom, -1.0, 1.0);
}

std::vector<double> sorted_interior(std::vector<double> points) {
  std::erase_if(points, [](double x) { return !(x > 0.0 && x < pi); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace

void QuenchParams::validate() const {
  initial.validate();
  final.validate();
}

double cos_delta(const QuenchParams& qp, double p) {
  if (dispersion(qp.initial, p) == 0.0 || dispersion(qp.final, p) == 0.0) {
    throw GaplessModeError();
  }
  return cos_delta_unchecked(qp, p);
}

double occupation(const QuenchParams& qp, double p) { return 0.5 * (1.0 - cos_delta(qp, p)); }

double effective_temperature(double mode_energy, double cos_delta_value) {
  const double a = std::abs(cos_delta_value);
  if (a >= 1.0 - 4.0 * std::numeric_limits<double>::epsilon()) return 0.0;
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return mode_energy / (2.0 * std::atanh(a));
}

double effective_temperature(const QuenchParams& qp, double p) {
  return effective_temperature(dispersion(qp.final, p), cos_delta(qp, p));
}

std::vector<double> cos_delta_nodes(const QuenchParams& qp) {
  // In c = cos p: (1 - g g0) c^2 - (h0 + h) c + (h0 h + g g0) = 0.
  const double gg = qp.initial.gamma * qp.final.gamma;
  const double a = 1.0 - gg;
  const double b = -(qp.initial.h + qp.final.h);
  const double c = qp.initial.h * qp.final.h + gg;
  std::vector<double> roots;
  if (std::abs(a) < 1e-15) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + std::copysign(sq, b));
      if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  std::vector<double> momenta;
  for (double r : roots) {
    if (r > -1.0 && r < 1.0) momenta.push_back(std::acos(r));
  }
  return sorted_interior(std::move(momenta));
}

double postquench_energy_density(const QuenchParams& qp, const numerics::QuadratureSpec& spec) {
  qp.validate();
  numerics::QuadratureSpec local = spec;
  local.breakpoints = sorted_interior(gapless_momenta(qp.initial));
  // eps cos Delta = 4 N / eps0, regular wherever eps0 > 0.
  const double integral = numerics::integrate(
      [&](double p) {
        const double e0 = dispersion(qp.initial, p);
        return e0 > 0.0 ? 4.0 * overlap_numerator(qp, p) / e0 : 0.0;
      },
      0.0, pi, local);
  return -integral / (2.0 * pi);
}

OccupationWeight gge_weight(const QuenchParams& qp) {
  std::vector<double> kinks = gapless_momenta(qp.initial);
  for (double p : gapless_momenta(qp.final)) kinks.push_back(p);
  for (double p : cos_delta_nodes(qp)) kinks.push_back(p);
  return {OccupationWeight::Source::quench,
          [qp](double p) { return std::abs(cos_delta_unchecked(qp, p)); },
          sorted_interior(std::move(kinks))};
}

NNCorrelations gge_correlations(const QuenchParams& qp, const numerics::QuadratureSpec& spec) {
  qp.validate();
  if (qp.initial.gamma == 0.0 && qp.final.gamma == 0.0) {
    throw std::invalid_argument("gamma0 = gamma = 0 requires xx_quench_correlations");
  }
  return nn_correlations(correlation_sums(qp.final, gge_weight(qp), spec));
}

NNCorrelations xx_quench_correlations(double h0, double h, XXMode mode) {
  if (!(h0 >= 0.0) || !(h >= 0.0)) throw std::invalid_argument("fields must be >= 0");
  const double field = mode == XXMode::isolated ? h0 : h;
  CorrelationSums sums;
  if (field < 1.0) {
    sums.gc = 2.0 / pi * std::sqrt(1.0 - field * field);
    sums.g0 = 1.0 - 2.0 * std::acos(field) / pi;
  } else {
    sums.gc = 0.0;
    sums.g0 = 1.0;
  }
  return nn_correlations(sums);
}

NNCorrelations stationary_correlations(const QuenchParams& qp, XXMode mode,
                                       const numerics::QuadratureSpec& spec) {
  if (qp.initial.gamma == 0.0 && qp.final.gamma == 0.0) {
    qp.validate();
    return xx_quench_correlations(qp.initial.h, qp.final.h, mode);
  }
  return gge_correlations(qp, spec);
}

double stationary_energy_density(const QuenchParams& qp, XXMode mode,
                                 const numerics::QuadratureSpec& spec) {
  if (qp.initial.gamma == 0.0 && qp.final.gamma == 0.0 && mode == XXMode::gamma_to_zero_limit) {
    qp.validate();
    return ground_energy_density(qp.final, spec);
  }
  return postquench_energy_density(qp, spec);
}

BoundaryIntegrals boundary_integrals(double h0, double gamma, const numerics::QuadratureSpec& spec) {
  const ModelParams initial{gamma, h0};
  initial.validate();
  numerics::QuadratureSpec local = spec;
  local.breakpoints = sorted_interior(gapless_momenta(initial));
  auto radius = [&](double p) { return 0.5 * dispersion(initial, p); };
  BoundaryIntegrals out;
  out.i1 = numerics::integrate(
               [&](double p) {
                 const double r = radius(p);
                 return r > 0.0 ? (h0 - std::cos(p)) / r : 0.0;
               },
               0.0, pi, local) /
           pi;
  out.i2 = numerics::integrate(
               [&](double p) {
                 const double r = radius(p);
                 const double c = std::cos(p);
                 const double s = std::sin(p);
                 return r > 0.0 ? (-h0 * c + c * c + gamma * gamma * s * s) / r : 0.0;
               },
               0.0, pi, local) /
           pi;
  return out;
}

DetectionInterval energy_detection_bounds(double h0, double gamma,
                                          const numerics::QuadratureSpec& spec) {
  const BoundaryIntegrals in = boundary_integrals(h0, gamma, spec);
  const double g1 = 1.0 + gamma;
  double disc = in.i1 * in.i1 + 2.0 * in.i2 / g1 - 1.0;
  // A double root (h0 = 0 at gamma = 1, h0 on the disorder line) shows up as
  // quadrature noise of either sign; the witness is quadratic in h there and
  // stays inside the detection threshold.
  if (std::abs(disc) <= 1e-12) disc = 0.0;
  if (disc < 0.0) return {};
  const double root = std::sqrt(disc);
  const double lower = (in.i1 - root) * g1;
  const double upper = (in.i1 + root) * g1;
  const double linear_upper =
      in.i1 < 1.0 ? in.i2 / (1.0 - in.i1) : std::numeric_limits<double>::infinity();
  if (linear_upper <= g1) return {lower, upper, DetectionInterval::Branch::quadratic};
  return {lower, linear_upper, DetectionInterval::Branch::linear};
}

}  // namespace xyent
