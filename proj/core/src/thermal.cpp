#include "xyent/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xyent {

using std::numbers::pi;

namespace {

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// log tanh x for x > 0; -inf at x = 0.
double log_tanh(double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  const double e = std::exp(-2.0 * x);
  return std::log(-std::expm1(-2.0 * x)) - std::log1p(e);
}

std::vector<double> merged_breakpoints(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::erase_if(a, [](double x) { return !(x > 0.0 && x < pi); });
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

OccupationWeight unit_weight() {
  return {OccupationWeight::Source::unit, [](double) { return 1.0; }, {}};
}

OccupationWeight thermal_weight(const ModelParams& params, double temperature) {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  if (temperature == 0.0 || std::isinf(temperature)) {
    const double level = temperature == 0.0 ? 1.0 : 0.0;
    return {OccupationWeight::Source::thermal, [level](double) { return level; }, {}};
  }
  return {OccupationWeight::Source::thermal,
          [params, temperature](double p) {
            return std::tanh(dispersion(params, p) / (2.0 * temperature));
          },
          {}};
}

CorrelationSums correlation_sums(const ModelParams& params, const OccupationWeight& weight,
                                 const numerics::QuadratureSpec& spec) {
  numerics::QuadratureSpec local = spec;
  local.breakpoints = merged_breakpoints(gapless_momenta(params), weight.breakpoints);

  // w / eps with the gapless point itself given zero measure; the quadrature
  // never samples declared breakpoints.
  auto ratio = [&](double p) {
    const double e = dispersion(params, p);
    return e > 0.0 ? weight(p) / e : 0.0;
  };
  // (1/pi) int_{-pi}^{pi} = (2/pi) int_0^pi for the even integrands.
  const double scale = 2.0 / pi;
  CorrelationSums sums;
  sums.gc = scale * numerics::integrate(
                        [&](double p) {
                          const double c = std::cos(p);
                          return c * (c - params.h) * ratio(p);
                        },
                        0.0, pi, local);
  if (params.gamma != 0.0) {
    sums.gs = -params.gamma * scale *
              numerics::integrate(
                  [&](double p) {
                    const double s = std::sin(p);
                    return s * s * ratio(p);
                  },
                  0.0, pi, local);
  }
  sums.g0 = scale * numerics::integrate(
                        [&](double p) { return (params.h - std::cos(p)) * ratio(p); }, 0.0, pi,
                        local);
  return sums;
}

NNCorrelations nn_correlations(const CorrelationSums& s) {
  return {s.gc - s.gs, s.gc + s.gs, s.g0 * s.g0 - s.gc * s.gc + s.gs * s.gs, s.g0};
}

double energy_density_from_correlations(const ModelParams& params, const NNCorrelations& corr) {
  return -0.5 * (1.0 + params.gamma) * corr.xx - 0.5 * (1.0 - params.gamma) * corr.yy -
         params.h * corr.z;
}

double energy_density_thermal(const ModelParams& params, double temperature,
                              const numerics::QuadratureSpec& spec) {
  const OccupationWeight w = thermal_weight(params, temperature);
  numerics::QuadratureSpec local = spec;
  local.breakpoints = gapless_momenta(params);
  const double integral = numerics::integrate(
      [&](double p) { return dispersion(params, p) * w(p); }, 0.0, pi, local);
  return -integral / (2.0 * pi);
}

NNCorrelations thermal_correlations(const ModelParams& params, double temperature,
                                    const numerics::QuadratureSpec& spec) {
  return nn_correlations(correlation_sums(params, thermal_weight(params, temperature), spec));
}

namespace {

// Mode sums over one parity sector, with T = prod tanh^2(beta eps / 2) kept
// in log space.
struct SectorModes {
  double log_cosh_sq = 0.0;
  double log_tanh_sq = 0.0;
  std::vector<double> energies;
  std::vector<double> half_beta_energies;
};

SectorModes paired_modes(const ModelParams& params, double beta, int length, Sector sector) {
  SectorModes modes;
  const int count = sector == Sector::even ? length / 2 : length / 2 - 1;
  for (int k = 1; k <= count; ++k) {
    const double p = sector == Sector::even ? pi * (2 * k - 1) / length : 2.0 * pi * k / length;
    const double e = dispersion(params, p);
    const double x = 0.5 * beta * e;
    modes.energies.push_back(e);
    modes.half_beta_energies.push_back(x);
    modes.log_cosh_sq += 2.0 * log_cosh(x);
    modes.log_tanh_sq += 2.0 * log_tanh(x);
  }
  return modes;
}

// sum eps [tanh(x) / den + coth(x) * mix / den]; eps coth(x) -> 2T as eps -> 0
// where mix vanishes as well.
double mode_energy_sum(const SectorModes& modes, double mix, double den) {
  double sum = 0.0;
  for (std::size_t i = 0; i < modes.energies.size(); ++i) {
    const double e = modes.energies[i];
    const double x = modes.half_beta_energies[i];
    double term = e * std::tanh(x) / den;
    if (mix != 0.0 && x > 0.0) term += e / std::tanh(x) * mix / den;
    sum += term;
  }
  return sum;
}

}  // namespace

double finite_energy_thermal(const ModelParams& params, double temperature, int length) {
  params.validate();
  if (length < 4 || length % 2 != 0) {
    throw std::invalid_argument("chain length must be even and at least 4");
  }
  if (temperature == 0.0) throw std::invalid_argument("use sector ground-state minimum");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  const double beta = 1.0 / temperature;
  const double h = params.h;
  const double L = static_cast<double>(length);

  // Even fermion number: antiperiodic momenta, all modes paired.
  const SectorModes even = paired_modes(params, beta, length, Sector::even);
  const double t_even = std::exp(even.log_tanh_sq);
  const double log_z_even = (L - 1.0) * std::numbers::ln2 + even.log_cosh_sq + std::log1p(t_even);
  const double energy_even = -mode_energy_sum(even, t_even, 1.0 + t_even);

  // Odd fermion number: periodic momenta; q = 0 and q = pi are unpaired with
  // signed energies 2(h - 1) and 2(h + 1). Their combined factor is
  // C+- = cosh(A + B) +- cosh(A - B) with A = beta (1 + h), B = beta (1 - h).
  const SectorModes odd = paired_modes(params, beta, length, Sector::odd);
  const double t_odd = std::exp(odd.log_tanh_sq);
  const double a = beta * (1.0 + h);
  const double b = beta * (1.0 - h);
  const double ratio = std::tanh(a) * std::tanh(b);  // C- / C+
  const double mix = ratio * t_odd;
  const double den = 1.0 + mix;
  const double log_c_plus = std::numbers::ln2 + log_cosh(a) + log_cosh(b);
  const double log_z_odd =
      (L - 2.0) * std::numbers::ln2 + odd.log_cosh_sq + log_c_plus + std::log1p(mix);
  const double unpaired_plus = (1.0 + h) * std::tanh(a) + (1.0 - h) * std::tanh(b);
  const double unpaired_minus = (1.0 + h) * std::tanh(b) + (1.0 - h) * std::tanh(a);
  const double energy_odd =
      -((unpaired_plus + unpaired_minus * t_odd) / den + mode_energy_sum(odd, mix, den));

  const double odd_fraction = 1.0 / (1.0 + std::exp(log_z_even - log_z_odd));
  return energy_even * (1.0 - odd_fraction) + energy_odd * odd_fraction;
}

double finite_ground_energy(const ModelParams& params, int length) {
  params.validate();
  if (length < 4 || length % 2 != 0) {
    throw std::invalid_argument("chain length must be even and at least 4");
  }
  double even = 0.0;
  for (double p : momentum_grid(length, Sector::even).momenta) even -= 0.5 * dispersion(params, p);
  // Paired odd-sector modes in their vacuum plus one fermion in the q = 0 mode.
  double odd = -2.0;
  for (double q : momentum_grid(length, Sector::odd).momenta) {
    if (q != 0.0 && q != pi) odd -= 0.5 * dispersion(params, q);
  }
  return std::min(even, odd);
}

}  // namespace xyent
