#include "xyent/spectrum.hpp"

#include <cmath>
#include <numbers>

namespace xyent {

using std::numbers::pi;

void ModelParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (!(h >= 0.0) || !std::isfinite(h)) throw std::invalid_argument("h must be a finite value >= 0");
}

double dispersion(const ModelParams& params, double p) {
  const double a = params.gamma * std::sin(p);
  const double b = params.h - std::cos(p);
  return 2.0 * std::hypot(a, b);
}

BogoliubovAngle bogoliubov_angle(const ModelParams& params, double p) {
  const double y = -params.gamma * std::sin(p);
  const double x = params.h - std::cos(p);
  const double r = std::hypot(x, y);
  if (r == 0.0) throw GaplessModeError();
  return {x / r, y / r};
}

MomentumGrid momentum_grid(int length, Sector sector) {
  if (length < 4 || length % 2 != 0) {
    throw std::invalid_argument("chain length must be even and at least 4");
  }
  MomentumGrid grid{sector, length, {}};
  grid.momenta.reserve(length);
  const double L = static_cast<double>(length);
  if (sector == Sector::even) {
    for (int m = length / 2; m >= 1; --m) grid.momenta.push_back(-pi * (2 * m - 1) / L);
    for (int m = 1; m <= length / 2; ++m) grid.momenta.push_back(pi * (2 * m - 1) / L);
  } else {
    for (int n = length / 2 - 1; n >= 1; --n) grid.momenta.push_back(-2.0 * pi * n / L);
    grid.momenta.push_back(0.0);
    for (int n = 1; n <= length / 2 - 1; ++n) grid.momenta.push_back(2.0 * pi * n / L);
    grid.momenta.push_back(pi);
  }
  return grid;
}

std::vector<double> gapless_momenta(const ModelParams& params) {
  std::vector<double> out;
  if (params.gamma == 0.0 && params.h < 1.0) out.push_back(std::acos(params.h));
  return out;
}

double ground_energy_density(const ModelParams& params, const numerics::QuadratureSpec& spec) {
  numerics::QuadratureSpec local = spec;
  local.breakpoints = gapless_momenta(params);
  // Even integrand: -(1/2pi) int_{-pi}^{pi} eps/2 = -(1/2pi) int_0^pi eps.
  const double integral =
      numerics::integrate([&](double p) { return dispersion(params, p); }, 0.0, pi, local);
  return -integral / (2.0 * pi);
}

double disorder_field(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  return std::sqrt(1.0 - gamma * gamma);
}

}  // namespace xyent
