#pragma once

// XY chain model parameters, free-fermion dispersion and Bogoliubov angle,
// and the momentum quantization of periodic chains.
//
// Continuum convention used throughout: (2/L) sum_p F(p) -> (1/pi) int_{-pi}^{pi} F(p) dp.

#include <stdexcept>
#include <vector>

#include "xyent/numerics.hpp"

namespace xyent {

/// H = -sum_l [(1+gamma)/2 sx sx + (1-gamma)/2 sy sy] - h sum_l sz, periodic.
struct ModelParams {
  double gamma = 1.0;
  double h = 0.0;

  /// Throws std::invalid_argument unless 0 <= gamma <= 1 and h >= 0.
  void validate() const;
};

class GaplessModeError : public std::domain_error {
 public:
  GaplessModeError() : std::domain_error("gapless mode") {}
};

enum class Sector { even, odd };

struct MomentumGrid {
  Sector sector;
  int length;
  std::vector<double> momenta;  // ascending
};

double dispersion(const ModelParams& params, double p);

struct BogoliubovAngle {
  double cos;
  double sin;
};

/// Unit vector with tan(theta) = -gamma sin p / (h - cos p), branch fixed by
/// atan2(-gamma sin p, h - cos p).
BogoliubovAngle bogoliubov_angle(const ModelParams& params, double p);

/// Even parity: p = +-pi (2m - 1) / L. Odd parity: q = 0, pi, +-2 pi n / L.
MomentumGrid momentum_grid(int length, Sector sector);

/// Momenta in (0, pi) where the dispersion vanishes. Used as quadrature
/// breakpoints; p = 0 (h = 1) is an endpoint of [0, pi] and is not listed.
std::vector<double> gapless_momenta(const ModelParams& params);

double ground_energy_density(const ModelParams& params, const numerics::QuadratureSpec& spec = {});

/// Field on the disorder line h^2 + gamma^2 = 1.
double disorder_field(double gamma);

}  // namespace xyent
