#pragma once

// Thermal averages of the XY chain: mode occupation weights, the correlation
// sums g_c, g_s, g_0, nearest-neighbor correlations and the energy, both in the
// thermodynamic limit and for finite periodic chains.

#include <functional>
#include <vector>

#include "xyent/numerics.hpp"
#include "xyent/spectrum.hpp"

namespace xyent {

/// Mode weight w(p) in [0, 1], even in p. It replaces tanh(eps / 2T) in the
/// correlation sums; a postquench stationary state uses |cos Delta_p|.
struct OccupationWeight {
  enum class Source { thermal, quench, unit };

  Source source = Source::unit;
  std::function<double(double)> value;
  /// Momenta in (0, pi) where w has kinks.
  std::vector<double> breakpoints;

  double operator()(double p) const { return value(p); }
};

OccupationWeight unit_weight();

/// tanh(eps(p) / 2T); at T = 0 the limit w = 1 everywhere.
OccupationWeight thermal_weight(const ModelParams& params, double temperature);

struct CorrelationSums {
  double gc = 0.0;
  double gs = 0.0;
  double g0 = 0.0;
};

/// <sx sx>, <sy sy>, <sz sz> on a nearest-neighbor bond and <sz>.
struct NNCorrelations {
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;
  double z = 0.0;
};

CorrelationSums correlation_sums(const ModelParams& params, const OccupationWeight& weight,
                                 const numerics::QuadratureSpec& spec = {});

NNCorrelations nn_correlations(const CorrelationSums& sums);

/// -(1+gamma)/2 xx - (1-gamma)/2 yy - h z.
double energy_density_from_correlations(const ModelParams& params, const NNCorrelations& corr);

/// -(1/4pi) int eps(p) tanh(eps(p)/2T) dp; T = 0 gives the ground state.
double energy_density_thermal(const ModelParams& params, double temperature,
                              const numerics::QuadratureSpec& spec = {});

/// Thermal correlations in the thermodynamic limit.
NNCorrelations thermal_correlations(const ModelParams& params, double temperature,
                                    const numerics::QuadratureSpec& spec = {});

/// Exact thermal energy (total, not per site) of the periodic chain of even
/// length L >= 4, from the two fermion-parity sectors. Requires T > 0.
double finite_energy_thermal(const ModelParams& params, double temperature, int length);

/// Lowest energy over both parity sectors of the periodic chain.
double finite_ground_energy(const ModelParams& params, int length);

}  // namespace xyent
