#pragma once

// Stationary states after a global quench (gamma0, h0) -> (gamma, h) from the
// pre-quench ground state: mode occupations, the generalized Gibbs weight
// |cos Delta_p|, postquench energy and the analytic field window in which the
// energy witness detects the stationary state.

#include <limits>
#include <vector>

#include "xyent/numerics.hpp"
#include "xyent/spectrum.hpp"
#include "xyent/thermal.hpp"

namespace xyent {

struct QuenchParams {
  ModelParams initial;  // gamma0, h0
  ModelParams final;    // gamma, h

  static QuenchParams fields(double gamma, double h0, double h) {
    return {{gamma, h0}, {gamma, h}};
  }
  void validate() const;
};

/// Scenarios for gamma0 = gamma = 0, where H0 and H commute.
enum class XXMode {
  isolated,             ///< the initial state never changes
  gamma_to_zero_limit,  ///< relaxes to the ground state of the final H
};

double cos_delta(const QuenchParams& qp, double p);
double occupation(const QuenchParams& qp, double p);

/// eps / (2 artanh|cos Delta|) given the mode energy and cos Delta; 0 when
/// |cos Delta| = 1 and +infinity when cos Delta = 0.
double effective_temperature(double mode_energy, double cos_delta_value);
double effective_temperature(const QuenchParams& qp, double p);

/// Momenta in (0, pi) where cos Delta_p changes sign.
std::vector<double> cos_delta_nodes(const QuenchParams& qp);

/// -(1/4pi) int eps(p) cos Delta_p dp.
double postquench_energy_density(const QuenchParams& qp,
                                 const numerics::QuadratureSpec& spec = {});

OccupationWeight gge_weight(const QuenchParams& qp);

/// Correlation sums with tanh(eps/2T) replaced by |cos Delta_p|. Rejects the
/// commuting case gamma0 = gamma = 0; see xx_quench_correlations.
NNCorrelations gge_correlations(const QuenchParams& qp, const numerics::QuadratureSpec& spec = {});

/// XX-chain (gamma = 0) ground-state correlations at the field selected by the
/// mode: h0 when isolated, h in the gamma -> 0+ limit.
NNCorrelations xx_quench_correlations(double h0, double h, XXMode mode);

/// Dispatches between gge_correlations and xx_quench_correlations.
NNCorrelations stationary_correlations(const QuenchParams& qp, XXMode mode,
                                       const numerics::QuadratureSpec& spec = {});
double stationary_energy_density(const QuenchParams& qp, XXMode mode,
                                 const numerics::QuadratureSpec& spec = {});

struct BoundaryIntegrals {
  double i1 = 0.0;
  double i2 = 0.0;
};

/// Postquench energy for gamma0 = gamma equals -h I1 - I2.
BoundaryIntegrals boundary_integrals(double h0, double gamma,
                                     const numerics::QuadratureSpec& spec = {});

struct DetectionInterval {
  enum class Branch { quadratic, linear, empty };

  double lower = 0.0;
  double upper = 0.0;
  Branch branch = Branch::empty;

  bool empty() const { return branch == Branch::empty; }
  bool contains(double h) const { return !empty() && lower < h && h < upper; }
};

/// Open interval of postquench fields h for which the energy witness detects
/// the stationary state of the quench h0 -> h at fixed gamma.
DetectionInterval energy_detection_bounds(double h0, double gamma,
                                          const numerics::QuadratureSpec& spec = {});

}  // namespace xyent
