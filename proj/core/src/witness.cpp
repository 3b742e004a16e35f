#include "xyent/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xyent {

double separable_energy_density(const ModelParams& params) {
  const double g1 = 1.0 + params.gamma;
  if (params.h <= g1) return -(g1 * g1 + params.h * params.h) / (2.0 * g1);
  return -params.h;
}

double energy_witness_density(const ModelParams& params, double energy_density) {
  return energy_density - separable_energy_density(params);
}

NNCorrelations TwoQubitState::correlations() const {
  return {2.0 * (rho14 + rho23), 2.0 * (rho23 - rho14), rho11 + rho44 - 2.0 * rho22,
          rho11 - rho44};
}

TwoQubitState two_qubit_from_correlations(const NNCorrelations& c) {
  TwoQubitState s;
  s.rho22 = 0.25 * (1.0 - c.zz);
  s.rho14 = 0.25 * (c.xx - c.yy);
  s.rho23 = 0.25 * (c.xx + c.yy);
  s.rho11 = 0.25 * (1.0 + c.zz) + 0.5 * c.z;
  s.rho44 = 0.25 * (1.0 + c.zz) - 0.5 * c.z;

  constexpr double tol = 1e-10;
  const bool psd = s.rho11 >= -tol && s.rho22 >= -tol && s.rho44 >= -tol &&
                   s.rho11 * s.rho44 - s.rho14 * s.rho14 >= -tol &&
                   s.rho22 - std::abs(s.rho23) >= -tol;
  if (!psd) throw InconsistentCorrelationsError();
  return s;
}

PTEigenvalues pt_eigen(const NNCorrelations& c) {
  PTEigenvalues e;
  // xx - yy = 4 rho14 >= 0 for every XY state; the modulus keeps mu2 the
  // lower eigenvalue of its block for any state of the symmetry class.
  e.mu2 = 0.25 * (1.0 - c.zz) - 0.25 * std::abs(c.xx - c.yy);
  e.mu1 = 0.25 * (c.zz + 1.0) - 0.25 * std::hypot(2.0 * c.z, c.xx + c.yy);
  return e;
}

double negativity(const PTEigenvalues& eig) { return 2.0 * std::max(0.0, -eig.min()); }

double witness_family_expectation(const TwoQubitState& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixing parameter must lie in [0, 1]");
  return p * s.rho11 + (1.0 - p) * s.rho44 - 2.0 * std::sqrt(p * (1.0 - p)) * s.rho23;
}

WitnessFamilyMinimum min_witness_family(const TwoQubitState& s) {
  // Quadratic form of [[rho11, -rho23], [-rho23, rho44]] on (sqrt p, sqrt(1-p)).
  const double d = 0.5 * (s.rho11 - s.rho44);
  const double c = s.rho23;
  if (c <= 0.0) {
    // No coupling favors mixing: the minimum sits on a diagonal element.
    return s.rho11 < s.rho44 ? WitnessFamilyMinimum{1.0, s.rho11}
                              : WitnessFamilyMinimum{0.0, s.rho44};
  }
  const double r = std::hypot(d, c);
  WitnessFamilyMinimum out;
  out.p = std::clamp(0.5 * (1.0 - d / r), 0.0, 1.0);
  out.value = 0.5 * (s.rho11 + s.rho44) - r;
  return out;
}

DetectionRecord make_detection_record(const ModelParams& params, double energy_density,
                                      const NNCorrelations& corr) {
  DetectionRecord r;
  r.energy_witness = energy_witness_density(params, energy_density);
  const PTEigenvalues e = pt_eigen(corr);
  r.mu1 = e.mu1;
  r.mu2 = e.mu2;
  r.negativity = negativity(e);
  r.energy_detected = is_detected(r.energy_witness);
  r.neg_mu1_detected = is_detected(e.mu1);
  r.neg_mu2_detected = is_detected(e.mu2);
  r.mu2_branch = e.mu1 > e.mu2;
  return r;
}

}  // namespace xyent
