#pragma once

// Entanglement witnesses for the nearest-neighbor state: the energy witness
// H - E_sep, the partial-transpose eigenvalues of the symmetric two-qubit
// density matrix and the one-parameter witness family built on them.

#include "xyent/spectrum.hpp"
#include "xyent/thermal.hpp"

namespace xyent {

/// Values below -detection_threshold count as detected.
inline constexpr double detection_threshold = 1e-10;

inline bool is_detected(double witness_value) { return witness_value < -detection_threshold; }

/// Minimum energy per site over product states.
double separable_energy_density(const ModelParams& params);

/// energy_density - E_sep / L; negative certifies entanglement.
double energy_witness_density(const ModelParams& params, double energy_density);

/// Nearest-neighbor density matrix in the basis |uu>, |ud>, |du>, |dd> with
/// rho33 = rho22, rho41 = rho14 and rho32 = rho23.
struct TwoQubitState {
  double rho11 = 0.25;
  double rho14 = 0.0;
  double rho22 = 0.25;
  double rho23 = 0.0;
  double rho44 = 0.25;

  NNCorrelations correlations() const;
};

class InconsistentCorrelationsError : public std::domain_error {
 public:
  InconsistentCorrelationsError() : std::domain_error("inconsistent correlations") {}
};

TwoQubitState two_qubit_from_correlations(const NNCorrelations& corr);

/// Lowest eigenvalues of the {1,4} block (mu1) and the {2,3} block (mu2) of the
/// partial transpose.
struct PTEigenvalues {
  double mu1 = 0.0;
  double mu2 = 0.0;

  double min() const { return mu1 < mu2 ? mu1 : mu2; }
};

PTEigenvalues pt_eigen(const NNCorrelations& corr);

double negativity(const PTEigenvalues& eig);

/// <Psi_p| rho^T_A |Psi_p> with |Psi_p> = sqrt(p)|uu> - sqrt(1-p)|dd>.
double witness_family_expectation(const TwoQubitState& state, double p);

struct WitnessFamilyMinimum {
  double p = 0.5;
  double value = 0.0;
};

/// Closed-form minimum of the witness family over p in [0, 1].
WitnessFamilyMinimum min_witness_family(const TwoQubitState& state);

struct DetectionRecord {
  double energy_witness = 0.0;  // per site
  double mu1 = 0.0;
  double mu2 = 0.0;
  double negativity = 0.0;
  bool energy_detected = false;
  bool neg_mu1_detected = false;
  bool neg_mu2_detected = false;
  /// True when mu1 > mu2, i.e. the single witness W_N already yields the
  /// minimal partial-transpose eigenvalue.
  bool mu2_branch = false;
};

DetectionRecord make_detection_record(const ModelParams& params, double energy_density,
                                      const NNCorrelations& corr);

}  // namespace xyent
