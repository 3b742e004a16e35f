#pragma once

// Exact diagonalization of small periodic XY chains in the spin basis. This
// module is the independent reference for the free-fermion code and never
// calls it.
//
// Basis convention: bit l of a basis index is 1 when spin l points down, so
// sz_l = 1 - 2 b_l. Two-site states use |uu> = 0, |ud> = 1, |du> = 2, |dd> = 3
// with the first site as the high bit.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "xyent/spectrum.hpp"
#include "xyent/thermal.hpp"

namespace xyent::oracle {

inline constexpr int kMinLength = 4;
inline constexpr int kMaxLength = 12;

using DenseOperator = Eigen::MatrixXd;
using TwoQubitMatrix = Eigen::Matrix4d;

DenseOperator build_hamiltonian(const ModelParams& params, int length);

/// Full eigendecomposition. The Hamiltonian conserves the spin-flip parity
/// prod_l sz_l, so each parity block is solved separately.
struct Eigensystem {
  int length = 0;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // columns, full 2^L basis
  std::vector<int> parity;   // +1 / -1 per eigenvector
};

Eigensystem diagonalize(const DenseOperator& hamiltonian, int length);

/// exp(-H/T)/Z, shifted by the ground energy before exponentiation.
Eigen::MatrixXd thermal_density(const Eigensystem& system, double temperature);
Eigen::MatrixXd thermal_density(const DenseOperator& hamiltonian, int length, double temperature);

/// Lowest eigenvector in the even spin-flip parity block, the sector holding
/// the fermionic vacuum.
Eigen::VectorXd even_ground_state(const Eigensystem& system);

/// Eigenvalue groups of H (consecutive levels closer than tol).
std::vector<std::pair<int, int>> degenerate_groups(const Eigensystem& system, double tol = 1e-10);

/// Infinite-time average of |psi><psi| evolved by H: sum_g P_g |psi><psi| P_g.
Eigen::MatrixXd diagonal_ensemble(const Eigen::VectorXd& initial, const Eigensystem& system,
                                  double tol = 1e-10);

/// Two-site reduction of the diagonal ensemble without forming the full matrix.
TwoQubitMatrix diagonal_ensemble_two_site(const Eigen::VectorXd& initial,
                                          const Eigensystem& system, int site_a, int site_b,
                                          double tol = 1e-10);

TwoQubitMatrix reduce_two_qubit(const Eigen::MatrixXd& rho, int length, int site_a, int site_b);
TwoQubitMatrix reduce_two_qubit_pure(const Eigen::VectorXd& psi, int length, int site_a,
                                     int site_b);

/// Eigenvalues (ascending) of the partial transpose on the first site.
std::array<double, 4> ed_pt_eigenvalues(const TwoQubitMatrix& rho);

/// Correlations read off a two-site state; z is the average of both sites.
NNCorrelations correlations_from_two_qubit(const TwoQubitMatrix& rho);

double expectation(const Eigen::MatrixXd& rho, const DenseOperator& op);

/// Thermal ensemble of one chain with per-eigenstate nearest-neighbor
/// reductions cached, so that temperature sweeps cost O(2^L) per point.
class ThermalEnsemble {
 public:
  ThermalEnsemble(const ModelParams& params, int length);

  int length() const { return system_.length; }
  const Eigensystem& eigensystem() const { return system_; }

  double energy(double temperature) const;
  /// Sites (0, 1). T = 0 averages the degenerate ground multiplet.
  TwoQubitMatrix two_site(double temperature) const;

 private:
  Eigen::VectorXd weights(double temperature) const;

  Eigensystem system_;
  std::vector<TwoQubitMatrix> bond_states_;
};

}  // namespace xyent::oracle
