#include "xyent/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xyent::oracle {

namespace {

void check_length(int length) {
  if (length < kMinLength || length > kMaxLength || length % 2 != 0) {
    throw std::invalid_argument("oracle chain length must be even and within [4, 12]");
  }
}

void check_sites(int length, int site_a, int site_b) {
  if (site_a == site_b || site_a < 0 || site_b < 0 || site_a >= length || site_b >= length) {
    throw std::invalid_argument("two distinct sites inside the chain are required");
  }
}

int parity_of(unsigned state) { return (std::popcount(state) % 2 == 0) ? 1 : -1; }

// Two-site index of a basis state: first site is the high bit.
int pair_index(unsigned state, int site_a, int site_b) {
  return 2 * static_cast<int>((state >> site_a) & 1u) + static_cast<int>((state >> site_b) & 1u);
}

unsigned with_pair(unsigned state, int site_a, int site_b, int index) {
  const unsigned mask = (1u << site_a) | (1u << site_b);
  const unsigned bits = (static_cast<unsigned>(index >> 1) << site_a) |
                        (static_cast<unsigned>(index & 1) << site_b);
  return (state & ~mask) | bits;
}

}  // namespace

DenseOperator build_hamiltonian(const ModelParams& params, int length) {
  params.validate();
  check_length(length);
  const unsigned dim = 1u << length;
  DenseOperator hamiltonian = DenseOperator::Zero(dim, dim);
  for (unsigned s = 0; s < dim; ++s) {
    const int down = std::popcount(s);
    hamiltonian(s, s) = -params.h * (length - 2.0 * down);
    for (int l = 0; l < length; ++l) {
      const int m = (l + 1) % length;
      const unsigned flipped = s ^ ((1u << l) | (1u << m));
      const bool aligned = ((s >> l) & 1u) == ((s >> m) & 1u);
      // -(1+g)/2 sx sx - (1-g)/2 sy sy; sy sy carries -1 on aligned pairs.
      hamiltonian(flipped, s) += aligned ? -params.gamma : -1.0;
    }
  }
  return hamiltonian;
}

Eigensystem diagonalize(const DenseOperator& hamiltonian, int length) {
  check_length(length);
  const Eigen::Index dim = Eigen::Index{1} << length;
  if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
    throw std::invalid_argument("operator dimension does not match the chain length");
  }

  Eigensystem system;
  system.length = length;
  std::vector<double> all_energies;
  std::vector<int> all_parity;
  Eigen::MatrixXd all_vectors(dim, dim);
  Eigen::Index column = 0;
  for (int sector : {1, -1}) {
    std::vector<unsigned> basis;
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
      if (parity_of(s) == sector) basis.push_back(s);
    }
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd block(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) block(i, j) = hamiltonian(basis[i], basis[j]);
    }
    Eigen::VectorXd values(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                           block.data(), static_cast<lapack_int>(n), values.data());
    if (info != 0) throw std::runtime_error("dense eigensolver failed");
    for (Eigen::Index k = 0; k < n; ++k) {
      all_vectors.col(column).setZero();
      for (Eigen::Index i = 0; i < n; ++i) all_vectors(basis[i], column) = block(i, k);
      all_energies.push_back(values(k));
      all_parity.push_back(sector);
      ++column;
    }
  }

  std::vector<Eigen::Index> order(dim);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return all_energies[a] < all_energies[b]; });
  system.energies.resize(dim);
  system.vectors.resize(dim, dim);
  system.parity.resize(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    system.energies(k) = all_energies[order[k]];
    system.vectors.col(k) = all_vectors.col(order[k]);
    system.parity[k] = all_parity[order[k]];
  }
  return system;
}

Eigen::MatrixXd thermal_density(const Eigensystem& system, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  const Eigen::Index dim = system.energies.size();
  if (std::isinf(temperature)) {
    return Eigen::MatrixXd::Identity(dim, dim) / static_cast<double>(dim);
  }
  const double ground = system.energies(0);
  Eigen::VectorXd w = (-(system.energies.array() - ground) / temperature).exp().matrix();
  w /= w.sum();
  return system.vectors * w.asDiagonal() * system.vectors.transpose();
}

Eigen::MatrixXd thermal_density(const DenseOperator& hamiltonian, int length, double temperature) {
  return thermal_density(diagonalize(hamiltonian, length), temperature);
}

Eigen::VectorXd even_ground_state(const Eigensystem& system) {
  for (std::size_t k = 0; k < system.parity.size(); ++k) {
    if (system.parity[k] == 1) return system.vectors.col(static_cast<Eigen::Index>(k));
  }
  throw std::logic_error("no even-parity eigenvector");
}

std::vector<std::pair<int, int>> degenerate_groups(const Eigensystem& system, double tol) {
  std::vector<std::pair<int, int>> groups;
  const int n = static_cast<int>(system.energies.size());
  int start = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == n || system.energies(k) - system.energies(k - 1) > tol) {
      groups.emplace_back(start, k - start);
      start = k;
    }
  }
  return groups;
}

namespace {

// Columns are P_g |psi> for each degenerate group g.
Eigen::MatrixXd group_projections(const Eigen::VectorXd& initial, const Eigensystem& system,
                                  double tol) {
  const auto groups = degenerate_groups(system, tol);
  const Eigen::VectorXd overlaps = system.vectors.transpose() * initial;
  Eigen::MatrixXd projected(initial.size(), static_cast<Eigen::Index>(groups.size()));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto [start, size] = groups[g];
    projected.col(static_cast<Eigen::Index>(g)) =
        system.vectors.middleCols(start, size) * overlaps.segment(start, size);
  }
  return projected;
}

}  // namespace

Eigen::MatrixXd diagonal_ensemble(const Eigen::VectorXd& initial, const Eigensystem& system,
                                  double tol) {
  const Eigen::MatrixXd projected = group_projections(initial, system, tol);
  return projected * projected.transpose();
}

TwoQubitMatrix diagonal_ensemble_two_site(const Eigen::VectorXd& initial,
                                          const Eigensystem& system, int site_a, int site_b,
                                          double tol) {
  const Eigen::MatrixXd projected = group_projections(initial, system, tol);
  TwoQubitMatrix rho = TwoQubitMatrix::Zero();
  for (Eigen::Index g = 0; g < projected.cols(); ++g) {
    rho += reduce_two_qubit_pure(projected.col(g), system.length, site_a, site_b);
  }
  return rho;
}

TwoQubitMatrix reduce_two_qubit(const Eigen::MatrixXd& rho, int length, int site_a, int site_b) {
  check_sites(length, site_a, site_b);
  const unsigned dim = 1u << length;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("density matrix dimension does not match the chain length");
  }
  TwoQubitMatrix out = TwoQubitMatrix::Zero();
  for (unsigned s = 0; s < dim; ++s) {
    const int i = pair_index(s, site_a, site_b);
    for (int j = 0; j < 4; ++j) out(i, j) += rho(s, with_pair(s, site_a, site_b, j));
  }
  return out;
}

TwoQubitMatrix reduce_two_qubit_pure(const Eigen::VectorXd& psi, int length, int site_a,
                                     int site_b) {
  check_sites(length, site_a, site_b);
  const unsigned dim = 1u << length;
  if (psi.size() != dim) throw std::invalid_argument("state dimension does not match the chain length");
  TwoQubitMatrix out = TwoQubitMatrix::Zero();
  for (unsigned s = 0; s < dim; ++s) {
    const double amp = psi(s);
    if (amp == 0.0) continue;
    const int i = pair_index(s, site_a, site_b);
    for (int j = 0; j < 4; ++j) out(i, j) += amp * psi(with_pair(s, site_a, site_b, j));
  }
  return out;
}

std::array<double, 4> ed_pt_eigenvalues(const TwoQubitMatrix& rho) {
  TwoQubitMatrix transposed;
  for (int k = 0; k < 2; ++k)
    for (int m = 0; m < 2; ++m)
      for (int l = 0; l < 2; ++l)
        for (int n = 0; n < 2; ++n) transposed(2 * k + m, 2 * l + n) = rho(2 * l + m, 2 * k + n);
  Eigen::SelfAdjointEigenSolver<TwoQubitMatrix> solver(transposed, Eigen::EigenvaluesOnly);
  const auto& v = solver.eigenvalues();
  return {v(0), v(1), v(2), v(3)};
}

NNCorrelations correlations_from_two_qubit(const TwoQubitMatrix& rho) {
  NNCorrelations c;
  for (int s = 0; s < 4; ++s) {
    const int flipped = s ^ 3;
    const double sign = (s == 0 || s == 3) ? -1.0 : 1.0;
    c.xx += rho(s, flipped);
    c.yy += sign * rho(s, flipped);
  }
  c.zz = rho(0, 0) - rho(1, 1) - rho(2, 2) + rho(3, 3);
  const double za = rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3);
  const double zb = rho(0, 0) - rho(1, 1) + rho(2, 2) - rho(3, 3);
  c.z = 0.5 * (za + zb);
  return c;
}

double expectation(const Eigen::MatrixXd& rho, const DenseOperator& op) {
  return rho.cwiseProduct(op.transpose()).sum();
}

ThermalEnsemble::ThermalEnsemble(const ModelParams& params, int length)
    : system_(diagonalize(build_hamiltonian(params, length), length)) {
  bond_states_.reserve(static_cast<std::size_t>(system_.energies.size()));
  for (Eigen::Index k = 0; k < system_.energies.size(); ++k) {
    bond_states_.push_back(reduce_two_qubit_pure(system_.vectors.col(k), length, 0, 1));
  }
}

Eigen::VectorXd ThermalEnsemble::weights(double temperature) const {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  const Eigen::Index dim = system_.energies.size();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  if (temperature == 0.0) {
    const auto [start, size] = degenerate_groups(system_).front();
    w.segment(start, size).setConstant(1.0 / size);
    return w;
  }
  if (std::isinf(temperature)) return Eigen::VectorXd::Constant(dim, 1.0 / dim);
  const double ground = system_.energies(0);
  w = (-(system_.energies.array() - ground) / temperature).exp().matrix();
  return w / w.sum();
}

double ThermalEnsemble::energy(double temperature) const {
  return weights(temperature).dot(system_.energies);
}

TwoQubitMatrix ThermalEnsemble::two_site(double temperature) const {
  const Eigen::VectorXd w = weights(temperature);
  TwoQubitMatrix rho = TwoQubitMatrix::Zero();
  for (std::size_t k = 0; k < bond_states_.size(); ++k) {
    if (w(static_cast<Eigen::Index>(k)) != 0.0) rho += w(static_cast<Eigen::Index>(k)) * bond_states_[k];
  }
  return rho;
}

}  // namespace xyent::oracle
