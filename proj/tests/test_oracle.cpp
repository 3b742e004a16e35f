#include "doctest.h"

#include <cmath>
#include <random>

#include "xyent/oracle.hpp"
#include "xyent/witness.hpp"

using namespace xyent;
using namespace xyent::oracle;

namespace {

// Global spin-flip parity prod_l sz_l as a diagonal operator.
Eigen::VectorXd parity_diagonal(int length) {
  Eigen::VectorXd d(1 << length);
  for (int s = 0; s < (1 << length); ++s) d[s] = (__builtin_popcount(s) % 2 == 0) ? 1.0 : -1.0;
  return d;
}

TwoQubitMatrix bell_phi_plus() {
  TwoQubitMatrix rho = TwoQubitMatrix::Zero();
  rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
  return rho;
}

}  // namespace

TEST_CASE("Hamiltonian structure") {
  const auto h = build_hamiltonian({0.4, 0.9}, 6);
  CHECK(h.rows() == 64);
  CHECK(std::abs(h.trace()) < 1e-12);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd par = parity_diagonal(6);
  const Eigen::MatrixXd comm = par.asDiagonal() * h - h * par.asDiagonal();
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(build_hamiltonian({1.0, 0.0}, 14), std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian({1.0, 0.0}, 5), std::invalid_argument);
}

TEST_CASE("ground energies of limiting chains") {
  const auto ising = diagonalize(build_hamiltonian({1.0, 0.0}, 4), 4);
  CHECK(ising.energies[0] == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(ising.energies[1] == doctest::Approx(-4.0).epsilon(1e-12));
  const double h = 200.0;
  const auto polar = diagonalize(build_hamiltonian({1.0, h}, 4), 4);
  // second-order shift: each bond contributes -1/(4h) from the double flip
  CHECK(polar.energies[0] == doctest::Approx(-4.0 * h - 1.0 / h).epsilon(1e-6));
}

TEST_CASE("eigensystem consistency") {
  const auto h = build_hamiltonian({0.3, 0.6}, 8);
  const auto sys = diagonalize(h, 8);
  const Eigen::MatrixXd& v = sys.vectors;
  CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(256, 256)).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((h * v - v * sys.energies.asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
  for (int k = 1; k < 256; ++k) CHECK(sys.energies[k] >= sys.energies[k - 1]);
  const Eigen::VectorXd par = parity_diagonal(8);
  for (int k = 0; k < 256; k += 17) {
    CHECK((par.asDiagonal() * v.col(k) - sys.parity[k] * v.col(k)).norm() < 1e-12);
  }
}

TEST_CASE("thermal density matrices") {
  const auto sys = diagonalize(build_hamiltonian({0.5, 0.5}, 6), 6);
  const auto rho = thermal_density(sys, 0.8);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
  const auto hot = thermal_density(sys, 1e12);
  CHECK((hot - Eigen::MatrixXd::Identity(64, 64) / 64.0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(thermal_density(sys, -1.0), std::invalid_argument);
}

TEST_CASE("thermal ensemble matches the dense route") {
  const ModelParams p{0.7, 1.3};
  const auto h = build_hamiltonian(p, 8);
  const auto rho = thermal_density(h, 8, 1.7);
  ThermalEnsemble ens(p, 8);
  CHECK(ens.energy(1.7) == doctest::Approx(expectation(rho, h)).epsilon(1e-12));
  CHECK((ens.two_site(1.7) - reduce_two_qubit(rho, 8, 0, 1)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("reductions are translation invariant and keep the symmetry pattern") {
  const auto h = build_hamiltonian({0.6, 0.4}, 8);
  const auto rho = thermal_density(h, 8, 0.5);
  const auto r01 = reduce_two_qubit(rho, 8, 0, 1);
  CHECK(r01.trace() == doctest::Approx(1.0).epsilon(1e-12));
  for (int l = 1; l < 8; ++l) {
    CHECK((reduce_two_qubit(rho, 8, l, (l + 1) % 8) - r01).cwiseAbs().maxCoeff() < 1e-12);
  }
  // zero outside the {11, 14, 22, 23, 32, 33, 41, 44} pattern
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 0}, {2, 0}, {3, 1}, {3, 2}}) {
    CHECK(std::abs(r01(i, j)) < 1e-12);
  }
  CHECK(std::abs(r01(1, 1) - r01(2, 2)) < 1e-12);
  CHECK(r01.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > -1e-12);

  // the closed form of the symmetry class reproduces the ED reduction
  const NNCorrelations c = correlations_from_two_qubit(r01);
  const TwoQubitState s = two_qubit_from_correlations(c);
  CHECK(std::abs(s.rho11 - r01(0, 0)) < 1e-10);
  CHECK(std::abs(s.rho44 - r01(3, 3)) < 1e-10);
  CHECK(std::abs(s.rho22 - r01(1, 1)) < 1e-10);
  CHECK(std::abs(s.rho14 - r01(0, 3)) < 1e-10);
  CHECK(std::abs(s.rho23 - r01(1, 2)) < 1e-10);
}

TEST_CASE("pure-state reduction") {
  Eigen::VectorXd up = Eigen::VectorXd::Zero(1 << 6);
  up[0] = 1.0;
  const auto r = reduce_two_qubit_pure(up, 6, 2, 3);
  CHECK(r(0, 0) == 1.0);
  CHECK(r.cwiseAbs().sum() == 1.0);

  const auto sys = diagonalize(build_hamiltonian({1.0, 0.8}, 8), 8);
  const Eigen::VectorXd psi = even_ground_state(sys);
  const auto dense = reduce_two_qubit(psi * psi.transpose(), 8, 0, 1);
  CHECK((reduce_two_qubit_pure(psi, 8, 0, 1) - dense).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("partial-transpose spectra") {
  const auto bell = ed_pt_eigenvalues(bell_phi_plus());
  CHECK(bell[0] == doctest::Approx(-0.5));
  for (int k = 1; k < 4; ++k) CHECK(bell[k] == doctest::Approx(0.5));

  TwoQubitMatrix prod = TwoQubitMatrix::Zero();
  prod(0, 0) = 0.36;
  prod(1, 1) = prod(2, 2) = 0.24;
  prod(3, 3) = 0.16;
  for (double e : ed_pt_eigenvalues(prod)) CHECK(e >= -1e-15);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double l1 = u(rng), l2 = u(rng), a = 2 * u(rng) - 1, b = 2 * u(rng) - 1;
    TwoQubitState s;
    const double norm = 2 * l1 + 2 * l2;
    s.rho11 = l1 * (1 + a) / norm;
    s.rho44 = l1 * (1 - a) / norm;
    s.rho14 = std::sqrt(s.rho11 * s.rho44) * (2 * u(rng) - 1);
    s.rho22 = l2 / norm;
    s.rho23 = s.rho22 * b;
    TwoQubitMatrix m = TwoQubitMatrix::Zero();
    m(0, 0) = s.rho11;
    m(3, 3) = s.rho44;
    m(1, 1) = m(2, 2) = s.rho22;
    m(0, 3) = m(3, 0) = s.rho14;
    m(1, 2) = m(2, 1) = s.rho23;
    CHECK(std::abs(ed_pt_eigenvalues(m)[0] - pt_eigen(s.correlations()).min()) < 1e-12);
  }
}

TEST_CASE("diagonal ensemble of a unique ground state") {
  const auto sys = diagonalize(build_hamiltonian({0.5, 1.6}, 6), 6);
  const Eigen::VectorXd psi = sys.vectors.col(0);
  const auto rho = diagonal_ensemble(psi, sys);
  CHECK((rho - psi * psi.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(degenerate_groups(sys).front() == std::pair{0, 1});
}
