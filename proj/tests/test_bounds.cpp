#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "xyent/bounds.hpp"
#include "xyent/oracle.hpp"
#include "xyent/thermal.hpp"

using namespace xyent;
using std::numbers::pi;

namespace {

// Bound from the exact-diagonalization energy, independent of the fermion formulas.
double ed_energy_bound(const ModelParams& p, int length) {
  const oracle::ThermalEnsemble ens(p, length);
  const double sep = separable_energy_density(p);
  return numerics::bisect([&](double t) { return ens.energy(t) / length - sep; }, {1e-3, 10.0, 1e-15, 1e-13});
}

}  // namespace

TEST_CASE("disorder line gives zero bounds") {
  for (double g : {0.2, 0.6, 0.8, 1.0}) {
    const ModelParams p{g, disorder_field(g)};
    CHECK(temperature_bound_energy(p).status == BoundStatus::zero);
    CHECK(temperature_bound_negativity(p).status == BoundStatus::zero);
    CHECK(temperature_bound_energy(p).value == 0.0);
  }
  CHECK(temperature_bound_energy_finite({0.6, 0.8}, 8).status == BoundStatus::zero);
  CHECK(temperature_bound_energy_finite({0.6, 0.8}, 200).status == BoundStatus::zero);
}

TEST_CASE("finite disorder-line doublet is weakly entangled") {
  // The T -> 0 state is the projector onto the span of the two product ground
  // states, which are not orthogonal at finite L. Its entanglement fades with L.
  double previous = 1.0;
  for (int L : {4, 6, 8, 10}) {
    const oracle::ThermalEnsemble ens({0.6, 0.8}, L);
    const double mu = oracle::ed_pt_eigenvalues(ens.two_site(0.0))[0];
    CHECK(mu < 0.0);
    CHECK(-mu < previous / 10.0);
    previous = -mu;
  }
  CHECK(temperature_bound_negativity_finite({0.6, 0.8}, 8).status == BoundStatus::positive);
}

TEST_CASE("energy bound vanishes logarithmically at the disorder point") {
  // T_E ~ c / |ln delta| on both sides of h_d; the ground witness is O(delta^2).
  const double g = 0.6;
  const double hd = disorder_field(g);
  for (double sign : {-1.0, 1.0}) {
    double previous = 1.0;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
      const auto b = temperature_bound_energy({g, hd + sign * delta});
      REQUIRE(b.status == BoundStatus::positive);
      const double scaled = b.value * std::abs(std::log(delta));
      CHECK(scaled > 0.15);
      CHECK(scaled < 0.3);
      CHECK(b.value < previous);
      previous = b.value;
    }
  }
}

TEST_CASE("XX chain above saturation is never detected") {
  CHECK(temperature_bound_energy({0.0, 1.5}).status == BoundStatus::zero);
  CHECK(temperature_bound_energy({0.0, 1.0}).status == BoundStatus::zero);
}

TEST_CASE("energy bound brackets the witness zero") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int positive = 0;
  while (positive < 15) {
    const ModelParams p{0.05 + 0.95 * u(rng), 2.0 * u(rng)};
    const auto b = temperature_bound_energy(p);
    if (b.status != BoundStatus::positive) continue;
    ++positive;
    const double sep = separable_energy_density(p);
    CHECK(std::abs(energy_density_thermal(p, b.value) - sep) < 1e-8);
    CHECK(energy_density_thermal(p, b.value / 2) - sep < 0.0);
    CHECK(energy_density_thermal(p, b.value * 2) - sep > 0.0);
  }
}

TEST_CASE("negativity bound brackets the witness zero") {
  for (ModelParams p : {ModelParams{1.0, 1.0}, ModelParams{0.5, 0.4}, ModelParams{0.8, 1.5}}) {
    const auto b = temperature_bound_negativity(p);
    REQUIRE(b.status == BoundStatus::positive);
    CHECK(std::abs(pt_eigen(thermal_correlations(p, b.value)).min()) < 1e-8);
    CHECK(pt_eigen(thermal_correlations(p, b.value / 2)).min() < 0.0);
    CHECK(pt_eigen(thermal_correlations(p, b.value * 2)).min() > 0.0);
  }
}

TEST_CASE("critical Ising bounds") {
  const ModelParams p{1.0, 1.0};
  const double te = temperature_bound_energy(p).value;
  const double tn = temperature_bound_negativity(p).value;
  CHECK(te > 0.0);
  CHECK(tn > te);

  // geometric extrapolation of exact-diagonalization bounds at L = 8, 10, 12
  const double t8 = ed_energy_bound(p, 8), t10 = ed_energy_bound(p, 10), t12 = ed_energy_bound(p, 12);
  const double d1 = t10 - t8, d2 = t12 - t10;
  const double extrapolated = t12 - d2 * d2 / (d2 - d1);
  CHECK(std::abs(extrapolated - te) / te < 0.05);
}

TEST_CASE("finite-chain energy bounds") {
  const ModelParams para{1.0, 1.25};
  const double inf = temperature_bound_energy(para).value;
  CHECK(temperature_bound_energy_finite(para, 4).value > inf);
  CHECK(std::abs(temperature_bound_energy_finite(para, 4096).value - inf) < 1e-6);

  const ModelParams ordered{1.0, 0.5};
  CHECK(std::abs(temperature_bound_energy_finite(ordered, 8).value - ed_energy_bound(ordered, 8)) < 1e-8);

  // monotone approach from above for Ising points
  for (double h : {0.5, 1.0, 1.25}) {
    double prev = 1e9;
    for (int L : {4, 6, 8, 10, 12, 20, 40}) {
      const double t = temperature_bound_energy_finite({1.0, h}, L).value;
      CHECK(t < prev);
      prev = t;
    }
    CHECK(prev > temperature_bound_energy({1.0, h}).value);
  }
}

TEST_CASE("finite-chain negativity bounds") {
  const ModelParams para{1.0, 2.0};
  const double inf = temperature_bound_negativity(para).value;
  CHECK(temperature_bound_negativity_finite(para, 4).value == doctest::Approx(inf).epsilon(0.05));
  CHECK(temperature_bound_negativity_finite({0.6, 0.3}, 6).status == BoundStatus::positive);
  CHECK_THROWS_AS(temperature_bound_negativity_finite(para, 14), std::invalid_argument);
}

TEST_CASE("finite-size study of the paramagnetic Ising chain") {
  std::vector<int> lengths;
  for (int L = 8; L <= 64; L += 4) lengths.push_back(L);
  const auto study = finite_size_study({1.0, 1.25}, lengths);
  CHECK(study.points.size() == lengths.size());
  CHECK(study.fit.decay_length > 2.0);
  CHECK(study.fit.decay_length < 3.5);
  for (const auto& pt : study.points) CHECK(pt.correction > 0.0);
}

TEST_CASE("quench classification") {
  const auto same = classify_quench(QuenchParams::fields(1.0, 0.5, 0.5));
  CHECK(same.energy());
  CHECK((same.neg_mu1() || same.neg_mu2()));

  const auto far = classify_quench(QuenchParams::fields(1.0, 0.0, 2.0));
  CHECK_FALSE(far.energy());
  CHECK(far.record.energy_witness == doctest::Approx(1.0).epsilon(1e-10));

  const auto line = classify_quench(QuenchParams::fields(0.6, 0.8, 0.8));
  CHECK_FALSE(line.energy());
  CHECK_FALSE(line.neg_mu1());
  CHECK_FALSE(line.neg_mu2());
}

TEST_CASE("region map is independent of the thread count") {
  const auto one = quench_region_map(0.8, {0.0, 2.0}, {0.0, 2.0}, 21, 1);
  const auto three = quench_region_map(0.8, {0.0, 2.0}, {0.0, 2.0}, 21, 3);
  REQUIRE(one.cells.size() == 441);
  for (std::size_t k = 0; k < one.cells.size(); ++k) {
    CHECK(one.cells[k].record.energy_witness == three.cells[k].record.energy_witness);
    CHECK(one.cells[k].record.mu1 == three.cells[k].record.mu1);
    CHECK(one.cells[k].status == "ok");
  }
  CHECK(one.at(20, 0).h0 == 2.0);
  CHECK(one.at(20, 0).h == 0.0);
}

TEST_CASE("region-map energy flags follow the analytic interval") {
  const double g = 0.8;
  const auto map = quench_region_map(g, {0.05, 1.95}, {0.05, 1.95}, 31, 1);
  for (std::size_t i = 0; i < map.h0_values.size(); ++i) {
    const auto interval = energy_detection_bounds(map.h0_values[i], g);
    for (std::size_t j = 0; j < map.h_values.size(); ++j) {
      const auto& cell = map.at(i, j);
      if (std::abs(cell.record.energy_witness) < 1e-8) continue;
      CHECK(cell.energy() == interval.contains(map.h_values[j]));
    }
  }
}

TEST_CASE("region map validation and failure capture") {
  CHECK_THROWS_AS(quench_region_map(1.0, {0.0, 2.0}, {0.0, 2.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(quench_region_map(1.0, {1.0, 0.5}, {0.0, 2.0}, 5), std::invalid_argument);
  // gamma = 0 in isolated mode is fine; a bogus gamma is rejected up front
  CHECK_THROWS_AS(quench_region_map(1.5, {0.0, 2.0}, {0.0, 2.0}, 5), std::invalid_argument);
  const auto xx = quench_region_map(0.0, {0.0, 2.0}, {0.0, 2.0}, 5, 1, XXMode::isolated);
  for (const auto& c : xx.cells) CHECK(c.status == "ok");
}

TEST_CASE("energy components") {
  RegionMap map;
  map.h0_values = {0, 1, 2};
  map.h_values = {0, 1, 2};
  map.cells.resize(9);
  auto set = [&](int i, int j) { map.cells[static_cast<std::size_t>(i * 3 + j)].record.energy_detected = true; };
  set(0, 0);
  set(1, 1);
  set(2, 0);
  CHECK(energy_components(map).size() == 1);
  CHECK(energy_components(map, Connectivity::edges).size() == 3);
}
