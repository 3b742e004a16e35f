#include "xyent/bounds.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "xyent/oracle.hpp"
#include "xyent/thermal.hpp"

namespace xyent {

namespace {

using WitnessOfTemperature = std::function<double(double)>;

TemperatureBound classify_ground(double ground_value) {
  if (ground_value > detection_threshold) return {0.0, BoundStatus::undetected_at_zero};
  return {0.0, BoundStatus::zero};
}

double upper_bracket(const WitnessOfTemperature& witness, const ModelParams& params,
                     const BoundOptions& opts) {
  double hi = 1.0 + params.gamma + params.h;
  for (int k = 0; witness(hi) <= 0.0; ++k) {
    if (k >= opts.max_doublings) throw std::runtime_error("temperature bracket expansion failed");
    hi *= 2.0;
  }
  return hi;
}

// Witness values increase with T for the energy: bisect on [0, hi] directly.
TemperatureBound monotone_bound(const WitnessOfTemperature& witness, const ModelParams& params,
                                const BoundOptions& opts) {
  const double ground = witness(0.0);
  if (!is_detected(ground)) return classify_ground(ground);
  const double hi = upper_bracket(witness, params, opts);
  const double t = numerics::bisect(witness, {0.0, hi, opts.f_tol, opts.x_tol});
  return {t, BoundStatus::positive};
}

// Monotonicity in T is not guaranteed for partial-transpose eigenvalues: scan
// downward from the positive end and bisect the last sign change.
TemperatureBound scanned_bound(const WitnessOfTemperature& witness, const ModelParams& params,
                               const BoundOptions& opts) {
  const double ground = witness(0.0);
  if (!is_detected(ground)) return classify_ground(ground);
  const double hi = upper_bracket(witness, params, opts);
  const int n = std::max(2, opts.scan_points);
  double upper = hi;
  double lower = 0.0;
  for (int k = n - 1; k >= 1; --k) {
    const double t = hi * k / n;
    if (witness(t) <= 0.0) {
      lower = t;
      break;
    }
    upper = t;
  }
  const double t = numerics::bisect(witness, {lower, upper, opts.f_tol, opts.x_tol});
  return {t, BoundStatus::positive};
}

}  // namespace

BoundOptions precise_bound_options() {
  BoundOptions opts;
  opts.quadrature.rel_tol = 1e-15;
  opts.quadrature.abs_tol = 1e-16;
  opts.quadrature.max_subdivisions = 20000;
  opts.x_tol = 1e-15;
  opts.f_tol = 1e-18;
  return opts;
}

TemperatureBound temperature_bound_energy(const ModelParams& params, const BoundOptions& opts) {
  params.validate();
  const double separable = separable_energy_density(params);
  return monotone_bound(
      [&](double t) { return energy_density_thermal(params, t, opts.quadrature) - separable; },
      params, opts);
}

TemperatureBound temperature_bound_negativity(const ModelParams& params, const BoundOptions& opts) {
  params.validate();
  return scanned_bound(
      [&](double t) { return pt_eigen(thermal_correlations(params, t, opts.quadrature)).min(); },
      params, opts);
}

TemperatureBound temperature_bound_energy_finite(const ModelParams& params, int length,
                                                 const BoundOptions& opts) {
  params.validate();
  const double separable = separable_energy_density(params);
  const double sites = static_cast<double>(length);
  const double ground = finite_ground_energy(params, length) / sites - separable;
  return monotone_bound(
      [&](double t) {
        if (t == 0.0) return ground;
        return finite_energy_thermal(params, t, length) / sites - separable;
      },
      params, opts);
}

TemperatureBound temperature_bound_negativity_finite(const ModelParams& params, int length,
                                                     const BoundOptions& opts) {
  params.validate();
  if (length > oracle::kMaxLength) {
    throw std::invalid_argument("finite-chain negativity bound supports L <= 12");
  }
  const oracle::ThermalEnsemble ensemble(params, length);
  return scanned_bound(
      [&](double t) { return oracle::ed_pt_eigenvalues(ensemble.two_site(t))[0]; }, params, opts);
}

FiniteSizeStudy finite_size_study(const ModelParams& params, const std::vector<int>& lengths,
                                  const BoundOptions& opts) {
  FiniteSizeStudy study;
  const TemperatureBound infinite = temperature_bound_energy(params, opts);
  if (infinite.status != BoundStatus::positive) {
    throw std::invalid_argument("finite-size study needs a positive thermodynamic bound");
  }
  study.infinite_bound = infinite.value;
  std::vector<numerics::DecaySample> samples;
  for (int length : lengths) {
    const TemperatureBound finite = temperature_bound_energy_finite(params, length, opts);
    const double correction = finite.value - infinite.value;
    study.points.push_back({length, finite.value, correction});
    samples.push_back({length, correction});
  }
  study.fit = numerics::fit_decay(samples);
  return study;
}

RegionCell classify_quench(const QuenchParams& qp, XXMode mode, const numerics::QuadratureSpec& spec) {
  RegionCell cell;
  cell.h0 = qp.initial.h;
  cell.h = qp.final.h;
  const double energy = stationary_energy_density(qp, mode, spec);
  const NNCorrelations corr = stationary_correlations(qp, mode, spec);
  cell.record = make_detection_record(qp.final, energy, corr);
  return cell;
}

RegionMap quench_region_map(double gamma, FieldRange h0_range, FieldRange h_range, int resolution,
                            int threads, XXMode mode) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  if (!(h0_range.lower >= 0.0 && h0_range.upper > h0_range.lower) ||
      !(h_range.lower >= 0.0 && h_range.upper > h_range.lower)) {
    throw std::invalid_argument("field ranges must be non-negative and non-empty");
  }
  ModelParams{gamma, 0.0}.validate();

  RegionMap map;
  map.gamma = gamma;
  const auto axis = [resolution](FieldRange r) {
    std::vector<double> values(static_cast<std::size_t>(resolution));
    for (int k = 0; k < resolution; ++k) {
      values[static_cast<std::size_t>(k)] =
          r.lower + (r.upper - r.lower) * static_cast<double>(k) / (resolution - 1);
    }
    return values;
  };
  map.h0_values = axis(h0_range);
  map.h_values = axis(h_range);
  const std::size_t n = map.h_values.size();
  map.cells.resize(map.h0_values.size() * n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < map.cells.size(); idx = next++) {
      const double h0 = map.h0_values[idx / n];
      const double h = map.h_values[idx % n];
      try {
        map.cells[idx] = classify_quench(QuenchParams::fields(gamma, h0, h), mode);
      } catch (const std::exception& e) {
        RegionCell failed;
        failed.h0 = h0;
        failed.h = h;
        failed.status = e.what();
        map.cells[idx] = failed;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < std::max(1, threads); ++t) pool.emplace_back(worker);
  worker();
  return map;
}

std::vector<std::vector<std::pair<int, int>>> energy_components(const RegionMap& map,
                                                                Connectivity connectivity) {
  const int rows = static_cast<int>(map.h0_values.size());
  const int cols = static_cast<int>(map.h_values.size());
  std::vector<int> label(map.cells.size(), -1);
  std::vector<std::vector<std::pair<int, int>>> components;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const std::size_t start = static_cast<std::size_t>(i * cols + j);
      if (label[start] >= 0 || !map.cells[start].energy()) continue;
      const int id = static_cast<int>(components.size());
      components.emplace_back();
      std::vector<std::pair<int, int>> stack{{i, j}};
      label[start] = id;
      while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        components[static_cast<std::size_t>(id)].emplace_back(a, b);
        constexpr int di[] = {1, -1, 0, 0, 1, 1, -1, -1};
        constexpr int dj[] = {0, 0, 1, -1, 1, -1, 1, -1};
        const int neighbors = connectivity == Connectivity::edges ? 4 : 8;
        for (int k = 0; k < neighbors; ++k) {
          const int x = a + di[k];
          const int y = b + dj[k];
          if (x < 0 || y < 0 || x >= rows || y >= cols) continue;
          const std::size_t idx = static_cast<std::size_t>(x * cols + y);
          if (label[idx] >= 0 || !map.cells[idx].energy()) continue;
          label[idx] = id;
          stack.emplace_back(x, y);
        }
      }
    }
  }
  return components;
}

}  // namespace xyent
