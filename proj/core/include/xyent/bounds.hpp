#pragma once

// Detection surfaces built on the witnesses: temperature bounds T_E and T_N
// for infinite and finite chains, the finite-size study of T_E, and region maps
// of postquench states in the (h0, h) plane.

#include <string>
#include <vector>

#include "xyent/numerics.hpp"
#include "xyent/quench.hpp"
#include "xyent/spectrum.hpp"
#include "xyent/witness.hpp"

namespace xyent {

enum class BoundStatus {
  positive,
  zero,                ///< the T = 0 witness value is zero within the threshold
  undetected_at_zero,  ///< the T = 0 state is not detected at all
};

struct TemperatureBound {
  double value = 0.0;
  BoundStatus status = BoundStatus::zero;
};

struct BoundOptions {
  numerics::QuadratureSpec quadrature{};
  double x_tol = 1e-13;
  double f_tol = 1e-15;
  /// The upper bracket starts at 1 + gamma + h and doubles at most this often.
  int max_doublings = 10;
  /// Samples used to locate the last sign change of non-monotone witnesses.
  int scan_points = 48;
};

TemperatureBound temperature_bound_energy(const ModelParams& params, const BoundOptions& opts = {});
TemperatureBound temperature_bound_negativity(const ModelParams& params,
                                              const BoundOptions& opts = {});

/// Per-site energy witness of the periodic chain from the parity-sector
/// partition functions; any even L >= 4.
TemperatureBound temperature_bound_energy_finite(const ModelParams& params, int length,
                                                 const BoundOptions& opts = {});

/// Minimal partial-transpose eigenvalue of the exactly diagonalized chain;
/// 4 <= L <= 12.
TemperatureBound temperature_bound_negativity_finite(const ModelParams& params, int length,
                                                     const BoundOptions& opts = {});

/// Tolerances tight enough to resolve corrections down to ~1e-12.
BoundOptions precise_bound_options();

struct FiniteSizePoint {
  int length;
  double bound;
  double correction;
};

struct FiniteSizeStudy {
  double infinite_bound = 0.0;
  std::vector<FiniteSizePoint> points;
  numerics::DecayFit fit;
};

/// T_E(L) - T_E for each L, fitted to A L^-a exp(-L/L0).
FiniteSizeStudy finite_size_study(const ModelParams& params, const std::vector<int>& lengths,
                                  const BoundOptions& opts = precise_bound_options());

struct RegionCell {
  double h0 = 0.0;
  double h = 0.0;
  DetectionRecord record;
  /// "ok", or the error message of a failed evaluation.
  std::string status = "ok";

  bool energy() const { return record.energy_detected; }
  bool neg_mu1() const { return record.neg_mu1_detected; }
  bool neg_mu2() const { return record.neg_mu2_detected; }
};

/// Quench (gamma, h0) -> (gamma, h) with gamma0 = gamma; see the QuenchParams
/// overload for general quenches.
RegionCell classify_quench(const QuenchParams& qp, XXMode mode = XXMode::gamma_to_zero_limit,
                           const numerics::QuadratureSpec& spec = {});

struct FieldRange {
  double lower = 0.0;
  double upper = 2.0;
};

struct RegionMap {
  double gamma = 1.0;
  std::vector<double> h0_values;
  std::vector<double> h_values;
  /// Row-major: cells[i * h_values.size() + j] is (h0_values[i], h_values[j]).
  std::vector<RegionCell> cells;

  const RegionCell& at(std::size_t i, std::size_t j) const { return cells[i * h_values.size() + j]; }
};

/// resolution x resolution grid including both range endpoints. Cells are
/// evaluated on `threads` workers; the result does not depend on the count.
RegionMap quench_region_map(double gamma, FieldRange h0_range, FieldRange h_range,
                            int resolution = 201, int threads = 1,
                            XXMode mode = XXMode::gamma_to_zero_limit);

enum class Connectivity { edges, edges_and_corners };

/// Connected components of the energy-detected cells, each a list of (i, j)
/// grid indices. Corner adjacency keeps bands thinner than a grid cell (the
/// ferromagnetic diagonal) in one piece.
std::vector<std::vector<std::pair<int, int>>> energy_components(
    const RegionMap& map, Connectivity connectivity = Connectivity::edges_and_corners);

}  // namespace xyent
