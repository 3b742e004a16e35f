// xyent: entanglement detection in the XY chain from the command line.
//
// Exit codes: 0 success, 1 numerical or tolerance failure, 2 usage error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "output.hpp"
#include "xyent/bounds.hpp"
#include "xyent/oracle.hpp"
#include "xyent/quench.hpp"
#include "xyent/thermal.hpp"
#include "xyent/witness.hpp"

using namespace xyent;
using namespace xyent::cli;

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;

// Bad user input detected after parsing; maps to the usage exit code.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised after output was written when a check did not meet its tolerance.
struct ToleranceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string status_name(BoundStatus s) {
  switch (s) {
    case BoundStatus::positive: return "positive";
    case BoundStatus::zero: return "zero";
    case BoundStatus::undetected_at_zero: return "undetected_at_zero";
  }
  return "unknown";
}

std::string branch_name(DetectionInterval::Branch b) {
  switch (b) {
    case DetectionInterval::Branch::quadratic: return "quadratic";
    case DetectionInterval::Branch::linear: return "linear";
    case DetectionInterval::Branch::empty: return "empty";
  }
  return "unknown";
}

ModelParams checked_params(double gamma, double h) {
  const ModelParams p{gamma, h};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

int checked_threads(int threads) {
  if (threads < 1) throw UsageError("--threads must be at least 1");
  return threads;
}

// Append the witness part of a detection record to a flat record.
void append_detection(Record& r, const DetectionRecord& d) {
  r.push_back({"energy_witness", d.energy_witness});
  r.push_back({"mu1", d.mu1});
  r.push_back({"mu2", d.mu2});
  r.push_back({"negativity", d.negativity});
  r.push_back({"energy_detected", d.energy_detected});
  r.push_back({"neg_mu1_detected", d.neg_mu1_detected});
  r.push_back({"neg_mu2_detected", d.neg_mu2_detected});
  r.push_back({"mu2_branch", d.mu2_branch});
}

void append_correlations(Record& r, const NNCorrelations& c) {
  r.push_back({"xx", c.xx});
  r.push_back({"yy", c.yy});
  r.push_back({"zz", c.zz});
  r.push_back({"z", c.z});
}

// A single record rendered as a one-row table.
Table single_row(std::string command, Record parameters, const Record& record) {
  Table t;
  t.command = std::move(command);
  t.parameters = std::move(parameters);
  std::vector<Value> row;
  for (const auto& f : record) {
    t.columns.push_back(f.key);
    row.push_back(f.value);
  }
  t.add_row(std::move(row));
  return t;
}

// Runs body(k) for k in [0, n) on the requested number of workers.
template <class Body>
void parallel_for(std::size_t n, int threads, Body body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) body(k);
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
}

struct DispersionArgs {
  double gamma = 1.0, h = 0.0;
  int points = 0, length = 0;
  std::string sector = "even";
};

Table run_dispersion(const DispersionArgs& a) {
  const ModelParams p = checked_params(a.gamma, a.h);
  Table t;
  t.command = "dispersion";
  t.parameters = {{"gamma", a.gamma}, {"h", a.h}};
  t.columns = {"p", "epsilon"};
  if (a.length > 0) {
    if (a.points > 0) throw UsageError("--points and --L are mutually exclusive");
    if (a.sector != "even" && a.sector != "odd") throw UsageError("--sector must be even or odd");
    MomentumGrid grid;
    try {
      grid = momentum_grid(a.length, a.sector == "even" ? Sector::even : Sector::odd);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    t.parameters.push_back({"L", static_cast<long long>(a.length)});
    t.parameters.push_back({"sector", a.sector});
    for (double q : grid.momenta) t.add_row({q, dispersion(p, q)});
    return t;
  }
  const int n = a.points > 0 ? a.points : 101;
  if (n < 2) throw UsageError("--points must be at least 2");
  t.parameters.push_back({"points", static_cast<long long>(n)});
  for (int k = 0; k < n; ++k) {
    const double q = -std::numbers::pi + 2.0 * std::numbers::pi * k / (n - 1);
    t.add_row({q, dispersion(p, q)});
  }
  return t;
}

struct ThermalArgs {
  double gamma = 1.0, h = 0.0, temperature = 0.0;
};

Table run_thermal(const ThermalArgs& a) {
  const ModelParams p = checked_params(a.gamma, a.h);
  if (!(a.temperature >= 0.0)) throw UsageError("--T must be non-negative");
  const auto sums = correlation_sums(p, thermal_weight(p, a.temperature));
  const auto corr = nn_correlations(sums);
  const double energy = energy_density_thermal(p, a.temperature);
  Record r{{"gamma", a.gamma}, {"h", a.h}, {"T", a.temperature}, {"energy_density", energy},
           {"separable_energy", separable_energy_density(p)}, {"gc", sums.gc}, {"gs", sums.gs},
           {"g0", sums.g0}};
  append_correlations(r, corr);
  append_detection(r, make_detection_record(p, energy, corr));
  return single_row("thermal", {{"gamma", a.gamma}, {"h", a.h}, {"T", a.temperature}}, r);
}

struct TempBoundArgs {
  std::string witness = "energy";
  double gamma = 1.0, h_min = 0.0, h_max = 2.0;
  int points = 41, length = 0, threads = 1;
};

Table run_temp_bound(const TempBoundArgs& a) {
  checked_params(a.gamma, a.h_min);
  checked_params(a.gamma, a.h_max);
  if (a.witness != "energy" && a.witness != "negativity") {
    throw UsageError("--witness must be energy or negativity");
  }
  if (a.points < 1) throw UsageError("--points must be at least 1");
  if (a.h_max < a.h_min) throw UsageError("--h-max must not be below --h-min");
  if (a.length != 0) {
    if (a.length < 4 || a.length % 2 != 0) throw UsageError("--L must be even and at least 4");
    if (a.witness == "negativity" && a.length > oracle::kMaxLength) {
      throw UsageError("negativity bounds on finite chains need --L <= 12");
    }
  }
  const int threads = checked_threads(a.threads);

  const auto n = static_cast<std::size_t>(a.points);
  std::vector<double> fields(n);
  for (std::size_t k = 0; k < n; ++k) {
    fields[k] = n == 1 ? a.h_min : a.h_min + (a.h_max - a.h_min) * static_cast<double>(k) / (n - 1);
  }
  std::vector<TemperatureBound> bounds(n);
  std::vector<std::string> errors(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const ModelParams p{a.gamma, fields[k]};
    try {
      if (a.witness == "energy") {
        bounds[k] = a.length ? temperature_bound_energy_finite(p, a.length) : temperature_bound_energy(p);
      } else {
        bounds[k] = a.length ? temperature_bound_negativity_finite(p, a.length)
                             : temperature_bound_negativity(p);
      }
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });

  Table t;
  t.command = "temp-bound";
  t.parameters = {{"witness", a.witness}, {"gamma", a.gamma}, {"h_min", a.h_min},
                  {"h_max", a.h_max}, {"points", static_cast<long long>(n)},
                  {"L", static_cast<long long>(a.length)}};
  t.columns = {"h", "T_bound", "status"};
  for (std::size_t k = 0; k < n; ++k) {
    if (!errors[k].empty()) {
      t.add_row({fields[k], std::nan(""), "error: " + errors[k]});
    } else {
      t.add_row({fields[k], bounds[k].value, status_name(bounds[k].status)});
    }
  }
  return t;
}

struct FiniteSizeArgs {
  double gamma = 1.0, h = 1.0;
  std::vector<int> lengths;
  int l_min = 0, l_max = 0, l_step = 0;
};

Table run_finite_size(const FiniteSizeArgs& a) {
  const ModelParams p = checked_params(a.gamma, a.h);
  std::vector<int> lengths = a.lengths;
  if (lengths.empty()) {
    if (a.l_min <= 0 || a.l_max < a.l_min || a.l_step <= 0) {
      throw UsageError("give --L or a range with --L-min, --L-max and --L-step");
    }
    for (int L = a.l_min; L <= a.l_max; L += a.l_step) lengths.push_back(L);
  }
  for (int L : lengths) {
    if (L < 4 || L % 2 != 0) throw UsageError("chain lengths must be even and at least 4");
  }
  if (!std::is_sorted(lengths.begin(), lengths.end()) ||
      std::adjacent_find(lengths.begin(), lengths.end()) != lengths.end()) {
    throw UsageError("chain lengths must be strictly increasing");
  }
  if (lengths.size() < 5) throw UsageError("the fit needs at least 5 chain lengths");

  const FiniteSizeStudy study = finite_size_study(p, lengths);
  Table t;
  t.command = "finite-size";
  t.parameters = {{"gamma", a.gamma}, {"h", a.h}};
  t.columns = {"L", "T_E_L", "delta_T_E"};
  for (const auto& pt : study.points) t.add_row({static_cast<long long>(pt.length), pt.bound, pt.correction});
  t.summary = {{"T_E", study.infinite_bound},    {"A", study.fit.amplitude},
               {"a", study.fit.exponent},         {"L0", study.fit.decay_length},
               {"residual", study.fit.residual}};
  return t;
}

struct QuenchArgs {
  double gamma0 = 1.0, h0 = 0.0, gamma = 1.0, h = 0.0;
  std::string xx_mode = "limit";
};

XXMode parse_xx_mode(const std::string& s) {
  if (s == "limit") return XXMode::gamma_to_zero_limit;
  if (s == "isolated") return XXMode::isolated;
  throw UsageError("--xx-mode must be limit or isolated");
}

Table run_quench(const QuenchArgs& a) {
  const QuenchParams qp{checked_params(a.gamma0, a.h0), checked_params(a.gamma, a.h)};
  const XXMode mode = parse_xx_mode(a.xx_mode);
  const RegionCell cell = classify_quench(qp, mode);
  const double energy = stationary_energy_density(qp, mode);
  Record r{{"gamma0", a.gamma0},
           {"h0", a.h0},
           {"gamma", a.gamma},
           {"h", a.h},
           {"energy_density", energy},
           {"separable_energy", separable_energy_density(qp.final)}};
  append_correlations(r, stationary_correlations(qp, mode));
  append_detection(r, cell.record);
  // The analytic window only exists for quenches at fixed anisotropy.
  if (a.gamma0 == a.gamma && a.gamma > 0.0) {
    const auto w = energy_detection_bounds(a.h0, a.gamma);
    r.push_back({"interval_lower", w.empty() ? std::nan("") : w.lower});
    r.push_back({"interval_upper", w.empty() ? std::nan("") : w.upper});
    r.push_back({"interval_branch", branch_name(w.branch)});
  } else {
    r.push_back({"interval_lower", std::nan("")});
    r.push_back({"interval_upper", std::nan("")});
    r.push_back({"interval_branch", "not_applicable"});
  }
  return single_row("quench",
                    {{"gamma0", a.gamma0}, {"h0", a.h0}, {"gamma", a.gamma}, {"h", a.h},
                     {"xx_mode", a.xx_mode}},
                    r);
}

struct RegionArgs {
  double gamma = 1.0, h0_min = 0.0, h0_max = 2.0, h_min = 0.0, h_max = 2.0;
  int resolution = 201, threads = 1;
  std::string xx_mode = "limit";
};

Table run_quench_region(const RegionArgs& a) {
  checked_params(a.gamma, 0.0);
  const XXMode mode = parse_xx_mode(a.xx_mode);
  const int threads = checked_threads(a.threads);
  if (a.resolution < 2) throw UsageError("--resolution must be at least 2");
  if (!(a.h0_min >= 0.0 && a.h0_max > a.h0_min && a.h_min >= 0.0 && a.h_max > a.h_min)) {
    throw UsageError("field ranges must be non-negative and non-empty");
  }
  const RegionMap map = quench_region_map(a.gamma, {a.h0_min, a.h0_max}, {a.h_min, a.h_max},
                                          a.resolution, threads, mode);
  Table t;
  t.command = "quench-region";
  t.parameters = {{"gamma", a.gamma},   {"h0_min", a.h0_min},
                  {"h0_max", a.h0_max}, {"h_min", a.h_min},
                  {"h_max", a.h_max},   {"resolution", static_cast<long long>(a.resolution)},
                  {"xx_mode", a.xx_mode}};
  t.columns = {"h0", "h", "energy_witness", "mu1", "mu2", "negativity",
               "energy_flag", "neg_mu1_flag", "neg_mu2_flag", "status"};
  long long yellow = 0, failed = 0;
  for (const auto& c : map.cells) {
    t.add_row({c.h0, c.h, c.record.energy_witness, c.record.mu1, c.record.mu2, c.record.negativity,
               c.energy(), c.neg_mu1(), c.neg_mu2(), c.status});
    yellow += c.energy();
    failed += c.status != "ok";
  }
  t.summary = {{"energy_cells", yellow},
               {"energy_components", static_cast<long long>(energy_components(map).size())},
               {"failed_cells", failed}};
  return t;
}

struct OracleArgs {
  double gamma = 1.0, h = 1.0, temperature = 1.0;
  int length = 8;
  double energy_tol = 1e-9, pt_tol = 1e-10;
};

Table run_oracle_check(const OracleArgs& a, bool& passed) {
  const ModelParams p = checked_params(a.gamma, a.h);
  if (a.length < oracle::kMinLength || a.length > oracle::kMaxLength || a.length % 2 != 0) {
    throw UsageError("--L must be even with 4 <= L <= 12");
  }
  if (!(a.temperature > 0.0)) throw UsageError("--T must be positive");

  const oracle::ThermalEnsemble ens(p, a.length);
  const double e_ed = ens.energy(a.temperature);
  const double e_ff = finite_energy_thermal(p, a.temperature, a.length);
  const auto rho = ens.two_site(a.temperature);
  const NNCorrelations corr = oracle::correlations_from_two_qubit(rho);
  // Translation invariance makes the energy per site a bond expectation.
  const double e_bond = energy_density_from_correlations(p, corr);
  const double pt_ed = oracle::ed_pt_eigenvalues(rho)[0];
  const double pt_closed = pt_eigen(corr).min();

  const double d_energy = std::abs(e_ff - e_ed);
  const double d_bond = std::abs(e_bond - e_ed / a.length);
  const double d_pt = std::abs(pt_ed - pt_closed);
  passed = d_energy <= a.energy_tol && d_bond <= a.energy_tol && d_pt <= a.pt_tol;

  Record r{{"L", static_cast<long long>(a.length)},
           {"energy_fermion", e_ff},
           {"energy_ed", e_ed},
           {"energy_deviation", d_energy},
           {"bond_energy_density", e_bond},
           {"bond_energy_deviation", d_bond}};
  append_correlations(r, corr);
  r.push_back({"pt_min_ed", pt_ed});
  r.push_back({"pt_min_closed_form", pt_closed});
  r.push_back({"pt_deviation", d_pt});
  r.push_back({"max_deviation", std::max({d_energy, d_bond, d_pt})});
  r.push_back({"passed", passed});
  return single_row("oracle-check",
                    {{"gamma", a.gamma}, {"h", a.h}, {"T", a.temperature},
                     {"L", static_cast<long long>(a.length)}, {"energy_tol", a.energy_tol},
                     {"pt_tol", a.pt_tol}},
                    r);
}

int default_precision() {
  if (const char* env = std::getenv("XYENT_PRECISION")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      return -1;  // reported as a usage error below
    }
  }
  return 12;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement witnesses for thermal and postquench states of the XY chain"};
  // --h is the transverse field, so help is reachable only as --help.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();

  OutputSpec out;
  out.precision = default_precision();
  std::string format = "csv";
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", out.path, "Write to this file instead of standard output");
  app.add_option("--precision", out.precision, "Significant digits, 6 to 17 (env XYENT_PRECISION)");

  DispersionArgs disp;
  auto* c_disp = app.add_subcommand("dispersion", "Mode energies eps(p)");
  c_disp->add_option("--gamma", disp.gamma, "Anisotropy")->required();
  c_disp->add_option("--h", disp.h, "Transverse field")->required();
  c_disp->add_option("--points", disp.points, "Uniform samples of [-pi, pi] (default 101)");
  c_disp->add_option("--L", disp.length, "Exact momenta of a periodic chain of this length");
  c_disp->add_option("--sector", disp.sector, "Parity sector for --L: even or odd");

  ThermalArgs th;
  auto* c_th = app.add_subcommand("thermal", "Thermal correlations and witness values");
  c_th->add_option("--gamma", th.gamma)->required();
  c_th->add_option("--h", th.h)->required();
  c_th->add_option("--T", th.temperature, "Temperature (0 for the ground state)");

  TempBoundArgs tb;
  auto* c_tb = app.add_subcommand("temp-bound", "Temperature bound below which a witness detects entanglement");
  c_tb->add_option("--witness", tb.witness, "energy or negativity");
  c_tb->add_option("--gamma", tb.gamma)->required();
  c_tb->add_option("--h-min", tb.h_min);
  c_tb->add_option("--h-max", tb.h_max);
  c_tb->add_option("--points", tb.points);
  c_tb->add_option("--L", tb.length, "Finite periodic chain (0 for the thermodynamic limit)");
  c_tb->add_option("--threads", tb.threads);

  FiniteSizeArgs fs;
  auto* c_fs = app.add_subcommand("finite-size", "Finite-size corrections of T_E and their decay fit");
  c_fs->add_option("--gamma", fs.gamma)->required();
  c_fs->add_option("--h", fs.h)->required();
  c_fs->add_option("--L", fs.lengths, "Comma-separated chain lengths")->delimiter(',');
  c_fs->add_option("--L-min", fs.l_min);
  c_fs->add_option("--L-max", fs.l_max);
  c_fs->add_option("--L-step", fs.l_step);

  QuenchArgs qa;
  auto* c_q = app.add_subcommand("quench", "Stationary state after a quench (gamma0, h0) -> (gamma, h)");
  c_q->add_option("--gamma0", qa.gamma0)->required();
  c_q->add_option("--h0", qa.h0)->required();
  c_q->add_option("--gamma", qa.gamma)->required();
  c_q->add_option("--h", qa.h)->required();
  c_q->add_option("--xx-mode", qa.xx_mode, "gamma0 = gamma = 0 only: limit or isolated");

  RegionArgs ra;
  auto* c_r = app.add_subcommand("quench-region", "Detection flags on an (h0, h) grid at fixed gamma");
  c_r->add_option("--gamma", ra.gamma)->required();
  c_r->add_option("--h0-min", ra.h0_min);
  c_r->add_option("--h0-max", ra.h0_max);
  c_r->add_option("--h-min", ra.h_min);
  c_r->add_option("--h-max", ra.h_max);
  c_r->add_option("--resolution", ra.resolution, "Grid points per axis");
  c_r->add_option("--threads", ra.threads);
  c_r->add_option("--xx-mode", ra.xx_mode);

  OracleArgs oa;
  auto* c_o = app.add_subcommand("oracle-check", "Compare the fermion formulas with exact diagonalization");
  c_o->add_option("--gamma", oa.gamma)->required();
  c_o->add_option("--h", oa.h)->required();
  c_o->add_option("--T", oa.temperature)->required();
  c_o->add_option("--L", oa.length);
  c_o->add_option("--energy-tol", oa.energy_tol);
  c_o->add_option("--pt-tol", oa.pt_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (out.precision < 6 || out.precision > 17) throw UsageError("precision must lie in [6, 17]");
    out.format = format == "json" ? Format::json : Format::csv;

    Table table;
    bool passed = true;
    if (*c_disp) table = run_dispersion(disp);
    else if (*c_th) table = run_thermal(th);
    else if (*c_tb) table = run_temp_bound(tb);
    else if (*c_fs) table = run_finite_size(fs);
    else if (*c_q) table = run_quench(qa);
    else if (*c_r) table = run_quench_region(ra);
    else if (*c_o) table = run_oracle_check(oa, passed);

    if (out.path.empty()) {
      write_table(std::cout, table, out);
    } else {
      std::ofstream file(out.path);
      if (!file) throw std::runtime_error("cannot open " + out.path);
      write_table(file, table, out);
    }
    if (!passed) throw ToleranceFailure("oracle deviation above tolerance");
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitTolerance;
  }
}
