#include "xyent/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

namespace xyent::numerics {

namespace {

constexpr int kRuleOrder = 15;

struct GaussLegendreRule {
  std::array<double, kRuleOrder> nodes{};
  std::array<double, kRuleOrder> weights{};
};

// Nodes are the roots of P_15, found by Newton iteration from the Chebyshev
// initial guesses.
GaussLegendreRule make_rule() {
  GaussLegendreRule rule;
  constexpr int n = kRuleOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-17) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * derivative * derivative);
  }
  return rule;
}

const GaussLegendreRule& rule() {
  static const GaussLegendreRule instance = make_rule();
  return instance;
}

struct PanelSum {
  double value;
  double magnitude;  // integral of |f|, for the roundoff floor
};

PanelSum gauss_legendre(const RealFunction& f, double a, double b) {
  const auto& r = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  double mag = 0.0;
  for (int i = 0; i < kRuleOrder; ++i) {
    const double v = r.weights[i] * f(mid + half * r.nodes[i]);
    sum += v;
    mag += std::abs(v);
  }
  return {sum * half, mag * std::abs(half)};
}

struct Panel {
  double a;
  double b;
  PanelSum left;
  PanelSum right;
  double error;

  double value() const { return left.value + right.value; }
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel refine(const RealFunction& f, double a, double b, const PanelSum& whole) {
  const double m = 0.5 * (a + b);
  Panel p{a, b, gauss_legendre(f, a, m), gauss_legendre(f, m, b), 0.0};
  const double mag = p.left.magnitude + p.right.magnitude;
  p.error = std::abs(whole.value - p.value());
  if (p.error <= 50.0 * std::numeric_limits<double>::epsilon() * mag) p.error = 0.0;
  return p;
}

}  // namespace

QuadratureError::QuadratureError(double estimate, double residual)
    : std::runtime_error("quadrature subdivision budget exhausted"),
      estimate_(estimate),
      residual_(residual) {}

double integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (a == b) return 0.0;
  if (!(a < b)) return -integrate(f, b, a, spec);

  std::vector<double> cuts{a};
  for (double x : spec.breakpoints) {
    if (!(x > a && x < b)) {
      throw std::invalid_argument("breakpoint outside the integration interval");
    }
    cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = refine(f, cuts[i], cuts[i + 1], gauss_legendre(f, cuts[i], cuts[i + 1]));
    total += p.value();
    error += p.error;
    panels.push(p);
  }

  int subdivisions = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions) throw QuadratureError(total, error);
    Panel worst = panels.top();
    panels.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) throw QuadratureError(total, error);
    Panel lhs = refine(f, worst.a, m, worst.left);
    Panel rhs = refine(f, m, worst.b, worst.right);
    total += lhs.value() + rhs.value() - worst.value();
    error += lhs.error + rhs.error - worst.error;
    panels.push(lhs);
    panels.push(rhs);
    ++subdivisions;
    // The running sums drift; recompute them exactly now and then.
    if (subdivisions % 64 == 0) {
      auto copy = panels;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value();
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

double bisect(const RealFunction& f, const RootBracket& bracket) {
  if (!(bracket.lower < bracket.upper) || !(bracket.f_tol > 0.0) || !(bracket.x_tol > 0.0)) {
    throw BracketError();
  }
  double lo = bracket.lower;
  double hi = bracket.upper;
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || std::signbit(flo) == std::signbit(fhi)) {
    throw BracketError();
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) return mid;
    const double fmid = f(mid);
    if (std::abs(fmid) <= bracket.f_tol || hi - lo <= bracket.x_tol) return mid;
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

namespace {

// Centered second moments of y = log c, u = log L, v = L. The residual of the
// best intercept for slopes (a, k) is the quadratic form below.
struct Moments {
  double yy = 0, uu = 0, vv = 0, yu = 0, yv = 0, uv = 0;
  double mean_y = 0, mean_u = 0, mean_v = 0;

  double residual(double a, double k) const {
    return yy + a * a * uu + k * k * vv + 2.0 * a * yu + 2.0 * k * yv + 2.0 * a * k * uv;
  }
};

struct GridBest {
  double a;
  double k;
  double residual;
};

GridBest scan(const Moments& m, double a_lo, double a_hi, double a_step, double k_lo,
              double k_hi, double k_step) {
  GridBest best{a_lo, k_lo, std::numeric_limits<double>::infinity()};
  const int na = static_cast<int>(std::llround((a_hi - a_lo) / a_step));
  const int nk = static_cast<int>(std::llround((k_hi - k_lo) / k_step));
  for (int i = 0; i <= na; ++i) {
    const double a = a_lo + i * a_step;
    for (int j = 0; j <= nk; ++j) {
      const double k = k_lo + j * k_step;
      const double r = m.residual(a, k);
      if (r < best.residual) best = {a, k, r};
    }
  }
  return best;
}

}  // namespace

DecayFit fit_decay(std::span<const DecaySample> samples) {
  if (samples.size() < 5) throw std::invalid_argument("fit_decay needs at least 5 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].correction > 0.0) || !std::isfinite(samples[i].correction)) {
      throw InvalidSampleError();
    }
    if (samples[i].length <= 0 || (i > 0 && samples[i].length <= samples[i - 1].length)) {
      throw std::invalid_argument("sample lengths must be positive and strictly increasing");
    }
  }

  const double n = static_cast<double>(samples.size());
  Moments m;
  for (const auto& s : samples) {
    m.mean_y += std::log(s.correction) / n;
    m.mean_u += std::log(static_cast<double>(s.length)) / n;
    m.mean_v += static_cast<double>(s.length) / n;
  }
  for (const auto& s : samples) {
    const double y = std::log(s.correction) - m.mean_y;
    const double u = std::log(static_cast<double>(s.length)) - m.mean_u;
    const double v = static_cast<double>(s.length) - m.mean_v;
    m.yy += y * y;
    m.uu += u * u;
    m.vv += v * v;
    m.yu += y * u;
    m.yv += y * v;
    m.uv += u * v;
  }

  constexpr double a_max = 2.0;
  constexpr double k_max = 1.0;
  double a_step = 0.01;
  double k_step = 1e-4;
  GridBest best = scan(m, 0.0, a_max, a_step, 0.0, k_max, k_step);
  for (int round = 0; round < 3; ++round) {
    const double a_lo = std::max(0.0, best.a - a_step);
    const double a_hi = std::min(a_max, best.a + a_step);
    const double k_lo = std::max(0.0, best.k - k_step);
    const double k_hi = std::min(k_max, best.k + k_step);
    a_step /= 10.0;
    k_step /= 10.0;
    const GridBest local = scan(m, a_lo, a_hi, a_step, k_lo, k_hi, k_step);
    if (local.residual <= best.residual) best = local;
  }

  // Polish with the stationary point of the quadratic form when it is feasible.
  const double det = m.uu * m.vv - m.uv * m.uv;
  if (std::abs(det) > 1e-300) {
    const double a = (-m.yu * m.vv + m.yv * m.uv) / det;
    const double k = (-m.yv * m.uu + m.yu * m.uv) / det;
    if (a >= 0.0 && a <= a_max && k >= 0.0 && k <= k_max) {
      const double r = m.residual(a, k);
      if (r <= best.residual) best = {a, k, r};
    }
  }

  DecayFit fit;
  fit.exponent = best.a;
  fit.inverse_length = best.k;
  fit.decay_length = best.k > 0.0 ? 1.0 / best.k : std::numeric_limits<double>::infinity();
  fit.amplitude = std::exp(m.mean_y + best.a * m.mean_u + best.k * m.mean_v);
  fit.residual = std::max(0.0, best.residual);
  return fit;
}

}  // namespace xyent::numerics
