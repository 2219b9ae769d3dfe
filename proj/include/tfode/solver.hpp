#pragma once

// Jacobi-predictor-corrector time stepping for single-term tempered
// fractional ODEs
//
//   D^{alpha,lambda} u(t) = f(t, u(t)),  t in (a, b],
//
// in Caputo or Riemann-Liouville form, solved through the equivalent
// Volterra equation
//
//   u(t) = e^{-lambda t} sum_k a_k(t)
//        + 1/Gamma(alpha) int_a^t (t-s)^{alpha-1} e^{-lambda (t-s)} f(s, u(s)) ds.
//
// The memory integral is approximated on [a, t_{n+1}] by a fixed (N+1)-point
// Jacobi-Gauss-Lobatto rule whose weight absorbs the kernel singularity. The
// integrand at the quadrature nodes comes from Lagrange interpolation of the
// stored f-values on N_I neighbouring grid nodes, so each step costs
// O(N * N_I) regardless of how much history has accumulated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tfode/errors.hpp"
#include "tfode/quadrature.hpp"
#include "tfode/specfun.hpp"

namespace tfode {

enum class DerivativeKind { Caputo, RiemannLiouville };

using Rhs = std::function<double(double t, double u)>;
using ExactSolution = std::function<double(double t)>;

struct Problem {
  DerivativeKind kind = DerivativeKind::Caputo;
  double alpha = 0.5;
  double lambda = 0.0;
  double a = 0.0;
  double b = 1.0;
  /// Caputo: c_k = d^k(e^{lambda t} u)/dt^k at a. Riemann-Liouville: g_k.
  std::vector<double> init;
  Rhs rhs;
  ExactSolution exact; ///< optional

  /// Number of initial conditions; alpha = 1 is treated as n = 1.
  std::size_t n() const { return alpha <= 1.0 ? 1 : 2; }
};

inline void validate(const Problem& p) {
  if (!(p.alpha > 0.0 && p.alpha < 2.0))
    throw ConfigError("alpha must lie in (0, 2)");
  if (p.kind == DerivativeKind::RiemannLiouville && p.alpha == 1.0)
    throw ConfigError("Riemann-Liouville problems need a non-integer alpha");
  if (!(p.lambda >= 0.0))
    throw ConfigError("lambda must be >= 0");
  if (!(p.b > p.a))
    throw ConfigError("need b > a");
  if (p.init.size() != p.n())
    throw ConfigError("expected " + std::to_string(p.n()) + " initial value(s), got " +
                      std::to_string(p.init.size()));
  if (!p.rhs)
    throw ConfigError("problem has no right-hand side");
}

/// Which function the memory-integral interpolation is applied to.
enum class InterpolationTarget {
  Tempered, ///< g(s) = e^{lambda s} f(s, u(s)); the tempering factor is applied exactly
  Raw,      ///< f(s, u(s)) itself, tempering factor applied at the quadrature nodes
};

struct SolverConfig {
  std::size_t M = 20;           ///< number of steps; tau = (b - a) / M
  std::size_t N = 20;           ///< Jacobi-Gauss-Lobatto degree
  std::size_t N_I = 3;          ///< interpolation stencil size (design order)
  std::size_t start_refine = 64; ///< substeps per coarse step in the starting procedure
  std::optional<double> split_T0;
  std::size_t N_tilde = 40;     ///< unit-weight Lobatto degree on [a, T0]
  std::size_t corrector_iters = 1;
  bool exact_start = false;     ///< take starting values from Problem::exact
  InterpolationTarget interpolation = InterpolationTarget::Tempered;

  double tau(const Problem& p) const { return (p.b - p.a) / static_cast<double>(M); }
};

inline void validate(const SolverConfig& c) {
  if (c.N_I < 2)
    throw ConfigError("N_I must be >= 2");
  if (c.M < c.N_I)
    throw ConfigError("need M >= N_I");
  if (c.N < c.N_I)
    throw ConfigError("need N >= N_I");
  if (c.start_refine < 1)
    throw ConfigError("start_refine must be >= 1");
  if (c.corrector_iters < 1)
    throw ConfigError("corrector_iters must be >= 1");
  if (c.split_T0 && c.N_tilde < 1)
    throw ConfigError("N_tilde must be >= 1");
}

struct SolutionTrace {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> rhs_values;
  Problem problem;
  SolverConfig config;

  std::size_t size() const noexcept { return times.size(); }
};

/// Largest |u| accepted before a step is reported as blow-up.
inline constexpr double blow_up_threshold = 1e12;

/// True when the Riemann-Liouville forcing is unbounded at t = a.
inline bool forcing_is_singular(const Problem& p) {
  if (p.kind != DerivativeKind::RiemannLiouville)
    return false;
  for (std::size_t k = 0; k < p.init.size(); ++k)
    if (p.init[k] != 0.0 && p.alpha - static_cast<double>(k) - 1.0 < 0.0)
      return true;
  return false;
}

/// e^{-lambda t} sum_k a_k(t), the part of the Volterra equation carrying the
/// initial data.
inline double volterra_forcing(const Problem& p, double t) {
  if (!(t >= p.a))
    throw DomainError("volterra_forcing: need t >= a");
  const double dt = t - p.a;
  double sum = 0.0;
  if (p.kind == DerivativeKind::Caputo) {
    for (std::size_t k = 0; k < p.init.size(); ++k)
      sum += p.init[k] * std::pow(dt, static_cast<double>(k)) * rgamma(static_cast<double>(k) + 1.0);
  } else {
    if (dt == 0.0 && forcing_is_singular(p))
      throw DomainError("volterra_forcing: Riemann-Liouville forcing is singular at t = a");
    for (std::size_t k = 0; k < p.init.size(); ++k) {
      const double e = p.alpha - static_cast<double>(k) - 1.0;
      if (p.init[k] != 0.0)
        sum += p.init[k] * std::pow(dt, e) * rgamma(e + 1.0);
    }
  }
  return std::exp(-p.lambda * t) * sum;
}

namespace detail {

/// Lagrange interpolation of values on a uniform grid t_i = origin + i * step.
/// `values` covers indices [lo, hi]; stencils are N_I consecutive nodes,
/// centred on the target and clamped into [lo, hi].
class GridInterpolator {
public:
  GridInterpolator(double origin, double step, std::size_t stencil)
      : origin_(origin), step_(step), stencil_(stencil) {}

  /// First index of the stencil used for s.
  std::size_t stencil_start(double s, std::size_t lo, std::size_t hi) const {
    const double x = (s - origin_) / step_ - 0.5 * static_cast<double>(stencil_ - 1);
    const double start = std::ceil(x - 0.5);
    const double max_start = static_cast<double>(hi + 1 - stencil_);
    return static_cast<std::size_t>(std::clamp(start, static_cast<double>(lo), max_start));
  }

  /// `value(i)` returns the stored value at grid index i.
  template <class Values>
  double operator()(double s, std::size_t lo, std::size_t hi, Values&& value) {
    const std::size_t start = stencil_start(s, lo, hi);
    const double xi = (s - origin_) / step_ - static_cast<double>(start);
    const auto m = static_cast<std::ptrdiff_t>(stencil_);
    for (std::ptrdiff_t i = 0; i < m; ++i) {
      if (xi == static_cast<double>(i))
        return value(start + static_cast<std::size_t>(i));
    }
    double sum = 0.0;
    for (std::ptrdiff_t i = 0; i < m; ++i) {
      double l = 1.0;
      for (std::ptrdiff_t k = 0; k < m; ++k)
        if (k != i)
          l *= (xi - static_cast<double>(k)) / static_cast<double>(i - k);
      sum += l * value(start + static_cast<std::size_t>(i));
    }
    return sum;
  }

private:
  double origin_;
  double step_;
  std::size_t stencil_;
};

inline void check_finite(std::size_t step, double t, double u) {
  if (!std::isfinite(u) || std::abs(u) > blow_up_threshold)
    throw BlowUpError(step, t, u);
}

/// Product-trapezoid weights of the fractional Adams method, in forms that
/// avoid the cancellation of differencing large powers.
class AdamsWeights {
public:
  explicit AdamsWeights(double alpha) : alpha_(alpha) {}

  /// (m+1)^alpha - m^alpha
  double predictor(std::size_t m) const {
    if (m == 0)
      return 1.0;
    const double x = static_cast<double>(m);
    return std::pow(x, alpha_) * std::expm1(alpha_ * std::log1p(1.0 / x));
  }

  /// (x+1)^p - 2 x^p + (x-1)^p with p = alpha + 1, x >= 1.
  double corrector(std::size_t m) const {
    const double p = alpha_ + 1.0;
    const double x = static_cast<double>(m);
    if (m < series_threshold)
      return std::pow(x + 1.0, p) - 2.0 * std::pow(x, p) + std::pow(x - 1.0, p);
    // 2 x^p sum_{i>=1} C(p, 2i) x^{-2i}
    const double inv2 = 1.0 / (x * x);
    double c = 1.0, term_pow = 1.0, sum = 0.0;
    for (int j = 1; j <= max_series_terms; ++j) {
      c *= (p - j + 1.0) / j;
      if (j % 2 == 1)
        continue;
      term_pow *= inv2;
      const double term = c * term_pow;
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum))
        break;
    }
    return 2.0 * std::pow(x, p) * sum;
  }

  /// k^{alpha+1} - (k - alpha)(k + 1)^alpha, the weight of the initial node.
  double corrector_first(std::size_t k) const {
    const double x = static_cast<double>(k);
    if (k < series_threshold)
      return std::pow(x, alpha_ + 1.0) - (x - alpha_) * std::pow(x + 1.0, alpha_);
    // -k^{alpha+1} sum_{j>=2} (C(alpha, j) - alpha C(alpha, j-1)) k^{-j}
    double c_prev = alpha_; // C(alpha, 1)
    double inv = 1.0 / x, pw = inv, sum = 0.0;
    for (int j = 2; j <= max_series_terms; ++j) {
      const double c = c_prev * (alpha_ - j + 1.0) / j;
      pw *= inv;
      const double term = (c - alpha_ * c_prev) * pw;
      sum += term;
      c_prev = c;
      if (std::abs(term) <= 1e-17 * std::abs(sum))
        break;
    }
    return -std::pow(x, alpha_ + 1.0) * sum;
  }

private:
  static constexpr std::size_t series_threshold = 16;
  static constexpr int max_series_terms = 60;
  double alpha_;
};

/// Fractional Adams product-trapezoidal PECE solution on a uniform fine grid.
/// Stores G_i = e^{lambda (t_i - a)} f(t_i, u_i) so that the memory integral
/// of any t can be written as e^{-lambda (t - a)} int (t-s)^{alpha-1} G(s) ds.
class AdamsSolution {
public:
  AdamsSolution(const Problem& p, double end, std::size_t steps, std::size_t corrector_iters = 1)
      : p_(p), h_((end - p.a) / static_cast<double>(steps)), u_(steps + 1), G_(steps + 1) {
    const double alpha = p.alpha;
    const double ra1 = rgamma(alpha + 1.0);
    const double ra2 = rgamma(alpha + 2.0);
    const double ha = std::pow(h_, alpha);
    const AdamsWeights aw(alpha);
    std::vector<double> wp(steps + 1), wc(steps + 2), w0(steps + 1);
    for (std::size_t m = 0; m <= steps; ++m) {
      wp[m] = aw.predictor(m);
      w0[m] = aw.corrector_first(m);
    }
    for (std::size_t m = 1; m < wc.size(); ++m)
      wc[m] = aw.corrector(m);

    u_[0] = start_value(p, h_);
    G_[0] = p.rhs(p.a, u_[0]);
    check_finite(0, p.a, G_[0]);

    for (std::size_t k = 0; k < steps; ++k) {
      const double t = time(k + 1);
      const double F = volterra_forcing(p, t);
      const double damp = std::exp(-p.lambda * (t - p.a));

      double pred = 0.0;
      for (std::size_t j = 0; j <= k; ++j)
        pred += wp[k - j] * G_[j];
      double u = F + damp * ha * ra1 * pred;

      double hist = w0[k] * G_[0];
      for (std::size_t j = 1; j <= k; ++j)
        hist += wc[k - j + 1] * G_[j];
      const double grow = std::exp(p.lambda * (t - p.a));
      for (std::size_t it = 0; it < corrector_iters; ++it)
        u = F + damp * ha * ra2 * (hist + grow * p.rhs(t, u));
      check_finite(k + 1, t, u);
      u_[k + 1] = u;
      G_[k + 1] = grow * p.rhs(t, u);
    }
  }

  double step() const noexcept { return h_; }
  std::size_t steps() const noexcept { return u_.size() - 1; }
  double time(std::size_t i) const noexcept { return p_.a + static_cast<double>(i) * h_; }
  double value(std::size_t i) const noexcept { return u_[i]; }

  /// Solution at an arbitrary s in [a, end]: the Volterra equation evaluated
  /// with the piecewise-linear interpolant of G, integrated exactly.
  double evaluate(double s) const {
    if (s <= p_.a)
      return u_[0];
    const double alpha = p_.alpha;
    const double last = std::min((s - p_.a) / h_, static_cast<double>(steps()));
    const auto cells = static_cast<std::size_t>(std::ceil(last));
    double sum = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      const double lo = time(i);
      const double hi = std::min(time(i + 1), s);
      const double dlo = s - lo, dhi = s - hi;
      const double A = (std::pow(dlo, alpha) - std::pow(dhi, alpha)) / alpha;
      const double B =
          dlo * A - (std::pow(dlo, alpha + 1.0) - std::pow(dhi, alpha + 1.0)) / (alpha + 1.0);
      sum += G_[i] * A + (G_[i + 1] - G_[i]) / h_ * B;
    }
    return volterra_forcing(p_, s) + std::exp(-p_.lambda * (s - p_.a)) * rgamma(alpha) * sum;
  }

  /// Value at a (or its regularised stand-in for singular forcing).
  static double start_value(const Problem& p, double h) {
    if (forcing_is_singular(p))
      return volterra_forcing(p, p.a + h * 1e-8);
    return volterra_forcing(p, p.a);
  }

private:
  Problem p_;
  double h_;
  std::vector<double> u_;
  std::vector<double> G_;
};

/// History contribution of [a, T0] in the split scheme, evaluated with a
/// unit-weight Lobatto rule at fixed nodes s_j.
struct SplitHistory {
  double T0 = 0.0;
  std::size_t first_index = 0; ///< grid index of T0
  std::vector<double> nodes;   ///< s_j
  std::vector<double> weighted_f; ///< w_j * f(s_j, u(s_j))

  double operator()(const Problem& p, double t) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double d = t - nodes[j];
      sum += weighted_f[j] * std::pow(d, p.alpha - 1.0) * std::exp(-p.lambda * d);
    }
    return sum * rgamma(p.alpha);
  }
};

/// One predictor-corrector step from t_n to t_{n+1}. With `history`, the
/// Jacobi rule covers [T0, t_{n+1}] and interpolation never reaches below T0.
inline double advance(const Problem& p, const SolverConfig& cfg, std::span<const double> f_values,
                      const QuadratureRule& rule, const SplitHistory* history) {
  const std::size_t n = f_values.size() - 1;
  const double tau = cfg.tau(p);
  const double t1 = p.a + static_cast<double>(n + 1) * tau;
  const double left = history ? history->T0 : p.a;
  const std::size_t lo = history ? history->first_index : 0;
  const double half = 0.5 * (t1 - left);
  const double scale = std::pow(half, p.alpha) * rgamma(p.alpha);

  double base = volterra_forcing(p, t1);
  if (history)
    base += (*history)(p, t1);

  const std::size_t N = rule.degree();
  const bool tempered = cfg.interpolation == InterpolationTarget::Tempered;
  std::vector<double> c(N + 1), s(N + 1);
  for (std::size_t j = 0; j <= N; ++j) {
    c[j] = tempered ? rule.weights[j]
                    : rule.weights[j] * std::exp(p.lambda * half * (rule.nodes[j] - 1.0));
    s[j] = left + half * (1.0 + rule.nodes[j]);
  }
  s[N] = t1;

  // Tempered target: interpolate e^{-lambda (t_{n+1} - t_i)} f_i, a fixed
  // multiple of g = e^{lambda t} f that cannot overflow.
  auto damp = [&](std::size_t i) {
    return tempered ? std::exp(-p.lambda * tau * static_cast<double>(n + 1 - i)) : 1.0;
  };

  GridInterpolator interp(p.a, tau, cfg.N_I);
  auto known = [&](std::size_t i) { return damp(i) * f_values[i]; };

  // Predictor: every node from the known history t_0..t_n.
  double sum = 0.0;
  for (std::size_t j = 0; j <= N; ++j)
    sum += c[j] * interp(s[j], lo, n, known);
  double u = base + scale * sum;

  // Corrector: stencils may use the provisional value at t_{n+1}.
  for (std::size_t it = 0; it < cfg.corrector_iters; ++it) {
    const double f_pred = p.rhs(t1, u);
    auto with_pred = [&](std::size_t i) { return i == n + 1 ? f_pred : known(i); };
    double corr = c[N] * f_pred;
    for (std::size_t j = 0; j < N; ++j)
      corr += c[j] * interp(s[j], lo, n + 1, with_pred);
    u = base + scale * corr;
  }
  return u;
}

} // namespace detail

/// Degree-(N_I - 1) Lagrange interpolant of the stored f-values at s.
/// `extra` appends a provisional value at t_{n+1}; `first` bounds the stencil
/// from below (the split point in the split scheme).
inline double interpolate_f(const SolutionTrace& trace, double s, std::size_t N_I,
                            std::optional<std::pair<double, double>> extra = std::nullopt,
                            std::size_t first = 0) {
  const std::size_t known = trace.rhs_values.size() + (extra ? 1 : 0);
  if (N_I < 1 || known < first + N_I)
    throw ConfigError("interpolate_f: insufficient history for a stencil of " + std::to_string(N_I));
  if (trace.times.size() < 2 && !extra)
    return trace.rhs_values.front();
  const double origin = trace.times.front();
  const double step = trace.times.size() >= 2 ? trace.times[1] - trace.times[0]
                                              : extra->first - trace.times[0];
  const std::size_t hi = known - 1;
  detail::GridInterpolator interp(origin, step, N_I);
  return interp(s, first, hi, [&](std::size_t i) {
    return i < trace.rhs_values.size() ? trace.rhs_values[i] : extra->second;
  });
}

/// u_{n+1} from a trace holding t_0..t_n (n >= N_I - 1).
inline double jpc_step(const Problem& p, const SolverConfig& cfg, const SolutionTrace& trace,
                       const QuadratureRule& rule) {
  if (trace.size() < cfg.N_I)
    throw ConfigError("jpc_step: trace shorter than the interpolation stencil");
  return detail::advance(p, cfg, trace.rhs_values, rule, nullptr);
}

/// Values at t_0..t_{count-1}: exact when requested, otherwise fractional Adams
/// PECE on a grid refined by start_refine.
inline std::vector<std::pair<double, double>> starting_values(const Problem& p,
                                                              const SolverConfig& cfg,
                                                              std::size_t count) {
  const double tau = cfg.tau(p);
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  if (cfg.exact_start && p.exact) {
    for (std::size_t j = 0; j < count; ++j) {
      const double t = p.a + static_cast<double>(j) * tau;
      out.emplace_back(t, j == 0 ? detail::AdamsSolution::start_value(p, tau) : p.exact(t));
    }
    if (!forcing_is_singular(p))
      out[0].second = p.exact(p.a);
    return out;
  }
  const std::size_t fine = (count - 1) * cfg.start_refine;
  if (fine == 0) {
    out.emplace_back(p.a, detail::AdamsSolution::start_value(p, tau));
    return out;
  }
  const detail::AdamsSolution adams(p, p.a + static_cast<double>(count - 1) * tau, fine);
  for (std::size_t j = 0; j < count; ++j)
    out.emplace_back(p.a + static_cast<double>(j) * tau, adams.value(j * cfg.start_refine));
  return out;
}

inline std::vector<std::pair<double, double>> starting_values(const Problem& p,
                                                              const SolverConfig& cfg) {
  return starting_values(p, cfg, cfg.N_I);
}

namespace detail {

inline SolutionTrace make_trace(const Problem& p, const SolverConfig& cfg) {
  SolutionTrace trace;
  trace.problem = p;
  trace.config = cfg;
  trace.times.reserve(cfg.M + 1);
  trace.values.reserve(cfg.M + 1);
  trace.rhs_values.reserve(cfg.M + 1);
  return trace;
}

inline void push(SolutionTrace& trace, const Problem& p, double t, double u) {
  check_finite(trace.size(), t, u);
  trace.times.push_back(t);
  trace.values.push_back(u);
  trace.rhs_values.push_back(p.rhs(t, u));
}

inline void march(SolutionTrace& trace, const Problem& p, const SolverConfig& cfg,
                  const QuadratureRule& rule, const SplitHistory* history) {
  const double tau = cfg.tau(p);
  for (std::size_t n = trace.size() - 1; n < cfg.M; ++n) {
    const double u = advance(p, cfg, trace.rhs_values, rule, history);
    push(trace, p, p.a + static_cast<double>(n + 1) * tau, u);
  }
}

/// Grid index of T0, which must coincide with a grid node.
inline std::size_t split_index(const Problem& p, const SolverConfig& cfg) {
  const double T0 = *cfg.split_T0;
  if (!(T0 > p.a && T0 < p.b))
    throw ConfigError("split point T0 must lie inside (a, b)");
  const double x = (T0 - p.a) / cfg.tau(p);
  const double idx = std::round(x);
  if (std::abs(x - idx) > 1e-9 * std::max(1.0, idx) || idx < 1.0)
    throw ConfigError("split point T0 is not aligned to the time grid");
  const auto m0 = static_cast<std::size_t>(idx);
  if (m0 + cfg.N_I - 1 > cfg.M)
    throw ConfigError("split point T0 leaves fewer than N_I grid nodes after it");
  return m0;
}

} // namespace detail

/// Jacobi-predictor-corrector scheme over a uniform grid; the split variant
/// is used when cfg.split_T0 is set.
inline SolutionTrace solve_split(const Problem& p, const SolverConfig& cfg);

inline SolutionTrace solve(const Problem& p, const SolverConfig& cfg) {
  validate(p);
  validate(cfg);
  if (cfg.split_T0)
    return solve_split(p, cfg);

  const auto rule = cached_gauss_lobatto(WeightSpec{p.alpha - 1.0, 0.0}, cfg.N);
  SolutionTrace trace = detail::make_trace(p, cfg);
  for (const auto& [t, u] : starting_values(p, cfg))
    detail::push(trace, p, t, u);
  detail::march(trace, p, cfg, *rule, nullptr);
  return trace;
}

/// Split scheme: [a, T0] is integrated with an (N_tilde+1)-point unit-weight
/// Lobatto rule at fixed nodes, [T0, t] with the Jacobi rule. Values on
/// [a, T0 + (N_I - 1) tau] come from the starting procedure.
inline SolutionTrace solve_split(const Problem& p, const SolverConfig& cfg) {
  validate(p);
  validate(cfg);
  if (!cfg.split_T0)
    throw ConfigError("solve_split: split_T0 is not set");
  const std::size_t m0 = detail::split_index(p, cfg);
  const double tau = cfg.tau(p);
  const double T0 = p.a + static_cast<double>(m0) * tau;
  const std::size_t count = m0 + cfg.N_I;

  SolutionTrace trace = detail::make_trace(p, cfg);
  detail::SplitHistory history;
  history.T0 = T0;
  history.first_index = m0;

  const auto unit = cached_gauss_lobatto(WeightSpec{0.0, 0.0}, cfg.N_tilde);
  const double half = 0.5 * (T0 - p.a);
  history.nodes.reserve(unit->size());
  history.weighted_f.reserve(unit->size());

  // value_at(s) supplies u at the interior nodes of the unit-weight rule.
  auto fill_history = [&](const auto& value_at) {
    for (std::size_t j = 0; j < unit->size(); ++j) {
      const double s = p.a + half * (1.0 + unit->nodes[j]);
      const double u = (j == 0) ? trace.values[0] : value_at(s);
      history.nodes.push_back(s);
      history.weighted_f.push_back(half * unit->weights[j] * p.rhs(s, u));
    }
  };

  if (cfg.exact_start && p.exact) {
    for (const auto& [t, u] : starting_values(p, cfg, count))
      detail::push(trace, p, t, u);
    fill_history([&](double s) { return p.exact(s); });
  } else {
    const detail::AdamsSolution adams(p, p.a + static_cast<double>(count - 1) * tau,
                                      (count - 1) * cfg.start_refine);
    for (std::size_t j = 0; j < count; ++j)
      detail::push(trace, p, p.a + static_cast<double>(j) * tau, adams.value(j * cfg.start_refine));
    fill_history([&](double s) { return adams.evaluate(s); });
  }

  const auto rule = cached_gauss_lobatto(WeightSpec{p.alpha - 1.0, 0.0}, cfg.N);
  detail::march(trace, p, cfg, *rule, &history);
  return trace;
}

/// u(t) = e^{-lambda t} (t^8 + 9/4 t^alpha).
inline double exact_example2(double alpha, double lambda, double t) {
  return std::exp(-lambda * t) * (std::pow(t, 8.0) + 2.25 * std::pow(t, alpha));
}

/// u(t) = e^{-lambda t} E_{alpha,1}(-mu t^alpha).
inline double exact_example3(double alpha, double lambda, double mu, double t) {
  return std::exp(-lambda * t) * mittag_leffler({alpha, 1.0}, -mu * std::pow(t, alpha));
}

} // namespace tfode
