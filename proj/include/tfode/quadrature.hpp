#pragma once

// Gauss-Lobatto rules on [-1, 1] for Jacobi weights (1 - z)^a (1 + z)^b.

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tfode/errors.hpp"
#include "tfode/specfun.hpp"

namespace tfode {

/// Exponents of the Jacobi weight (1 - z)^a (1 + z)^b.
struct WeightSpec {
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

inline void validate(const WeightSpec& w) {
  if (!(w.a > -1.0) || !(w.b > -1.0))
    throw DomainError("Jacobi weight exponents must exceed -1 (got a = " + std::to_string(w.a) +
                      ", b = " + std::to_string(w.b) + ")");
}

/// Integral of the weight over [-1, 1].
inline double zeroth_moment(const WeightSpec& w) {
  validate(w);
  return std::exp((w.a + w.b + 1.0) * std::numbers::ln2 + std::lgamma(w.a + 1.0) +
                  std::lgamma(w.b + 1.0) - std::lgamma(w.a + w.b + 2.0));
}

struct QuadratureRule {
  WeightSpec weight;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
  /// Polynomial degree parameter N of the (N+1)-point rule.
  std::size_t degree() const noexcept { return nodes.size() - 1; }
};

struct RecurrenceCoefficients {
  double a = 0.0;
  double b = 0.0;
};

/// Monic three-term recurrence p_{k+1}(z) = (z - a_k) p_k(z) - b_k p_{k-1}(z)
/// for the Jacobi weight w. b_0 is the zeroth moment.
inline RecurrenceCoefficients jacobi_recurrence(const WeightSpec& w, std::size_t k) {
  validate(w);
  const double a = w.a, b = w.b;
  const double kd = static_cast<double>(k);
  const double s = 2.0 * kd + a + b;
  RecurrenceCoefficients r;
  if (k == 0) {
    r.a = (b - a) / (a + b + 2.0);
    r.b = zeroth_moment(w);
    return r;
  }
  r.a = (b * b - a * a) / (s * (s + 2.0));
  if (k == 1) {
    r.b = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
  } else {
    r.b = 4.0 * kd * (kd + a) * (kd + b) * (kd + a + b) / (s * s * (s + 1.0) * (s - 1.0));
  }
  return r;
}

namespace detail {

/// Orthonormal polynomials q_0..q_{m-1} at x and the monic p_m(x), p_m'(x).
struct OrthoEval {
  double sum_sq = 0.0; // sum_{k<m} q_k(x)^2
  double pm = 0.0;
  double dpm = 0.0;
};

inline OrthoEval evaluate_monic(const std::vector<RecurrenceCoefficients>& rec, std::size_t m,
                                double x) {
  // Monic p_k and derivatives, with running norms h_k = b_0 ... b_k.
  double p_prev = 0.0, p = 1.0;
  double dp_prev = 0.0, dp = 0.0;
  double h = rec[0].b;
  OrthoEval out;
  for (std::size_t k = 0; k < m; ++k) {
    out.sum_sq += p * p / h;
    const double p_next = (x - rec[k].a) * p - (k > 0 ? rec[k].b : 0.0) * p_prev;
    const double dp_next = p + (x - rec[k].a) * dp - (k > 0 ? rec[k].b : 0.0) * dp_prev;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
    h *= rec[k + 1].b;
  }
  out.pm = p;
  out.dpm = dp;
  return out;
}

inline constexpr int newton_max_iterations = 100;
inline constexpr double newton_step_tolerance = 1e-15;

/// Zeros of the degree-m monic orthogonal polynomial for weight w, ascending,
/// together with the Christoffel weights of the m-point Gauss rule.
inline std::pair<std::vector<double>, std::vector<double>> gauss_nodes(const WeightSpec& w,
                                                                       std::size_t m) {
  std::vector<RecurrenceCoefficients> rec(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    rec[k] = jacobi_recurrence(w, k);

  std::vector<double> x(m), lam(m);
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    // Chebyshev-like guess for the i-th largest zero, refined by deflated Newton.
    const double id = static_cast<double>(i) + 1.0;
    double z = std::cos(std::numbers::pi * (id - 0.25 + 0.5 * w.a) / (md + 0.5 * (1.0 + w.a + w.b)));
    if (i > 0 && z >= x[i - 1])
      z = x[i - 1] - 1e-3 * (1.0 + x[i - 1]);
    bool converged = false;
    for (int it = 0; it < newton_max_iterations; ++it) {
      const OrthoEval e = evaluate_monic(rec, m, z);
      double defl = 0.0;
      for (std::size_t j = 0; j < i; ++j)
        defl += 1.0 / (z - x[j]);
      const double step = e.pm / (e.dpm - e.pm * defl);
      z -= step;
      if (std::abs(step) <= newton_step_tolerance * (1.0 + std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged || !(z > -1.0 && z < 1.0))
      throw ConvergenceError("gauss_nodes: Newton iteration failed for root " + std::to_string(i) +
                             " of degree " + std::to_string(m));
    x[i] = z;
    lam[i] = 1.0 / evaluate_monic(rec, m, z).sum_sq;
  }
  // Found from the right end; return ascending.
  std::vector<double> xs(x.rbegin(), x.rend()), ls(lam.rbegin(), lam.rend());
  return {std::move(xs), std::move(ls)};
}

} // namespace detail

/// (N+1)-point Gauss-Lobatto rule for weight w: nodes[0] = -1, nodes[N] = 1.
/// Interior nodes are the zeros of the degree-(N-1) polynomial orthogonal for
/// (a+1, b+1); interior weights are its Christoffel numbers divided by 1 - z^2.
inline QuadratureRule gauss_lobatto(const WeightSpec& w, std::size_t N) {
  validate(w);
  if (N < 1)
    throw ConfigError("gauss_lobatto: need N >= 1");
  const double a = w.a, b = w.b;
  const double Nd = static_cast<double>(N);

  QuadratureRule rule;
  rule.weight = w;
  rule.nodes.reserve(N + 1);
  rule.weights.reserve(N + 1);

  // Endpoint weights in closed form.
  const double log2ab = (a + b + 1.0) * std::numbers::ln2;
  const double w_left = (b + 1.0) * std::exp(log2ab + 2.0 * std::lgamma(b + 1.0) + std::lgamma(Nd) +
                                             std::lgamma(Nd + a + 1.0) - std::lgamma(Nd + b + 1.0) -
                                             std::lgamma(Nd + a + b + 2.0));
  const double w_right = (a + 1.0) * std::exp(log2ab + 2.0 * std::lgamma(a + 1.0) + std::lgamma(Nd) +
                                              std::lgamma(Nd + b + 1.0) - std::lgamma(Nd + a + 1.0) -
                                              std::lgamma(Nd + a + b + 2.0));

  rule.nodes.push_back(-1.0);
  rule.weights.push_back(w_left);
  if (N >= 2) {
    auto [x, lam] = detail::gauss_nodes(WeightSpec{a + 1.0, b + 1.0}, N - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      rule.nodes.push_back(x[i]);
      rule.weights.push_back(lam[i] / ((1.0 - x[i]) * (1.0 + x[i])));
    }
  }
  rule.nodes.push_back(1.0);
  rule.weights.push_back(w_right);
  return rule;
}

/// Shared, lazily built rules keyed by (a, b, N). Safe for concurrent use.
inline std::shared_ptr<const QuadratureRule> cached_gauss_lobatto(const WeightSpec& w, std::size_t N) {
  using Key = std::tuple<double, double, std::size_t>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;

  const Key key{w.a, w.b, N};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
      return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_lobatto(w, N));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(rule));
  return it->second;
}

/// sum_j weights[j] * g(nodes[j]).
template <class F>
double apply_rule(const QuadratureRule& r, F&& g) {
  double s = 0.0;
  for (std::size_t j = 0; j < r.nodes.size(); ++j)
    s += r.weights[j] * g(r.nodes[j]);
  return s;
}

} // namespace tfode
