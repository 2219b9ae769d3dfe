#pragma once

// Tempered Riemann-Liouville integral, Caputo and Riemann-Liouville tempered
// derivatives evaluated by Jacobi-weighted Gauss-Lobatto quadrature, plus the
// closed-form identities used to check them.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tfode/errors.hpp"
#include "tfode/quadrature.hpp"
#include "tfode/specfun.hpp"

namespace tfode {

struct TemperedParams {
  double order = 0.5;  ///< sigma for integrals, alpha for derivatives
  double lambda = 0.0; ///< tempering rate, >= 0
  double a = 0.0;      ///< lower terminal

  /// Integer n with n - 1 < alpha < n.
  int n() const { return static_cast<int>(std::ceil(order)); }
};

using RealFunction = std::function<double(double)>;

/// A function together with (optionally) its first few derivatives.
/// derivs[k - 1] is the k-th derivative.
struct SampledFunction {
  RealFunction u;
  std::vector<RealFunction> derivs;
  /// Fall back to finite differences when derivs are too short.
  bool numerical_derivatives = false;

  SampledFunction() = default;
  SampledFunction(RealFunction f, std::vector<RealFunction> d = {}, bool numeric = false)
      : u(std::move(f)), derivs(std::move(d)), numerical_derivatives(numeric) {}
};

/// Central-difference steps for the derivative fallback, by derivative order.
inline constexpr double fd_step_first = 1e-5;
inline constexpr double fd_step_second = 1e-4;

namespace detail {

inline void check_lambda(double lambda) {
  if (!(lambda >= 0.0))
    throw DomainError("tempering rate lambda must be >= 0");
}

inline void check_derivative_order(const TemperedParams& p) {
  check_lambda(p.lambda);
  if (!(p.order > 0.0) || p.order == std::floor(p.order))
    throw DomainError("derivative order must be positive and non-integer (got " +
                      std::to_string(p.order) + ")");
}

/// k-th derivative of f at s, from supplied derivatives or finite differences.
/// Differences are one-sided when s - h would fall below `lower`.
inline double derivative(const SampledFunction& f, int k, double s, double lower) {
  if (k == 0)
    return f.u(s);
  if (static_cast<std::size_t>(k) <= f.derivs.size())
    return f.derivs[static_cast<std::size_t>(k) - 1](s);
  if (!f.numerical_derivatives)
    throw ConfigError("derivative of order " + std::to_string(k) +
                      " required but not supplied (enable numerical_derivatives)");
  const auto& u = f.u;
  if (k == 1) {
    const double h = fd_step_first;
    if (s - h < lower)
      return (-3.0 * u(s) + 4.0 * u(s + h) - u(s + 2.0 * h)) / (2.0 * h);
    return (u(s + h) - u(s - h)) / (2.0 * h);
  }
  if (k == 2) {
    const double h = fd_step_second;
    if (s - h < lower)
      return (2.0 * u(s) - 5.0 * u(s + h) + 4.0 * u(s + 2.0 * h) - u(s + 3.0 * h)) / (h * h);
    return (u(s + h) - 2.0 * u(s) + u(s - h)) / (h * h);
  }
  throw ConfigError("numerical derivatives are only available up to order 2");
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// d^k/ds^k (e^{lambda s} u(s)) * e^{-lambda s}, by the Leibniz rule.
inline double tempered_leibniz(const SampledFunction& f, int k, double lambda, double s,
                               double lower) {
  double sum = 0.0;
  for (int j = 0; j <= k; ++j)
    sum += binomial(k, j) * std::pow(lambda, k - j) * derivative(f, j, s, lower);
  return sum;
}

/// (1/Gamma(sigma)) int_a^t e^{-lambda (t-s)} (t-s)^{sigma-1} h(s) ds on the
/// (N+1)-point rule with weight (1 - z)^{sigma - 1}.
template <class H>
double tempered_quadrature(double sigma, double lambda, double a, double t, std::size_t N, H&& h) {
  const auto rule = cached_gauss_lobatto(WeightSpec{sigma - 1.0, 0.0}, N);
  const double half = 0.5 * (t - a);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule->size(); ++j) {
    const double z = rule->nodes[j];
    const double s = a + half * (1.0 + z);
    sum += rule->weights[j] * std::exp(-lambda * half * (1.0 - z)) * h(s);
  }
  return std::pow(half, sigma) * rgamma(sigma) * sum;
}

} // namespace detail

/// Tempered Riemann-Liouville integral of order sigma = p.order at t.
inline double tempered_integral(const TemperedParams& p, const SampledFunction& f, double t,
                                std::size_t N) {
  detail::check_lambda(p.lambda);
  if (!(p.order > 0.0))
    throw DomainError("tempered_integral: order must be positive");
  if (!(t > p.a))
    throw DomainError("tempered_integral: need t > a");
  if (N < 2)
    throw ConfigError("tempered_integral: need N >= 2");
  return detail::tempered_quadrature(p.order, p.lambda, p.a, t, N,
                                     [&](double s) { return f.u(s); });
}

/// Caputo tempered derivative of order alpha = p.order at t. The n-th
/// derivative of e^{lambda s} u(s) is expanded over f's derivatives.
inline double caputo_tempered_derivative(const TemperedParams& p, const SampledFunction& f,
                                         double t, std::size_t N) {
  detail::check_derivative_order(p);
  if (!(t > p.a))
    throw DomainError("caputo_tempered_derivative: need t > a");
  if (N < 2)
    throw ConfigError("caputo_tempered_derivative: need N >= 2");
  const int n = p.n();
  return detail::tempered_quadrature(
      static_cast<double>(n) - p.order, p.lambda, p.a, t, N,
      [&](double s) { return detail::tempered_leibniz(f, n, p.lambda, s, p.a); });
}

/// Sum_{k<n} e^{-lambda t} (t-a)^{k-alpha} / Gamma(k-alpha+1) * [d^k(e^{lambda s}u)/ds^k]_{s=a}:
/// the difference between the Riemann-Liouville and Caputo tempered derivatives.
inline double rl_caputo_correction(const TemperedParams& p, const SampledFunction& f, double t) {
  detail::check_derivative_order(p);
  const int n = p.n();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double init = std::exp(p.lambda * p.a) * detail::tempered_leibniz(f, k, p.lambda, p.a, p.a);
    sum += std::pow(t - p.a, k - p.order) * rgamma(k - p.order + 1.0) * init;
  }
  return std::exp(-p.lambda * t) * sum;
}

/// Riemann-Liouville tempered derivative, as the Caputo value plus the
/// initial-data correction. Requires e^{lambda t} u in AC^n near a.
inline double rl_tempered_derivative(const TemperedParams& p, const SampledFunction& f, double t,
                                     std::size_t N) {
  return caputo_tempered_derivative(p, f, t, N) + rl_caputo_correction(p, f, t);
}

/// Variant Riemann-Liouville tempered derivative: subtracts lambda^alpha u
/// (0 < alpha < 1) or alpha lambda^{alpha-1} u' + lambda^alpha u (1 < alpha < 2).
inline double variant_rl_derivative(const TemperedParams& p, const SampledFunction& f, double t,
                                    std::size_t N) {
  detail::check_derivative_order(p);
  if (p.order > 2.0)
    throw DomainError("variant_rl_derivative: alpha must lie in (0, 1) or (1, 2)");
  const double rl = rl_tempered_derivative(p, f, t, N);
  double value = rl - std::pow(p.lambda, p.order) * f.u(t);
  if (p.order > 1.0) {
    if (f.derivs.empty())
      throw ConfigError("variant_rl_derivative: 1 < alpha < 2 needs the analytic first derivative");
    value -= p.order * std::pow(p.lambda, p.order - 1.0) * f.derivs[0](t);
  }
  return value;
}

/// Exact tempered derivative of e^{-lambda t} t^mu from 0:
/// Gamma(mu+1)/Gamma(mu-alpha+1) e^{-lambda t} t^{mu-alpha}.
inline double tempered_power_rule(double alpha, double lambda, double mu, double t) {
  return gamma(mu + 1.0) * rgamma(mu - alpha + 1.0) * std::exp(-lambda * t) * std::pow(t, mu - alpha);
}

/// Laplace multiplier (lambda + s)^{-sigma} of the tempered integral.
inline double laplace_symbol_integral(double sigma, double lambda, double s) {
  if (!(s + lambda > 0.0))
    throw DomainError("laplace_symbol_integral: need s + lambda > 0");
  return std::pow(lambda + s, -sigma);
}

/// Laplace transform of the Caputo tempered derivative, split as
/// multiplier * u~(s) - subtraction.
struct CaputoLaplaceSymbol {
  double multiplier = 0.0;  ///< (s + lambda)^alpha
  double subtraction = 0.0; ///< sum_k (s + lambda)^{alpha-k-1} init[k]

  double apply(double transform_of_u) const { return multiplier * transform_of_u - subtraction; }
};

/// init[k] = d^k(e^{lambda t} u)/dt^k at t = 0, k = 0..n-1.
inline CaputoLaplaceSymbol laplace_symbol_caputo(double alpha, double lambda, double s,
                                                 const std::vector<double>& init) {
  if (!(s + lambda > 0.0))
    throw DomainError("laplace_symbol_caputo: need s + lambda > 0");
  const auto n = static_cast<std::size_t>(std::ceil(alpha));
  if (init.size() != n)
    throw ConfigError("laplace_symbol_caputo: expected " + std::to_string(n) + " initial values");
  CaputoLaplaceSymbol sym;
  sym.multiplier = std::pow(s + lambda, alpha);
  for (std::size_t k = 0; k < n; ++k)
    sym.subtraction += std::pow(s + lambda, alpha - static_cast<double>(k) - 1.0) * init[k];
  return sym;
}

} // namespace tfode
