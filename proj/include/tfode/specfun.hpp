#pragma once

// Gamma, reciprocal gamma and the two-parameter Mittag-Leffler function.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "tfode/errors.hpp"

namespace tfode {

namespace detail {

inline bool is_nonpositive_integer(double x) noexcept {
  return x <= 0.0 && x == std::floor(x);
}

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
  void add(double term) noexcept {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term))
      comp_ += (sum_ - t) + term;
    else
      comp_ += (term - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

} // namespace detail

/// Largest argument for which Gamma is representable as a double.
inline constexpr double gamma_overflow_limit = 171.6243769563027;

/// Gamma function. Throws PoleError at 0, -1, -2, ... and OverflowError above
/// gamma_overflow_limit.
inline double gamma(double x) {
  if (std::isnan(x))
    throw DomainError("gamma: NaN argument");
  if (detail::is_nonpositive_integer(x))
    throw PoleError("gamma: pole at x = " + std::to_string(x));
  if (x > gamma_overflow_limit)
    throw OverflowError("gamma: overflow for x = " + std::to_string(x));
  return std::tgamma(x);
}

/// 1/Gamma(x). Total: exactly zero at the poles of Gamma, and underflows to
/// zero for large positive x.
inline double rgamma(double x) noexcept {
  if (std::isnan(x))
    return x;
  if (detail::is_nonpositive_integer(x))
    return 0.0;
  if (x <= gamma_overflow_limit && x > -gamma_overflow_limit)
    return 1.0 / std::tgamma(x);
  if (x > 0.0)
    return std::exp(-std::lgamma(x));
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
  const double s = std::sin(std::numbers::pi * (x - 2.0 * std::floor(x / 2.0)));
  return s * std::exp(std::lgamma(1.0 - x)) / std::numbers::pi;
}

struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Default bound on |z| for which the power series is trusted.
inline constexpr double ml_series_zmax = 50.0;

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) = sum z^k / Gamma(alpha k + beta),
/// summed directly with compensated summation. Real arguments only.
inline double mittag_leffler(MLParams p, double z, double zmax = ml_series_zmax) {
  if (!(p.alpha > 0.0))
    throw DomainError("mittag_leffler: alpha must be positive");
  if (!std::isfinite(z) || std::abs(z) > zmax)
    throw DomainError("mittag_leffler: |z| = " + std::to_string(std::abs(z)) +
                      " outside the series regime (zmax = " + std::to_string(zmax) + ")");
  if (z == 0.0)
    return rgamma(p.beta);

  const double log_abs_z = std::log(std::abs(z));
  // Term magnitudes peak near alpha k ~ |z|^(1/alpha); the stopping rule is only
  // trusted beyond that point (poles of Gamma can zero out early terms).
  const double peak_k = std::pow(std::abs(z), 1.0 / p.alpha) / p.alpha;
  detail::CompensatedSum sum;
  int small_run = 0;
  constexpr std::int64_t max_terms = 1'000'000;
  for (std::int64_t k = 0; k < max_terms; ++k) {
    const double arg = p.alpha * static_cast<double>(k) + p.beta;
    const double kd = static_cast<double>(k);
    double term;
    if (arg < 150.0 && kd * log_abs_z < 650.0) {
      term = std::pow(z, kd) * rgamma(arg);
    } else if (detail::is_nonpositive_integer(arg)) {
      term = 0.0;
    } else {
      // Log form avoids overflow in z^k and Gamma for large k.
      const double sign_z = (z < 0.0 && (k % 2 != 0)) ? -1.0 : 1.0;
      const double sign_g = (arg > 0.0 || static_cast<std::int64_t>(std::floor(arg)) % 2 == 0) ? 1.0 : -1.0;
      term = sign_z * sign_g * std::exp(kd * log_abs_z - std::lgamma(arg));
    }
    sum.add(term);
    const bool past_peak = arg > 1.0 && kd > peak_k;
    if (std::abs(term) < 1e-16 * (1.0 + std::abs(sum.value()))) {
      if (past_peak && ++small_run >= 3)
        return sum.value();
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError("mittag_leffler: series did not converge");
}

} // namespace tfode
