#pragma once

// Convergence studies: solve one problem over a list of halving step sizes,
// measure the maximum nodal error and the observed order, and write the result
// as CSV.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tfode/errors.hpp"
#include "tfode/expr.hpp"
#include "tfode/solver.hpp"
#include "tfode/specfun.hpp"

namespace tfode {

/// log2(e[i-1] / e[i]) for i >= 1. Entries involving a non-positive or
/// non-finite error are left empty.
inline std::vector<std::optional<double>> estimate_order(const std::vector<double>& errors) {
  std::vector<std::optional<double>> orders;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double prev = errors[i - 1], cur = errors[i];
    if (prev > 0.0 && cur > 0.0 && std::isfinite(prev) && std::isfinite(cur))
      orders.emplace_back(std::log2(prev / cur));
    else
      orders.emplace_back(std::nullopt);
  }
  return orders;
}

/// Variables visible to expression-defined problems, in slot order.
inline const std::vector<std::string>& problem_variables() {
  static const std::vector<std::string> names{"t", "u", "alpha", "lambda", "mu"};
  return names;
}

/// A problem given as text: f(t, u) and optionally u(t), in terms of
/// problem_variables().
struct InlineProblem {
  DerivativeKind kind = DerivativeKind::Caputo;
  std::string rhs;
  std::string exact; ///< empty: no exact solution
  std::vector<double> init;
};

struct Sweep {
  std::string problem = "example2"; ///< builtin name; ignored when inline_problem is set
  std::optional<InlineProblem> inline_problem;
  std::vector<double> alphas{0.5};
  std::vector<double> lambdas{0.0};
  std::vector<double> taus{0.1, 0.05, 0.025, 0.0125, 0.00625};
  double a = 0.0;
  double b = 1.0;
  double mu = 1.0;
  std::size_t N = 20;
  std::size_t N_I = 7;
  std::size_t start_refine = 64;
  std::optional<double> split_T0;
  std::size_t N_tilde = 40;
  std::size_t corrector_iters = 1;
  bool exact_start = false;
  std::string output;
  bool timing = false;  ///< fill wall_ms in CSV output (breaks byte-reproducibility)
  unsigned threads = 0; ///< 0: hardware concurrency
};

struct ConvergenceRow {
  double tau = 0.0;
  std::size_t M = 0;
  double max_error = 0.0; ///< +inf when the solve failed
  std::optional<double> order;
  double wall_ms = 0.0;
  std::string failure; ///< empty on success
};

struct ConvergenceReport {
  double alpha = 0.0;
  double lambda = 0.0;
  bool reference_baseline = false; ///< errors measured against a fine reference solve
  Sweep sweep;
  std::vector<ConvergenceRow> rows;
};

// ---------------------------------------------------------------------------
// Problems

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"example2", "example3", "relax"};
  return names;
}

/// Example 2: Caputo, zero initial data, u = e^{-lambda t}(t^8 + 9/4 t^alpha).
/// example3 / relax: D u = -mu u with e^{lambda t} u = 1 at t = 0, solved by a
/// Mittag-Leffler function. Both start at a = 0.
inline Problem builtin_problem(const std::string& name, double alpha, double lambda, double mu,
                               double b) {
  Problem p;
  p.kind = DerivativeKind::Caputo;
  p.alpha = alpha;
  p.lambda = lambda;
  p.a = 0.0;
  p.b = b;
  p.init.assign(p.n(), 0.0);
  if (name == "example2") {
    const double c8 = tfode::gamma(9.0) * rgamma(9.0 - alpha);
    const double c0 = 2.25 * tfode::gamma(alpha + 1.0);
    p.rhs = [=](double t, double u) {
      return std::exp(-lambda * t) *
                 (c8 * std::pow(t, 8.0 - alpha) + std::pow(t, 8.0) + 2.25 * std::pow(t, alpha) + c0) -
             u;
    };
    p.exact = [=](double t) { return exact_example2(alpha, lambda, t); };
    return p;
  }
  if (name == "example3" || name == "relax") {
    p.init[0] = 1.0;
    p.rhs = [=](double, double u) { return -mu * u; };
    p.exact = [=](double t) { return exact_example3(alpha, lambda, mu, t); };
    return p;
  }
  throw ConfigError("unknown builtin problem '" + name + "'");
}

/// Problem from expressions. The parsed trees are shared by every copy.
inline Problem inline_problem(const InlineProblem& def, double alpha, double lambda, double mu,
                              double a, double b) {
  Problem p;
  p.kind = def.kind;
  p.alpha = alpha;
  p.lambda = lambda;
  p.a = a;
  p.b = b;
  p.init = def.init;
  const expr::Expr rhs = expr::parse(def.rhs, problem_variables());
  p.rhs = [=](double t, double u) {
    const double slots[] = {t, u, alpha, lambda, mu};
    return rhs.eval(slots);
  };
  if (!def.exact.empty()) {
    const expr::Expr exact = expr::parse(def.exact, problem_variables());
    p.exact = [=](double t) {
      const double slots[] = {t, 0.0, alpha, lambda, mu};
      return exact.eval(slots);
    };
  }
  return p;
}

inline Problem sweep_problem(const Sweep& s, double alpha, double lambda) {
  if (s.inline_problem)
    return inline_problem(*s.inline_problem, alpha, lambda, s.mu, s.a, s.b);
  Problem p = builtin_problem(s.problem, alpha, lambda, s.mu, s.b);
  if (s.a != 0.0)
    throw ConfigError("builtin problems start at a = 0");
  return p;
}

// ---------------------------------------------------------------------------
// Running

/// Number of steps for step size tau on [a, b]; tau must divide the interval.
inline std::size_t steps_for(double a, double b, double tau) {
  if (!(tau > 0.0))
    throw ConfigError("step sizes must be positive");
  const double m = (b - a) / tau;
  const double r = std::round(m);
  if (r < 1.0 || std::abs(m - r) > 1e-9 * r)
    throw ConfigError("step size " + std::to_string(tau) + " does not divide [a, b] into whole steps");
  return static_cast<std::size_t>(r);
}

inline void validate(const Sweep& s) {
  if (s.alphas.empty() || s.lambdas.empty() || s.taus.empty())
    throw ConfigError("sweep needs at least one alpha, lambda and tau");
  for (std::size_t i = 1; i < s.taus.size(); ++i)
    if (!(s.taus[i] < s.taus[i - 1]))
      throw ConfigError("tau list must be strictly decreasing");
  for (double tau : s.taus)
    steps_for(s.a, s.b, tau);
  if (!s.inline_problem &&
      std::find(builtin_names().begin(), builtin_names().end(), s.problem) == builtin_names().end())
    throw ConfigError("unknown builtin problem '" + s.problem + "'");
}

inline SolverConfig sweep_config(const Sweep& s, std::size_t M) {
  SolverConfig c;
  c.M = M;
  c.N = s.N;
  c.N_I = s.N_I;
  c.start_refine = s.start_refine;
  c.split_T0 = s.split_T0;
  c.N_tilde = s.N_tilde;
  c.corrector_iters = s.corrector_iters;
  c.exact_start = s.exact_start;
  return c;
}

namespace detail {

struct SweepJob {
  std::size_t report;
  std::size_t row;
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
        fn(i);
    });
  for (auto& th : pool)
    th.join();
}

} // namespace detail

/// One report per (alpha, lambda), ordered alpha-major. Solves run in
/// parallel; every result lands in a preassigned slot, so the output does not
/// depend on scheduling.
inline std::vector<ConvergenceReport> run_sweep(const Sweep& s) {
  validate(s);
  std::vector<ConvergenceReport> reports;
  for (double alpha : s.alphas)
    for (double lambda : s.lambdas) {
      ConvergenceReport r;
      r.alpha = alpha;
      r.lambda = lambda;
      r.sweep = s;
      for (double tau : s.taus) {
        ConvergenceRow row;
        row.tau = tau;
        row.M = steps_for(s.a, s.b, tau);
        r.rows.push_back(row);
      }
      reports.push_back(std::move(r));
    }

  // Reference solutions for problems without an exact one.
  const double tau_ref = s.taus.back() / 4.0;
  const std::size_t M_ref = steps_for(s.a, s.b, tau_ref);
  std::vector<std::optional<SolutionTrace>> references(reports.size());
  std::vector<std::string> reference_failures(reports.size());
  detail::parallel_for(reports.size(), s.threads, [&](std::size_t i) {
    const Problem p = sweep_problem(s, reports[i].alpha, reports[i].lambda);
    if (p.exact)
      return;
    reports[i].reference_baseline = true;
    try {
      references[i] = solve(p, sweep_config(s, M_ref));
    } catch (const std::exception& e) {
      reference_failures[i] = std::string("reference solve failed: ") + e.what();
    }
  });

  std::vector<detail::SweepJob> jobs;
  for (std::size_t i = 0; i < reports.size(); ++i)
    for (std::size_t j = 0; j < reports[i].rows.size(); ++j)
      jobs.push_back({i, j});

  detail::parallel_for(jobs.size(), s.threads, [&](std::size_t k) {
    ConvergenceReport& rep = reports[jobs[k].report];
    ConvergenceRow& row = rep.rows[jobs[k].row];
    const Problem p = sweep_problem(s, rep.alpha, rep.lambda);
    const auto start = std::chrono::steady_clock::now();
    try {
      const SolutionTrace trace = solve(p, sweep_config(s, row.M));
      row.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      double err = 0.0;
      if (p.exact) {
        for (std::size_t n = 1; n < trace.size(); ++n)
          err = std::max(err, std::abs(trace.values[n] - p.exact(trace.times[n])));
      } else {
        const auto& ref = references[jobs[k].report];
        if (!ref)
          throw ConvergenceError(reference_failures[jobs[k].report]);
        if (M_ref % row.M != 0)
          throw ConfigError("reference grid does not contain the coarse grid");
        const std::size_t stride = M_ref / row.M;
        for (std::size_t n = 1; n < trace.size(); ++n)
          err = std::max(err, std::abs(trace.values[n] - ref->values[n * stride]));
      }
      row.max_error = err;
    } catch (const BlowUpError& e) {
      row.max_error = std::numeric_limits<double>::infinity();
      row.failure = e.what();
    } catch (const ConvergenceError& e) {
      row.max_error = std::numeric_limits<double>::infinity();
      row.failure = e.what();
    }
  });

  for (auto& rep : reports) {
    std::vector<double> errors;
    for (const auto& row : rep.rows)
      errors.push_back(row.max_error);
    const auto orders = estimate_order(errors);
    for (std::size_t j = 1; j < rep.rows.size(); ++j)
      rep.rows[j].order = orders[j - 1];
  }
  return reports;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* report_csv_header = "alpha,lambda,tau,max_error,order,wall_ms";

namespace detail {

inline std::string format_number(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

} // namespace detail

/// Error column uses 10 significant digits, order 4 decimals. wall_ms is left
/// empty unless `timing` is set, so identical sweeps give identical bytes.
inline void write_report_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports,
                             bool timing = false) {
  os << report_csv_header << '\n';
  for (const auto& rep : reports)
    for (const auto& row : rep.rows) {
      os << detail::format_number("%.10g", rep.alpha) << ',' << detail::format_number("%.10g", rep.lambda)
         << ',' << detail::format_number("%.10g", row.tau) << ',';
      if (std::isfinite(row.max_error))
        os << detail::format_number("%.10e", row.max_error);
      else
        os << "inf";
      os << ',';
      if (row.order)
        os << detail::format_number("%.4f", *row.order);
      os << ',';
      if (timing)
        os << detail::format_number("%.3f", row.wall_ms);
      os << '\n';
    }
}

struct CsvRow {
  double alpha = 0.0, lambda = 0.0, tau = 0.0, max_error = 0.0;
  std::optional<double> order;
  std::optional<double> wall_ms;
};

/// Parses a report written by write_report_csv and checks that every order
/// entry agrees with log2 of the ratio of its error column to within
/// `order_tolerance`. Throws ConfigError on malformed input or a mismatch.
inline std::vector<CsvRow> read_report_csv(std::istream& is, double order_tolerance = 1e-3) {
  std::string line;
  if (!std::getline(is, line) || line != report_csv_header)
    throw ConfigError("report CSV: missing or wrong header");
  std::vector<CsvRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty())
      continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
      cells.emplace_back();
    if (cells.size() != 6)
      throw ConfigError("report CSV line " + std::to_string(line_no) + ": expected 6 fields");
    auto number = [&](const std::string& c) {
      try {
        std::size_t used = 0;
        const double v = std::stod(c, &used);
        if (used != c.size())
          throw std::invalid_argument(c);
        return v;
      } catch (const std::exception&) {
        throw ConfigError("report CSV line " + std::to_string(line_no) + ": bad number '" + c + "'");
      }
    };
    CsvRow r;
    r.alpha = number(cells[0]);
    r.lambda = number(cells[1]);
    r.tau = number(cells[2]);
    r.max_error = cells[3] == "inf" ? std::numeric_limits<double>::infinity() : number(cells[3]);
    if (!cells[4].empty())
      r.order = number(cells[4]);
    if (!cells[5].empty())
      r.wall_ms = number(cells[5]);

    const bool same_group = !rows.empty() && rows.back().alpha == r.alpha && rows.back().lambda == r.lambda;
    if (same_group) {
      const auto expected = estimate_order({rows.back().max_error, r.max_error})[0];
      if (expected.has_value() != r.order.has_value() ||
          (expected && std::abs(*expected - *r.order) > order_tolerance))
        throw ConfigError("report CSV line " + std::to_string(line_no) +
                          ": order does not match the error column");
    } else if (r.order) {
      throw ConfigError("report CSV line " + std::to_string(line_no) + ": first row of a group has an order");
    }
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// The five reference convergence tables

/// Canned sweeps: tables 1-3 are Example 2 on [0, 1] (alpha 0.5, 1.0, 1.5),
/// tables 4-5 are the relaxation problem on [0, 1.1] with the split scheme
/// (lambda 5 and 10).
inline Sweep table_sweep(int which) {
  Sweep s;
  s.N = 20;
  switch (which) {
  case 1:
  case 2:
  case 3:
    s.problem = "example2";
    s.alphas = {which == 1 ? 0.5 : which == 2 ? 1.0 : 1.5};
    s.lambdas = {0.0, 2.0, 6.0};
    s.taus = {1.0 / 10, 1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160};
    s.b = 1.0;
    s.N_I = which == 1 ? 7 : 6;
    return s;
  case 4:
  case 5:
    s.problem = "example3";
    s.alphas = {0.2, 0.9, 1.8};
    s.lambdas = {which == 4 ? 5.0 : 10.0};
    s.taus = {1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160};
    s.b = 1.1;
    s.mu = 1.0;
    s.N_I = 2;
    s.split_T0 = 0.1;
    s.N_tilde = 40;
    return s;
  default:
    throw ConfigError("table number must be 1..5");
  }
}

} // namespace tfode
