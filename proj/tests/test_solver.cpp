#include <cmath>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tfode/solver.hpp"

using tfode::DerivativeKind;
using tfode::Problem;
using tfode::SolutionTrace;
using tfode::SolverConfig;

namespace {

Problem example2(double alpha, double lambda, DerivativeKind kind = DerivativeKind::Caputo) {
  Problem p;
  p.kind = kind;
  p.alpha = alpha;
  p.lambda = lambda;
  p.b = 1.0;
  p.init.assign(p.n(), 0.0);
  const double c8 = std::tgamma(9.0) / std::tgamma(9.0 - alpha);
  const double c0 = 2.25 * std::tgamma(alpha + 1.0);
  p.rhs = [=](double t, double u) {
    return std::exp(-lambda * t) * (c8 * std::pow(t, 8 - alpha) + std::pow(t, 8) + 2.25 * std::pow(t, alpha) + c0) - u;
  };
  p.exact = [=](double t) { return std::exp(-lambda * t) * (std::pow(t, 8) + 2.25 * std::pow(t, alpha)); };
  return p;
}

Problem relaxation(double alpha, double lambda, double mu = 1.0, double c0 = 1.0) {
  Problem p;
  p.alpha = alpha;
  p.lambda = lambda;
  p.b = 1.1;
  p.init.assign(p.n(), 0.0);
  p.init[0] = c0;
  p.rhs = [=](double, double u) { return -mu * u; };
  p.exact = [=](double t) {
    return c0 * std::exp(-lambda * t) * oracle::mittag_leffler(alpha, 1.0, -mu * std::pow(t, alpha));
  };
  return p;
}

Problem zero_rhs(double alpha, double lambda, std::vector<double> init) {
  Problem p;
  p.alpha = alpha;
  p.lambda = lambda;
  p.b = 1.0;
  p.init = std::move(init);
  p.rhs = [](double, double) { return 0.0; };
  return p;
}

SolverConfig config(std::size_t M, std::size_t N_I) {
  SolverConfig c;
  c.M = M;
  c.N = 20;
  c.N_I = N_I;
  return c;
}

SolverConfig split_config(double tau_inverse) {
  SolverConfig c;
  c.M = static_cast<std::size_t>(std::lround(1.1 * tau_inverse));
  c.N = 20;
  c.N_I = 2;
  c.split_T0 = 0.1;
  c.N_tilde = 40;
  return c;
}

double max_error(const SolutionTrace& tr) {
  double e = 0.0;
  for (std::size_t n = 1; n < tr.size(); ++n)
    e = std::max(e, std::abs(tr.values[n] - tr.problem.exact(tr.times[n])));
  return e;
}

std::vector<double> halving_errors(const Problem& p, std::size_t N_I, std::vector<std::size_t> Ms) {
  std::vector<double> errors;
  for (std::size_t M : Ms)
    errors.push_back(max_error(tfode::solve(p, config(M, N_I))));
  return errors;
}

SolutionTrace make_trace(std::vector<double> times, std::vector<double> f) {
  SolutionTrace tr;
  tr.times = std::move(times);
  tr.rhs_values = std::move(f);
  tr.values.assign(tr.times.size(), 0.0);
  return tr;
}

} // namespace

// --- forcing --------------------------------------------------------------

TEST(VolterraForcing, CaputoConstant) {
  const auto p = zero_rhs(0.5, 0.0, {1.0});
  for (double t : {0.0, 0.3, 1.0})
    EXPECT_DOUBLE_EQ(tfode::volterra_forcing(p, t), 1.0);
}

TEST(VolterraForcing, CaputoZeroData) {
  const auto p = zero_rhs(1.5, 2.0, {0.0, 0.0});
  for (double t : {0.0, 0.3, 1.0})
    EXPECT_EQ(tfode::volterra_forcing(p, t), 0.0);
}

TEST(VolterraForcing, CaputoSecondOrderData) {
  const auto p = zero_rhs(1.5, 2.0, {1.3, 0.4});
  EXPECT_NEAR(tfode::volterra_forcing(p, 0.7), std::exp(-1.4) * (1.3 + 0.4 * 0.7), 1e-15);
}

TEST(VolterraForcing, RiemannLiouville) {
  auto p = zero_rhs(0.5, 0.0, {1.0});
  p.kind = DerivativeKind::RiemannLiouville;
  EXPECT_NEAR(tfode::volterra_forcing(p, 1.0), 1.0 / std::tgamma(0.5), 1e-15);
  EXPECT_THROW(tfode::volterra_forcing(p, 0.0), tfode::DomainError);
  EXPECT_TRUE(tfode::forcing_is_singular(p));

  auto q = zero_rhs(1.5, 1.0, {1.0, 0.0});
  q.kind = DerivativeKind::RiemannLiouville;
  EXPECT_FALSE(tfode::forcing_is_singular(q));
  EXPECT_EQ(tfode::volterra_forcing(q, 0.0), 0.0);
  EXPECT_NEAR(tfode::volterra_forcing(q, 0.4), std::exp(-0.4) * std::sqrt(0.4) / std::tgamma(1.5), 1e-15);
  q.init[1] = 2.0;
  EXPECT_TRUE(tfode::forcing_is_singular(q));
}

// --- interpolation --------------------------------------------------------

TEST(Interpolation, QuadraticReproduction) {
  const auto tr = make_trace({0, 1, 2}, {0, 1, 4});
  EXPECT_NEAR(tfode::interpolate_f(tr, 1.5, 3), 2.25, 1e-15);
}

TEST(Interpolation, AtNodesReturnsStoredValues) {
  const auto tr = make_trace({0, 0.5, 1.0, 1.5, 2.0}, {3.0, -1.0, 4.0, 1.5, 9.0});
  for (std::size_t j = 0; j < tr.size(); ++j)
    EXPECT_EQ(tfode::interpolate_f(tr, tr.times[j], 3), tr.rhs_values[j]);
}

TEST(Interpolation, QuinticReproduction) {
  std::vector<double> t, f;
  for (int i = 0; i < 6; ++i) {
    t.push_back(0.2 * i);
    f.push_back(std::pow(0.2 * i, 5));
  }
  const auto tr = make_trace(t, f);
  for (double s = 0.0; s <= 1.0; s += 0.01)
    EXPECT_NEAR(tfode::interpolate_f(tr, s, 6), std::pow(s, 5), 1e-12) << s;
}

TEST(Interpolation, ProvisionalEndpointAndBounds) {
  std::vector<double> t{0, 1, 2, 3}, f{0, 1, 8, 27};
  const auto tr = make_trace(t, f);
  // With t = 4 supplied, a centred cubic stencil near the end uses it.
  EXPECT_NEAR(tfode::interpolate_f(tr, 3.5, 4, std::pair{4.0, 64.0}), 42.875, 1e-12);
  EXPECT_THROW(tfode::interpolate_f(tr, 1.0, 5), tfode::ConfigError);
  EXPECT_THROW(tfode::interpolate_f(tr, 2.5, 3, std::nullopt, 2), tfode::ConfigError);
}

TEST(Interpolation, CentredStencilTiesGoEarlier) {
  tfode::detail::GridInterpolator gi(0.0, 1.0, 2);
  EXPECT_EQ(gi.stencil_start(2.5, 0, 10), 2u);
  EXPECT_EQ(gi.stencil_start(2.0, 0, 10), 1u); // window {1,2} or {2,3}: earlier wins
  tfode::detail::GridInterpolator g3(0.0, 1.0, 3);
  EXPECT_EQ(g3.stencil_start(2.5, 0, 10), 1u); // {1,2,3} and {2,3,4} equally centred
  EXPECT_EQ(g3.stencil_start(2.2, 0, 10), 1u);
  EXPECT_EQ(g3.stencil_start(9.9, 0, 10), 8u);
  EXPECT_EQ(g3.stencil_start(0.1, 0, 10), 0u);
  EXPECT_EQ(g3.stencil_start(0.1, 4, 10), 4u);
}

// --- single steps and starting values -------------------------------------

TEST(JpcStep, ZeroRhsKeepsConstant) {
  const auto p = zero_rhs(0.6, 0.0, {1.0});
  auto cfg = config(10, 3);
  SolutionTrace tr = make_trace({}, {});
  for (auto [t, u] : tfode::starting_values(p, cfg)) {
    tr.times.push_back(t);
    tr.values.push_back(u);
    tr.rhs_values.push_back(0.0);
  }
  const auto rule = tfode::gauss_lobatto({p.alpha - 1.0, 0}, cfg.N);
  EXPECT_NEAR(tfode::jpc_step(p, cfg, tr, rule), 1.0, 1e-15);
}

TEST(JpcStep, ZeroRhsWithTemperingIsPureForcing) {
  const auto p = zero_rhs(0.6, 2.0, {1.0});
  auto cfg = config(10, 3);
  SolutionTrace tr = make_trace({}, {});
  for (auto [t, u] : tfode::starting_values(p, cfg)) {
    tr.times.push_back(t);
    tr.values.push_back(u);
    tr.rhs_values.push_back(0.0);
  }
  const auto rule = tfode::gauss_lobatto({p.alpha - 1.0, 0}, cfg.N);
  EXPECT_NEAR(tfode::jpc_step(p, cfg, tr, rule), std::exp(-2.0 * 0.3), 1e-15);
}

TEST(JpcStep, NeedsFullStencil) {
  const auto p = zero_rhs(0.6, 0.0, {1.0});
  const auto tr = make_trace({0.0, 0.1}, {0.0, 0.0});
  const auto rule = tfode::gauss_lobatto({-0.4, 0}, 20);
  EXPECT_THROW(tfode::jpc_step(p, config(10, 3), tr, rule), tfode::ConfigError);
}

TEST(StartingValues, ZeroRhsGivesForcing) {
  const auto p = zero_rhs(1.4, 1.5, {0.8, -0.3});
  const auto start = tfode::starting_values(p, config(10, 5));
  ASSERT_EQ(start.size(), 5u);
  for (auto [t, u] : start)
    EXPECT_NEAR(u, tfode::volterra_forcing(p, t), 1e-15);
}

TEST(StartingValues, ExactMode) {
  const auto p = example2(0.5, 2.0);
  auto cfg = config(20, 7);
  cfg.exact_start = true;
  const auto start = tfode::starting_values(p, cfg);
  for (auto [t, u] : start)
    EXPECT_DOUBLE_EQ(u, std::exp(-2.0 * t) * (std::pow(t, 8) + 2.25 * std::sqrt(t)));
}

TEST(StartingValues, ClassicalDecay) {
  Problem p = relaxation(1.0, 0.0);
  for (std::size_t R : {1u, 4u, 16u}) {
    auto cfg = config(10, 4);
    cfg.start_refine = R;
    const double h = 0.11 / static_cast<double>(R);
    for (auto [t, u] : tfode::starting_values(p, cfg))
      // PECE with a one-step predictor is Heun's method: global error ~ h^2 t / 6.
      EXPECT_LE(std::abs(u - std::exp(-t)), 0.2 * h * h * t + 1e-15) << R << ' ' << t;
  }
}

// --- full solves ----------------------------------------------------------

TEST(Solve, ZeroRhsEqualsForcing) {
  for (double alpha : {0.3, 1.0, 1.7})
    for (double lambda : {0.0, 3.0}) {
      const auto p = zero_rhs(alpha, lambda, alpha > 1 ? std::vector{1.3, 0.4} : std::vector{1.3});
      const auto tr = tfode::solve(p, config(40, 4));
      ASSERT_EQ(tr.size(), 41u);
      for (std::size_t n = 0; n < tr.size(); ++n)
        EXPECT_NEAR(tr.values[n], tfode::volterra_forcing(p, tr.times[n]), 1e-13);
    }
}

TEST(Solve, TraceInvariants) {
  const auto p = example2(0.5, 2.0);
  const auto tr = tfode::solve(p, config(40, 7));
  ASSERT_EQ(tr.size(), 41u);
  for (std::size_t n = 0; n < tr.size(); ++n) {
    EXPECT_NEAR(tr.times[n], n / 40.0, 1e-15);
    EXPECT_EQ(tr.rhs_values[n], p.rhs(tr.times[n], tr.values[n]));
  }
  EXPECT_EQ(tr.config.M, 40u);
  EXPECT_EQ(tr.problem.alpha, 0.5);
}

TEST(Solve, FirstTableEntry) {
  // Reported: 1.4040e-7 at tau = 1/20 and 6.3106e-10 at tau = 1/40.
  const auto p = example2(0.5, 2.0);
  const double e20 = max_error(tfode::solve(p, config(20, 7)));
  const double e40 = max_error(tfode::solve(p, config(40, 7)));
  EXPECT_LT(e20, 10 * 1.4040e-7);
  EXPECT_GT(e20, 1.4040e-7 / 10);
  EXPECT_LT(e40, 10 * 6.3106e-10);
  EXPECT_GT(e40, 6.3106e-10 / 10);
}

TEST(Solve, ThirdTableEntry) {
  const auto p = example2(1.5, 6.0);
  const double e = max_error(tfode::solve(p, config(80, 6)));
  EXPECT_LT(e, 10 * 3.8203e-12);
  EXPECT_GT(e, 3.8203e-12 / 10);
}

TEST(Solve, ExactAndRefinedStartsAgree) {
  const auto p = example2(0.5, 2.0);
  auto cfg = config(40, 7);
  const double refined = max_error(tfode::solve(p, cfg));
  cfg.exact_start = true;
  const double exact = max_error(tfode::solve(p, cfg));
  EXPECT_LT(exact, 10 * 6.3106e-10);
  EXPECT_NEAR(refined / exact, 1.0, 0.5);
}

TEST(Solve, OrderFollowsStencilSize) {
  const auto p = example2(0.5, 2.0);
  for (std::size_t N_I = 2; N_I <= 7; ++N_I) {
    const auto errors = halving_errors(p, N_I, {20, 40, 80, 160});
    for (std::size_t i = 1; i < errors.size(); ++i) {
      if (errors[i] < 1e-13)
        continue; // at the rounding floor
      const double order = std::log2(errors[i - 1] / errors[i]);
      EXPECT_GE(order, N_I - 0.8) << "N_I=" << N_I << " i=" << i;
      EXPECT_LE(order, N_I + 1.5) << "N_I=" << N_I << " i=" << i;
    }
  }
}

TEST(Solve, AlphaOneBehavesAsFirstOrderEquation) {
  const auto errors = halving_errors(example2(1.0, 2.0), 6, {10, 20, 40, 80});
  // Reported 1.2528e-5, 1.5673e-7, 2.1909e-9, 3.4124e-11.
  const double reference[] = {1.2528e-5, 1.5673e-7, 2.1909e-9, 3.4124e-11};
  for (std::size_t i = 0; i < errors.size(); ++i) {
    EXPECT_LT(errors[i], 10 * reference[i]);
    EXPECT_GT(errors[i], reference[i] / 10);
  }
}

TEST(Solve, RawInterpolationAlsoConverges) {
  const auto p = example2(0.5, 2.0);
  auto cfg = config(40, 5);
  cfg.interpolation = tfode::InterpolationTarget::Raw;
  const double e40 = max_error(tfode::solve(p, cfg));
  cfg.M = 80;
  const double e80 = max_error(tfode::solve(p, cfg));
  EXPECT_GT(std::log2(e40 / e80), 4.0);
  EXPECT_LT(e80, 1e-8);
}

// Solving for v = e^{lambda t} u with lambda = 0 is the same computation.
TEST(Solve, TemperingConsistency) {
  for (double alpha : {0.5, 1.5}) {
    const double lambda = 2.0;
    const auto p = example2(alpha, lambda);
    Problem q = p;
    q.lambda = 0.0;
    q.rhs = [&](double t, double v) { return std::exp(lambda * t) * p.rhs(t, std::exp(-lambda * t) * v); };
    const auto tu = tfode::solve(p, config(40, 6));
    const auto tv = tfode::solve(q, config(40, 6));
    for (std::size_t n = 0; n < tu.size(); ++n)
      EXPECT_NEAR(tu.values[n], std::exp(-lambda * tv.times[n]) * tv.values[n], 1e-9) << alpha << ' ' << n;
  }
}

// The relaxation equation is linear: shifting c0 by delta shifts u by
// delta e^{-lambda t} E_alpha(-mu t^alpha). The scheme is linear too, so the
// discrete shift is delta times the discrete solution, and it approximates the
// exact shift to relative discretisation accuracy.
TEST(Solve, ContinuousDependenceOnInitialData) {
  const double delta = 1e-3;
  for (double alpha : {0.6, 1.4}) {
    const auto p = relaxation(alpha, 1.0, 1.0, 1.0);
    const auto q = relaxation(alpha, 1.0, 1.0, 1.0 + delta);
    const auto tp = tfode::solve(p, config(110, 3));
    const auto tq = tfode::solve(q, config(110, 3));
    const double err = max_error(tp);
    for (std::size_t n = 0; n < tp.size(); ++n) {
      const double t = tp.times[n];
      const double shift = delta * std::exp(-t) * oracle::mittag_leffler(alpha, 1.0, -std::pow(t, alpha));
      EXPECT_NEAR(tq.values[n] - tp.values[n], delta * tp.values[n], 1e-15) << alpha << ' ' << t;
      EXPECT_NEAR(tq.values[n] - tp.values[n], shift, 1.01 * delta * err + 1e-15) << alpha << ' ' << t;
    }
  }
}

// Substitute the computed trace into the integral equation. Between nodes the
// trace is extended by local degree-6 interpolation of e^{lambda t} f, and the
// memory integral is computed cell by cell with adaptive quadrature.
TEST(Solve, VolterraResidualIsAtErrorLevel) {
  for (double lambda : {0.0, 2.0}) {
    const auto p = example2(0.5, lambda);
    const auto tr = tfode::solve(p, config(20, 7));
    const double err = max_error(tr);
    const std::size_t M = tr.size() - 1;
    const double tau = tr.times[1] - tr.times[0];
    auto g = [&](double s) {
      const double x = s / tau;
      const std::size_t start =
          static_cast<std::size_t>(std::clamp(std::floor(x) - 3.0, 0.0, static_cast<double>(M - 6)));
      double v = 0.0;
      for (std::size_t i = start; i < start + 7; ++i) {
        double l = 1.0;
        for (std::size_t k = start; k < start + 7; ++k)
          if (k != i)
            l *= (x - static_cast<double>(k)) / (static_cast<double>(i) - static_cast<double>(k));
        v += l * std::exp(lambda * tr.times[i]) * tr.rhs_values[i];
      }
      return v;
    };
    double residual = 0.0;
    for (std::size_t n = 1; n <= M; ++n) {
      const double t = tr.times[n];
      auto kernel = [&](double s) { return std::pow(t - s, p.alpha - 1.0) * std::exp(-lambda * t) * g(s); };
      double integral = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i)
        integral += oracle::integrate(kernel, tr.times[i], tr.times[i + 1], 1e-11);
      // Last cell in the distance w = t - s, so the singular end sits at w = 0.
      auto last = [&](double w) { return std::pow(w, p.alpha - 1.0) * std::exp(-lambda * t) * g(t - w); };
      integral += oracle::integrate_singular(last, 0.0, t - tr.times[n - 1], 1e-11);
      const double r = tr.values[n] - tfode::volterra_forcing(p, t) - integral / std::tgamma(p.alpha);
      residual = std::max(residual, std::abs(r));
    }
    EXPECT_LE(residual, 10 * err) << "lambda=" << lambda << " err=" << err;
  }
}

TEST(Solve, RiemannLiouvilleWithZeroDataMatchesCaputo) {
  for (double alpha : {0.5, 1.5}) {
    const auto caputo = tfode::solve(example2(alpha, 2.0), config(40, 5));
    const auto rl = tfode::solve(example2(alpha, 2.0, DerivativeKind::RiemannLiouville), config(40, 5));
    for (std::size_t n = 0; n < caputo.size(); ++n)
      EXPECT_NEAR(rl.values[n], caputo.values[n], 1e-14);
    EXPECT_NEAR(max_error(rl), max_error(caputo), 1e-14);
  }
}

// D_RL u = -u with g_0 = 1 and 1 < alpha < 2: u = e^{-lambda t} t^{alpha-1} E_{alpha,alpha}(-t^alpha).
TEST(Solve, RiemannLiouvilleWithInitialData) {
  const double alpha = 1.5, lambda = 1.0;
  Problem p;
  p.kind = DerivativeKind::RiemannLiouville;
  p.alpha = alpha;
  p.lambda = lambda;
  p.init = {1.0, 0.0};
  p.rhs = [](double, double u) { return -u; };
  p.exact = [=](double t) {
    return std::exp(-lambda * t) * std::pow(t, alpha - 1) * oracle::mittag_leffler(alpha, alpha, -std::pow(t, alpha));
  };
  std::vector<double> errors;
  for (std::size_t M : {20u, 40u, 80u})
    errors.push_back(max_error(tfode::solve(p, config(M, 3))));
  EXPECT_LT(errors.back(), 1e-4);
  EXPECT_LT(errors[2], errors[1]);
  EXPECT_LT(errors[1], errors[0]);
}

TEST(Solve, RiemannLiouvilleSingularForcingExcludesFirstNode) {
  Problem p;
  p.kind = DerivativeKind::RiemannLiouville;
  p.alpha = 0.5;
  p.lambda = 0.0;
  p.init = {1.0};
  p.rhs = [](double, double) { return 0.0; };
  const auto tr = tfode::solve(p, config(20, 3));
  EXPECT_TRUE(std::isfinite(tr.values[0]));
  for (std::size_t n = 1; n < tr.size(); ++n)
    EXPECT_NEAR(tr.values[n], tfode::volterra_forcing(p, tr.times[n]), 1e-13);
}

TEST(Solve, BlowUpIsReportedWithStep) {
  Problem p = zero_rhs(0.8, 0.0, {10.0});
  p.rhs = [](double, double u) { return u * u * u; };
  try {
    tfode::solve(p, config(200, 3));
    FAIL() << "expected blow-up";
  } catch (const tfode::BlowUpError& e) {
    EXPECT_GT(e.step(), 0u);
    EXPECT_GT(e.time(), 0.0);
  }
}

TEST(Solve, ConfigurationErrors) {
  auto p = example2(0.5, 1.0);
  EXPECT_THROW(tfode::solve(p, config(5, 7)), tfode::ConfigError);
  auto c = config(40, 3);
  c.N = 2;
  EXPECT_THROW(tfode::solve(p, c), tfode::ConfigError);
  EXPECT_THROW(tfode::solve(p, config(40, 1)), tfode::ConfigError);
  p.init = {0.0, 0.0};
  EXPECT_THROW(tfode::solve(p, config(40, 3)), tfode::ConfigError);
  p = example2(2.0, 1.0);
  EXPECT_THROW(tfode::solve(p, config(40, 3)), tfode::ConfigError);
  p = example2(1.0, 1.0, DerivativeKind::RiemannLiouville);
  EXPECT_THROW(tfode::solve(p, config(40, 3)), tfode::ConfigError);
  p = example2(0.5, -1.0);
  EXPECT_THROW(tfode::solve(p, config(40, 3)), tfode::ConfigError);
}

TEST(Solve, ConcurrentSolvesAreIndependent) {
  const auto p = example2(0.5, 2.0);
  const auto reference = tfode::solve(p, config(80, 7));
  std::vector<std::vector<double>> results(4);
  std::vector<std::thread> pool;
  for (auto& r : results)
    pool.emplace_back([&] { r = tfode::solve(p, config(80, 7)).values; });
  for (auto& t : pool)
    t.join();
  for (const auto& r : results)
    EXPECT_EQ(r, reference.values);
}

// --- split scheme ---------------------------------------------------------

TEST(SolveSplit, FourthTableEntry) {
  const double e = max_error(tfode::solve(relaxation(0.9, 5.0), split_config(40)));
  EXPECT_LT(e, 10 * 4.3478e-6);
  EXPECT_GT(e, 4.3478e-6 / 10);
}

TEST(SolveSplit, FifthTableEntry) {
  const double e = max_error(tfode::solve(relaxation(1.8, 10.0), split_config(160)));
  EXPECT_LT(e, 10 * 7.3208e-9);
  EXPECT_GT(e, 7.3208e-9 / 10);
}

TEST(SolveSplit, SecondOrderForSmootherSolutions) {
  for (double alpha : {0.9, 1.8}) {
    const auto p = relaxation(alpha, 5.0);
    const double e1 = max_error(tfode::solve(p, split_config(40)));
    const double e2 = max_error(tfode::solve(p, split_config(80)));
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.3) << alpha;
  }
}

TEST(SolveSplit, ZeroRhsMatchesPlainSolve) {
  const auto p = zero_rhs(0.7, 2.0, {1.5});
  auto c = config(50, 3);
  const auto plain = tfode::solve(p, c);
  c.split_T0 = 0.2;
  const auto split = tfode::solve(p, c);
  for (std::size_t n = 0; n < plain.size(); ++n)
    EXPECT_NEAR(split.values[n], plain.values[n], 1e-13);
}

TEST(SolveSplit, ExactStartMode) {
  auto c = split_config(40);
  c.exact_start = true;
  const double e = max_error(tfode::solve(relaxation(0.9, 5.0), c));
  EXPECT_LT(e, 10 * 4.3478e-6);
}

TEST(SolveSplit, SplitPointMustBeOnTheGrid) {
  const auto p = relaxation(0.9, 5.0);
  auto c = split_config(40);
  c.split_T0 = 0.11;
  EXPECT_THROW(tfode::solve(p, c), tfode::ConfigError);
  c.split_T0 = 1.2;
  EXPECT_THROW(tfode::solve(p, c), tfode::ConfigError);
  c.split_T0 = 1.1 - 1.0 / 40;
  c.N_I = 3;
  EXPECT_THROW(tfode::solve(p, c), tfode::ConfigError);
  EXPECT_THROW(tfode::solve_split(p, config(44, 2)), tfode::ConfigError);
}

// --- exact solutions -------------------------------------------------------

TEST(ExactSolutions, ExampleTwo) {
  EXPECT_EQ(tfode::exact_example2(0.5, 2.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(tfode::exact_example2(0.5, 0.0, 1.0), 3.25);
  EXPECT_DOUBLE_EQ(tfode::exact_example2(0.5, 2.0, 1.0), 3.25 * std::exp(-2.0));
}

TEST(ExactSolutions, ExampleThree) {
  EXPECT_DOUBLE_EQ(tfode::exact_example3(0.9, 5.0, 1.0, 0.0), 1.0);
  EXPECT_NEAR(tfode::exact_example3(1.0, 0.0, 1.0, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(tfode::exact_example3(0.9, 5.0, 1.0, 1.0), std::exp(-5.0) * oracle::mittag_leffler(0.9, 1.0, -1.0),
              1e-16);
}
