// Command-line front end: single solves, convergence sweeps and the canned
// convergence tables.
//
// Exit codes: 0 success, 2 configuration error, 3 solver blow-up,
// 4 expression parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfode/sweep_json.hpp"
#include "tfode/tfode.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_blowup = 3;
constexpr int exit_parse = 4;

constexpr std::string_view builtin_prefix = "builtin:";

struct SolveOptions {
  std::string kind = "caputo";
  double alpha = 0.5;
  double lambda = 0.0;
  double mu = 1.0;
  std::string init;
  std::string rhs;
  std::string exact;
  double a = 0.0;
  double b = 1.0;
  std::size_t steps = 100;
  std::size_t N = 20;
  std::size_t N_I = 3;
  std::size_t start_refine = 64;
  std::optional<double> split_t0;
  std::size_t n_tilde = 40;
  std::string out;
};

struct SweepOptions {
  std::string config;
  std::string out;
  std::string metadata;
  std::optional<unsigned> threads;
  bool timing = false;
};

struct TableOptions {
  int which = 1;
  std::string out;
  std::string metadata;
  bool timing = false;
  std::optional<unsigned> threads;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw tfode::ConfigError("bad number '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

std::optional<std::string> builtin_name(const std::string& spec) {
  if (spec.rfind(builtin_prefix, 0) == 0)
    return spec.substr(builtin_prefix.size());
  return std::nullopt;
}

/// Writes to `path`, or stdout when it is empty or "-".
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw tfode::ConfigError("cannot open '" + path + "' for writing");
  fn(os);
  if (!os)
    throw tfode::ConfigError("failed writing '" + path + "'");
}

int run_solve(const SolveOptions& o) {
  tfode::Problem p;
  if (o.kind == "caputo")
    p.kind = tfode::DerivativeKind::Caputo;
  else if (o.kind == "rl")
    p.kind = tfode::DerivativeKind::RiemannLiouville;
  else
    throw tfode::ConfigError("--kind must be caputo or rl");
  p.alpha = o.alpha;
  p.lambda = o.lambda;
  p.a = o.a;
  p.b = o.b;

  if (auto name = builtin_name(o.rhs)) {
    const tfode::Problem builtin = tfode::builtin_problem(*name, o.alpha, o.lambda, o.mu, o.b);
    p.rhs = builtin.rhs;
    p.init = builtin.init;
    if (p.a == 0.0 && p.kind == tfode::DerivativeKind::Caputo)
      p.exact = builtin.exact; // builtins know their solution; --exact overrides

  } else {
    tfode::InlineProblem def{p.kind, o.rhs, "", {}};
    p.rhs = tfode::inline_problem(def, o.alpha, o.lambda, o.mu, o.a, o.b).rhs;
  }
  if (!o.init.empty())
    p.init = parse_list(o.init);
  if (!o.exact.empty()) {
    if (auto name = builtin_name(o.exact))
      p.exact = tfode::builtin_problem(*name, o.alpha, o.lambda, o.mu, o.b).exact;
    else
      p.exact = tfode::inline_problem({p.kind, "0", o.exact, {}}, o.alpha, o.lambda, o.mu, o.a, o.b).exact;
  }

  tfode::SolverConfig cfg;
  cfg.M = o.steps;
  cfg.N = o.N;
  cfg.N_I = o.N_I;
  cfg.start_refine = o.start_refine;
  cfg.split_T0 = o.split_t0;
  cfg.N_tilde = o.n_tilde;

  const tfode::SolutionTrace trace = tfode::solve(p, cfg);
  with_output(o.out, [&](std::ostream& os) {
    os << (p.exact ? "t,u,u_exact,abs_error\n" : "t,u\n");
    char buf[128];
    for (std::size_t n = 0; n < trace.size(); ++n) {
      const double t = trace.times[n], u = trace.values[n];
      if (p.exact) {
        const double ue = p.exact(t);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.6e\n", t, u, ue, std::abs(u - ue));
      } else {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, u);
      }
      os << buf;
    }
  });
  return 0;
}

void report_failures(const std::vector<tfode::ConvergenceReport>& reports) {
  for (const auto& rep : reports)
    for (const auto& row : rep.rows)
      if (!row.failure.empty())
        std::cerr << "alpha=" << rep.alpha << " lambda=" << rep.lambda << " tau=" << row.tau << ": "
                  << row.failure << '\n';
}

int run_sweep_command(tfode::Sweep s, const std::string& out, const std::string& metadata) {
  const auto reports = tfode::run_sweep(s);
  with_output(out.empty() ? s.output : out,
              [&](std::ostream& os) { tfode::write_report_csv(os, reports, s.timing); });
  if (!metadata.empty())
    with_output(metadata, [&](std::ostream& os) { os << tfode::sweep_to_json(s).dump(2) << '\n'; });
  report_failures(reports);
  return 0;
}

int run_sweep_file(const SweepOptions& o) {
  std::ifstream is(o.config);
  if (!is)
    throw tfode::ConfigError("cannot open config '" + o.config + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw tfode::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  tfode::Sweep s = tfode::sweep_from_json(j);
  if (o.threads)
    s.threads = *o.threads;
  if (o.timing)
    s.timing = true;
  return run_sweep_command(s, o.out, o.metadata);
}

int run_tables(const TableOptions& o) {
  tfode::Sweep s = tfode::table_sweep(o.which);
  s.timing = o.timing;
  if (o.threads)
    s.threads = *o.threads;
  return run_sweep_command(s, o.out, o.metadata);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tempered fractional ODE solver"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Solve one problem and write the trace as CSV");
  solve->add_option("--kind", so.kind, "caputo or rl")->capture_default_str();
  solve->add_option("--alpha", so.alpha, "Derivative order in (0, 2)")->capture_default_str();
  solve->add_option("--lambda", so.lambda, "Tempering rate >= 0")->capture_default_str();
  solve->add_option("--mu", so.mu, "Value of the variable mu in expressions and builtins")->capture_default_str();
  solve->add_option("--init", so.init, "Initial values c0[,c1]");
  solve->add_option("--rhs", so.rhs, "f(t, u) as an expression, or builtin:NAME")->required();
  solve->add_option("--exact", so.exact, "Exact solution u(t) as an expression, or builtin:NAME");
  solve->add_option("--a", so.a, "Left end point")->capture_default_str();
  solve->add_option("--b", so.b, "Right end point")->capture_default_str();
  solve->add_option("--steps", so.steps, "Number of steps M")->capture_default_str();
  solve->add_option("--N", so.N, "Jacobi-Gauss-Lobatto degree")->capture_default_str();
  solve->add_option("--NI", so.N_I, "Interpolation stencil size")->capture_default_str();
  solve->add_option("--start-refine", so.start_refine, "Refinement of the starting procedure")->capture_default_str();
  solve->add_option("--split-t0", so.split_t0, "Split point T0 for non-smooth solutions");
  solve->add_option("--ntilde", so.n_tilde, "Unit-weight rule degree on [a, T0]")->capture_default_str();
  solve->add_option("--out", so.out, "Output CSV (default stdout)");

  SweepOptions wo;
  auto* sweep = app.add_subcommand("sweep", "Run a convergence sweep from a JSON config");
  sweep->add_option("--config", wo.config, "Sweep configuration (JSON)")->required();
  sweep->add_option("--out", wo.out, "Report CSV (overrides the config's output)");
  sweep->add_option("--metadata", wo.metadata, "Also write the effective configuration as JSON");
  sweep->add_option("--threads", wo.threads, "Worker threads (0: all cores)");
  sweep->add_flag("--timing", wo.timing, "Fill the wall_ms column");

  TableOptions to;
  auto* tables = app.add_subcommand("tables", "Reproduce one of the five convergence tables");
  tables->add_option("--which", to.which, "Table number")->check(CLI::Range(1, 5))->required();
  tables->add_option("--out", to.out, "Report CSV (default stdout)");
  tables->add_option("--metadata", to.metadata, "Also write the effective configuration as JSON");
  tables->add_option("--threads", to.threads, "Worker threads (0: all cores)");
  tables->add_flag("--timing", to.timing, "Fill the wall_ms column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (*solve)
      return run_solve(so);
    if (*sweep)
      return run_sweep_file(wo);
    return run_tables(to);
  } catch (const tfode::expr::ParseError& e) {
    std::cerr << "parse error " << e.what() << '\n';
    return exit_parse;
  } catch (const tfode::BlowUpError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_blowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  }
}
