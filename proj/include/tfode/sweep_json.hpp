#pragma once

// Sweep <-> JSON. The document is flat and mirrors Sweep's fields:
//
//   {
//     "problem": "example2",            builtin name, or "inline" with rhs/exact/init/kind
//     "alpha": [0.5], "lambda": [0, 2, 6],
//     "tau": ["1/10", "1/20", 0.025],   numbers or "p/q" strings
//     "a": 0, "b": 1, "mu": 1,
//     "N": 20, "N_I": 7, "start_refine": 64, "corrector_iters": 1,
//     "split_t0": 0.1, "n_tilde": 40, "exact_start": false,
//     "kind": "caputo" | "rl", "rhs": "-u", "exact": "exp(-lambda*t)", "init": [1],
//     "output": "report.csv", "timing": false, "threads": 0
//   }
//
// Scalars are accepted where lists are expected. Unknown keys are rejected.

#include <charconv>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfode/errors.hpp"
#include "tfode/harness.hpp"

namespace tfode {

/// "0.025", "1/40" or "2.5e-2".
inline double parse_step(const std::string& text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw ConfigError("bad step size '" + text + "'");
    return v;
  };
  const std::string_view sv(text);
  const auto slash = sv.find('/');
  if (slash == std::string_view::npos)
    return number(sv);
  const double den = number(sv.substr(slash + 1));
  if (den == 0.0)
    throw ConfigError("bad step size '" + text + "'");
  return number(sv.substr(0, slash)) / den;
}

namespace detail {

inline std::vector<double> number_list(const nlohmann::json& v, const char* key, bool fractions) {
  auto one = [&](const nlohmann::json& x) {
    if (x.is_number())
      return x.get<double>();
    if (fractions && x.is_string())
      return parse_step(x.get<std::string>());
    throw ConfigError(std::string("'") + key + "' must hold numbers");
  };
  std::vector<double> out;
  if (v.is_array())
    for (const auto& x : v)
      out.push_back(one(x));
  else
    out.push_back(one(v));
  return out;
}

inline std::size_t count_value(const nlohmann::json& v, const char* key) {
  if (!v.is_number_unsigned())
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

} // namespace detail

/// Applies the keys present in `j` on top of `s`.
inline Sweep sweep_from_json(const nlohmann::json& j, Sweep s = {}) {
  if (!j.is_object())
    throw ConfigError("sweep config must be a JSON object");
  static const std::set<std::string> known{
      "problem", "alpha", "lambda", "tau", "a", "b", "mu", "N", "N_I", "start_refine",
      "corrector_iters", "split_t0", "n_tilde", "exact_start", "kind", "rhs", "exact", "init",
      "output", "timing", "threads"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw ConfigError("unknown sweep key '" + key + "'");

  auto real = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number())
      throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
  };
  auto text = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_string())
      throw ConfigError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  };
  auto flag = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_boolean())
      throw ConfigError(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
  };

  if (j.contains("problem"))
    s.problem = text("problem");
  if (j.contains("alpha"))
    s.alphas = detail::number_list(j["alpha"], "alpha", false);
  if (j.contains("lambda"))
    s.lambdas = detail::number_list(j["lambda"], "lambda", false);
  if (j.contains("tau"))
    s.taus = detail::number_list(j["tau"], "tau", true);
  if (j.contains("a"))
    s.a = real("a");
  if (j.contains("b"))
    s.b = real("b");
  if (j.contains("mu"))
    s.mu = real("mu");
  if (j.contains("N"))
    s.N = detail::count_value(j["N"], "N");
  if (j.contains("N_I"))
    s.N_I = detail::count_value(j["N_I"], "N_I");
  if (j.contains("start_refine"))
    s.start_refine = detail::count_value(j["start_refine"], "start_refine");
  if (j.contains("corrector_iters"))
    s.corrector_iters = detail::count_value(j["corrector_iters"], "corrector_iters");
  if (j.contains("split_t0")) {
    if (j["split_t0"].is_null())
      s.split_T0.reset();
    else
      s.split_T0 = real("split_t0");
  }
  if (j.contains("n_tilde"))
    s.N_tilde = detail::count_value(j["n_tilde"], "n_tilde");
  if (j.contains("exact_start"))
    s.exact_start = flag("exact_start");
  if (j.contains("output"))
    s.output = text("output");
  if (j.contains("timing"))
    s.timing = flag("timing");
  if (j.contains("threads"))
    s.threads = static_cast<unsigned>(detail::count_value(j["threads"], "threads"));

  const bool inline_keys = j.contains("rhs") || j.contains("exact") || j.contains("init") || j.contains("kind");
  if (s.problem == "inline") {
    InlineProblem def = s.inline_problem.value_or(InlineProblem{});
    if (j.contains("rhs"))
      def.rhs = text("rhs");
    if (j.contains("exact"))
      def.exact = text("exact");
    if (j.contains("init"))
      def.init = detail::number_list(j["init"], "init", false);
    if (j.contains("kind")) {
      const std::string kind = text("kind");
      if (kind == "caputo")
        def.kind = DerivativeKind::Caputo;
      else if (kind == "rl")
        def.kind = DerivativeKind::RiemannLiouville;
      else
        throw ConfigError("'kind' must be \"caputo\" or \"rl\"");
    }
    if (def.rhs.empty())
      throw ConfigError("inline problem needs 'rhs'");
    s.inline_problem = def;
  } else {
    if (inline_keys)
      throw ConfigError("'rhs', 'exact', 'init' and 'kind' need \"problem\": \"inline\"");
    s.inline_problem.reset();
  }
  return s;
}

/// Configuration echo for report metadata.
inline nlohmann::json sweep_to_json(const Sweep& s) {
  nlohmann::json j;
  j["problem"] = s.inline_problem ? "inline" : s.problem;
  j["alpha"] = s.alphas;
  j["lambda"] = s.lambdas;
  j["tau"] = s.taus;
  j["a"] = s.a;
  j["b"] = s.b;
  j["mu"] = s.mu;
  j["N"] = s.N;
  j["N_I"] = s.N_I;
  j["start_refine"] = s.start_refine;
  j["corrector_iters"] = s.corrector_iters;
  j["split_t0"] = s.split_T0 ? nlohmann::json(*s.split_T0) : nlohmann::json(nullptr);
  j["n_tilde"] = s.N_tilde;
  j["exact_start"] = s.exact_start;
  if (s.inline_problem) {
    j["kind"] = s.inline_problem->kind == DerivativeKind::Caputo ? "caputo" : "rl";
    j["rhs"] = s.inline_problem->rhs;
    if (!s.inline_problem->exact.empty())
      j["exact"] = s.inline_problem->exact;
    j["init"] = s.inline_problem->init;
  }
  if (!s.output.empty())
    j["output"] = s.output;
  j["timing"] = s.timing;
  j["threads"] = s.threads;
  return j;
}

} // namespace tfode
