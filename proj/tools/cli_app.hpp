#ifndef CFL_TOOLS_CLI_APP_HPP
#define CFL_TOOLS_CLI_APP_HPP

// Command-line front end. Exit codes: 0 success, 1 audit failure,
// 2 input error, 3 numerical or resource error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acceptance_criteria.hpp"
#include "cfl/cliques.hpp"
#include "cfl/error.hpp"
#include "cfl/gen.hpp"
#include "cfl/graph_io.hpp"
#include "cfl/lp_factor.hpp"
#include "cfl/pipeline.hpp"
#include "cfl/report_json.hpp"
#include "cfl/spectral.hpp"

namespace cfl::cli {

enum ExitCode : int { kOk = 0, kAuditFailure = 1, kInputError = 2, kNumericalError = 3 };

namespace detail {

inline void emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string bytes = serialize_report(j);
  if (path.empty()) out << bytes;
  else write_text_file_atomic(path, bytes);
}

template <class T>
std::map<std::string, T> name_map(std::initializer_list<std::pair<const std::string, T>> items) {
  return std::map<std::string, T>(items);
}

}  // namespace detail

struct GenArgs {
  GenKind kind = GenKind::complete;
  int n = 0, d = 0, q = 0;
  std::vector<int> offsets;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct SpectrumArgs {
  std::string in, out;
  double tol = 1e-9;
  EigenMethod method = EigenMethod::automatic;
  std::optional<int> t;
};

struct MixingArgs {
  std::string in, out;
  long samples = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

struct CliquesArgs {
  std::string in, out;
  int t = 3;
  std::optional<int> window;
  std::optional<int> vertex;
  int target = 1;
  std::vector<int> property;  // D D'
  std::optional<int> span;
  bool span_default = false;
  long trials = 50;
  std::uint64_t seed = 1;
};

struct LpArgs {
  std::string in, out;
  int t = 3;
  double tol = kDefaultLpTol;
  FactorPolicy policy = FactorPolicy::vertex;
  bool properties = false;
  std::uint64_t seed = 1;
};

struct PipelineArgs {
  std::string in, out, csv;
  PipelineConfig config;
  std::optional<int> ell;
  std::optional<double> alpha;
  bool force = false;
  int runs = 1;
  bool no_integral = false;
  bool no_improve = false;
};

inline int run_gen(const GenArgs& a, std::ostream& out) {
  if (a.kind == GenKind::random_regular && !a.seed) throw InputError("random_regular needs --seed");
  const GenSpec spec{a.kind, a.n, a.d, a.q, a.offsets, a.seed.value_or(0)};
  const Graph g = generate(spec);
  if (a.out.empty()) write_graph(out, g);
  else write_graph_file(a.out, g);
  return kOk;
}

inline int run_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const Graph g = read_any_graph_file(a.in).graph();
  const auto cert = second_eigenvalue(g, a.tol, a.method);
  Json j{{"certificate", to_json(cert)}, {"lambda_floor", to_string(lambda_floor_check(cert))}, {"hypothesis", nullptr}};
  if (a.t) j["hypothesis"] = to_json(hypothesis_check(cert, *a.t));
  detail::emit(j, a.out, out);
  return kOk;
}

inline int run_mixing(const MixingArgs& a, std::ostream& out) {
  const Graph g = read_any_graph_file(a.in).graph();
  const auto cert = second_eigenvalue(g, a.tol);
  const auto audit = mixing_audit(g, cert, a.samples, a.seed);
  detail::emit({{"certificate", to_json(cert)}, {"audit", to_json(audit)}, {"seed", a.seed}}, a.out, out);
  return audit.violated ? kAuditFailure : kOk;
}

inline int run_cliques(const CliquesArgs& a, std::ostream& out) {
  const Graph g = read_any_graph_file(a.in).graph();
  const int n = g.num_vertices();
  bool failed = false;
  Json j{{"t", a.t}, {"n", n}, {"count", count_cliques(g, a.t)}};
  if (a.window) {
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    const auto w = count_cliques_window(g, Graph(n, {}), all, *a.window);
    j["window"] = to_json(w);
    j["window"]["i"] = *a.window;
    failed |= !w.within;
  }
  if (a.vertex) {
    const auto fam = vertex_family(g, Graph(n, {}), *a.vertex, a.t, a.target);
    j["family"] = {{"v", fam.v}, {"target", a.target}, {"cliques", fam.cliques}};
    failed |= static_cast<int>(fam.cliques.size()) < a.target;
  }
  if (!a.property.empty()) {
    if (a.property.size() != 2) throw InputError("--property takes D and D'");
    const auto p = property_P_audit(g, a.t, a.property[0], a.property[1], a.trials, a.seed);
    j["property"] = to_json(p);
    failed |= p.failures > 0;
  }
  if (a.span || a.span_default) {
    const int size = a.span ? *a.span : std::min(n, default_span_size(n, a.t));
    const auto s = span_clique_audit(g, a.t, size, a.trials, derive_seed(a.seed, 1));
    j["span"] = to_json(s);
    failed |= s.failures > 0;
  }
  detail::emit(j, a.out, out);
  return failed ? kAuditFailure : kOk;
}

inline int run_lp(const LpArgs& a, std::ostream& out) {
  const auto wg = read_any_graph_file(a.in);
  const auto cliques = enumerate_cliques(wg.graph(), a.t);
  const auto sol = solve_fractional_matching(wg, cliques, a.tol);
  const auto cert = has_fractional_factor(wg, cliques, a.tol, a.policy);
  const auto slack = complementary_slackness(wg, cliques, sol.primal, sol.dual, a.tol);
  Json j{{"t", a.t},
         {"cliques", cliques.size()},
         {"primal", to_json(cliques, sol.primal, a.tol)},
         {"dual", to_json(wg, sol.dual, a.tol)},
         {"factor", to_json(cliques, cert, a.tol)},
         {"slackness", to_json(slack)},
         {"properties", nullptr}};
  bool failed = !slack.ok;
  if (a.properties) {
    const auto p = check_lp_properties(wg, a.t, a.tol, a.seed);
    j["properties"] = to_json(p);
    failed |= !p.all_ok();
  }
  detail::emit(j, a.out, out);
  return failed ? kAuditFailure : kOk;
}

inline int run_pipeline(const PipelineArgs& a, std::ostream& out, std::ostream& err) {
  const Graph g = read_any_graph_file(a.in).graph();
  PipelineConfig config = a.config;
  config.ell = a.ell;
  config.alpha = a.alpha;
  config.prefer_integral = !a.no_integral;
  config.improve = !a.no_improve;
  if (!a.force) {
    const auto hyp = hypothesis_check(second_eigenvalue(g), config.t);
    if (hyp.branch == Branch::fails) {
      err << "hypothesis check fails (lambda " << hyp.lambda << " > bound " << hyp.lambda_bound
          << "); rerun with --force to proceed\n";
      return kAuditFailure;
    }
  }
  std::string csv = "seed,ell_achieved,uncovered_count,runtime_ms\n";
  std::optional<PipelineReport> first;
  for (int k = 0; k < a.runs; ++k) {
    config.seed = a.config.seed + static_cast<std::uint64_t>(k);
    const auto start = std::chrono::steady_clock::now();
    auto report = run_end_to_end(g, config);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    csv += std::to_string(config.seed) + "," + std::to_string(report.ell_achieved) + "," +
           std::to_string(report.matching.uncovered_count) + "," + std::to_string(static_cast<long>(std::lround(ms))) + "\n";
    if (!first) first = std::move(report);
  }
  detail::emit(to_json(*first), a.out, out);
  if (!a.csv.empty()) write_text_file_atomic(a.csv, csv);
  if (first->ell_achieved < first->ell_target) {
    err << "extracted " << first->ell_achieved << " of " << first->ell_target << " factors\n";
    return kAuditFailure;
  }
  return kOk;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline int run_suite(std::ostream& out) {
  std::ostringstream sink;
  const auto results = acceptance::run_all([&](const std::vector<std::string>& a) { return dispatch(a, sink, sink); });
  bool ok = true;
  for (const auto& r : results) {
    out << acceptance::format_line(r) << '\n';
    ok &= r.pass;
  }
  out << (ok ? "all criteria pass" : "some criteria fail") << '\n';
  return ok ? kOk : kAuditFailure;
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clique factors of pseudorandom graphs: generators, spectral audits, LPs and the extraction pipeline",
               "cfl"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated graph");
  gen_cmd->add_option("--kind", gen.kind, "complete | paley | circulant | random_regular")
      ->required()
      ->transform(CLI::CheckedTransformer(detail::name_map<GenKind>({{"complete", GenKind::complete},
                                                                     {"paley", GenKind::paley},
                                                                     {"circulant", GenKind::circulant},
                                                                     {"random_regular", GenKind::random_regular}})));
  gen_cmd->add_option("--n", gen.n, "vertex count");
  gen_cmd->add_option("--d", gen.d, "degree (random_regular)");
  gen_cmd->add_option("--q", gen.q, "prime q = 1 mod 4 (paley)");
  gen_cmd->add_option("--offsets", gen.offsets, "connection set (circulant)");
  gen_cmd->add_option("--seed", gen.seed, "seed (random_regular)");
  gen_cmd->add_option("--out", gen.out, "output path (default stdout)");

  SpectrumArgs spec;
  auto* spec_cmd = app.add_subcommand("spectrum", "second eigenvalue certificate");
  spec_cmd->add_option("--in", spec.in, "graph file")->required();
  spec_cmd->add_option("--tol", spec.tol, "eigenpair residual tolerance");
  spec_cmd->add_option("--method", spec.method, "auto | dense | power")
      ->transform(CLI::CheckedTransformer(detail::name_map<EigenMethod>({{"auto", EigenMethod::automatic},
                                                                         {"dense", EigenMethod::dense_eig},
                                                                         {"power", EigenMethod::power_iter}})));
  spec_cmd->add_option("--t", spec.t, "also evaluate the degree and lambda thresholds for K_t");
  spec_cmd->add_option("--out", spec.out, "output path (default stdout)");

  MixingArgs mix;
  auto* mix_cmd = app.add_subcommand("audit-mixing", "sampled expander mixing audit");
  mix_cmd->add_option("--in", mix.in, "graph file")->required();
  mix_cmd->add_option("--samples", mix.samples, "number of (A,B) pairs");
  mix_cmd->add_option("--seed", mix.seed, "seed")->required();
  mix_cmd->add_option("--tol", mix.tol, "eigenpair residual tolerance");
  mix_cmd->add_option("--out", mix.out, "output path (default stdout)");

  CliquesArgs cq;
  auto* cq_cmd = app.add_subcommand("cliques", "clique counts, windows and audits");
  cq_cmd->add_option("--in", cq.in, "graph file")->required();
  cq_cmd->add_option("--t", cq.t, "clique order");
  cq_cmd->add_option("--window", cq.window, "check the K_i count window on U = V");
  cq_cmd->add_option("--vertex", cq.vertex, "build a family of K_t through this vertex");
  cq_cmd->add_option("--target", cq.target, "family size to aim for");
  cq_cmd->add_option("--property", cq.property, "audit property P with D and D'")->expected(2);
  cq_cmd->add_option("--span", cq.span, "audit that every subset of this size spans a K_t");
  cq_cmd->add_flag("--span-default", cq.span_default, "span audit at size ceil(0.11 n / t)");
  cq_cmd->add_option("--trials", cq.trials, "samples per audit");
  cq_cmd->add_option("--seed", cq.seed, "seed");
  cq_cmd->add_option("--out", cq.out, "output path (default stdout)");

  LpArgs lp;
  auto* lp_cmd = app.add_subcommand("lp", "fractional K_t-matching primal, dual and factor certificate");
  lp_cmd->add_option("--in", lp.in, "graph file, optionally weighted")->required();
  lp_cmd->add_option("--t", lp.t, "clique order");
  lp_cmd->add_option("--tol", lp.tol, "LP tolerance");
  lp_cmd->add_option("--policy", lp.policy, "vertex | balanced")
      ->transform(CLI::CheckedTransformer(
          detail::name_map<FactorPolicy>({{"vertex", FactorPolicy::vertex}, {"balanced", FactorPolicy::balanced}})));
  lp_cmd->add_flag("--properties", lp.properties, "also check the LP bounds and dual restriction");
  lp_cmd->add_option("--seed", lp.seed, "seed for the restriction subset");
  lp_cmd->add_option("--out", lp.out, "output path (default stdout)");

  PipelineArgs pl;
  auto* pl_cmd = app.add_subcommand("pipeline", "extract factors, sample H_f and match");
  pl_cmd->add_option("--in", pl.in, "regular graph file")->required();
  pl_cmd->add_option("--t", pl.config.t, "clique order");
  pl_cmd->add_option("--mode", pl.config.mode, "auto | dense | sparse")
      ->transform(CLI::CheckedTransformer(detail::name_map<ModeChoice>(
          {{"auto", ModeChoice::automatic}, {"dense", ModeChoice::dense}, {"sparse", ModeChoice::sparse}})));
  pl_cmd->add_option("--ell", pl.ell, "number of factors (default max(2, floor(n^beta)))");
  pl_cmd->add_option("--alpha", pl.alpha, "rich-edge threshold for the dense engine");
  pl_cmd->add_option("--epsilon", pl.config.epsilon, "nibble activation constant");
  pl_cmd->add_option("--matching", pl.config.match, "nibble | greedy")
      ->transform(CLI::CheckedTransformer(
          detail::name_map<MatchMode>({{"nibble", MatchMode::nibble}, {"greedy", MatchMode::greedy}})));
  pl_cmd->add_option("--policy", pl.config.policy, "vertex | balanced")
      ->transform(CLI::CheckedTransformer(
          detail::name_map<FactorPolicy>({{"vertex", FactorPolicy::vertex}, {"balanced", FactorPolicy::balanced}})));
  pl_cmd->add_flag("--no-integral", pl.no_integral, "never substitute an exact K_t-partition for the LP factor");
  pl_cmd->add_flag("--no-improve", pl.no_improve, "skip the local improvement phase of the matching");
  pl_cmd->add_option("--tol", pl.config.tol, "LP tolerance");
  pl_cmd->add_option("--seed", pl.config.seed, "seed")->required();
  pl_cmd->add_flag("--force", pl.force, "run even when the hypothesis check fails");
  pl_cmd->add_option("--runs", pl.runs, "consecutive seeds to run; the report covers the first")->check(CLI::PositiveNumber);
  pl_cmd->add_option("--csv", pl.csv, "per-seed coverage table");
  pl_cmd->add_option("--out", pl.out, "report path (default stdout)");

  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance criteria and print a pass/fail table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*spec_cmd) return run_spectrum(spec, out);
    if (*mix_cmd) return run_mixing(mix, out);
    if (*cq_cmd) return run_cliques(cq, out);
    if (*lp_cmd) return run_lp(lp, out);
    if (*pl_cmd) return run_pipeline(pl, out, err);
    if (*suite_cmd) return run_suite(out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kInputError;
}

}  // namespace cfl::cli

#endif  // CFL_TOOLS_CLI_APP_HPP
