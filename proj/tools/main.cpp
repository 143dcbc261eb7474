// Command-line front end: graph generation, Monte Carlo protocol runs, the
// lower-bound experiment suites, and distribution table printing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radiosim/channel.hpp"
#include "radiosim/distribution.hpp"
#include "radiosim/graph.hpp"
#include "radiosim/metrics.hpp"
#include "radiosim/protocols.hpp"
#include "radiosim/rng.hpp"
#include "radiosim/trace.hpp"

namespace fs = std::filesystem;
using namespace radiosim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBelowThreshold = 1;
constexpr int kExitConfigError = 2;

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void print_summary(const DirectedGraph& g) {
  const GraphSummary s = summarize_graph(g);
  std::cout << "nodes " << s.n << "  edges " << s.edges
            << "  avg-out-degree " << s.avg_out_degree << '\n';
  if (s.source_eccentricity)
    std::cout << "source eccentricity " << *s.source_eccentricity << '\n';
  else
    std::cout << "source eccentricity unreachable\n";
  if (s.diameter_estimate)
    std::cout << "diameter estimate " << *s.diameter_estimate << '\n';
}

// Parses "alpha", "alpha-prime" or "point:<k>" against (n, D).
ProbabilityTable make_distribution(const std::string& spec, std::uint32_t n,
                                   std::uint32_t diameter,
                                   std::optional<double> lambda_override) {
  if (spec == "alpha") return alpha_distribution(n, diameter, lambda_override);
  if (spec == "alpha-prime") return alpha_prime_distribution(n, diameter);
  if (spec.rfind("point:", 0) == 0) {
    const std::uint32_t k =
        static_cast<std::uint32_t>(std::stoul(spec.substr(6)));
    const std::uint32_t max_k = static_cast<std::uint32_t>(
        std::ceil(std::log2(static_cast<double>(std::max(2u, n)))));
    return point_mass(k, std::max(k, max_k));
  }
  throw std::invalid_argument("unknown distribution: " + spec);
}

struct RunOptions {
  std::string protocol;
  std::uint32_t n = 0;
  double p = -1.0;
  std::uint32_t diameter = 0;
  std::string graph_file;
  std::string dist_spec = "alpha";
  std::uint64_t seed = 1;
  std::uint32_t trials = 1;
  double beta = 8.0;
  double lambda_override = 0.0;
  double threshold = 0.95;
  std::uint32_t round_cap = 0;
  double gossip_multiplier = 128.0;
  std::string out_dir;
  bool reproducible = false;
};

int cmd_run(const RunOptions& opt) {
  const bool has_graph = !opt.graph_file.empty();
  const bool has_p = opt.p >= 0.0;
  if (has_graph == has_p) {
    std::cerr << "run: supply exactly one of --p or --graph\n";
    return kExitConfigError;
  }

  DirectedGraph fixed_graph;
  if (has_graph) fixed_graph = read_graph_file(opt.graph_file);
  const std::uint32_t n = has_graph ? fixed_graph.n : opt.n;
  if (n == 0) {
    std::cerr << "run: --n required with --p\n";
    return kExitConfigError;
  }
  if (has_p && !gnp_regime_ok(n, opt.p))
    std::cerr << "warning: p*n/ln(n) < 8, G(n,p) may be disconnected\n";

  std::optional<ProbabilityTable> dist;
  if (opt.protocol == "broadcast-general") {
    if (opt.diameter == 0 && opt.dist_spec.rfind("point:", 0) != 0) {
      std::cerr << "run: broadcast-general needs --D for the distribution\n";
      return kExitConfigError;
    }
    dist = make_distribution(
        opt.dist_spec, n, opt.diameter,
        opt.lambda_override > 0.0 ? std::optional<double>(opt.lambda_override)
                                  : std::nullopt);
  }

  std::vector<Trace> traces;
  traces.reserve(opt.trials);
  for (std::uint32_t i = 0; i < opt.trials; ++i) {
    const std::uint64_t trial_seed = opt.seed + i;
    if (!has_graph) fixed_graph = gen_gnp_directed(n, opt.p, trial_seed);
    const DirectedGraph& g = fixed_graph;
    RunConfig cfg{trial_seed, opt.round_cap};
    if (opt.protocol == "broadcast-random") {
      traces.push_back(broadcast_random(
          g, 0, derive_phase_params(n, opt.p, opt.beta), cfg));
    } else if (opt.protocol == "gossip-random") {
      const double d = has_p ? static_cast<double>(n) * opt.p
                             : summarize_graph(g).avg_out_degree;
      traces.push_back(gossip_random(g, d, cfg, opt.gossip_multiplier));
    } else if (opt.protocol == "broadcast-general") {
      traces.push_back(broadcast_general(g, 0, *dist, opt.beta, cfg));
    } else {
      std::cerr << "run: unknown protocol " << opt.protocol << '\n';
      return kExitConfigError;
    }
  }

  const TrialSummary summary = summarize(traces);
  const std::string p_or_d =
      has_p ? ("p=" + std::to_string(opt.p))
            : (opt.diameter ? "D=" + std::to_string(opt.diameter)
                            : "graph=" + opt.graph_file);

  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "trace_%04zu.json", i);
      write_trace_file((fs::path(opt.out_dir) / name).string(), traces[i]);
    }
    const fs::path csv = fs::path(opt.out_dir) / "summary.csv";
    const bool fresh = !fs::exists(csv);
    std::ofstream os(csv, std::ios::app);
    if (fresh) write_summary_csv_header(os);
    write_summary_csv_row(os, n, p_or_d, opt.protocol, summary,
                          opt.reproducible ? "" : now_iso8601());
  }

  std::cout << opt.protocol << " n=" << n << ' ' << p_or_d << " trials="
            << summary.trials << '\n'
            << "completion_rate " << summary.completion_rate
            << "  rounds mean " << summary.rounds_mean << " p95 "
            << summary.rounds_p95 << " max " << summary.rounds_max << '\n'
            << "tx per node mean " << summary.tx_mean_per_node << " max "
            << summary.tx_max_per_node << "  total tx mean "
            << summary.total_tx_mean << '\n';

  return summary.completion_rate >= opt.threshold ? kExitOk
                                                  : kExitBelowThreshold;
}

struct LowerboundOptions {
  std::string network = "dumbbell";
  std::uint32_t n = 16;
  std::uint32_t diameter = 0;
  std::string dist_spec = "point:1";
  std::uint64_t seed = 1;
  std::uint32_t trials = 100;
  double beta = 8.0;
  double lambda_override = 0.0;
};

int cmd_lowerbound(const LowerboundOptions& opt) {
  if (opt.network == "dumbbell") {
    const DirectedGraph g = gen_star_dumbbell(opt.n);
    const ProbabilityTable dist =
        make_distribution(opt.dist_spec, g.n, std::max(2u, opt.diameter), {});
    std::vector<NodeId> mids;
    for (const auto& [node, role] : g.labels)
      if (role.rfind("mid:", 0) == 0) mids.push_back(node);

    std::uint32_t successes = 0;
    double tx_sum = 0.0;
    for (std::uint32_t i = 0; i < opt.trials; ++i) {
      const Trace t =
          broadcast_general(g, 0, dist, opt.beta, {opt.seed + i, 0});
      if (t.completion_round) ++successes;
      double mid_tx = 0.0;
      for (NodeId u : mids) mid_tx += t.tx_count[u];
      tx_sum += mid_tx;
    }
    const double success_rate =
        static_cast<double>(successes) / static_cast<double>(opt.trials);
    const double mean_tx = tx_sum / static_cast<double>(opt.trials);
    const double bound =
        opt.n * std::log2(static_cast<double>(opt.n)) / 2.0;
    std::cout << "dumbbell n=" << opt.n << " dist=" << opt.dist_spec
              << " trials=" << opt.trials << '\n'
              << "success_rate " << success_rate
              << "  mean_intermediate_tx " << mean_tx
              << "  bound n*log2(n)/2 = " << bound << '\n';
    return kExitOk;
  }

  if (opt.network == "layered") {
    if (opt.diameter == 0) {
      std::cerr << "lowerbound: layered network needs --D\n";
      return kExitConfigError;
    }
    const DirectedGraph g = gen_lowerbound_network(opt.n, opt.diameter);
    const ProbabilityTable dist = make_distribution(
        opt.dist_spec, opt.n, opt.diameter,
        opt.lambda_override > 0.0 ? std::optional<double>(opt.lambda_override)
                                  : std::nullopt);
    const std::uint32_t logn = static_cast<std::uint32_t>(
        std::log2(static_cast<double>(opt.n)) + 0.5);

    // Inform times per star: center c_{i+1} activates once exactly one leaf
    // of S_i transmits. c_{log n + 1} is the path head.
    std::vector<NodeId> centers(logn + 1);
    for (const auto& [node, role] : g.labels) {
      if (role.rfind("center:", 0) == 0)
        centers[std::stoul(role.substr(7)) - 1] = node;
      else if (role == "path:0")
        centers[logn] = node;
    }

    std::vector<double> star_rounds(logn, 0.0);
    std::uint32_t completions = 0;
    double tx_sum = 0.0;
    std::uint64_t node_trials = 0;
    for (std::uint32_t i = 0; i < opt.trials; ++i) {
      const Trace t =
          broadcast_general(g, 0, dist, opt.beta, {opt.seed + i, 0});
      if (t.completion_round) ++completions;
      for (std::uint32_t s = 0; s < logn; ++s) {
        const std::int64_t from = t.t_u[centers[s]];
        const std::int64_t to = t.t_u[centers[s + 1]];
        if (from >= 0 && to > from)
          star_rounds[s] += static_cast<double>(to - from);
      }
      tx_sum += static_cast<double>(t.total_transmissions());
      node_trials += t.n;
    }
    std::cout << "layered n=" << opt.n << " D=" << opt.diameter << " dist="
              << opt.dist_spec << " trials=" << opt.trials << '\n'
              << "completion_rate "
              << static_cast<double>(completions) / opt.trials
              << "  mean tx per node "
              << tx_sum / static_cast<double>(node_trials) << '\n';
    double min_rate = 1.0;
    for (std::uint32_t s = 0; s < logn; ++s) {
      const double mean = star_rounds[s] / opt.trials;
      const double rate = mean > 0 ? 1.0 / mean : 1.0;
      min_rate = std::min(min_rate, rate);
      std::cout << "star S_" << (s + 1) << " mean rounds to next center "
                << mean << " (empirical inform rate " << rate << ")\n";
    }
    std::cout << "min_i empirical inform rate " << min_rate << '\n';
    return kExitOk;
  }

  std::cerr << "lowerbound: unknown network " << opt.network << '\n';
  return kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radiosim: synchronous radio-network protocol simulator"};
  app.require_subcommand(1);

  // gen -------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a graph file");
  gen->require_subcommand(1);
  std::uint32_t gen_n = 0, gen_d = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;

  auto* gnp = gen->add_subcommand("gnp", "directed G(n,p)");
  gnp->add_option("--n", gen_n, "node count")->required();
  gnp->add_option("--p", gen_p, "edge probability")->required();
  gnp->add_option("--seed", gen_seed, "rng seed");
  gnp->add_option("--out", gen_out, "output path")->required();

  auto* lb = gen->add_subcommand("lowerbound", "layered star/path network");
  lb->add_option("--n", gen_n, "power-of-two size parameter")->required();
  lb->add_option("--D", gen_d, "diameter target")->required();
  lb->add_option("--out", gen_out, "output path")->required();

  auto* db = gen->add_subcommand("dumbbell", "3n+1 dumbbell witness");
  db->add_option("--n", gen_n, "destination count")->required();
  db->add_option("--out", gen_out, "output path")->required();

  // run -------------------------------------------------------------------
  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Monte Carlo protocol runs");
  run_cmd->add_option("--protocol", run_opt.protocol,
                      "broadcast-random | gossip-random | broadcast-general")
      ->required();
  run_cmd->add_option("--n", run_opt.n, "node count (with --p)");
  run_cmd->add_option("--p", run_opt.p, "G(n,p) edge probability");
  run_cmd->add_option("--D", run_opt.diameter, "diameter for distributions");
  run_cmd->add_option("--graph", run_opt.graph_file, "graph file to load");
  run_cmd->add_option("--dist", run_opt.dist_spec,
                      "alpha | alpha-prime | point:<k>");
  run_cmd->add_option("--seed", run_opt.seed, "base seed (trial i uses seed+i)");
  run_cmd->add_option("--trials", run_opt.trials, "trial count")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--beta", run_opt.beta, "activity constant beta");
  run_cmd->add_option("--lambda", run_opt.lambda_override, "lambda override");
  run_cmd->add_option("--threshold", run_opt.threshold,
                      "completion-rate threshold for exit code 0");
  run_cmd->add_option("--round-cap", run_opt.round_cap,
                      "override the protocol round cap");
  run_cmd->add_option("--gossip-multiplier", run_opt.gossip_multiplier,
                      "round-cap multiplier for gossip (default 128)");
  run_cmd->add_option("--out", run_opt.out_dir, "artifact directory");
  run_cmd->add_flag("--reproducible", run_opt.reproducible,
                    "suppress timestamps in artifacts");

  // lowerbound ------------------------------------------------------------
  LowerboundOptions lb_opt;
  auto* lb_cmd =
      app.add_subcommand("lowerbound", "lower-bound experiment suites");
  lb_cmd->add_option("--network", lb_opt.network, "dumbbell | layered");
  lb_cmd->add_option("--n", lb_opt.n, "size parameter")->required();
  lb_cmd->add_option("--D", lb_opt.diameter, "diameter (layered)");
  lb_cmd->add_option("--dist", lb_opt.dist_spec,
                     "alpha | alpha-prime | point:<k>");
  lb_cmd->add_option("--seed", lb_opt.seed, "base seed");
  lb_cmd->add_option("--trials", lb_opt.trials, "trial count")
      ->check(CLI::PositiveNumber);
  lb_cmd->add_option("--beta", lb_opt.beta, "activity constant beta");
  lb_cmd->add_option("--lambda", lb_opt.lambda_override, "lambda override");

  // dist ------------------------------------------------------------------
  std::string dist_kind = "alpha";
  std::uint32_t dist_n = 0, dist_d = 0;
  double dist_lambda = 0.0;
  std::string dist_out;
  auto* dist_cmd = app.add_subcommand("dist", "print a probability table");
  dist_cmd->add_option("--kind", dist_kind, "alpha | alpha-prime");
  dist_cmd->add_option("--n", dist_n, "node count")->required();
  dist_cmd->add_option("--D", dist_d, "diameter")->required();
  dist_cmd->add_option("--lambda", dist_lambda, "lambda override (alpha)");
  dist_cmd->add_option("--out", dist_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (gen->parsed()) {
      DirectedGraph g;
      if (gnp->parsed())
        g = gen_gnp_directed(gen_n, gen_p, gen_seed);
      else if (lb->parsed())
        g = gen_lowerbound_network(gen_n, gen_d);
      else
        g = gen_star_dumbbell(gen_n);
      write_graph_file(gen_out, g);
      print_summary(g);
      return kExitOk;
    }
    if (run_cmd->parsed()) return cmd_run(run_opt);
    if (lb_cmd->parsed()) return cmd_lowerbound(lb_opt);
    if (dist_cmd->parsed()) {
      const ProbabilityTable t = make_distribution(
          dist_kind, dist_n, dist_d,
          dist_lambda > 0.0 ? std::optional<double>(dist_lambda)
                            : std::nullopt);
      if (dist_out.empty()) {
        write_distribution(std::cout, t);
      } else {
        std::ofstream os(dist_out);
        write_distribution(os, t);
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}
