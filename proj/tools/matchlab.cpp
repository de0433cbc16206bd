#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "matchlab/gibbs.hpp"
#include "matchlab/glauber_edge.hpp"
#include "matchlab/glauber_vertex.hpp"
#include "matchlab/graph_io.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/pm_count.hpp"
#include "matchlab/polynomial.hpp"
#include "matchlab/sensitivity.hpp"
#include "matchlab/sparsify.hpp"
#include "matchlab/suite.hpp"

using namespace matchlab;

namespace {

// "-" means standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string edge_ids(const Matching& m) {
  std::string s;
  for (EdgeId e : m.edges) s += (s.empty() ? "" : " ") + std::to_string(e);
  return s;
}

std::string real(long double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

ScheduleKind parse_schedule(const std::string& s) { return s == "chen" ? ScheduleKind::kChen : ScheduleKind::kJerrum; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs distributions over graph matchings: sampling, counting and sensitivity tools"};
  app.require_subcommand(1);
  const std::uint64_t env_seed = default_root_seed();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance in the edge-list format");
  std::string gen_kind, gen_out = "-";
  int ell = 1, width = 2, height = 2, gen_n = 10, gen_delta = 3, n1 = 5, n2 = 5, degree = 2;
  double gen_p = 0.5;
  std::uint64_t gen_seed = env_seed;
  gen->add_option("kind", gen_kind, "hexchain | grid | random | bipartite")
      ->required()
      ->check(CLI::IsMember({"hexchain", "grid", "random", "bipartite"}));
  gen->add_option("--ell", ell, "Number of hexagons (hexchain)");
  gen->add_option("--width", width, "Grid columns");
  gen->add_option("--height", height, "Grid rows");
  gen->add_option("--n", gen_n, "Vertices (random)");
  gen->add_option("--delta", gen_delta, "Degree cap (random)");
  gen->add_option("--p", gen_p, "Edge probability (random)");
  gen->add_option("--n1", n1, "Left side size (bipartite)");
  gen->add_option("--n2", n2, "Right side size (bipartite)");
  gen->add_option("--d", degree, "Left degree (bipartite)");
  gen->add_option("--seed", gen_seed, "Seed (default MATCHLAB_SEED or 1)");
  gen->add_option("--out", gen_out, "Output file, - for stdout");

  // sample
  auto* sample = app.add_subcommand("sample", "Edge Glauber dynamics from the empty matching");
  std::string graph_path, schedule = "jerrum", sample_out = "-";
  double lambda = 1, delta = 0.01, constant = 1;
  std::uint64_t seed = env_seed, samples = 1;
  bool histogram = false;
  sample->add_option("--graph", graph_path, "Graph file")->required();
  sample->add_option("--lambda", lambda, "Fugacity")->required();
  sample->add_option("--delta", delta, "Target total variation distance");
  sample->add_option("--schedule", schedule, "chen | jerrum")->check(CLI::IsMember({"chen", "jerrum"}));
  sample->add_option("--const", constant, "Schedule constant C");
  sample->add_option("--seed", seed, "Seed (default MATCHLAB_SEED or 1)");
  sample->add_option("--samples", samples, "Independent chains; chain k runs on stream split(k) of the seed");
  sample->add_flag("--histogram", histogram, "Emit a matching,count,frequency CSV instead of one matching per line");
  sample->add_option("--out", sample_out, "Output file, - for stdout");

  // sample-vertex
  auto* sv = app.add_subcommand("sample-vertex", "Vertex-set Glauber dynamics with a counting oracle");
  std::string oracle_name = "auto", emit = "matching";
  sv->add_option("--graph", graph_path, "Graph file")->required();
  sv->add_option("--lambda", lambda, "Fugacity")->required();
  sv->add_option("--delta", delta, "Target total variation distance");
  sv->add_option("--oracle", oracle_name, "auto | fkt | ryser | enumerate")
      ->check(CLI::IsMember({"auto", "fkt", "ryser", "enumerate"}));
  sv->add_option("--seed", seed, "Seed (default MATCHLAB_SEED or 1)");
  sv->add_option("--samples", samples, "Independent runs; run k uses seed split(k)");
  sv->add_option("--emit", emit, "vertices | matching")->check(CLI::IsMember({"vertices", "matching"}));
  sv->add_option("--out", sample_out, "Output file, - for stdout");

  // count-pm
  auto* cp = app.add_subcommand("count-pm", "Count perfect matchings exactly");
  std::string method = "auto";
  cp->add_option("--graph", graph_path, "Graph file")->required();
  cp->add_option("--method", method, "auto | fkt | ryser | enumerate")
      ->check(CLI::IsMember({"auto", "fkt", "ryser", "enumerate"}));

  // sensitivity
  auto* sens = app.add_subcommand("sensitivity", "Edge sensitivity of the Gibbs distribution");
  std::string mode = "exact", metric = "edge", sens_out = "-";
  std::optional<EdgeId> edge;
  std::uint64_t coupled_samples = 1000;
  sens->add_option("--graph", graph_path, "Graph file")->required();
  sens->add_option("--lambda", lambda, "Fugacity")->required();
  sens->add_option("--mode", mode, "exact | coupled")->check(CLI::IsMember({"exact", "coupled"}));
  sens->add_option("--edge", edge, "Edge id (default: every edge)");
  sens->add_option("--metric", metric, "edge | vertex (exact mode)")->check(CLI::IsMember({"edge", "vertex"}));
  sens->add_option("--samples", coupled_samples, "Coupled chain pairs (coupled mode)");
  sens->add_option("--delta", delta, "Schedule accuracy for coupled chains");
  sens->add_option("--seed", seed, "Seed (default MATCHLAB_SEED or 1)");
  sens->add_option("--out", sens_out, "Report CSV, - for stdout");

  // sparsify
  auto* sp = app.add_subcommand("sparsify", "Sample a degree sparsifier from the regularized LP");
  double epsilon = 0.3, alpha = 0, c = 2;
  std::string sp_out;
  sp->add_option("--graph", graph_path, "Graph file")->required();
  sp->add_option("--epsilon", epsilon, "Accuracy epsilon in (0,1)");
  sp->add_option("--alpha", alpha, "Entropy weight")->required();
  sp->add_option("--c", c, "Retention constant c");
  sp->add_option("--seed", seed, "Seed (default MATCHLAB_SEED or 1)");
  sp->add_option("--out", sp_out, "Sparsifier graph file")->required();

  // sparsify-stability
  auto* ss = app.add_subcommand("sparsify-stability", "LP stability under random single-edge deletions");
  int trials = 10;
  std::string ss_out = "-";
  double tol = 1e-6;
  ss->add_option("--graph", graph_path, "Graph file")->required();
  ss->add_option("--alpha", alpha, "Entropy weight")->required();
  ss->add_option("--trials", trials, "Number of deletions");
  ss->add_option("--tol", tol, "Duality gap tolerance");
  ss->add_option("--epsilon", epsilon, "Epsilon used for the retention probabilities");
  ss->add_option("--seed", seed, "Seed (default MATCHLAB_SEED or 1)");
  ss->add_option("--out", ss_out, "Report CSV, - for stdout");

  // roots
  auto* rt = app.add_subcommand("roots", "Matching polynomial and its roots");
  std::string poly_text;
  rt->add_option("--graph", graph_path, "Graph file");
  rt->add_option("--poly", poly_text, "Coefficients m_0 m_1 ... instead of a graph");
  rt->add_option("--out", sample_out, "Output CSV, - for stdout");

  // suite
  auto* su = app.add_subcommand("suite", "Run the experiment suite");
  std::string config_path, out_dir;
  std::vector<std::string> only;
  std::optional<std::uint64_t> suite_seed;
  std::optional<unsigned> threads;
  bool print_defaults = false;
  su->add_option("--config", config_path, "Experiment file (default: every experiment with defaults)");
  su->add_option("--out", out_dir, "Artifact directory (overrides the config)");
  su->add_option("--seed", suite_seed, "Root seed (overrides the config and MATCHLAB_SEED)");
  su->add_option("--only", only, "Run only these experiments");
  su->add_option("--threads", threads, "Worker threads");
  su->add_flag("--print-defaults", print_defaults, "Print the default configuration and exit");

  // plotdata
  auto* pd = app.add_subcommand("plotdata", "Extract two columns of a CSV as a whitespace data file");
  std::string csv_path, xcol, ycol, pd_out;
  pd->add_option("--csv", csv_path, "Input CSV")->required();
  pd->add_option("--x", xcol, "Column for the first field")->required();
  pd->add_option("--y", ycol, "Column for the second field")->required();
  pd->add_option("--out", pd_out, "Data file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Graph g;
      if (gen_kind == "hexchain") g = gen_hexagon_chain(ell);
      else if (gen_kind == "grid") g = gen_grid(width, height);
      else if (gen_kind == "random") g = gen_random_bounded_degree(gen_n, gen_delta, gen_p, gen_seed);
      else g = gen_random_bipartite(n1, n2, degree, gen_seed);
      Output out(gen_out);
      out.stream() << serialize_graph(g).text;
      return 0;
    }

    if (*sample) {
      const Graph g = read_graph_file(graph_path);
      const auto sched = make_schedule(parse_schedule(schedule), g.num_vertices(), g.num_edges(), g.max_degree(),
                                       lambda, delta, constant);
      if (sched.saturated) std::cerr << "warning: schedule saturated at " << sched.steps << " steps\n";
      Output out(sample_out);
      if (histogram) {
        const auto hist = sample_histogram(g, lambda, sched.steps, samples, seed);
        out.stream() << "matching,count,frequency\n";
        for (const auto& [m, k] : hist) {
          out.stream() << to_string(m) << ',' << k << ',' << real(static_cast<long double>(k) / samples) << '\n';
        }
      } else if (samples == 1) {
        out.stream() << edge_ids(sample_matching(g, lambda, sched, seed)) << '\n';
      } else {
        const Rng root(seed);
        for (std::uint64_t k = 0; k < samples; ++k) {
          EdgeChain chain(g, lambda, root.split(k));
          chain.run(sched.steps);
          out.stream() << edge_ids(chain.current()) << '\n';
        }
      }
      return 0;
    }

    if (*sv) {
      const Graph g = read_graph_file(graph_path);
      PmCache cache(g, make_oracle(g, parse_count_method(oracle_name)));
      Output out(sample_out);
      const Rng root(seed);
      for (std::uint64_t k = 0; k < samples; ++k) {
        const std::uint64_t s = samples == 1 ? seed : root.split(k)();
        if (emit == "vertices") {
          out.stream() << to_string(sample_vertex_set(g, lambda, delta, cache, s)) << '\n';
        } else {
          out.stream() << edge_ids(sample_matching_vertex(g, lambda, delta, cache, s)) << '\n';
        }
      }
      return 0;
    }

    if (*cp) {
      const Graph g = read_graph_file(graph_path);
      std::cout << make_oracle(g, parse_count_method(method)).count(g) << '\n';
      return 0;
    }

    if (*sens) {
      const Graph g = read_graph_file(graph_path);
      Output out(sens_out);
      std::vector<EdgeId> edges;
      if (edge) {
        if (!g.has_edge(*edge)) throw Error("no edge with id " + std::to_string(*edge));
        edges.push_back(*edge);
      } else {
        for (const Edge& e : g.edges()) edges.push_back(e.id);
      }
      const Real bound = 1 + 2 * static_cast<Real>(lambda) * g.max_degree();
      if (mode == "coupled") {
        const auto steps = schedule_steps(ScheduleKind::kJerrum, g.num_vertices(), g.num_edges(), g.max_degree(),
                                          lambda, delta);
        out.stream() << "edge,mean,standard_error,samples,steps\n";
        for (EdgeId e : edges) {
          const auto est = coupled_sensitivity_estimate(g, e, lambda, steps, coupled_samples, Rng(seed).split(e)());
          out.stream() << e << ',' << real(est.mean) << ',' << real(est.standard_error) << ',' << est.samples << ','
                       << steps << '\n';
        }
        return 0;
      }
      out.stream() << "edge,metric,deletion,pinning,bound\n";
      const auto mu = exact_gibbs(g, lambda);
      for (EdgeId e : edges) {
        Real del = 0, pin = 0;
        if (metric == "edge") {
          del = wasserstein_distance(g, mu, exact_gibbs(remove_edge(g, e), lambda), Metric::kEdge);
        } else {
          del = wasserstein_distance(vertex_gibbs_exact(g, lambda), vertex_gibbs_exact(remove_edge(g, e), lambda));
        }
        PinningQuery q;
        q.edge = e;
        q.metric = metric == "edge" ? Metric::kEdge : Metric::kVertex;
        pin = pinning_distance_exact(g, lambda, q);
        out.stream() << e << ',' << metric << ',' << real(del) << ',' << real(pin) << ',' << real(bound) << '\n';
      }
      return 0;
    }

    if (*sp) {
      const Graph g = read_graph_file(graph_path);
      const auto lp = solve_regularized_lp(g, alpha);
      if (!lp.converged) std::cerr << "warning: LP stopped with duality gap " << real(lp.gap) << '\n';
      SparsifierParams params{epsilon, alpha, c};
      const Graph h = sample_sparsifier(g, lp.x, params, seed);
      write_graph_file(h, sp_out);
      std::cout << "n,m,m_h,gamma,lp_objective,lp_gap,max_degree_h\n"
                << g.num_vertices() << ',' << g.num_edges() << ',' << h.num_edges() << ','
                << real(sparsifier_gamma(params, g.num_vertices())) << ',' << real(lp.objective) << ','
                << real(lp.gap) << ',' << h.max_degree() << '\n';
      return 0;
    }

    if (*ss) {
      const Graph g = read_graph_file(graph_path);
      SparsifierParams params;
      params.epsilon = epsilon;
      params.alpha = alpha;
      const auto rep = stability_experiment(g, alpha, tol, trials, seed, params);
      Output out(ss_out);
      out.stream() << "trial,deleted,s,l1,hamming,scaled\n";
      for (std::size_t t = 0; t < rep.trials.size(); ++t) {
        const auto& r = rep.trials[t];
        out.stream() << t << ',' << r.deleted << ',' << real(r.s) << ',' << real(r.l1) << ',' << real(r.hamming)
                     << ',' << real(r.scaled) << '\n';
      }
      return 0;
    }

    if (*rt) {
      if (graph_path.empty() == poly_text.empty()) throw Error("give exactly one of --graph and --poly");
      const MatchingPolynomial p =
          poly_text.empty() ? matching_polynomial(read_graph_file(graph_path)) : MatchingPolynomial::parse(poly_text);
      const auto roots = polynomial_roots(p);
      Output out(sample_out);
      out.stream() << "index,root\n";
      for (std::size_t i = 0; i < roots.roots.size(); ++i) out.stream() << i << ',' << real(roots.roots[i]) << '\n';
      std::cerr << "polynomial: " << p.to_string() << "\nresidual: " << real(roots.residual) << '\n';
      return 0;
    }

    if (*su) {
      if (print_defaults) {
        std::cout << default_config_text();
        return 0;
      }
      SuiteConfig cfg = config_path.empty() ? parse_suite_config(default_config_text()) : load_suite_config(config_path);
      if (config_path.empty()) cfg.seed = default_root_seed();
      if (suite_seed) cfg.seed = *suite_seed;
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (threads) cfg.threads = *threads;
      if (!only.empty()) {
        for (const auto& name : only) experiment_defaults(name);
        std::erase_if(cfg.experiments, [&](const ExperimentConfig& e) {
          return std::find(only.begin(), only.end(), e.name) == only.end();
        });
      }
      const auto res = run_suite(cfg);
      std::ifstream summary(res.summary_path);
      std::cout << summary.rdbuf();
      return res.exit_code();
    }

    if (*pd) {
      emit_plotdata(csv_path, xcol, ycol, pd_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
