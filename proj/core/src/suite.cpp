#include "matchlab/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "matchlab/catalog.hpp"
#include "matchlab/gibbs.hpp"
#include "matchlab/glauber_edge.hpp"
#include "matchlab/glauber_vertex.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/matching.hpp"
#include "matchlab/pm_count.hpp"
#include "matchlab/polynomial.hpp"
#include "matchlab/rng.hpp"
#include "matchlab/sensitivity.hpp"
#include "matchlab/sparsify.hpp"

namespace matchlab {

ConfigError::ConfigError(std::string key, const std::string& what)
    : Error(key + ": " + what), key_(std::move(key)) {}

bool ExperimentResult::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CriterionRow& r) { return r.pass; });
}

bool SuiteResult::pass() const {
  return std::all_of(experiments.begin(), experiments.end(), [](const ExperimentResult& e) { return e.pass(); });
}

namespace {

using Defaults = std::map<std::string, std::string>;

const std::vector<std::pair<std::string, Defaults>>& defaults_table() {
  static const std::vector<std::pair<std::string, Defaults>> table = {
      {"approx-check",
       {{"max_edges", "8"},
        {"root_epsilons", "1/3,1/2"},
        {"residual_tol", "1e-8"},
        {"identity_lambdas", "0.1,1,10"},
        {"identity_tol", "1e-6"},
        {"approx_epsilon", "0.5"},
        {"approx_max_degree", "3"},
        {"approx_ratio", "0.5"}}},
      {"sensitivity-audit",
       {{"max_edges", "6"},
        {"lambdas", "0.5,1,2"},
        {"pinnings", "200"},
        {"exhaustive_limit", "200"},
        {"influence", "1"}}},
      {"mixing-tv",
       {{"max_edges", "8"},
        {"lambdas", "0.5,1,4"},
        {"samples", "100000"},
        {"schedule_constant", "1"},
        {"delta", "0.01"},
        {"tv_threshold", "0.05"},
        {"vertex_instances", "P3,C4,C6,K33,G1"},
        {"vertex_lambdas", "1,2"},
        {"vertex_runs", "100000"},
        {"vertex_delta", "0.01"},
        {"matrix_max_vertices", "8"},
        {"gap_factor", "2"}}},
      {"pm-agreement",
       {{"min_instances", "200"},
        {"grid_max", "4"},
        {"hexagon_max", "4"},
        {"random_grids", "80"},
        {"random_bipartite", "60"},
        {"max_vertices", "16"}}},
      {"hexagon-lowerbound", {{"ells", "1,2,3"}, {"lambdas", "0.1,0.3,1,3,10,30,100,300,1000,3000"}}},
      {"sparsifier-quality",
       {{"n", "200"},
        {"degree", "20"},
        {"instances", "10"},
        {"seeds", "10"},
        {"epsilon", "0.3"},
        {"c", "2"},
        {"min_ratio", "0.6"},
        {"degree_factor", "60"},
        {"doubling", "1"},
        {"tol", "1e-6"}}},
      {"lp-stability",
       {{"sizes", "50,100,200"},
        {"degree", "4"},
        {"instances", "3"},
        {"trials", "20"},
        {"epsilon", "0.3"},
        {"tol", "1e-6"},
        {"factor", "3"}}},
  };
  return table;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

std::string fmt(const BigInt& v) { return v.str(); }

// Typed view of an experiment's parameters; errors name "section.key".
class Params {
 public:
  explicit Params(const ExperimentConfig& c) : c_(c) {}

  const std::string& str(const std::string& key) const {
    auto it = c_.params.find(key);
    if (it == c_.params.end()) throw ConfigError(c_.name + "." + key, "missing");
    return it->second;
  }

  double real(const std::string& key) const { return parse_real(key, str(key)); }

  long long integer(const std::string& key) const {
    const std::string& s = str(key);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(c_.name + "." + key, "expected an integer, got '" + s + "'");
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split(str(key), ',')) out.push_back(parse_real(key, item));
    return out;
  }

  std::vector<long long> integers(const std::string& key) const {
    std::vector<long long> out;
    for (double v : reals(key)) {
      if (v != std::floor(v)) throw ConfigError(c_.name + "." + key, "expected integers");
      out.push_back(static_cast<long long>(v));
    }
    return out;
  }

  std::vector<std::string> words(const std::string& key) const { return split(str(key), ','); }

 private:
  // Accepts decimals and fractions such as 1/3.
  double parse_real(const std::string& key, const std::string& s) const {
    try {
      const auto slash = s.find('/');
      std::size_t used = 0;
      if (slash != std::string::npos) {
        const std::string a = trim(s.substr(0, slash)), b = trim(s.substr(slash + 1));
        std::size_t ua = 0, ub = 0;
        const double num = std::stod(a, &ua), den = std::stod(b, &ub);
        if (ua == a.size() && ub == b.size() && den != 0) return num / den;
      } else {
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
      }
    } catch (const std::exception&) {
    }
    throw ConfigError(c_.name + "." + key, "expected a number, got '" + s + "'");
  }

  const ExperimentConfig& c_;
};

class Csv {
 public:
  Csv() = default;
  explicit Csv(const std::vector<std::string>& header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << out_.str();
  }

 private:
  std::ostringstream out_;
};

std::string edge_string(const Graph& g) {
  std::string s;
  for (const Edge& e : g.edges()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  return s;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(seed ^ mix64(a * 0x100000001b3ULL + b + 1));
}

CriterionRow row(int criterion, const std::string& exp, const std::string& check, const std::string& value,
                 const std::string& threshold, bool pass) {
  return CriterionRow{criterion, exp, check, value, threshold, pass};
}

Graph named_instance(const std::string& name) {
  auto num = [&](std::size_t from) { return std::stoi(name.substr(from)); };
  try {
    if (name.size() >= 2 && name[0] == 'P') return gen_path(num(1));
    if (name.size() >= 2 && name[0] == 'C') return gen_cycle(num(1));
    if (name.size() >= 2 && name[0] == 'G') return gen_hexagon_chain(num(1));
    if (name.size() == 3 && name[0] == 'K') return gen_complete_bipartite(name[1] - '0', name[2] - '0');
  } catch (const std::exception&) {
  }
  throw ConfigError("mixing-tv.vertex_instances", "unknown instance '" + name + "'");
}

// Criteria 1-4: polynomial against enumeration, root structure, the
// expected-size identity and the approximation ratio.
std::vector<CriterionRow> approx_check(const Params& p, std::uint64_t, Csv& csv) {
  const auto corpus = connected_graph_catalog(static_cast<int>(p.integer("max_edges")));
  const auto eps = p.reals("root_epsilons");
  const auto lambdas = p.reals("identity_lambdas");
  const double residual_tol = p.real("residual_tol");
  const double identity_tol = p.real("identity_tol");
  const double approx_eps = p.real("approx_epsilon");
  const int approx_dmax = static_cast<int>(p.integer("approx_max_degree"));
  const double approx_ratio = p.real("approx_ratio");

  std::vector<std::string> header = {"graph", "n", "m", "max_degree", "coefficients", "enumeration_match",
                                     "residual", "roots_negative"};
  for (double e : eps) header.push_back("upper_fraction_eps_" + fmt(e));
  for (const char* h : {"min_abs_root", "lower_threshold", "spectrum_pass", "identity_error", "approx_lambda",
                        "expected_size", "nu", "approx_pass"})
    header.push_back(h);
  Csv& out = csv;
  out.row(header);

  int coeff_bad = 0, negative_bad = 0, upper_bad = 0, lower_bad = 0, approx_bad = 0, approx_checked = 0;
  long double identity_max = 0;
  long double min_ratio = 1e300L;
  for (const Graph& g : corpus) {
    const int dmax = g.max_degree();
    const auto poly = matching_polynomial(g);
    std::vector<BigInt> hist(poly.coeffs.size() + 1, 0);
    for_each_matching(g, nullptr, kDefaultEnumerationCap, [&](const std::vector<EdgeId>& m) {
      if (m.size() >= hist.size()) hist.resize(m.size() + 1, 0);
      ++hist[m.size()];
    });
    while (hist.size() > 1 && hist.back() == 0) hist.pop_back();
    const bool coeff_ok = hist == poly.coeffs;
    coeff_bad += !coeff_ok;

    const auto roots = polynomial_roots(poly);
    bool negative_ok = roots.residual <= residual_tol;
    bool upper_ok = true, lower_ok = true, spectrum_ok = true;
    std::vector<std::string> fractions;
    RootSpectrumReport last;
    for (double e : eps) {
      last = root_spectrum_check(roots, dmax, e);
      negative_ok = negative_ok && last.all_negative;
      upper_ok = upper_ok && last.upper_pass;
      lower_ok = lower_ok && last.lower_pass;
      fractions.push_back(fmt(last.fraction_below_upper));
    }
    negative_bad += !negative_ok;
    upper_bad += !upper_ok;
    lower_bad += !lower_ok;
    spectrum_ok = negative_ok && upper_ok && lower_ok;

    long double identity = 0;
    for (double l : lambdas) {
      identity = std::max(identity, std::fabs(expected_size(poly, l) - expected_size_via_roots(roots, l)));
    }
    identity_max = std::max(identity_max, identity);

    std::string approx_lambda = "", expected = "", approx_pass = "";
    const int nu = poly.degree();
    if (dmax <= approx_dmax) {
      const double lambda = preset_lambda(approx_eps, dmax, PresetForm::kApproximation);
      const Real es = expected_size(poly, lambda);
      const bool ok = es >= approx_ratio * nu;
      ++approx_checked;
      approx_bad += !ok;
      min_ratio = std::min(min_ratio, es / nu);
      approx_lambda = fmt(lambda);
      expected = fmt(es);
      approx_pass = ok ? "1" : "0";
    }

    std::vector<std::string> cells = {edge_string(g),
                                      std::to_string(g.num_vertices()),
                                      std::to_string(g.num_edges()),
                                      std::to_string(dmax),
                                      poly.to_string(),
                                      coeff_ok ? "1" : "0",
                                      fmt(roots.residual),
                                      negative_ok ? "1" : "0"};
    cells.insert(cells.end(), fractions.begin(), fractions.end());
    for (const std::string& c : {fmt(last.min_abs_root), fmt(last.lower_threshold), std::string(spectrum_ok ? "1" : "0"),
                                 fmt(identity), approx_lambda, expected, std::to_string(nu), approx_pass})
      cells.push_back(c);
    out.row(cells);
  }

  const std::string exp = "approx-check";
  const std::string graphs = std::to_string(corpus.size()) + " graphs";
  return {
      row(1, exp, "polynomial coefficients vs enumeration (" + graphs + ")", std::to_string(coeff_bad) + " mismatches",
          "0", coeff_bad == 0),
      row(2, exp, "roots real and negative with residual <= " + fmt(residual_tol), std::to_string(negative_bad) + " violations",
          "0", negative_bad == 0),
      row(2, exp, "(1-eps) share of roots within (4D)^(1/eps)", std::to_string(upper_bad) + " violations", "0",
          upper_bad == 0),
      row(2, exp, "min |root| >= 1/(4(D-1)) when D >= 2", std::to_string(lower_bad) + " violations", "0",
          lower_bad == 0),
      row(3, exp, "|expected_size - expected_size_via_roots|", fmt(identity_max), "<= " + fmt(identity_tol),
          identity_max <= identity_tol),
      row(4, exp,
          "expected_size >= " + fmt(approx_ratio) + " nu at eps=" + fmt(approx_eps) + " (" +
              std::to_string(approx_checked) + " graphs with D <= " + std::to_string(approx_dmax) + ")",
          std::to_string(approx_bad) + " violations; min ratio " + fmt(min_ratio), "0", approx_bad == 0),
  };
}

// Criteria 5-6.
std::vector<CriterionRow> sensitivity_audit(const Params& p, std::uint64_t seed, Csv& csv) {
  const auto corpus = connected_graph_catalog(static_cast<int>(p.integer("max_edges")));
  const auto lambdas = p.reals("lambdas");
  KappaAuditOptions opt;
  opt.pinnings_per_instance = static_cast<int>(p.integer("pinnings"));
  opt.exhaustive_limit = static_cast<int>(p.integer("exhaustive_limit"));
  opt.influence = p.integer("influence") != 0;

  csv.row({"lambda", "graph", "check", "checks", "max_value", "bound", "violations"});
  std::uint64_t del_bad = 0, pin_bad = 0;
  Real del_max = 0, pin_max = 0;
  std::vector<KappaAuditReport> kappas;
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const Real lambda = lambdas[li];
    for (const Graph& g : corpus) {
      const auto rep = edge_sensitivity_exact(g, lambda);
      std::uint64_t d = 0, q = 0;
      for (const auto& r : rep.rows) {
        d += r.deletion > rep.bound + 1e-9L;
        q += r.pinning > rep.bound + 1e-9L;
      }
      del_bad += d;
      pin_bad += q;
      del_max = std::max(del_max, rep.max_deletion / rep.bound);
      pin_max = std::max(pin_max, rep.max_pinning / rep.bound);
      csv.row({fmt(lambda), edge_string(g), "deletion", std::to_string(rep.rows.size()), fmt(rep.max_deletion),
               fmt(rep.bound), std::to_string(d)});
      csv.row({fmt(lambda), edge_string(g), "pinning", std::to_string(rep.rows.size()), fmt(rep.max_pinning),
               fmt(rep.bound), std::to_string(q)});
    }
    opt.seed = sub_seed(seed, li);
    const auto k = kappa_bounds_audit(corpus, lambda, opt);
    auto tally = [&](const char* name, const BoundTally& t, const char* bound) {
      csv.row({fmt(lambda), "corpus", name, std::to_string(t.checks), fmt(t.max_value), bound,
               std::to_string(t.violations)});
    };
    tally("pendant_edge_metric", k.pendant_edge, "lambda*Delta");
    tally("pendant_vertex_metric", k.pendant_vertex, "1");
    tally("full_vertex_pinning", k.full_vertex, "2");
    tally("influence_norm", k.influence, "2");
    kappas.push_back(k);
  }

  auto sum = [&](auto member) {
    BoundTally t;
    t.max_excess = -1e300L;
    for (const auto& k : kappas) {
      const BoundTally& s = k.*member;
      t.checks += s.checks;
      t.violations += s.violations;
      t.max_value = std::max(t.max_value, s.max_value);
      t.max_excess = std::max(t.max_excess, s.max_excess);
    }
    return t;
  };
  const std::string exp = "sensitivity-audit";
  std::vector<CriterionRow> rows = {
      row(5, exp, "max-edge W_E(mu_G, mu_G-e) <= 1+2 lambda Delta",
          std::to_string(del_bad) + " violations; max ratio to bound " + fmt(del_max), "0", del_bad == 0),
      row(5, exp, "pinning W_E(mu^{e+}, mu^{e-}) <= 1+2 lambda Delta",
          std::to_string(pin_bad) + " violations; max ratio to bound " + fmt(pin_max), "0", pin_bad == 0),
  };
  auto kappa_row = [&](const char* check, const BoundTally& t) {
    rows.push_back(row(6, exp, check,
                       std::to_string(t.violations) + " violations in " + std::to_string(t.checks) +
                           " checks; max excess " + fmt(t.checks ? t.max_excess : 0),
                       "0", t.violations == 0));
  };
  kappa_row("pendant-edge edge-metric distance <= lambda Delta", sum(&KappaAuditReport::pendant_edge));
  kappa_row("pendant-edge vertex-metric distance <= 1", sum(&KappaAuditReport::pendant_vertex));
  kappa_row("full-V vertex pinning distance <= 2", sum(&KappaAuditReport::full_vertex));
  if (opt.influence) kappa_row("influence spectral norm <= 2 + 1e-9", sum(&KappaAuditReport::influence));
  return rows;
}

template <class Key>
Real tv_against(const MatchingDistribution& exact, const std::map<Key, std::uint64_t>& hist) {
  std::vector<Key> keys;
  std::vector<std::uint64_t> counts;
  for (const auto& [k, c] : hist) {
    keys.push_back(k);
    counts.push_back(c);
  }
  return total_variation<Key>(exact.support, exact.probs, keys, counts);
}

// Criteria 7 and 9.
std::vector<CriterionRow> mixing_tv(const Params& p, std::uint64_t seed, Csv& csv) {
  const auto corpus = connected_graph_catalog(static_cast<int>(p.integer("max_edges")));
  const auto lambdas = p.reals("lambdas");
  const auto samples = static_cast<std::uint64_t>(p.integer("samples"));
  const double constant = p.real("schedule_constant");
  const double delta = p.real("delta");
  const double threshold = p.real("tv_threshold");

  csv.row({"part", "instance", "lambda", "steps", "samples", "support", "value", "threshold", "pass"});
  Real edge_max = 0;
  int edge_bad = 0;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const Graph& g = corpus[gi];
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      const double lambda = lambdas[li];
      const auto steps = schedule_steps(ScheduleKind::kJerrum, g.num_vertices(), g.num_edges(), g.max_degree(),
                                        lambda, delta, constant);
      const auto hist = sample_histogram(g, lambda, steps, samples, sub_seed(seed, gi, li));
      const auto exact = exact_gibbs(g, lambda);
      const Real tv = tv_against(exact, hist);
      const bool ok = tv < threshold;
      edge_bad += !ok;
      edge_max = std::max(edge_max, tv);
      csv.row({"edge-glauber", edge_string(g), fmt(lambda), std::to_string(steps), std::to_string(samples),
               std::to_string(exact.size()), fmt(tv), fmt(threshold), ok ? "1" : "0"});
    }
  }

  const auto names = p.words("vertex_instances");
  const auto vlambdas = p.reals("vertex_lambdas");
  const auto runs = static_cast<std::uint64_t>(p.integer("vertex_runs"));
  const double vdelta = p.real("vertex_delta");
  const int matrix_max = static_cast<int>(p.integer("matrix_max_vertices"));
  const double gap_factor = p.real("gap_factor");
  Real vertex_max = 0;
  int vertex_bad = 0, disconnected = 0, gap_bad = 0, matrices = 0;
  for (std::size_t ii = 0; ii < names.size(); ++ii) {
    const Graph g = named_instance(names[ii]);
    const CountOracle oracle = make_oracle(g);
    PmCache cache(g, oracle);
    for (std::size_t li = 0; li < vlambdas.size(); ++li) {
      const double lambda = vlambdas[li];
      const std::uint64_t base = sub_seed(seed, 1000 + ii, li);
      std::map<Matching, std::uint64_t> hist;
      for (std::uint64_t r = 0; r < runs; ++r) {
        ++hist[sample_matching_vertex(g, lambda, vdelta, cache, sub_seed(base, r))];
      }
      const auto exact = exact_gibbs(g, lambda);
      const Real tv = tv_against(exact, hist);
      const bool ok = tv < threshold;
      vertex_bad += !ok;
      vertex_max = std::max(vertex_max, tv);
      const auto sched = vertex_schedule(g.num_vertices(), g.num_edges(), lambda, vdelta);
      csv.row({"vertex-pipeline", names[ii], fmt(lambda), std::to_string(sched.t), std::to_string(runs),
               std::to_string(exact.size()), fmt(tv), fmt(threshold), ok ? "1" : "0"});

      if (g.num_vertices() <= matrix_max) {
        ++matrices;
        const auto t = vertex_transition_matrix(g, lambda, oracle);
        const bool connected = strongly_connected(t);
        disconnected += !connected;
        const Real n = g.num_vertices();
        const Real need = gap_factor / (n * n);
        const auto spec = transition_spectrum(t);
        const bool gap_ok = spec.gap > need;
        gap_bad += !gap_ok;
        csv.row({"transition-connected", names[ii], fmt(lambda), "", "", std::to_string(t.states.size()),
                 connected ? "1" : "0", "1", connected ? "1" : "0"});
        csv.row({"transition-gap", names[ii], fmt(lambda), "", "", std::to_string(t.states.size()), fmt(spec.gap),
                 fmt(need), gap_ok ? "1" : "0"});
      }
    }
  }

  const std::string exp = "mixing-tv";
  return {
      row(7, exp, "edge Glauber empirical TV (" + std::to_string(corpus.size()) + " graphs x " +
                      std::to_string(lambdas.size()) + " lambdas, " + std::to_string(samples) + " samples)",
          std::to_string(edge_bad) + " violations; max TV " + fmt(edge_max), "< " + fmt(threshold), edge_bad == 0),
      row(9, exp, "vertex pipeline empirical TV (" + std::to_string(runs) + " runs)",
          std::to_string(vertex_bad) + " violations; max TV " + fmt(vertex_max), "< " + fmt(threshold),
          vertex_bad == 0),
      row(9, exp, "transition matrices strongly connected (" + std::to_string(matrices) + ")",
          std::to_string(disconnected) + " disconnected", "0", disconnected == 0),
      row(9, exp, "spectral gap > " + fmt(gap_factor) + "/n^2", std::to_string(gap_bad) + " violations", "0",
          gap_bad == 0),
  };
}

// Criterion 8.
std::vector<CriterionRow> pm_agreement(const Params& p, std::uint64_t seed, Csv& csv) {
  const int grid_max = static_cast<int>(p.integer("grid_max"));
  const int hex_max = static_cast<int>(p.integer("hexagon_max"));
  const int max_vertices = static_cast<int>(p.integer("max_vertices"));
  const auto min_instances = p.integer("min_instances");

  std::vector<std::pair<std::string, Graph>> inst;
  for (int h = 1; h <= grid_max; ++h)
    for (int w = 1; w <= grid_max; ++w) inst.emplace_back("grid" + std::to_string(w) + "x" + std::to_string(h), gen_grid(w, h));
  for (int l = 1; l <= hex_max; ++l) inst.emplace_back("G" + std::to_string(l), gen_hexagon_chain(l));
  for (int n = 2; n <= max_vertices; ++n) inst.emplace_back("P" + std::to_string(n), gen_path(n));
  for (int n = 3; n <= max_vertices; ++n) inst.emplace_back("C" + std::to_string(n), gen_cycle(n));
  for (int a = 1; 2 * a <= max_vertices; ++a)
    for (int b = a; a + b <= max_vertices && b <= a + 2; ++b)
      inst.emplace_back("K" + std::to_string(a) + "x" + std::to_string(b), gen_complete_bipartite(a, b));
  Rng rng(seed);
  const auto random_grids = p.integer("random_grids");
  for (long long k = 0; k < random_grids; ++k) {
    const int w = 2 + static_cast<int>(rng.below(grid_max - 1));
    const int h = 2 + static_cast<int>(rng.below(grid_max - 1));
    const double keep = 0.6 + 0.3 * rng.uniform();
    inst.emplace_back("random-grid" + std::to_string(k), gen_random_grid_subgraph(w, h, keep, rng()));
  }
  const auto random_bip = p.integer("random_bipartite");
  for (long long k = 0; k < random_bip; ++k) {
    const int half = 2 + static_cast<int>(rng.below(max_vertices / 2 - 1));
    const int d = 1 + static_cast<int>(rng.below(std::min(3, half)));
    inst.emplace_back("random-bipartite" + std::to_string(k), gen_random_bipartite(half, half, d, rng()));
  }

  csv.row({"instance", "n", "m", "fkt", "ryser", "enumerate", "methods", "agree"});
  int compared = 0, mismatches = 0;
  std::string grid23 = "missing", hex_counts;
  bool grid23_ok = false, hex_ok = true;
  for (const auto& [name, g] : inst) {
    std::vector<BigInt> values;
    std::string cells[3];
    const CountMethod methods[3] = {CountMethod::kFkt, CountMethod::kRyser, CountMethod::kEnumerate};
    for (int k = 0; k < 3; ++k) {
      if (!CountOracle::applicable(methods[k], g)) continue;
      const BigInt c = CountOracle(methods[k]).count(g);
      values.push_back(c);
      cells[k] = fmt(c);
    }
    const bool agree = std::all_of(values.begin(), values.end(), [&](const BigInt& v) { return v == values[0]; });
    if (values.size() >= 2) {
      ++compared;
      mismatches += !agree;
    }
    if (name == "grid2x3") {
      grid23 = fmt(values[0]);
      grid23_ok = agree && values[0] == 3;
    }
    if (name[0] == 'G') {
      hex_counts += (hex_counts.empty() ? "" : ",") + fmt(values[0]);
      hex_ok = hex_ok && agree && values[0] == 1;
    }
    csv.row({name, std::to_string(g.num_vertices()), std::to_string(g.num_edges()), cells[0], cells[1], cells[2],
             std::to_string(values.size()), agree ? "1" : "0"});
  }

  const std::string exp = "pm-agreement";
  return {
      row(8, exp, "instances with at least two applicable counters", std::to_string(compared),
          ">= " + std::to_string(min_instances), compared >= min_instances),
      row(8, exp, "fkt = ryser = enumerate", std::to_string(mismatches) + " mismatches", "0", mismatches == 0),
      row(8, exp, "2x3 grid perfect matchings", grid23, "3", grid23_ok),
      row(8, exp, "G_l perfect matchings, l = 1.." + std::to_string(hex_max), hex_counts, "1 each", hex_ok),
  };
}

// Criterion 10.
std::vector<CriterionRow> hexagon_lowerbound(const Params& p, std::uint64_t, Csv& csv) {
  const auto ells = p.integers("ells");
  const auto lambdas = p.reals("lambdas");
  csv.row({"ell", "check", "lambda", "value", "bound", "pass"});
  std::string pm, nu, nu_claim, near, near_bound;
  bool pm_ok = true, nu_ok = true, near_ok = true, p_ok = true;
  int p_bad = 0;
  auto join = [](std::string& s, const std::string& v) { s += (s.empty() ? "" : ",") + v; };
  for (long long ell : ells) {
    const auto rep = verify_hexagon(static_cast<int>(ell), lambdas);
    const std::string l = std::to_string(ell);
    csv.row({l, "pm_count", "", fmt(rep.pm_count), "1", rep.pm_count == 1 ? "1" : "0"});
    csv.row({l, "pm_count_fkt", "", fmt(rep.pm_count_fkt), "1", rep.pm_count_fkt == 1 ? "1" : "0"});
    csv.row({l, "nu", "", std::to_string(rep.nu), std::to_string(rep.nu_claimed), rep.nu_matches_claim() ? "1" : "0"});
    csv.row({l, "near_count", "", fmt(rep.near_count), fmt(rep.near_bound), rep.near_count_ok() ? "1" : "0"});
    for (std::size_t k = 0; k < rep.lambdas.size(); ++k) {
      const bool ok = rep.p[k] <= rep.p_bound[k] * (1 + 1e-12L);
      p_bad += !ok;
      csv.row({l, "pm_probability", fmt(rep.lambdas[k]), fmt(rep.p[k]), fmt(rep.p_bound[k]), ok ? "1" : "0"});
    }
    join(pm, fmt(rep.pm_count));
    join(nu, std::to_string(rep.nu));
    join(nu_claim, std::to_string(rep.nu_claimed));
    join(near, fmt(rep.near_count));
    join(near_bound, fmt(rep.near_bound));
    pm_ok = pm_ok && rep.pm_unique();
    nu_ok = nu_ok && rep.nu_matches_claim();
    near_ok = near_ok && rep.near_count_ok();
    p_ok = p_ok && rep.p_ok();
  }
  std::string ls;
  for (long long ell : ells) join(ls, std::to_string(ell));
  const std::string exp = "hexagon-lowerbound";
  return {
      row(10, exp, "perfect matching count, l = " + ls, pm, "1 each", pm_ok),
      row(10, exp, "nu = 2 + 2l, l = " + ls, nu, nu_claim, nu_ok),
      row(10, exp, "(nu-1)-matchings >= 2^l, l = " + ls, near, ">= " + near_bound, near_ok),
      row(10, exp, "p(lambda) <= lambda/(lambda + 2^l) on " + std::to_string(lambdas.size()) + " lambdas",
          std::to_string(p_bad) + " violations", "0", p_ok && p_bad == 0),
  };
}

// Criterion 11.
std::vector<CriterionRow> sparsifier_quality(const Params& p, std::uint64_t seed, Csv& csv) {
  const int n0 = static_cast<int>(p.integer("n"));
  const int degree = static_cast<int>(p.integer("degree"));
  const int instances = static_cast<int>(p.integer("instances"));
  const int seeds = static_cast<int>(p.integer("seeds"));
  SparsifierParams sp;
  sp.epsilon = p.real("epsilon");
  sp.c = p.real("c");
  SparsifierThresholds th;
  th.min_ratio = p.real("min_ratio");
  th.degree_factor = p.real("degree_factor");
  LpOptions lp_opt;
  lp_opt.tol = p.real("tol");
  std::vector<int> sizes = {n0};
  if (p.integer("doubling") != 0) sizes.push_back(2 * n0);

  csv.row({"n", "instance", "seed", "nu_g", "nu_h", "ratio", "max_degree_h", "degree_limit", "pass"});
  std::vector<int> ratio_fail(sizes.size()), degree_fail(sizes.size());
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const int n = sizes[si];
    sp.alpha = sp.epsilon / std::log(static_cast<double>(n));
    for (int i = 0; i < instances; ++i) {
      const Graph g = gen_random_bipartite(n / 2, n - n / 2, degree, sub_seed(seed, si, i));
      const auto lp = solve_regularized_lp(g, sp.alpha, lp_opt);
      std::vector<double> ratios;
      bool degree_ok = true;
      for (int s = 0; s < seeds; ++s) {
        const Graph h = sample_sparsifier(g, lp.x, sp, sub_seed(seed, 100 + si, static_cast<std::uint64_t>(i) * 1000 + s));
        const auto rep = sparsifier_report(g, h, sp.epsilon, th);
        ratios.push_back(rep.ratio);
        degree_ok = degree_ok && rep.degree_pass;
        csv.row({std::to_string(n), std::to_string(i), std::to_string(s), std::to_string(rep.nu_g),
                 std::to_string(rep.nu_h), fmt(rep.ratio), std::to_string(rep.max_degree_h), fmt(rep.degree_limit),
                 rep.pass() ? "1" : "0"});
      }
      std::sort(ratios.begin(), ratios.end());
      const std::size_t k = ratios.size();
      const double median = k % 2 ? ratios[k / 2] : (ratios[k / 2 - 1] + ratios[k / 2]) / 2;
      const bool ok = median >= th.min_ratio;
      ratio_fail[si] += !ok;
      degree_fail[si] += !degree_ok;
      csv.row({std::to_string(n), std::to_string(i), "median", "", "", fmt(median), "", "", ok ? "1" : "0"});
    }
  }

  const std::string exp = "sparsifier-quality";
  const std::string n0s = std::to_string(n0);
  std::vector<CriterionRow> rows = {
      row(11, exp, "median nu(H)/nu(G) over " + std::to_string(seeds) + " seeds >= " + fmt(th.min_ratio) + " at n=" + n0s,
          std::to_string(ratio_fail[0]) + " of " + std::to_string(instances) + " instances fail", "0",
          ratio_fail[0] == 0),
      row(11, exp, "max degree of H <= " + fmt(th.degree_factor) + " eps^-2 ln n at n=" + n0s,
          std::to_string(degree_fail[0]) + " of " + std::to_string(instances) + " instances fail", "0",
          degree_fail[0] == 0),
  };
  if (sizes.size() == 2) {
    const int f0 = std::max(ratio_fail[0], degree_fail[0]), f1 = std::max(ratio_fail[1], degree_fail[1]);
    rows.push_back(row(11, exp, "failure rate does not increase from n=" + n0s + " to n=" + std::to_string(sizes[1]),
                       std::to_string(f0) + "/" + std::to_string(instances) + " -> " + std::to_string(f1) + "/" +
                           std::to_string(instances),
                       "non-increasing", f1 <= f0));
  }
  return rows;
}

// Criterion 12.
std::vector<CriterionRow> lp_stability(const Params& p, std::uint64_t seed, Csv& csv) {
  const auto sizes = p.integers("sizes");
  const int degree = static_cast<int>(p.integer("degree"));
  const int instances = static_cast<int>(p.integer("instances"));
  const int trials = static_cast<int>(p.integer("trials"));
  const double eps = p.real("epsilon");
  const double tol = p.real("tol");
  const double factor = p.real("factor");
  if (sizes.empty()) throw ConfigError("lp-stability.sizes", "needs at least one size");

  csv.row({"n", "instance", "trial", "deleted", "alpha", "s", "l1", "hamming", "scaled", "base_gap"});
  std::vector<Real> max_scaled(sizes.size(), 0);
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const int n = static_cast<int>(sizes[si]);
    SparsifierParams sp;
    sp.epsilon = eps;
    sp.alpha = eps / std::log(static_cast<double>(n));
    for (int i = 0; i < instances; ++i) {
      const Graph g = gen_random_bipartite(n / 2, n - n / 2, degree, sub_seed(seed, si, i));
      const auto rep = stability_experiment(g, sp.alpha, tol, trials, sub_seed(seed, 100 + si, i), sp);
      for (std::size_t t = 0; t < rep.trials.size(); ++t) {
        const auto& tr = rep.trials[t];
        csv.row({std::to_string(n), std::to_string(i), std::to_string(t), std::to_string(tr.deleted), fmt(sp.alpha),
                 fmt(tr.s), fmt(tr.l1), fmt(tr.hamming), fmt(tr.scaled), fmt(rep.base_gap)});
      }
      max_scaled[si] = std::max(max_scaled[si], rep.max_scaled);
    }
  }

  const std::string exp = "lp-stability";
  const Real ceiling = max_scaled[0];
  std::vector<CriterionRow> rows = {row(12, exp, "ceiling max S alpha/ln n fitted at n=" + std::to_string(sizes[0]),
                                        fmt(ceiling), "finite", std::isfinite(static_cast<double>(ceiling)))};
  for (std::size_t si = 1; si < sizes.size(); ++si) {
    rows.push_back(row(12, exp, "max S alpha/ln n at n=" + std::to_string(sizes[si]), fmt(max_scaled[si]),
                       "<= " + fmt(factor) + " x " + fmt(ceiling), max_scaled[si] <= factor * ceiling));
  }
  return rows;
}

using Runner = std::function<std::vector<CriterionRow>(const Params&, std::uint64_t, Csv&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> r = {
      {"approx-check", approx_check},           {"sensitivity-audit", sensitivity_audit},
      {"mixing-tv", mixing_tv},                 {"pm-agreement", pm_agreement},
      {"hexagon-lowerbound", hexagon_lowerbound}, {"sparsifier-quality", sparsifier_quality},
      {"lp-stability", lp_stability},
  };
  return r;
}

std::uint64_t parse_seed(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (used == s.size() && s[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "expected an unsigned integer, got '" + s + "'");
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, d] : defaults_table()) v.push_back(name);
    return v;
  }();
  return names;
}

const std::map<std::string, std::string>& experiment_defaults(const std::string& name) {
  for (const auto& [n, d] : defaults_table()) {
    if (n == name) return d;
  }
  throw ConfigError(name, "unknown experiment");
}

std::string default_config_text() {
  std::ostringstream os;
  os << "seed = 1\nout = matchlab-out\nthreads = 1\n";
  for (const auto& [name, d] : defaults_table()) {
    os << "\n[" << name << "]\n";
    for (const auto& [k, v] : d) os << k << " = " << v << '\n';
  }
  return os.str();
}

std::uint64_t default_root_seed() {
  if (const char* env = std::getenv("MATCHLAB_SEED"); env && *env) return parse_seed("MATCHLAB_SEED", env);
  return 1;
}

SuiteConfig parse_suite_config(std::string_view text) {
  SuiteConfig cfg;
  ExperimentConfig* current = nullptr;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line, "malformed section header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!runners().count(name)) throw ConfigError(name, "unknown experiment");
      for (const auto& e : cfg.experiments) {
        if (e.name == name) throw ConfigError(name, "duplicate section");
      }
      cfg.experiments.push_back({name, experiment_defaults(name)});
      current = &cfg.experiments.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (current) {
      if (!current->params.count(key)) throw ConfigError(current->name + "." + key, "unknown key");
      current->params[key] = value;
    } else if (key == "seed") {
      cfg.seed = parse_seed(key, value);
      cfg.seed_given = true;
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "threads") {
      const auto t = parse_seed(key, value);
      cfg.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, t));
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  if (!cfg.seed_given) cfg.seed = default_root_seed();
  return cfg;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read config " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_suite_config(ss.str());
}

std::uint64_t experiment_seed(std::uint64_t root, const std::string& name) {
  return mix64(root ^ hash_name(name.c_str()));
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::uint64_t root_seed, const std::string& out_dir) {
  auto it = runners().find(config.name);
  if (it == runners().end()) throw ConfigError(config.name, "unknown experiment");
  ExperimentConfig full{config.name, experiment_defaults(config.name)};
  for (const auto& [k, v] : config.params) {
    if (!full.params.count(k)) throw ConfigError(config.name + "." + k, "unknown key");
    full.params[k] = v;
  }
  std::filesystem::create_directories(out_dir);
  Csv csv;
  ExperimentResult res;
  res.name = config.name;
  res.rows = it->second(Params(full), experiment_seed(root_seed, config.name), csv);
  res.csv_path = (std::filesystem::path(out_dir) / (config.name + ".csv")).string();
  csv.write(res.csv_path);
  return res;
}

SuiteResult run_suite(const SuiteConfig& config) {
  std::filesystem::create_directories(config.out_dir);
  SuiteResult out;
  out.experiments.resize(config.experiments.size());
  std::vector<std::exception_ptr> errors(config.experiments.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < config.experiments.size();) {
      try {
        out.experiments[i] = run_experiment(config.experiments[i], config.seed, config.out_dir);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers =
      std::min<unsigned>(std::max(1u, config.threads), static_cast<unsigned>(std::max<std::size_t>(1, config.experiments.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Csv summary({"criterion", "experiment", "check", "value", "threshold", "pass"});
  for (const auto& e : out.experiments) {
    for (const auto& r : e.rows) {
      auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
      };
      summary.row({std::to_string(r.criterion), r.experiment, quote(r.check), quote(r.value), quote(r.threshold),
                   r.pass ? "PASS" : "FAIL"});
    }
  }
  out.summary_path = (std::filesystem::path(config.out_dir) / "summary.csv").string();
  summary.write(out.summary_path);
  return out;
}

void emit_plotdata(const std::string& csv_path, const std::string& x_column, const std::string& y_column,
                   const std::string& out_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot read " + csv_path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write " + out_path);
  out << "# " << x_column << ' ' << y_column << '\n';
  if (rows.empty()) return;
  auto column = [&](const std::string& name) {
    auto it = std::find(rows[0].begin(), rows[0].end(), name);
    if (it == rows[0].end()) throw Error("missing column '" + name + "' in " + csv_path);
    return static_cast<std::size_t>(it - rows[0].begin());
  };
  const std::size_t xi = column(x_column), yi = column(y_column);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& c = rows[r];
    out << (xi < c.size() ? c[xi] : "") << ' ' << (yi < c.size() ? c[yi] : "") << '\n';
  }
}

}  // namespace matchlab
