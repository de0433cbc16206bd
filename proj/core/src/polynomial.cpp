#include "matchlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace matchlab {

namespace mp = boost::multiprecision;

Real MatchingPolynomial::evaluate(Real x) const {
  Real acc = 0;
  for (int k = degree(); k >= 0; --k) acc = acc * x + coeffs[k].convert_to<Real>();
  return acc;
}

std::string MatchingPolynomial::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k) os << ' ';
    os << coeffs[k];
  }
  return os.str();
}

MatchingPolynomial MatchingPolynomial::parse(const std::string& text) {
  MatchingPolynomial p;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) p.coeffs.emplace_back(tok);
  if (p.coeffs.empty()) throw Error("empty polynomial");
  return p;
}

// ---------------------------------------------------------------------------
// Deletion-contraction.

namespace {

using Key = std::vector<std::uint64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (auto w : k) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

using Coeffs = std::vector<BigInt>;

class DeletionContraction {
 public:
  DeletionContraction(const Graph& g, const PolynomialOptions& opt) : g_(g), opt_(opt) {
    const int m = g.num_edges();
    words_ = (m + 63) / 64;
    for (int i = 0; i < m; ++i) {
      const Edge& e = g.edges()[i];
      ends_.push_back({e.u, e.v});
    }
    incident_pos_.resize(g.num_vertices());
    for (int i = 0; i < m; ++i) {
      incident_pos_[ends_[i].first].push_back(i);
      incident_pos_[ends_[i].second].push_back(i);
    }
  }

  Coeffs run() {
    Key all(words_, 0);
    for (int i = 0; i < g_.num_edges(); ++i) all[i / 64] |= 1ULL << (i % 64);
    return solve(all);
  }

 private:
  static bool test(const Key& k, int i) { return (k[i / 64] >> (i % 64)) & 1ULL; }
  static void clear(Key& k, int i) { k[i / 64] &= ~(1ULL << (i % 64)); }

  Coeffs solve(const Key& key) {
    bool any = false;
    for (auto w : key) any = any || w != 0;
    if (!any) return Coeffs{BigInt(1)};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Branch on an edge at a vertex of minimum positive residual degree.
    int best_vertex = -1, best_degree = 0;
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      int d = 0;
      for (int i : incident_pos_[v]) d += test(key, i);
      if (d > 0 && (best_vertex < 0 || d < best_degree)) {
        best_vertex = v;
        best_degree = d;
      }
    }
    int pick = -1;
    for (int i : incident_pos_[best_vertex]) {
      if (test(key, i)) {
        pick = i;
        break;
      }
    }

    Key without = key;
    clear(without, pick);
    Key contracted = key;
    for (int i : incident_pos_[ends_[pick].first]) clear(contracted, i);
    for (int i : incident_pos_[ends_[pick].second]) clear(contracted, i);

    Coeffs a = solve(without);
    Coeffs b = solve(contracted);
    Coeffs out(std::max(a.size(), b.size() + 1));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k + 1] += b[k];
    while (out.size() > 1 && out.back() == 0) out.pop_back();

    if (static_cast<int>(out.size()) - 1 > opt_.max_degree) {
      throw CapExceeded("matching polynomial degree exceeds cap " + std::to_string(opt_.max_degree));
    }
    if (memo_.size() >= opt_.max_states) {
      throw CapExceeded("matching polynomial memo exceeds " + std::to_string(opt_.max_states) + " states");
    }
    memo_.emplace(key, out);
    return out;
  }

  const Graph& g_;
  PolynomialOptions opt_;
  int words_ = 0;
  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<std::vector<int>> incident_pos_;
  std::unordered_map<Key, Coeffs, KeyHash> memo_;
};

}  // namespace

MatchingPolynomial matching_polynomial(const Graph& g, const PolynomialOptions& options) {
  DeletionContraction dc(g, options);
  return MatchingPolynomial{dc.run()};
}

Real expected_size(const MatchingPolynomial& p, Real lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  const int nu = p.degree();
  // Scale every term by lambda^-nu when lambda > 1 to stay in range.
  Real num = 0, den = 0;
  for (int k = 0; k <= nu; ++k) {
    Real w = p.coeffs[k].convert_to<Real>() *
             (lambda > 1 ? std::pow(lambda, static_cast<Real>(k - nu)) : std::pow(lambda, static_cast<Real>(k)));
    num += k * w;
    den += w;
  }
  return num / den;
}

Real expected_size(const Graph& g, Real lambda) { return expected_size(matching_polynomial(g), lambda); }

// ---------------------------------------------------------------------------
// Exact real-root isolation.

namespace {

using Q = mp::cpp_rational;
using QPoly = std::vector<Q>;     // ascending coefficients, no trailing zeros
using ZPoly = std::vector<BigInt>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<int>(k));
  trim(d);
  return d;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  trim(a);
  return a;
}

std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  QPoly q;
  if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, Q(0));
  while (!a.empty() && deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    Q factor = a.back() / b.back();
    q[shift] = factor;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= factor * b[k];
    a.pop_back();  // leading term cancels exactly
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly monic(QPoly p) {
  Q lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly exact_div(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

// Positive rescaling to integer coefficients keeps every sign.
ZPoly to_integer(const QPoly& p) {
  BigInt l = 1;
  for (const auto& c : p) l = mp::lcm(l, mp::denominator(c));
  ZPoly z;
  BigInt g = 0;
  for (const auto& c : p) {
    z.push_back(mp::numerator(c) * (l / mp::denominator(c)));
    g = mp::gcd(g, z.back());
  }
  if (g > 1) {
    for (auto& c : z) c /= g;
  }
  return z;
}

// Square-free factors (Yun) paired with their multiplicity.
std::vector<std::pair<QPoly, int>> squarefree_factors(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly fp = derivative(f);
  QPoly a = gcd(f, fp);
  QPoly b = exact_div(f, a);
  QPoly c = exact_div(fp, a);
  QPoly d = sub(c, derivative(b));
  for (int i = 1; deg(b) > 0; ++i) {
    QPoly ai = gcd(b, d);
    b = exact_div(b, ai);
    c = exact_div(d, ai);
    d = sub(c, derivative(b));
    if (deg(ai) > 0) out.emplace_back(ai, i);
  }
  return out;
}

constexpr int kFracBits = 256;

// sign of p(num / 2^kFracBits)
int sign_at(const ZPoly& p, const BigInt& num) {
  const int d = static_cast<int>(p.size()) - 1;
  BigInt acc = p[d];
  for (int j = d - 1; j >= 0; --j) {
    acc = acc * num + (p[j] << (kFracBits * (d - j)));
  }
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

class Sturm {
 public:
  explicit Sturm(const QPoly& f) {
    QPoly a = f, b = derivative(f);
    chain_.push_back(to_integer(a));
    while (!b.empty()) {
      chain_.push_back(to_integer(b));
      QPoly r = divmod(a, b).second;
      for (auto& x : r) x = -x;
      a = std::move(b);
      b = std::move(r);
    }
  }

  int variations(const BigInt& num) const {
    int changes = 0, last = 0;
    for (const auto& p : chain_) {
      int s = sign_at(p, num);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

 private:
  std::vector<ZPoly> chain_;
};

Real to_real(const BigInt& num) {
  return std::ldexp(num.convert_to<Real>(), -kFracBits);
}

std::vector<Real> squarefree_roots(const QPoly& f) {
  ZPoly z = to_integer(f);
  BigInt lead = mp::abs(z.back());
  BigInt bound = 1;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) bound = std::max(bound, BigInt(mp::abs(z[k]) / lead + 1));
  bound += 1;
  const BigInt lo = -(bound << kFracBits);
  const BigInt hi = bound << kFracBits;

  Sturm sturm(f);
  std::vector<Real> roots;
  struct Interval {
    BigInt a, b;
    int va, vb;
  };
  std::vector<Interval> work{{lo, hi, sturm.variations(lo), sturm.variations(hi)}};
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    int count = iv.va - iv.vb;
    if (count <= 0) continue;
    if (iv.b - iv.a <= 1) {
      // Interval of width 2^-256: every root inside coincides at this precision.
      for (int k = 0; k < count; ++k) roots.push_back(to_real(iv.b));
      continue;
    }
    if (count == 1) {
      // Refine until the interval is far below extended precision.
      BigInt a = iv.a, b = iv.b;
      int va = iv.va;
      while (b - a > 1) {
        BigInt mid = (a + b) / 2;
        if (mp::abs(b - a) < (mp::abs(b) >> 90) + 1) break;
        int vm = sturm.variations(mid);
        if (va - vm >= 1) {
          b = mid;
        } else {
          a = mid;
          va = vm;
        }
      }
      roots.push_back(to_real((a + b) / 2));
      continue;
    }
    BigInt mid = (iv.a + iv.b) / 2;
    int vm = sturm.variations(mid);
    work.push_back({mid, iv.b, vm, iv.vb});
    work.push_back({iv.a, mid, iv.va, vm});
  }
  return roots;
}

}  // namespace

RootSet polynomial_roots(const MatchingPolynomial& p) {
  if (p.degree() < 1) throw Error("polynomial_roots needs degree >= 1");
  QPoly f;
  for (const auto& c : p.coeffs) f.emplace_back(c);
  trim(f);

  RootSet out;
  for (const auto& [factor, multiplicity] : squarefree_factors(f)) {
    for (Real r : squarefree_roots(factor)) {
      for (int k = 0; k < multiplicity; ++k) out.roots.push_back(r);
    }
  }
  if (static_cast<int>(out.roots.size()) != p.degree()) {
    throw Error("found " + std::to_string(out.roots.size()) + " real roots for a degree-" +
                std::to_string(p.degree()) + " polynomial");
  }
  std::sort(out.roots.begin(), out.roots.end());

  for (Real r : out.roots) {
    Real value = 0, scale = 0;
    for (int k = p.degree(); k >= 0; --k) {
      Real c = p.coeffs[k].convert_to<Real>();
      value = value * r + c;
      scale = scale * std::fabs(r) + std::fabs(c);
    }
    out.residual = std::max(out.residual, std::fabs(value) / scale);
  }
  return out;
}

Real expected_size_via_roots(const RootSet& roots, Real lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  Real sum = 0;
  for (Real r : roots.roots) sum += lambda / (lambda - r);
  return sum;
}

RootSpectrumReport root_spectrum_check(const RootSet& roots, int delta_max, double epsilon) {
  RootSpectrumReport rep;
  rep.epsilon = epsilon;
  rep.delta_max = delta_max;
  rep.upper_threshold = std::pow(static_cast<Real>(4 * delta_max), static_cast<Real>(1.0 / epsilon));
  rep.all_negative = !roots.roots.empty();
  rep.min_abs_root = std::numeric_limits<Real>::infinity();
  int below = 0;
  for (Real r : roots.roots) {
    rep.all_negative = rep.all_negative && r < 0;
    rep.min_abs_root = std::min(rep.min_abs_root, std::fabs(r));
    if (std::fabs(r) <= rep.upper_threshold) ++below;
  }
  rep.fraction_below_upper = roots.roots.empty() ? 1 : static_cast<Real>(below) / roots.roots.size();
  rep.upper_pass = rep.fraction_below_upper >= 1 - epsilon;
  if (delta_max < 2) {
    rep.lower_skipped = true;
    rep.lower_pass = true;
    rep.note = "lower bound skipped: 4(Delta-1) = 0";
  } else {
    rep.lower_threshold = 1 / static_cast<Real>(4 * (delta_max - 1));
    // Relative slack covers the rounding of the computed roots only.
    rep.lower_pass = rep.min_abs_root >= rep.lower_threshold * (1 - 1e-12L);
  }
  return rep;
}

RootSpectrumReport root_spectrum_check(const MatchingPolynomial& p, int delta_max, double epsilon) {
  return root_spectrum_check(polynomial_roots(p), delta_max, epsilon);
}

}  // namespace matchlab
