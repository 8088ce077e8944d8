#pragma once

// Fixtures and independent oracles shared by the unit and acceptance suites.
// Oracles here work from plain edge maps and the written-out definitions, not
// from the library's indexes.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "toptri/graph.hpp"
#include "toptri/sampling.hpp"
#include "toptri/synthgen.hpp"
#include "toptri/topk.hpp"
#include "toptri/weighting.hpp"

namespace toptri::testing {

inline WeightedGraph from_text(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

// Hand-built 8-edge fixture; its four triangles have unnormalized p=1
// weights 24, 16, 14, 12.
inline const char* kG1Text =
    "1 2 10\n1 3 8\n2 3 6\n1 4 5\n2 4 1\n1 5 4\n4 5 3\n3 5 2\n";

inline WeightedGraph g1() { return from_text(kG1Text); }

inline WeightedGraph complete_graph(NodeId n, double w = 1.0) {
  std::vector<WeightedEdge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.push_back({u, v, w});
  return WeightedGraph::from_edges(n, e);
}

inline WeightedGraph star_graph(NodeId leaves) {
  std::vector<WeightedEdge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.push_back({0, v, static_cast<double>(v)});
  return WeightedGraph::from_edges(leaves + 1, e);
}

using Triple = std::array<NodeId, 3>;

struct EdgeMap {
  std::map<std::pair<NodeId, NodeId>, double> w;
  NodeId n = 0;

  explicit EdgeMap(const WeightedGraph& g) : n(g.num_nodes()) {
    for (const auto& e : g.edges()) w[{e.u, e.v}] = e.w;
  }
  bool has(NodeId a, NodeId b) const { return w.count(key(a, b)) > 0; }
  double at(NodeId a, NodeId b) const { return w.at(key(a, b)); }
  std::vector<NodeId> nbrs(NodeId a) const {
    std::vector<NodeId> out;
    for (NodeId b = 0; b < n; ++b)
      if (b != a && has(a, b)) out.push_back(b);
    return out;
  }
  static std::pair<NodeId, NodeId> key(NodeId a, NodeId b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  }
};

inline double unnorm_p(const EdgeMap& m, const Triple& t, double p) {
  return std::pow(m.at(t[0], t[1]), p) + std::pow(m.at(t[0], t[2]), p) +
         std::pow(m.at(t[1], t[2]), p);
}

// All triangles by a plain triple loop, ranked by the shared scoring rule.
inline std::vector<Triangle> naive_triangles(const WeightedGraph& g, PMeanParam p) {
  EdgeMap m(g);
  EdgeScorer scorer(p);
  std::vector<Triangle> out;
  for (NodeId a = 0; a < m.n; ++a)
    for (NodeId b = a + 1; b < m.n; ++b) {
      if (!m.has(a, b)) continue;
      for (NodeId c = b + 1; c < m.n; ++c)
        if (m.has(a, c) && m.has(b, c))
          out.push_back(make_triangle(a, b, c, m.at(a, b), m.at(a, c), m.at(b, c), scorer));
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return ranks_before(x, y); });
  return out;
}

inline std::vector<Triple> triples_of(const std::vector<Triangle>& ts) {
  std::vector<Triple> out;
  for (const auto& t : ts) out.push_back(t.nodes());
  return out;
}

// ---- exhaustive branch enumeration of one sampler iteration ----------------

using HitDistribution = std::map<Triple, double>;

inline Triple sorted3(NodeId a, NodeId b, NodeId c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

// Edge (a,b) with probability w^p / Z, then every common neighbor.
inline HitDistribution edge_sampling_branches(const WeightedGraph& g, double p) {
  EdgeMap m(g);
  double z = 0.0;
  for (auto& [k, w] : m.w) z += std::pow(w, p);
  HitDistribution out;
  for (auto& [k, w] : m.w)
    for (NodeId c : m.nbrs(k.first))
      if (c != k.second && m.has(k.second, c)) out[sorted3(k.first, k.second, c)] += std::pow(w, p) / z;
  return out;
}

// Same draw, but grouped by the full set of triangles one iteration reports
// (an edge closes all its triangles at once, so hits are not exclusive).
using HitSetDistribution = std::map<std::vector<Triple>, double>;

inline HitSetDistribution edge_sampling_hit_sets(const WeightedGraph& g, double p) {
  EdgeMap m(g);
  double z = 0.0;
  for (auto& [k, w] : m.w) z += std::pow(w, p);
  HitSetDistribution out;
  for (auto& [k, w] : m.w) {
    std::vector<Triple> hits;
    for (NodeId c : m.nbrs(k.first))
      if (c != k.second && m.has(k.second, c)) hits.push_back(sorted3(k.first, k.second, c));
    std::sort(hits.begin(), hits.end());
    out[hits] += std::pow(w, p) / z;
  }
  return out;
}

// Wedge draws: a ~ 2 d_a D(a), b | a ~ d_a w_ab^p + D(a), c | a,b ~ w_ac^p + w_ab^p.
inline HitDistribution wedge_sampling_branches(const WeightedGraph& g, double p) {
  EdgeMap m(g);
  std::vector<double> big_d(m.n, 0.0);
  for (NodeId a = 0; a < m.n; ++a)
    for (NodeId b : m.nbrs(a)) big_d[a] += std::pow(m.at(a, b), p);
  double z1 = 0.0;
  for (NodeId a = 0; a < m.n; ++a) z1 += 2.0 * m.nbrs(a).size() * big_d[a];
  HitDistribution out;
  for (NodeId a = 0; a < m.n; ++a) {
    const auto nb = m.nbrs(a);
    const double da = static_cast<double>(nb.size());
    const double pa = 2.0 * da * big_d[a] / z1;
    double z2 = 0.0;
    for (NodeId b : nb) z2 += da * std::pow(m.at(a, b), p) + big_d[a];
    for (NodeId b : nb) {
      const double pb = (da * std::pow(m.at(a, b), p) + big_d[a]) / z2;
      double z3 = 0.0;
      for (NodeId c : nb) z3 += std::pow(m.at(a, c), p) + std::pow(m.at(a, b), p);
      for (NodeId c : nb) {
        if (c == b || !m.has(b, c)) continue;
        const double pc = (std::pow(m.at(a, c), p) + std::pow(m.at(a, b), p)) / z3;
        out[sorted3(a, b, c)] += pa * pb * pc;
      }
    }
  }
  return out;
}

// Path draws over canonical edges a < b; c in N(a)\{b}, c' in N(b)\{a}.
inline HitDistribution path_sampling_branches(const WeightedGraph& g, double p) {
  EdgeMap m(g);
  std::vector<double> big_d(m.n, 0.0);
  for (NodeId a = 0; a < m.n; ++a)
    for (NodeId b : m.nbrs(a)) big_d[a] += std::pow(m.at(a, b), p);
  auto w1 = [&](NodeId a, NodeId b) {
    const double da = m.nbrs(a).size() - 1.0, db = m.nbrs(b).size() - 1.0;
    const double wab = std::pow(m.at(a, b), p);
    return da * db * wab + da * (big_d[b] - wab) + db * (big_d[a] - wab);
  };
  double z1 = 0.0;
  for (auto& [k, w] : m.w) z1 += w1(k.first, k.second);
  HitDistribution out;
  for (auto& [k, w] : m.w) {
    const NodeId a = k.first, b = k.second;
    const double pe = w1(a, b) / z1;
    if (pe == 0.0) continue;
    const double db = m.nbrs(b).size() - 1.0;
    const double wab = std::pow(w, p);
    auto w2 = [&](NodeId c) { return db * (std::pow(m.at(a, c), p) + wab) + (big_d[b] - wab); };
    double z2 = 0.0;
    for (NodeId c : m.nbrs(a))
      if (c != b) z2 += w2(c);
    for (NodeId c : m.nbrs(a)) {
      if (c == b) continue;
      auto w3 = [&](NodeId c2) {
        return std::pow(m.at(a, c), p) + wab + std::pow(m.at(b, c2), p);
      };
      double z3 = 0.0;
      for (NodeId c2 : m.nbrs(b))
        if (c2 != a) z3 += w3(c2);
      if (!m.has(b, c)) continue;
      out[sorted3(a, b, c)] += pe * (w2(c) / z2) * (w3(c) / z3);
    }
  }
  return out;
}

// ---- statistics -------------------------------------------------------------

struct ChiSquare {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

// Goodness of fit over categories with the given probabilities (they need not
// sum to 1; the remainder forms one extra category). Categories with expected
// count below 5 are pooled.
inline ChiSquare chi_square(const std::vector<double>& probs, const std::vector<double>& counts,
                            double trials) {
  std::vector<double> e, o;
  double rest_p = 1.0, rest_c = trials, pool_e = 0.0, pool_o = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    rest_p -= probs[i];
    rest_c -= counts[i];
    if (probs[i] * trials < 5.0) {
      pool_e += probs[i] * trials;
      pool_o += counts[i];
    } else {
      e.push_back(probs[i] * trials);
      o.push_back(counts[i]);
    }
  }
  if (rest_p * trials > 1e-9) {
    pool_e += std::max(0.0, rest_p) * trials;
    pool_o += rest_c;
  }
  if (pool_e > 0.0) {
    e.push_back(pool_e);
    o.push_back(pool_o);
  }
  ChiSquare r;
  for (std::size_t i = 0; i < e.size(); ++i) r.statistic += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  r.df = static_cast<double>(e.size()) - 1.0;
  if (r.df >= 1.0) {
    boost::math::chi_squared dist(r.df);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  }
  return r;
}

// Runs `trials` single iterations of `sampler` and tests the triangle hit
// frequencies against `want` (iterations must hit at most one triangle).
template <class Sampler>
ChiSquare single_hit_fit(const Sampler& sampler, const HitDistribution& want, std::size_t trials,
                         std::uint64_t seed) {
  std::map<Triple, double> counts;
  auto rng = worker_rng(seed, 0);
  for (std::size_t i = 0; i < trials; ++i)
    sampler.iterate(rng, [&](const Triangle& t) { counts[t.nodes()] += 1.0; });
  std::vector<double> probs, obs;
  double unexpected = 0.0;
  for (auto& [t, c] : counts)
    if (!want.count(t)) unexpected += c;
  for (auto& [t, q] : want) {
    probs.push_back(q);
    obs.push_back(counts.count(t) ? counts.at(t) : 0.0);
  }
  if (unexpected > 0.0) return {std::numeric_limits<double>::infinity(), 0.0, 0.0};
  return chi_square(probs, obs, static_cast<double>(trials));
}

// Same for samplers whose iterations report a set of triangles.
template <class Sampler>
ChiSquare hit_set_fit(const Sampler& sampler, const HitSetDistribution& want, std::size_t trials,
                      std::uint64_t seed) {
  std::map<std::vector<Triple>, double> counts;
  auto rng = worker_rng(seed, 0);
  std::vector<Triple> hits;
  for (std::size_t i = 0; i < trials; ++i) {
    hits.clear();
    sampler.iterate(rng, [&](const Triangle& t) { hits.push_back(t.nodes()); });
    std::sort(hits.begin(), hits.end());
    counts[hits] += 1.0;
  }
  std::vector<double> probs, obs;
  for (auto& [h, c] : counts)
    if (!want.count(h)) return {std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (auto& [h, q] : want) {
    probs.push_back(q);
    obs.push_back(counts.count(h) ? counts.at(h) : 0.0);
  }
  return chi_square(probs, obs, static_cast<double>(trials));
}

// Random graph on n nodes with edge probability q and integer or power-law
// weights; used for property sweeps.
inline WeightedGraph random_graph(std::size_t n, double q, std::uint64_t seed, bool integer_weights) {
  if (integer_weights) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> wd(1, 9);
    std::bernoulli_distribution coin(q);
    std::vector<WeightedEdge> e;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (coin(rng)) e.push_back({u, v, static_cast<double>(wd(rng))});
    return WeightedGraph::from_edges(static_cast<NodeId>(n), e);
  }
  return generate_erdos_renyi(n, q, PowerLawWeight{2.0, 1.0}, seed);
}

}  // namespace toptri::testing
