#include "toptri/heavy_light.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "toptri/enumerate.hpp"

namespace toptri {

TopKResult static_heavy_light(const WeightedGraph& g, const SortedEdgeList& edges, PMeanParam p,
                              std::size_t k, double heavy_fraction) {
  if (!(heavy_fraction > 0.0 && heavy_fraction <= 1.0))
    throw Error("heavy fraction must lie in (0, 1]");
  if (k == 0) throw Error("k must be at least 1");
  const auto m = edges.size();
  auto count = static_cast<std::size_t>(std::ceil(heavy_fraction * static_cast<double>(m)));
  count = std::min(count, m);
  std::vector<WeightedEdge> heavy(edges.edges.begin(),
                                  edges.edges.begin() + static_cast<std::ptrdiff_t>(count));
  const auto sub = WeightedGraph::from_edges(g.num_nodes(), std::move(heavy), Aggregation::First);
  auto out = brute_force_topk(sub, p, k);
  out.exact = false;
  return out;
}

double alpha_from_powerlaw(double p, double beta) {
  const double denom = p - 1.0 + beta;
  if (denom == 0.0) throw Error("alpha undefined: p - 1 + beta == 0");
  return 2.0 - p / denom;
}

double weight_drop_per_edge(const SortedEdgeList& edges, std::size_t rank) {
  const auto& e = edges.edges;
  if (rank >= e.size()) throw Error("rank out of range");
  const double w = e[rank].w;
  std::size_t lo = rank, hi = rank + 1;
  while (lo > 0 && e[lo - 1].w == w) --lo;
  while (hi < e.size() && e[hi].w == w) ++hi;
  const double lower = hi < e.size() ? e[hi].w : 0.0;
  return (w - lower) / static_cast<double>(hi - lo);
}

std::vector<Triangle> incident_triangles_partitioned(const WeightedGraph& g, const WeightedEdge& e,
                                                     const PairFilter& keep, PMeanParam p) {
  const EdgeScorer scorer(p);
  std::vector<Triangle> out;
  auto nu = g.neighbors(e.u), nv = g.neighbors(e.v);
  auto wu = g.neighbor_weights(e.u), wv = g.neighbor_weights(e.v);
  std::size_t i = 0, j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i] < nv[j]) {
      ++i;
    } else if (nv[j] < nu[i]) {
      ++j;
    } else {
      const NodeId x = nu[i];
      const WeightedEdge eu{std::min(e.u, x), std::max(e.u, x), wu[i]};
      const WeightedEdge ev{std::min(e.v, x), std::max(e.v, x), wv[j]};
      if (!keep || keep(eu, ev)) out.push_back(make_triangle(e.u, e.v, x, e.w, wu[i], wv[j], scorer));
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

// Shared engine for the dynamic and distribution-oblivious variants. Nothing
// here is O(m): an edge's class follows from comparing it with e_h and e_l in
// the sorted order, and only promoted edges get per-node lists.
class HeavyLightRun {
 public:
  HeavyLightRun(const WeightedGraph& g, const SortedEdgeList& edges, PMeanParam p, std::size_t k,
                const HeavyLightOptions& opts)
      : g_(g), edges_(edges.edges), p_(p), scorer_(p), k_(k), opts_(opts) {
    if (k == 0) throw Error("k must be at least 1");
    if (!p.finite() || !(p.value() > 0.0)) throw Error("heavy-light requires finite p > 0");
    if (edges.size() != g.num_edges()) throw Error("sorted edge list does not match graph");
    if (edges.size() > std::numeric_limits<std::uint32_t>::max()) throw Error("too many edges");
    promoted_.resize(g.num_nodes());
  }

  template <class ChooseLight>
  TopKResult run(ChooseLight&& choose_light) {
    const auto m = static_cast<std::int64_t>(edges_.size());
    while (certified_ < k_) {
      const bool can_l = l_ + 1 < m;
      const bool can_h = h_ < l_;
      if (!can_l && !can_h) break;
      bool light;
      if (!can_h)
        light = true;
      else if (!can_l)
        light = false;
      else
        light = choose_light(*this);
      if (light)
        promote_light();
      else
        promote_heavy();
      update_threshold();
      ++stats_.iterations;
      if (opts_.observer) opts_.observer(snapshot());
    }
    stats_.triangles_found = found_list_.size();
    stats_.final_tau = tau_;
    if (opts_.stats) *opts_.stats = stats_;

    TopKResult out;
    out.k = k_;
    out.exact = true;
    out.items = select_top(std::move(found_list_), k_, p_);
    return out;
  }

  std::int64_t h() const { return h_; }
  std::int64_t l() const { return l_; }
  double weight(std::int64_t rank) const { return edges_[static_cast<std::size_t>(rank)].w; }
  double min_weight() const { return edges_.empty() ? 1.0 : edges_.back().w; }
  const WeightedEdge& edge(std::int64_t rank) const { return edges_[static_cast<std::size_t>(rank)]; }

  // Degree of x within S u H (edges of rank <= l) and within L.
  std::size_t heavy_degree(NodeId x) const { return promoted_[x].size(); }
  std::size_t light_degree(NodeId x) const { return g_.degree(x) - promoted_[x].size(); }

 private:
  struct Promoted {
    std::uint32_t rank;
    NodeId id;
  };

  static WeightedEdge canonical(NodeId a, NodeId b, double w) {
    return a < b ? WeightedEdge{a, b, w} : WeightedEdge{b, a, w};
  }

  // Rank of `e` exceeds l, i.e. e is still in L.
  bool is_light(const WeightedEdge& e) const {
    return l_ < 0 || heavier_edge(edges_[static_cast<std::size_t>(l_)], e);
  }

  void record(NodeId u, NodeId v, NodeId x, double w_uv, double w_ux, double w_vx) {
    auto t = make_candidate(u, v, x, {w_uv, scorer_.term(w_uv)}, {w_ux, scorer_.term(w_ux)},
                            {w_vx, scorer_.term(w_vx)}, scorer_);
    if (!found_.insert(t.nodes()).second) return;
    found_list_.push_back(t);
    if (t.score > certify_bar_)
      ++certified_;
    else
      pending_.push(t.score);
  }

  // e_{l+1} moves L -> H: every triangle on it with another edge in S u H.
  void promote_light() {
    const auto r = static_cast<std::uint32_t>(l_ + 1);
    const auto& e = edges_[r];
    const auto w = g_.weights();
    for (const auto [r_ux, x] : promoted_[e.u])
      if (auto s = g_.find_slot(e.v, x)) record(e.u, e.v, x, e.w, edges_[r_ux].w, w[*s]);
    for (const auto [r_vx, x] : promoted_[e.v]) {
      auto s = g_.find_slot(e.u, x);
      // Pairs with (u, x) also promoted were seen in the first loop.
      if (s && heavier_edge(e, canonical(e.u, x, w[*s])))
        record(e.u, e.v, x, e.w, w[*s], edges_[r_vx].w);
    }
    promoted_[e.u].push_back({r, e.v});
    promoted_[e.v].push_back({r, e.u});
    l_ = r;
    ++stats_.l_moves;
  }

  // e_{h+1} moves H -> S: every triangle on it with both other edges in L.
  void promote_heavy() {
    const auto r = static_cast<std::uint32_t>(h_ + 1);
    const auto& e = edges_[r];
    for_each_common_neighbor(g_, e.u, e.v, [&](NodeId x, double w_ux, double w_vx) {
      if (is_light(canonical(e.u, x, w_ux)) && is_light(canonical(e.v, x, w_vx)))
        record(e.u, e.v, x, e.w, w_ux, w_vx);
    });
    h_ = r;
    ++stats_.h_moves;
  }

  void update_threshold() {
    if (h_ < 0 || l_ < 0) {
      tau_ = std::numeric_limits<double>::infinity();
    } else {
      tau_ = scorer_.term(weight(h_)) + 2.0 * scorer_.term(weight(l_));
    }
    // Strictly above tau plus a rounding margin: anything not yet found
    // scores at most tau, so certified triangles outrank it outright.
    certify_bar_ = tau_ * (1.0 + 1e-12);
    while (!pending_.empty() && pending_.top() > certify_bar_) {
      pending_.pop();
      ++certified_;
    }
  }

  HeavyLightState snapshot() const {
    HeavyLightState s;
    s.h = h_;
    s.l = l_;
    s.tau = tau_;
    s.found = &found_;
    s.certified = certified_;
    return s;
  }

  const WeightedGraph& g_;
  const std::vector<WeightedEdge>& edges_;
  PMeanParam p_;
  EdgeScorer scorer_;
  std::size_t k_;
  const HeavyLightOptions& opts_;

  // Per node, its S u H edges in rank order.
  std::vector<std::vector<Promoted>> promoted_;

  std::int64_t h_ = -1;
  std::int64_t l_ = -1;
  double tau_ = std::numeric_limits<double>::infinity();
  double certify_bar_ = std::numeric_limits<double>::infinity();
  TripleSet found_;
  std::vector<Triangle> found_list_;
  std::size_t certified_ = 0;
  std::priority_queue<double> pending_;
  HeavyLightStats stats_;
};

// weight_drop_per_edge for a pointer that only moves forward one rank at a
// time, so each equal-weight block is scanned once.
class DropCursor {
 public:
  explicit DropCursor(const SortedEdgeList& edges) : e_(edges.edges) {}

  double at(std::size_t rank) {
    if (rank >= hi_) {
      lo_ = rank;
      hi_ = rank + 1;
      while (hi_ < e_.size() && e_[hi_].w == e_[lo_].w) ++hi_;
      const double lower = hi_ < e_.size() ? e_[hi_].w : 0.0;
      drop_ = (e_[lo_].w - lower) / static_cast<double>(hi_ - lo_);
    }
    return drop_;
  }

 private:
  const std::vector<WeightedEdge>& e_;
  std::size_t lo_ = 0, hi_ = 0;
  double drop_ = 0.0;
};

}  // namespace

TopKResult dynamic_heavy_light(const WeightedGraph& g, const SortedEdgeList& edges, PMeanParam p,
                               std::size_t k, double alpha, const HeavyLightOptions& opts) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw Error("alpha must be finite and > 1");
  HeavyLightRun run(g, edges, p, k, opts);
  // The power comparison assumes weights >= 1; rescale only inside it.
  const double scale = run.min_weight() < 1.0 ? 1.0 / run.min_weight() : 1.0;
  return run.run([&](const HeavyLightRun& r) {
    const double wl = r.weight(r.l() + 1) * scale;
    const double wh = r.weight(r.h() + 1) * scale;
    return wl > std::pow(wh, alpha);
  });
}

TopKResult auto_heavy_light(const WeightedGraph& g, const SortedEdgeList& edges, PMeanParam p,
                            std::size_t k, const HeavyLightOptions& opts) {
  HeavyLightRun run(g, edges, p, k, opts);
  const double q = p.value();
  double est_h = -1.0, est_l = -1.0;
  DropCursor drop_h(edges), drop_l(edges);
  auto smooth = [](double& est, double raw) {
    est = est < 0.0 ? raw : kDerivativeSmoothing * raw + (1.0 - kDerivativeSmoothing) * est;
  };
  return run.run([&](const HeavyLightRun& r) {
    const auto& eh = r.edge(r.h() + 1);
    const auto& el = r.edge(r.l() + 1);
    // Work to move h scales with the candidate's degree in G[L]; to move l,
    // with its degree in G[S u H].
    const double cost_h =
        std::max<double>(1.0, static_cast<double>(r.light_degree(eh.u) + r.light_degree(eh.v)));
    const double cost_l =
        std::max<double>(1.0, static_cast<double>(r.heavy_degree(el.u) + r.heavy_degree(el.v)));
    smooth(est_h, drop_h.at(static_cast<std::size_t>(r.h() + 1)) / cost_h);
    smooth(est_l, drop_l.at(static_cast<std::size_t>(r.l() + 1)) / cost_l);
    const double gain_h = std::pow(eh.w, q - 1.0) * est_h;
    const double gain_l = 2.0 * std::pow(el.w, q - 1.0) * est_l;
    return gain_l >= gain_h;
  });
}

}  // namespace toptri
