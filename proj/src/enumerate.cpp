#include "toptri/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace toptri {

namespace {

struct LowerNeighbor {
  NodeId id;
  ScoredWeight sw;
};

}  // namespace

TopKResult brute_force_topk(const WeightedGraph& g, PMeanParam p, std::size_t k) {
  if (k == 0) throw Error("k must be at least 1");
  const NodeId n = g.num_nodes();
  const EdgeScorer scorer(p);

  // Rank by (degree, id); orient every edge toward its lower-ranked endpoint.
  auto lower = [&](NodeId x, NodeId y) {
    return g.degree(x) != g.degree(y) ? g.degree(x) < g.degree(y) : x < y;
  };
  std::vector<std::size_t> off(std::size_t{n} + 1, 0);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : g.neighbors(v))
      if (lower(u, v)) ++off[v + 1];
  std::partial_sum(off.begin(), off.end(), off.begin());
  std::vector<LowerNeighbor> low(off[n]);
  for (NodeId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    auto wt = g.neighbor_weights(v);
    std::size_t pos = off[v];
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (lower(nb[i], v)) low[pos++] = {nb[i], {wt[i], scorer.term(wt[i])}};
  }

  TopKCollector<Triangle> top(k);
  // mark[x] = 1 + index into low[] of edge (v, x) while v is the apex.
  std::vector<std::size_t> mark(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (std::size_t i = off[v]; i < off[v + 1]; ++i) mark[low[i].id] = i + 1;
    for (std::size_t i = off[v]; i < off[v + 1]; ++i) {
      const NodeId u = low[i].id;
      for (std::size_t j = off[u]; j < off[u + 1]; ++j) {
        const NodeId x = low[j].id;
        if (mark[x] == 0) continue;
        top.offer(make_candidate(v, u, x, low[i].sw, low[mark[x] - 1].sw, low[j].sw, scorer));
      }
    }
    for (std::size_t i = off[v]; i < off[v + 1]; ++i) mark[low[i].id] = 0;
  }

  TopKResult out;
  out.k = k;
  out.exact = true;
  out.items = top.take();
  for (auto& t : out.items) fill_weight(t, p);
  return out;
}

std::vector<NodeId> degeneracy_order(const WeightedGraph& g) {
  const NodeId n = g.num_nodes();
  std::size_t max_deg = 0;
  std::vector<std::size_t> deg(n);
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket queue keyed by current degree (Matula-Beck).
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (NodeId v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (auto& b : bin) {
    auto c = b;
    b = start;
    start += c;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  for (NodeId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    order[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        // Swap u to the front of its bucket, then shrink its degree.
        const std::size_t du = deg[u];
        const std::size_t pw = bin[du];
        const NodeId w = order[pw];
        if (u != w) {
          std::swap(order[pos[u]], order[pw]);
          std::swap(pos[u], pos[w]);
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return order;
}

bool make_clique(const WeightedGraph& g, std::span<const NodeId> members,
                 const EdgeScorer& scorer, Clique& out) {
  out.nodes.assign(members.begin(), members.end());
  std::sort(out.nodes.begin(), out.nodes.end());
  out.edge_weights.clear();
  bool first = true;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < out.nodes.size(); ++j) {
      auto s = g.find_slot(out.nodes[i], out.nodes[j]);
      if (!s) return false;
      const double w = g.weights()[*s];
      out.edge_weights.push_back(w);
      const double t = scorer.term(w);
      out.score = first ? t : scorer.fold(out.score, t);
      first = false;
    }
  }
  return true;
}

CliqueResult enumerate_cliques(const WeightedGraph& g, int size, PMeanParam p, std::size_t k) {
  if (size < 3 || size > 5) throw Error("clique size must be 3, 4 or 5");
  if (k == 0) throw Error("k must be at least 1");
  const NodeId n = g.num_nodes();
  const EdgeScorer scorer(p);

  const auto order = degeneracy_order(g);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  // Forward neighbors: later in the degeneracy order; at most degeneracy many.
  std::vector<std::vector<NodeId>> fwd(n);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(v))
      if (position[u] > position[v]) fwd[v].push_back(u);
    // neighbors() is id-sorted, so fwd[v] is too.
  }

  TopKCollector<Clique> top(k);
  std::vector<NodeId> members;
  Clique scratch;

  // Extends `members` by nodes from `cand`, all of which are adjacent to every
  // current member.
  auto extend = [&](auto&& self, const std::vector<NodeId>& cand) -> void {
    if (static_cast<int>(members.size()) == size) {
      make_clique(g, members, scorer, scratch);
      if (top.would_accept(scratch)) top.offer(scratch);
      return;
    }
    const auto need = static_cast<std::size_t>(size) - members.size();
    if (cand.size() < need) return;
    std::vector<NodeId> next;
    for (NodeId u : cand) {
      next.clear();
      std::set_intersection(cand.begin(), cand.end(), fwd[u].begin(), fwd[u].end(),
                            std::back_inserter(next));
      members.push_back(u);
      self(self, next);
      members.pop_back();
    }
  };
  for (NodeId v = 0; v < n; ++v) {
    members.assign(1, v);
    extend(extend, fwd[v]);
  }

  CliqueResult out;
  out.k = k;
  out.exact = true;
  out.items = top.take();
  for (auto& c : out.items) fill_weight(c, p);
  return out;
}

}  // namespace toptri
