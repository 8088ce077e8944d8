#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toptri {

using NodeId = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class Aggregation { Sum, Max, First };

Aggregation parse_aggregation(const std::string& name);

// Undirected edge, canonical u < v once inside a graph.
struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Immutable CSR adjacency. Neighbor lists are sorted strictly ascending by
// neighbor id and every edge appears in both endpoint lists.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Builds from raw edges over dense ids [0, n). Self-loops are dropped and
  // parallel edges merged with `agg`. Weights must be positive.
  static WeightedGraph from_edges(NodeId n, std::vector<WeightedEdge> edges,
                                  Aggregation agg = Aggregation::Sum,
                                  std::vector<std::uint64_t> original_ids = {});

  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], degree(u)};
  }
  std::span<const double> neighbor_weights(NodeId u) const {
    return {weights_.data() + offsets_[u], degree(u)};
  }

  // First CSR slot of u; slot s holds (targets()[s], weights()[s]).
  std::size_t slot_begin(NodeId u) const { return offsets_[u]; }
  std::span<const NodeId> targets() const { return targets_; }
  std::span<const double> weights() const { return weights_; }

  // CSR slot of v inside u's list, if the edge exists. No range check.
  std::optional<std::size_t> find_slot(NodeId u, NodeId v) const;

  // Throws Error on out-of-range ids.
  std::optional<double> edge_weight(NodeId u, NodeId v) const;

  std::uint64_t original_id(NodeId u) const { return original_ids_[u]; }
  std::span<const std::uint64_t> original_ids() const { return original_ids_; }

  // Canonical edges (u < v) in (u, v) lexicographic order.
  std::vector<WeightedEdge> edges() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> original_ids_;
};

// Calls f(x, w_ux, w_vx) for every common neighbor x of u and v.
template <class F>
void for_each_common_neighbor(const WeightedGraph& g, NodeId u, NodeId v, F&& f) {
  auto nu = g.neighbors(u), nv = g.neighbors(v);
  auto wu = g.neighbor_weights(u), wv = g.neighbor_weights(v);
  const bool swap = nu.size() > nv.size();
  if (swap) {
    std::swap(nu, nv);
    std::swap(wu, wv);
  }
  auto emit = [&](NodeId x, double w_small, double w_large) {
    if (swap)
      f(x, w_large, w_small);
    else
      f(x, w_small, w_large);
  };
  // Galloping pays off once the larger list dwarfs the smaller one.
  if (nu.size() * 16 < nv.size()) {
    auto lo = nv.begin();
    for (std::size_t i = 0; i < nu.size(); ++i) {
      lo = std::lower_bound(lo, nv.end(), nu[i]);
      if (lo == nv.end()) break;
      if (*lo == nu[i]) emit(nu[i], wu[i], wv[static_cast<std::size_t>(lo - nv.begin())]);
    }
    return;
  }
  std::size_t i = 0, j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i] < nv[j]) {
      ++i;
    } else if (nv[j] < nu[i]) {
      ++j;
    } else {
      emit(nu[i], wu[i], wv[j]);
      ++i;
      ++j;
    }
  }
}

// Edges ordered by decreasing weight, ties by (u, v) ascending.
struct SortedEdgeList {
  std::vector<WeightedEdge> edges;

  std::size_t size() const { return edges.size(); }
  const WeightedEdge& operator[](std::size_t i) const { return edges[i]; }
};

bool heavier_edge(const WeightedEdge& a, const WeightedEdge& b);

SortedEdgeList sort_edges(const WeightedGraph& g, unsigned threads = 1);

// Text edge list: `u v w` per line, `#` and `%` start comment lines.
// Node ids are compacted to 0..n-1 in ascending order of original id.
WeightedGraph load_edge_list(std::istream& in, Aggregation agg = Aggregation::Sum);
WeightedGraph load_edge_list_file(const std::string& path,
                                  Aggregation agg = Aggregation::Sum);

// Canonical serialization: original ids with u < v, one edge per line, in
// sorted (decreasing weight) order.
void write_edge_list(std::ostream& out, const WeightedGraph& g,
                     const SortedEdgeList& sorted);

// Shortest decimal text that parses back to the same double.
std::string format_weight(double w);

}  // namespace toptri
