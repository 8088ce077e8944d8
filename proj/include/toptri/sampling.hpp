#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toptri/graph.hpp"
#include "toptri/topk.hpp"
#include "toptri/weighting.hpp"

namespace toptri {

using Rng = std::mt19937_64;

// Independent stream for worker `worker` of a run seeded with `seed`.
Rng worker_rng(std::uint64_t seed, std::uint64_t worker);

double uniform01(Rng& rng);                        // [0, 1)
std::size_t uniform_index(Rng& rng, std::size_t n);  // [0, n), n > 0

struct SamplerConfig {
  double p = 1.0;
  std::size_t iterations = 100000;
  // When set, sample until the budget expires instead of a fixed count.
  std::optional<std::int64_t> budget_ms;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t k = 1000;

  void validate() const;
};

struct SamplerStats {
  std::size_t iterations = 0;  // iterations actually run
  std::size_t unique_found = 0;
  std::vector<std::string> warnings;
};

// ceil(ln(1/delta) / q): draws needed to see an item of per-draw probability q
// at least once with probability >= 1 - delta.
std::uint64_t required_samples(double q, double delta);

// Two-stage edge draw proportional to w^p: pick a block of equal-weight edges
// in the sorted list by its total mass, then an edge uniformly inside it.
class EdgeSamplingIndex {
 public:
  EdgeSamplingIndex(const SortedEdgeList& sorted, double p);

  // Rank into the sorted list.
  std::size_t draw(Rng& rng) const;

  double total() const { return z_; }  // sum over edges of w^p
  std::size_t num_buckets() const { return bucket_cdf_.size(); }
  // [first, last) ranks of bucket i.
  std::pair<std::size_t, std::size_t> bucket(std::size_t i) const;
  std::span<const double> bucket_cdf() const { return bucket_cdf_; }

 private:
  std::vector<std::size_t> bucket_start_;  // plus sentinel m
  std::vector<double> bucket_cdf_;
  double z_ = 0.0;
};

// Triangles hit in one iteration are reported through a callback.
class EdgeSampler {
 public:
  EdgeSampler(const WeightedGraph& g, const SortedEdgeList& sorted, double p);

  template <class F>
  void iterate(Rng& rng, F&& on_triangle) const;

  double p() const { return p_; }
  const EdgeSamplingIndex& index() const { return index_; }
  // Per-iteration probability that triangle (a, b, c) is enumerated.
  double triangle_probability(const Triangle& t) const;

 private:
  const WeightedGraph& g_;
  const SortedEdgeList& sorted_;
  double p_;
  EdgeScorer scorer_;
  EdgeSamplingIndex index_;
};

// Node a ~ 2 d_a D(a); b | a ~ d_a w_ab^p + D(a); c | a, b ~ w_ac^p + w_ab^p,
// where D(a) = sum of w^p over a's edges. A draw with b == c is a miss.
class WedgeSampler {
 public:
  WedgeSampler(const WeightedGraph& g, double p);

  template <class F>
  void iterate(Rng& rng, F&& on_triangle) const;

  // Unnormalized weights of the three draws, straight from their definitions.
  double node_weight(NodeId a) const;                           // W1(a)
  double second_weight(NodeId a, std::size_t b_slot) const;     // W2(b | a)
  double third_weight(NodeId a, std::size_t b_slot, std::size_t c_slot) const;  // W3(c | a, b)
  double p() const { return p_; }
  double z1() const { return z1_; }
  double node_power_sum(NodeId a) const { return d_[a]; }
  double triangle_probability(const Triangle& t) const;

 private:
  NodeId draw_node(Rng& rng) const;
  std::size_t draw_weighted_slot(Rng& rng, NodeId a) const;

  const WeightedGraph& g_;
  double p_;
  EdgeScorer scorer_;
  std::vector<double> pw_;         // w^p per CSR slot
  std::vector<double> pw_prefix_;  // inclusive prefix of pw_ within each node
  std::vector<double> d_;          // D(a)
  std::vector<double> node_cdf_;   // inclusive prefix of W1
  double z1_ = 0.0;
};

// Edge (a, b) ~ W1(a, b) = d'_a d'_b w_ab^p + d'_a D'_a(b) + d'_b D'_b(a) with
// d'_v = d_v - 1 and D'_u(v) = D(v) - w_uv^p; then c in N(a)\{b} and
// c' in N(b)\{a}; a triangle is recorded when c == c'.
class PathSampler {
 public:
  PathSampler(const WeightedGraph& g, double p);

  template <class F>
  void iterate(Rng& rng, F&& on_triangle) const;

  // Canonical edges (u < v) in WeightedGraph::edges() order.
  std::span<const WeightedEdge> edges() const { return edges_; }
  double edge_weight(std::size_t e) const;  // W1 for edges()[e], oriented a = u, b = v
  double second_weight(std::size_t e, std::size_t c_slot) const;  // W2(c | a, b)
  double third_weight(std::size_t e, std::size_t c_slot, std::size_t c2_slot) const;
  double p() const { return p_; }
  double z1() const { return z1_; }
  double triangle_probability(const Triangle& t) const;

 private:
  std::size_t draw_excluding(Rng& rng, NodeId x, std::size_t skip_slot, bool weighted) const;

  const WeightedGraph& g_;
  double p_;
  EdgeScorer scorer_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::size_t> slot_uv_, slot_vu_;
  std::vector<double> pw_;
  std::vector<double> pw_prefix_;
  std::vector<double> d_;
  std::vector<double> edge_cdf_;
  double z1_ = 0.0;
};

// Run a prebuilt sampler (built with cfg.p) so index construction can be
// timed separately.
TopKResult sample_topk(const EdgeSampler& sampler, const SamplerConfig& cfg,
                       SamplerStats* stats = nullptr);
TopKResult sample_topk(const WedgeSampler& sampler, const SamplerConfig& cfg,
                       SamplerStats* stats = nullptr);
TopKResult sample_topk(const PathSampler& sampler, const SamplerConfig& cfg,
                       SamplerStats* stats = nullptr);

TopKResult edge_sample_topk(const WeightedGraph& g, const SortedEdgeList& sorted,
                            const SamplerConfig& cfg, SamplerStats* stats = nullptr);
TopKResult edge_sample_topk(const WeightedGraph& g, const SamplerConfig& cfg,
                            SamplerStats* stats = nullptr);
TopKResult wedge_sample_topk(const WeightedGraph& g, const SamplerConfig& cfg,
                             SamplerStats* stats = nullptr);
TopKResult path_sample_topk(const WeightedGraph& g, const SamplerConfig& cfg,
                            SamplerStats* stats = nullptr);

// Edge draws as above; every clique of `size` (4 or 5) containing the drawn
// edge is collected.
CliqueResult edge_sample_cliques(const WeightedGraph& g, const SortedEdgeList& sorted,
                                 const SamplerConfig& cfg, int size,
                                 SamplerStats* stats = nullptr);

}  // namespace toptri

#include "toptri/sampling_inl.hpp"
