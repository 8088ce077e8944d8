#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "toptri/graph.hpp"
#include "toptri/topk.hpp"
#include "toptri/weighting.hpp"

namespace toptri {

// Top ceil(heavy_fraction * m) edges form the heavy set; all triangles of the
// subgraph they induce are enumerated. heavy_fraction must lie in (0, 1].
TopKResult static_heavy_light(const WeightedGraph& g, const SortedEdgeList& edges, PMeanParam p,
                              std::size_t k, double heavy_fraction);

// Geometric separation exponent between the super-heavy and heavy pointers
// for power-law edge weights with tail exponent beta: 2 - p / (p - 1 + beta).
double alpha_from_powerlaw(double p, double beta);

inline constexpr double kDefaultAlpha = 1.25;

// Partition class of an edge during a heavy-light run.
enum class EdgeClass : std::uint8_t { SuperHeavy, Heavy, Light };

struct TripleHash {
  std::size_t operator()(const std::array<NodeId, 3>& t) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (NodeId x : t) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

using TripleSet = std::unordered_set<std::array<NodeId, 3>, TripleHash>;

// Snapshot handed to observers after every pointer move. Pointers are ranks
// into the sorted edge list; -1 means "none yet". S = [0, h], H = (h, l],
// L = (l, m).
struct HeavyLightState {
  std::int64_t h = -1;
  std::int64_t l = -1;
  double tau = 0.0;  // in score units: term(w_h) + 2 term(w_l), +inf while h or l is -1
  const TripleSet* found = nullptr;
  std::size_t certified = 0;  // found triangles with score strictly above tau

  EdgeClass classify(std::int64_t rank) const {
    if (rank <= h) return EdgeClass::SuperHeavy;
    if (rank <= l) return EdgeClass::Heavy;
    return EdgeClass::Light;
  }
};

using HeavyLightObserver = std::function<void(const HeavyLightState&)>;

struct HeavyLightStats {
  std::size_t iterations = 0;
  std::size_t h_moves = 0;
  std::size_t l_moves = 0;
  std::size_t triangles_found = 0;
  double final_tau = 0.0;
};

struct HeavyLightOptions {
  HeavyLightObserver observer;
  HeavyLightStats* stats = nullptr;
};

// Exact top-k via the three-way partition, advancing the heavy pointer while
// w_{l+1} > w_{h+1}^alpha and the super-heavy pointer otherwise.
// Requires finite p > 0 and alpha > 1.
TopKResult dynamic_heavy_light(const WeightedGraph& g, const SortedEdgeList& edges, PMeanParam p,
                               std::size_t k, double alpha, const HeavyLightOptions& opts = {});

inline constexpr double kDerivativeSmoothing = 0.3;

// Same loop with the pointer chosen from running estimates of the weight
// drop per unit of enumeration work at each pointer.
TopKResult auto_heavy_light(const WeightedGraph& g, const SortedEdgeList& edges, PMeanParam p,
                            std::size_t k, const HeavyLightOptions& opts = {});

// Raw weight drop per edge for moving past the equal-weight block that starts
// or contains `rank`: (w - next lower distinct weight) / block size. The last
// block drops to zero.
double weight_drop_per_edge(const SortedEdgeList& edges, std::size_t rank);

// Triangles on edge e whose two other edges satisfy `keep`. `keep` receives
// the other edges as (edge at e.u, edge at e.v).
using PairFilter = std::function<bool(const WeightedEdge&, const WeightedEdge&)>;
std::vector<Triangle> incident_triangles_partitioned(const WeightedGraph& g, const WeightedEdge& e,
                                                     const PairFilter& keep, PMeanParam p);

}  // namespace toptri
