#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "toptri/graph.hpp"
#include "toptri/sampling.hpp"

namespace toptri {

struct ConstantDegree {
  std::size_t d = 2;
};

// P(d) proportional to d^-gamma on [d_min, d_max]; d_max is capped at n - 1.
struct PowerLawDegree {
  double gamma = 2.5;
  std::size_t d_min = 1;
  std::size_t d_max = 0;  // 0: n - 1
};

// P(W >= w) = (w / w_min)^(1 - beta), beta > 1.
struct PowerLawWeight {
  double beta = 2.0;
  double w_min = 1.0;
};

struct UniformWeight {
  double lo = 1.0;
  double hi = 2.0;
};

using DegreeDist = std::variant<ConstantDegree, PowerLawDegree>;
using WeightDist = std::variant<PowerLawWeight, UniformWeight>;

struct GenSpec {
  std::size_t n = 0;
  DegreeDist degree_dist = ConstantDegree{};
  WeightDist weight_dist = PowerLawWeight{};
  std::uint64_t seed = 1;

  void validate() const;
};

double draw_weight(const WeightDist& dist, Rng& rng);

// Degree sequence with an even sum (one stub added to the first node if odd).
std::vector<std::size_t> draw_degrees(const GenSpec& spec, Rng& rng);

// Configuration model: stubs shuffled and paired in order, each pairing gets
// an independent weight draw; self-loops are discarded and of parallel edges
// the first drawn is kept.
WeightedGraph generate(const GenSpec& spec);

// G(n, q) with independent weights; used as a structure-agnostic test family.
WeightedGraph generate_erdos_renyi(std::size_t n, double q, const WeightDist& weights,
                                   std::uint64_t seed);

// Continuous maximum-likelihood tail exponent over edges with w >= w_tail_min:
// 1 + n_tail / sum ln(w / w_tail_min). Needs at least 100 tail edges.
double fit_beta(const SortedEdgeList& edges, double w_tail_min);

inline constexpr std::size_t kMinTailEdges = 100;

}  // namespace toptri
