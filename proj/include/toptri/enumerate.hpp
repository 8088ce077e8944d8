#pragma once

#include <cstddef>

#include "toptri/graph.hpp"
#include "toptri/topk.hpp"
#include "toptri/weighting.hpp"

namespace toptri {

// Exact top-k triangles by NodeIterator++: each triangle is found once at its
// highest (degree, id) vertex and fed to a size-k heap. Pass kAll for every
// triangle. Throws Error if k == 0.
TopKResult brute_force_topk(const WeightedGraph& g, PMeanParam p, std::size_t k);

// Exact top-k cliques of `size` nodes (3, 4 or 5), listed over a degeneracy
// ordering.
CliqueResult enumerate_cliques(const WeightedGraph& g, int size, PMeanParam p, std::size_t k);

// Builds a clique record (sorted nodes, pair weights, score) from member ids.
// Returns false if some pair is not an edge.
bool make_clique(const WeightedGraph& g, std::span<const NodeId> members,
                 const EdgeScorer& scorer, Clique& out);

// Nodes in degeneracy order (repeatedly remove a minimum-degree node).
std::vector<NodeId> degeneracy_order(const WeightedGraph& g);

}  // namespace toptri
