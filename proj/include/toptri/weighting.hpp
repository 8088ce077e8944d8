#pragma once

#include <array>
#include <span>
#include <string>

#include "toptri/graph.hpp"

namespace toptri {

// Exponent of the generalized mean: a finite real, +inf (max) or -inf (min).
class PMeanParam {
 public:
  enum class Kind { Finite, PlusInf, MinusInf };

  constexpr PMeanParam() = default;
  constexpr explicit PMeanParam(double p) : p_(p) {}
  static constexpr PMeanParam plus_inf() { return PMeanParam(Kind::PlusInf); }
  static constexpr PMeanParam minus_inf() { return PMeanParam(Kind::MinusInf); }
  // Accepts a real number, "inf"/"+inf"/"max", "-inf"/"min".
  static PMeanParam parse(const std::string& text);

  constexpr Kind kind() const { return kind_; }
  constexpr bool finite() const { return kind_ == Kind::Finite; }
  // Only meaningful when finite().
  constexpr double value() const { return p_; }

  std::string to_string() const;

 private:
  constexpr explicit PMeanParam(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  double p_ = 1.0;
};

// [(1/n) sum w_i^p]^(1/p); geometric mean at p = 0, max/min at +-inf.
// Throws Error if the span is empty or any weight is not positive.
double p_mean(std::span<const double> weights, PMeanParam p);

// sum w_i^p. For p > 0 this orders subgraphs exactly like p_mean.
double unnorm_weight(std::span<const double> weights, double p);

// Maps edge weights to additive (or max/min) terms whose fold is strictly
// monotone in the p-mean of the folded edges. All algorithms rank by this
// score so that orderings agree bit for bit.
class EdgeScorer {
 public:
  explicit EdgeScorer(PMeanParam p);

  PMeanParam p() const { return p_; }

  double term(double w) const;
  double fold(double acc, double t) const;
  // Score of a triangle from its edges in canonical order (ab, ac, bc).
  double triangle(double t_ab, double t_ac, double t_bc) const {
    return fold(fold(t_ab, t_ac), t_bc);
  }

 private:
  PMeanParam p_;
};

struct Triangle {
  NodeId a = 0, b = 0, c = 0;  // a < b < c
  std::array<double, 3> edge_weights{};  // w_ab, w_ac, w_bc
  double weight = 0.0;                   // p-mean of edge_weights
  double score = 0.0;                    // EdgeScorer::triangle, the ranking key

  std::array<NodeId, 3> nodes() const { return {a, b, c}; }
  friend bool operator==(const Triangle&, const Triangle&) = default;
};

// Builds a triangle from three distinct node ids and their edge weights, given
// in any order. `w_xy` is the weight of edge {x, y}.
Triangle make_triangle(NodeId x, NodeId y, NodeId z, double w_xy, double w_xz, double w_yz,
                       const EdgeScorer& scorer);

// Same, but leaves `weight` unset; enumeration loops rank by score alone and
// fill the p-mean only for retained triangles (see fill_weight).
Triangle make_candidate(NodeId x, NodeId y, NodeId z, double w_xy, double w_xz, double w_yz,
                        const EdgeScorer& scorer);

// Edge weight together with its precomputed EdgeScorer::term.
struct ScoredWeight {
  double w;
  double t;
};

Triangle make_candidate(NodeId x, NodeId y, NodeId z, ScoredWeight xy, ScoredWeight xz,
                        ScoredWeight yz, const EdgeScorer& scorer);

inline void fill_weight(Triangle& t, PMeanParam p) { t.weight = p_mean(t.edge_weights, p); }

// Ranking order: higher score first, then lexicographically smaller nodes.
inline bool ranks_before(const Triangle& x, const Triangle& y) {
  if (x.score != y.score) return x.score > y.score;
  return x.nodes() < y.nodes();
}

}  // namespace toptri
