#pragma once

// Template bodies for sampling.hpp.

#include <algorithm>
#include <cmath>

namespace toptri {

namespace detail {

// Index i with prefix[i-1] <= target < prefix[i] (inclusive prefix sums),
// skipping zero-mass entries; clamps rounding overshoot to the last entry
// with positive mass.
std::size_t pick_from_prefix(std::span<const double> prefix, double target);

}  // namespace detail

template <class F>
void EdgeSampler::iterate(Rng& rng, F&& on_triangle) const {
  if (!(index_.total() > 0.0)) return;
  const auto& e = sorted_[index_.draw(rng)];
  for_each_common_neighbor(g_, e.u, e.v, [&](NodeId x, double w_ux, double w_vx) {
    on_triangle(make_candidate(e.u, e.v, x, e.w, w_ux, w_vx, scorer_));
  });
}

template <class F>
void WedgeSampler::iterate(Rng& rng, F&& on_triangle) const {
  if (!(z1_ > 0.0)) return;
  const NodeId a = draw_node(rng);
  const std::size_t begin = g_.slot_begin(a);
  const std::size_t deg = g_.degree(a);
  // W2(b|a) = d_a w_ab^p + D(a): the two parts carry equal mass d_a D(a).
  const std::size_t b_slot =
      uniform01(rng) < 0.5 ? draw_weighted_slot(rng, a) : begin + uniform_index(rng, deg);
  // W3(c|a,b) = w_ac^p + w_ab^p: masses D(a) and d_a w_ab^p.
  const double wab = pw_[b_slot];
  const double total = d_[a] + static_cast<double>(deg) * wab;
  const std::size_t c_slot = uniform01(rng) * total < d_[a] ? draw_weighted_slot(rng, a)
                                                            : begin + uniform_index(rng, deg);
  if (c_slot == b_slot) return;
  const auto targets = g_.targets();
  const auto weights = g_.weights();
  const NodeId b = targets[b_slot], c = targets[c_slot];
  if (auto bc = g_.find_slot(b, c))
    on_triangle(make_candidate(a, b, c, weights[b_slot], weights[c_slot], weights[*bc], scorer_));
}

template <class F>
void PathSampler::iterate(Rng& rng, F&& on_triangle) const {
  if (!(z1_ > 0.0)) return;
  const std::size_t e =
      detail::pick_from_prefix(edge_cdf_, uniform01(rng) * z1_);
  const NodeId a = edges_[e].u, b = edges_[e].v;
  const std::size_t s_ab = slot_uv_[e], s_ba = slot_vu_[e];
  const double da = static_cast<double>(g_.degree(a)) - 1.0;
  const double db = static_cast<double>(g_.degree(b)) - 1.0;
  const double wab = pw_[s_ab];
  const double dt_b_a = std::max(0.0, d_[a] - wab);  // sum over N(a)\{b}
  const double dt_a_b = std::max(0.0, d_[b] - wab);  // sum over N(b)\{a}

  // c: weighted part d'_b sum w_ac^p, uniform part d'_a (d'_b w_ab^p + D'_a(b)).
  const double weighted_c = db * dt_b_a;
  const double uniform_c = da * (db * wab + dt_a_b);
  const bool c_weighted = uniform01(rng) * (weighted_c + uniform_c) < weighted_c;
  const std::size_t s_ac = draw_excluding(rng, a, s_ab, c_weighted);
  const double wac = pw_[s_ac];

  // c': uniform part d'_b (w_ac^p + w_ab^p), weighted part D'_a(b).
  const double uniform_c2 = db * (wac + wab);
  const bool c2_weighted = uniform01(rng) * (uniform_c2 + dt_a_b) >= uniform_c2;
  const std::size_t s_bc = draw_excluding(rng, b, s_ba, c2_weighted);

  const auto targets = g_.targets();
  if (targets[s_ac] != targets[s_bc]) return;
  const auto weights = g_.weights();
  on_triangle(make_candidate(a, b, targets[s_ac], weights[s_ab], weights[s_ac], weights[s_bc],
                             scorer_));
}

}  // namespace toptri
