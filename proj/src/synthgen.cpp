#include "toptri/synthgen.hpp"

#include <algorithm>
#include <cmath>

namespace toptri {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t capped_max(const PowerLawDegree& d, std::size_t n) {
  const std::size_t cap = n > 0 ? n - 1 : 0;
  return d.d_max == 0 ? cap : std::min(d.d_max, cap);
}

}  // namespace

void GenSpec::validate() const {
  if (n < 2) throw Error("need at least 2 nodes");
  std::visit(overloaded{
                 [&](const ConstantDegree& d) {
                   if (d.d < 1 || d.d > n - 1) throw Error("constant degree must lie in [1, n-1]");
                 },
                 [&](const PowerLawDegree& d) {
                   if (!(d.gamma > 0.0) || !std::isfinite(d.gamma))
                     throw Error("degree exponent must be positive");
                   if (d.d_min < 1 || d.d_min > capped_max(d, n))
                     throw Error("impossible degree bounds");
                 }},
             degree_dist);
  std::visit(overloaded{
                 [](const PowerLawWeight& w) {
                   if (!(w.beta > 1.0)) throw Error("weight exponent beta must exceed 1");
                   if (!(w.w_min > 0.0)) throw Error("w_min must be positive");
                 },
                 [](const UniformWeight& w) {
                   if (!(w.lo > 0.0) || !(w.hi >= w.lo)) throw Error("need 0 < lo <= hi");
                 }},
             weight_dist);
}

double draw_weight(const WeightDist& dist, Rng& rng) {
  return std::visit(overloaded{
                        [&](const PowerLawWeight& w) {
                          const double u = 1.0 - uniform01(rng);  // (0, 1]
                          return w.w_min * std::pow(u, 1.0 / (1.0 - w.beta));
                        },
                        [&](const UniformWeight& w) {
                          const double x = w.lo + (w.hi - w.lo) * uniform01(rng);
                          return x > 0.0 ? x : w.lo;
                        }},
                    dist);
}

std::vector<std::size_t> draw_degrees(const GenSpec& spec, Rng& rng) {
  std::vector<std::size_t> deg(spec.n);
  std::visit(overloaded{[&](const ConstantDegree& d) { std::fill(deg.begin(), deg.end(), d.d); },
                        [&](const PowerLawDegree& d) {
                          const auto hi = capped_max(d, spec.n);
                          std::vector<double> cdf;
                          double acc = 0.0;
                          for (std::size_t x = d.d_min; x <= hi; ++x) {
                            acc += std::pow(static_cast<double>(x), -d.gamma);
                            cdf.push_back(acc);
                          }
                          for (auto& v : deg)
                            v = d.d_min + detail::pick_from_prefix(cdf, uniform01(rng) * acc);
                        }},
             spec.degree_dist);
  std::size_t total = 0;
  for (auto d : deg) total += d;
  if (total % 2 == 1) ++deg[0];
  return deg;
}

WeightedGraph generate(const GenSpec& spec) {
  spec.validate();
  auto rng = worker_rng(spec.seed, 0);
  const auto deg = draw_degrees(spec, rng);
  std::vector<NodeId> stubs;
  for (std::size_t v = 0; v < spec.n; ++v) stubs.insert(stubs.end(), deg[v], static_cast<NodeId>(v));
  // Fisher-Yates with our own index draw keeps output identical across
  // standard libraries.
  for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[uniform_index(rng, i)]);

  std::vector<WeightedEdge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const double w = draw_weight(spec.weight_dist, rng);
    edges.push_back({stubs[i], stubs[i + 1], w});
  }
  return WeightedGraph::from_edges(static_cast<NodeId>(spec.n), std::move(edges),
                                   Aggregation::First);
}

WeightedGraph generate_erdos_renyi(std::size_t n, double q, const WeightDist& weights,
                                   std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error("edge probability must lie in [0, 1]");
  auto rng = worker_rng(seed, 0);
  std::vector<WeightedEdge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (uniform01(rng) < q)
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), draw_weight(weights, rng)});
  return WeightedGraph::from_edges(static_cast<NodeId>(n), std::move(edges));
}

double fit_beta(const SortedEdgeList& edges, double w_tail_min) {
  if (!(w_tail_min > 0.0)) throw Error("tail threshold must be positive");
  std::size_t n_tail = 0;
  double log_sum = 0.0;
  for (const auto& e : edges.edges) {
    if (e.w < w_tail_min) break;  // sorted by decreasing weight
    ++n_tail;
    log_sum += std::log(e.w / w_tail_min);
  }
  if (n_tail < kMinTailEdges) throw Error("too few tail edges to fit beta");
  if (!(log_sum > 0.0)) throw Error("degenerate tail: all tail weights equal the threshold");
  return 1.0 + static_cast<double>(n_tail) / log_sum;
}

}  // namespace toptri
