#include "toptri/sampling.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include "toptri/enumerate.hpp"
#include "toptri/heavy_light.hpp"

namespace toptri {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng worker_rng(std::uint64_t seed, std::uint64_t worker) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (worker + 1));
  std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state), splitmix64(state)};
  return Rng(seq);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(Rng& rng, std::size_t n) {
  // Lemire's multiply-shift; bias is below 2^-64 * n.
  return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

void SamplerConfig::validate() const {
  if (!std::isfinite(p)) throw Error("samplers need a finite p");
  if (iterations == 0 && !budget_ms) throw Error("iterations must be at least 1");
  if (budget_ms && *budget_ms <= 0) throw Error("time budget must be positive");
  if (threads == 0) throw Error("threads must be at least 1");
  if (k == 0) throw Error("k must be at least 1");
}

std::uint64_t required_samples(double q, double delta) {
  if (!(q > 0.0 && q <= 1.0)) throw Error("probability must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(std::log(1.0 / delta) / q));
}

namespace detail {

std::size_t pick_from_prefix(std::span<const double> prefix, double target) {
  auto it = std::upper_bound(prefix.begin(), prefix.end(), target);
  auto i = static_cast<std::size_t>(it - prefix.begin());
  if (i >= prefix.size()) {
    // target rounded up to the total: take the last entry with mass.
    i = prefix.size() - 1;
    while (i > 0 && prefix[i] == prefix[i - 1]) --i;
  }
  return i;
}

}  // namespace detail

// ---------------------------------------------------------------- edge

EdgeSamplingIndex::EdgeSamplingIndex(const SortedEdgeList& sorted, double p) {
  const auto& e = sorted.edges;
  for (std::size_t lo = 0; lo < e.size();) {
    std::size_t hi = lo + 1;
    while (hi < e.size() && e[hi].w == e[lo].w) ++hi;
    bucket_start_.push_back(lo);
    z_ += std::pow(e[lo].w, p) * static_cast<double>(hi - lo);
    bucket_cdf_.push_back(z_);
    lo = hi;
  }
  bucket_start_.push_back(e.size());
}

std::pair<std::size_t, std::size_t> EdgeSamplingIndex::bucket(std::size_t i) const {
  return {bucket_start_[i], bucket_start_[i + 1]};
}

std::size_t EdgeSamplingIndex::draw(Rng& rng) const {
  const auto b = detail::pick_from_prefix(bucket_cdf_, uniform01(rng) * z_);
  const auto [lo, hi] = bucket(b);
  return lo + uniform_index(rng, hi - lo);
}

EdgeSampler::EdgeSampler(const WeightedGraph& g, const SortedEdgeList& sorted, double p)
    : g_(g), sorted_(sorted), p_(p), scorer_(PMeanParam(p)), index_(sorted, p) {}

double EdgeSampler::triangle_probability(const Triangle& t) const {
  double s = 0.0;
  for (double w : t.edge_weights) s += std::pow(w, p_);
  return s / index_.total();
}

// ---------------------------------------------------------------- wedge

namespace {

// w^p per CSR slot and its inclusive prefix restarted at each node.
void build_slot_powers(const WeightedGraph& g, double p, std::vector<double>& pw,
                       std::vector<double>& prefix, std::vector<double>& node_sum) {
  const auto w = g.weights();
  pw.resize(w.size());
  prefix.resize(w.size());
  node_sum.assign(g.num_nodes(), 0.0);
  for (NodeId a = 0; a < g.num_nodes(); ++a) {
    double acc = 0.0;
    for (std::size_t s = g.slot_begin(a); s < g.slot_begin(a) + g.degree(a); ++s) {
      pw[s] = std::pow(w[s], p);
      acc += pw[s];
      prefix[s] = acc;
    }
    node_sum[a] = acc;
  }
}

}  // namespace

WedgeSampler::WedgeSampler(const WeightedGraph& g, double p)
    : g_(g), p_(p), scorer_(PMeanParam(p)) {
  build_slot_powers(g, p, pw_, pw_prefix_, d_);
  node_cdf_.resize(g.num_nodes());
  for (NodeId a = 0; a < g.num_nodes(); ++a) {
    z1_ += node_weight(a);
    node_cdf_[a] = z1_;
  }
}

double WedgeSampler::node_weight(NodeId a) const {
  return 2.0 * static_cast<double>(g_.degree(a)) * d_[a];
}

double WedgeSampler::second_weight(NodeId a, std::size_t b_slot) const {
  return static_cast<double>(g_.degree(a)) * pw_[b_slot] + d_[a];
}

double WedgeSampler::third_weight(NodeId, std::size_t b_slot, std::size_t c_slot) const {
  return pw_[c_slot] + pw_[b_slot];
}

NodeId WedgeSampler::draw_node(Rng& rng) const {
  return static_cast<NodeId>(detail::pick_from_prefix(node_cdf_, uniform01(rng) * z1_));
}

std::size_t WedgeSampler::draw_weighted_slot(Rng& rng, NodeId a) const {
  const auto begin = g_.slot_begin(a);
  std::span<const double> prefix(pw_prefix_.data() + begin, g_.degree(a));
  return begin + detail::pick_from_prefix(prefix, uniform01(rng) * d_[a]);
}

double WedgeSampler::triangle_probability(const Triangle& t) const {
  // Each of the three centers contributes two ordered wedges of mass
  // (w_ab^p + w_ac^p) / z1, so the total is 4 w_p / z1.
  double s = 0.0;
  for (double w : t.edge_weights) s += std::pow(w, p_);
  return 4.0 * s / z1_;
}

// ---------------------------------------------------------------- path

PathSampler::PathSampler(const WeightedGraph& g, double p)
    : g_(g), p_(p), scorer_(PMeanParam(p)), edges_(g.edges()) {
  build_slot_powers(g, p, pw_, pw_prefix_, d_);
  slot_uv_.resize(edges_.size());
  slot_vu_.resize(edges_.size());
  edge_cdf_.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    slot_uv_[e] = *g.find_slot(edges_[e].u, edges_[e].v);
    slot_vu_[e] = *g.find_slot(edges_[e].v, edges_[e].u);
    z1_ += edge_weight(e);
    edge_cdf_[e] = z1_;
  }
}

double PathSampler::edge_weight(std::size_t e) const {
  const NodeId a = edges_[e].u, b = edges_[e].v;
  const double da = static_cast<double>(g_.degree(a)) - 1.0;
  const double db = static_cast<double>(g_.degree(b)) - 1.0;
  const double wab = pw_[slot_uv_[e]];
  const double dt_a_b = std::max(0.0, d_[b] - wab);
  const double dt_b_a = std::max(0.0, d_[a] - wab);
  return da * db * wab + da * dt_a_b + db * dt_b_a;
}

double PathSampler::second_weight(std::size_t e, std::size_t c_slot) const {
  const NodeId b = edges_[e].v;
  const double db = static_cast<double>(g_.degree(b)) - 1.0;
  const double wab = pw_[slot_uv_[e]];
  return db * (pw_[c_slot] + wab) + std::max(0.0, d_[b] - wab);
}

double PathSampler::third_weight(std::size_t e, std::size_t c_slot, std::size_t c2_slot) const {
  return pw_[c_slot] + pw_[slot_uv_[e]] + pw_[c2_slot];
}

std::size_t PathSampler::draw_excluding(Rng& rng, NodeId x, std::size_t skip_slot,
                                        bool weighted) const {
  const auto begin = g_.slot_begin(x);
  const auto deg = g_.degree(x);
  if (!weighted) {
    auto s = begin + uniform_index(rng, deg - 1);
    return s >= skip_slot ? s + 1 : s;
  }
  const double before = skip_slot == begin ? 0.0 : pw_prefix_[skip_slot - 1];
  double target = uniform01(rng) * std::max(0.0, d_[x] - pw_[skip_slot]);
  if (target >= before) target += pw_[skip_slot];
  std::span<const double> prefix(pw_prefix_.data() + begin, deg);
  auto s = begin + detail::pick_from_prefix(prefix, target);
  if (s == skip_slot) s = s + 1 < begin + deg ? s + 1 : s - 1;  // rounding at the gap edge
  return s;
}

double PathSampler::triangle_probability(const Triangle& t) const {
  // A triangle closes from each of its three edges with mass w_p / z1.
  double s = 0.0;
  for (double w : t.edge_weights) s += std::pow(w, p_);
  return 3.0 * s / z1_;
}

// ---------------------------------------------------------------- drivers

namespace {

// Runs `body(rng, local)` per iteration on cfg.threads workers and merges
// worker-local results. Items are deduplicated by `key`.
template <class Item, class KeySet, class Body, class KeyOf>
std::vector<Item> run_workers(const SamplerConfig& cfg, SamplerStats* stats, Body&& body,
                              KeyOf&& key_of) {
  cfg.validate();
  const unsigned threads = cfg.threads;
  struct Local {
    KeySet seen;
    std::vector<Item> items;
    std::size_t iterations = 0;
  };
  std::vector<Local> locals(threads);
  std::atomic<bool> stop{false};
  const auto start = std::chrono::steady_clock::now();

  auto work = [&](unsigned w) {
    auto rng = worker_rng(cfg.seed, w);
    Local& local = locals[w];
    auto collect = [&](Item item) {
      if (local.seen.insert(key_of(item)).second) local.items.push_back(std::move(item));
    };
    if (cfg.budget_ms) {
      const auto deadline = start + std::chrono::milliseconds(*cfg.budget_ms);
      while (!stop.load(std::memory_order_relaxed)) {
        for (int i = 0; i < 1024; ++i) body(rng, collect);
        local.iterations += 1024;
        if (std::chrono::steady_clock::now() >= deadline) stop.store(true, std::memory_order_relaxed);
      }
    } else {
      const std::size_t share = cfg.iterations / threads + (w < cfg.iterations % threads ? 1 : 0);
      for (std::size_t i = 0; i < share; ++i) body(rng, collect);
      local.iterations = share;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::vector<Item> merged;
  std::size_t iterations = 0;
  if (threads == 1) {
    iterations = locals[0].iterations;
    merged = std::move(locals[0].items);
  } else {
    KeySet seen;
    for (auto& local : locals) {
      iterations += local.iterations;
      for (auto& item : local.items)
        if (seen.insert(key_of(item)).second) merged.push_back(std::move(item));
    }
  }
  if (stats) {
    stats->iterations = iterations;
    stats->unique_found = merged.size();
    if (cfg.p <= 0.0)
      stats->warnings.push_back(
          "p <= 0: draws favour triangles with small p-mean; results are not biased toward "
          "the heaviest triangles");
  }
  return merged;
}

template <class Sampler>
TopKResult run_sampler(const Sampler& sampler, const SamplerConfig& cfg, SamplerStats* stats) {
  cfg.validate();
  if (sampler.p() != cfg.p) throw Error("sampler was built for a different p");
  auto found = run_workers<Triangle, TripleSet>(
      cfg, stats, [&](Rng& rng, auto& collect) { sampler.iterate(rng, collect); },
      [](const Triangle& t) { return t.nodes(); });
  TopKResult out;
  out.k = cfg.k;
  out.exact = false;
  out.items = select_top(std::move(found), cfg.k, PMeanParam(cfg.p));
  return out;
}

}  // namespace

TopKResult sample_topk(const EdgeSampler& s, const SamplerConfig& cfg, SamplerStats* stats) {
  return run_sampler(s, cfg, stats);
}
TopKResult sample_topk(const WedgeSampler& s, const SamplerConfig& cfg, SamplerStats* stats) {
  return run_sampler(s, cfg, stats);
}
TopKResult sample_topk(const PathSampler& s, const SamplerConfig& cfg, SamplerStats* stats) {
  return run_sampler(s, cfg, stats);
}

TopKResult edge_sample_topk(const WeightedGraph& g, const SortedEdgeList& sorted,
                            const SamplerConfig& cfg, SamplerStats* stats) {
  cfg.validate();
  return sample_topk(EdgeSampler(g, sorted, cfg.p), cfg, stats);
}

TopKResult edge_sample_topk(const WeightedGraph& g, const SamplerConfig& cfg,
                            SamplerStats* stats) {
  cfg.validate();
  const auto sorted = sort_edges(g, cfg.threads);
  return edge_sample_topk(g, sorted, cfg, stats);
}

TopKResult wedge_sample_topk(const WeightedGraph& g, const SamplerConfig& cfg,
                             SamplerStats* stats) {
  cfg.validate();
  return sample_topk(WedgeSampler(g, cfg.p), cfg, stats);
}

TopKResult path_sample_topk(const WeightedGraph& g, const SamplerConfig& cfg,
                            SamplerStats* stats) {
  cfg.validate();
  return sample_topk(PathSampler(g, cfg.p), cfg, stats);
}

CliqueResult edge_sample_cliques(const WeightedGraph& g, const SortedEdgeList& sorted,
                                 const SamplerConfig& cfg, int size, SamplerStats* stats) {
  if (size != 4 && size != 5) throw Error("sampled clique size must be 4 or 5");
  cfg.validate();
  const EdgeSamplingIndex index(sorted, cfg.p);
  const EdgeScorer scorer{PMeanParam(cfg.p)};

  auto body = [&](Rng& rng, auto& collect) {
    if (!(index.total() > 0.0)) return;
    const auto& e = sorted[index.draw(rng)];
    std::vector<NodeId> common;
    for_each_common_neighbor(g, e.u, e.v,
                                     [&](NodeId x, double, double) { common.push_back(x); });
    // (size - 2)-cliques inside the common neighborhood, in ascending order.
    std::vector<NodeId> members{e.u, e.v};
    Clique clique;
    auto extend = [&](auto&& self, std::size_t from) -> void {
      if (static_cast<int>(members.size()) == size) {
        if (make_clique(g, members, scorer, clique)) collect(clique);
        return;
      }
      for (std::size_t i = from; i < common.size(); ++i) {
        const NodeId x = common[i];
        bool adjacent = true;
        for (std::size_t j = 2; j < members.size() && adjacent; ++j)
          adjacent = g.find_slot(members[j], x).has_value();
        if (!adjacent) continue;
        members.push_back(x);
        self(self, i + 1);
        members.pop_back();
      }
    };
    extend(extend, 0);
  };
  auto found = run_workers<Clique, std::set<std::vector<NodeId>>>(
      cfg, stats, body, [](const Clique& c) { return c.nodes; });

  CliqueResult out;
  out.k = cfg.k;
  out.exact = false;
  out.items = select_top(std::move(found), cfg.k, PMeanParam(cfg.p));
  return out;
}

}  // namespace toptri
