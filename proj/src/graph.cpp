#include "toptri/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <execution>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <utility>

namespace toptri {

Aggregation parse_aggregation(const std::string& name) {
  if (name == "sum") return Aggregation::Sum;
  if (name == "max") return Aggregation::Max;
  if (name == "first") return Aggregation::First;
  throw Error("unknown aggregation '" + name + "' (expected sum|max|first)");
}

WeightedGraph WeightedGraph::from_edges(NodeId n, std::vector<WeightedEdge> edges,
                                        Aggregation agg,
                                        std::vector<std::uint64_t> original_ids) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw Error("edge endpoint out of range");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw Error("edge weight must be positive and finite");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const WeightedEdge& e) { return e.u == e.v; });

  // Stable so that Aggregation::First keeps input order among duplicates.
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (out > 0 && edges[out - 1].u == edges[i].u && edges[out - 1].v == edges[i].v) {
      auto& kept = edges[out - 1];
      switch (agg) {
        case Aggregation::Sum: kept.w += edges[i].w; break;
        case Aggregation::Max: kept.w = std::max(kept.w, edges[i].w); break;
        case Aggregation::First: break;
      }
    } else {
      edges[out++] = edges[i];
    }
  }
  edges.resize(out);

  WeightedGraph g;
  g.offsets_.assign(std::size_t{n} + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(2 * edges.size());
  g.weights_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lower neighbors first, then higher ones; (u, v) order keeps each run
  // ascending.
  for (const auto& e : edges) {
    g.targets_[cursor[e.v]] = e.u;
    g.weights_[cursor[e.v]++] = e.w;
  }
  for (const auto& e : edges) {
    g.targets_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.w;
  }

  if (original_ids.empty()) {
    original_ids.resize(n);
    for (NodeId i = 0; i < n; ++i) original_ids[i] = i;
  } else if (original_ids.size() != n) {
    throw Error("original id table size mismatch");
  }
  g.original_ids_ = std::move(original_ids);
  return g;
}

std::optional<std::size_t> WeightedGraph::find_slot(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return offsets_[u] + static_cast<std::size_t>(it - nb.begin());
}

std::optional<double> WeightedGraph::edge_weight(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) throw Error("node id out of range");
  if (auto s = find_slot(u, v)) return weights_[*s];
  return std::nullopt;
}

std::vector<WeightedEdge> WeightedGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    auto nb = neighbors(u);
    auto wt = neighbor_weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (nb[i] > u) out.push_back({u, nb[i], wt[i]});
  }
  return out;
}

bool heavier_edge(const WeightedEdge& a, const WeightedEdge& b) {
  if (a.w != b.w) return a.w > b.w;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

namespace {

// Unsigned key whose ascending order is descending weight.
std::uint64_t descending_key(double w) {
  const auto b = std::bit_cast<std::uint64_t>(w);
  const std::uint64_t asc = (b >> 63) ? ~b : b | (std::uint64_t{1} << 63);
  return ~asc;
}

// Stable LSD radix sort on the weight key. The input is in (u, v) order, so
// stability yields the (u, v) tie-break for free.
void radix_sort_by_weight(std::vector<WeightedEdge>& edges) {
  constexpr int kBits = 16;
  constexpr std::size_t kBuckets = std::size_t{1} << kBits;
  struct Keyed {
    std::uint64_t key;
    std::uint32_t index;
  };
  const std::size_t n = edges.size();
  if (n < 2) return;
  std::vector<Keyed> cur(n), next(n);
  for (std::size_t i = 0; i < n; ++i) cur[i] = {descending_key(edges[i].w), static_cast<std::uint32_t>(i)};
  std::vector<std::size_t> count(kBuckets);
  for (int shift = 0; shift < 64; shift += kBits) {
    std::fill(count.begin(), count.end(), 0);
    for (const auto& x : cur) ++count[(x.key >> shift) & (kBuckets - 1)];
    if (count[(cur[0].key >> shift) & (kBuckets - 1)] == n) continue;
    std::size_t sum = 0;
    for (auto& c : count) sum += std::exchange(c, sum);
    for (const auto& x : cur) next[count[(x.key >> shift) & (kBuckets - 1)]++] = x;
    cur.swap(next);
  }
  std::vector<WeightedEdge> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = edges[cur[i].index];
  edges.swap(out);
}

}  // namespace

SortedEdgeList sort_edges(const WeightedGraph& g, unsigned threads) {
  SortedEdgeList out{g.edges()};
  if (threads > 1)
    std::sort(std::execution::par, out.edges.begin(), out.edges.end(), heavier_edge);
  else if (out.edges.size() <= std::numeric_limits<std::uint32_t>::max())
    radix_sort_by_weight(out.edges);
  else
    std::sort(out.edges.begin(), out.edges.end(), heavier_edge);
  return out;
}

namespace {

struct RawEdge {
  std::uint64_t u, v;
  double w;
};

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Next whitespace-delimited token; advances `s`.
std::string_view next_token(std::string_view& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) {
    s = {};
    return {};
  }
  s.remove_prefix(b);
  auto e = s.find_first_of(" \t");
  auto tok = s.substr(0, e);
  s.remove_prefix(e == std::string_view::npos ? s.size() : e);
  return tok;
}

std::uint64_t parse_id(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "bad node id '" + std::string(tok) + "'");
  return v;
}

double parse_weight(std::string_view tok, std::size_t line) {
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v))
    throw ParseError(line, "bad weight '" + std::string(tok) + "'");
  if (!(v > 0.0)) throw ParseError(line, "non-positive weight " + std::string(tok));
  return v;
}

}  // namespace

WeightedGraph load_edge_list(std::istream& in, Aggregation agg) {
  std::vector<RawEdge> raw;
  std::string buf;
  std::size_t line = 0, data_lines = 0;
  while (std::getline(in, buf)) {
    ++line;
    auto s = trim(buf);
    if (s.empty() || s.front() == '#' || s.front() == '%') continue;
    ++data_lines;
    auto tu = next_token(s), tv = next_token(s), tw = next_token(s);
    if (tw.empty()) throw ParseError(line, "expected `u v w`");
    if (!next_token(s).empty()) throw ParseError(line, "trailing fields");
    RawEdge e{parse_id(tu, line), parse_id(tv, line), parse_weight(tw, line)};
    if (e.u != e.v) raw.push_back(e);
  }
  if (data_lines == 0) throw Error("empty edge list");

  std::vector<std::uint64_t> ids;
  ids.reserve(2 * raw.size());
  for (const auto& e : raw) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<NodeId>::max()) throw Error("too many nodes");

  auto dense = [&](std::uint64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<WeightedEdge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) edges.push_back({dense(e.u), dense(e.v), e.w});
  auto n = static_cast<NodeId>(ids.size());
  return WeightedGraph::from_edges(n, std::move(edges), agg, std::move(ids));
}

WeightedGraph load_edge_list_file(const std::string& path, Aggregation agg) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_edge_list(in, agg);
}

std::string format_weight(double w) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, p);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g,
                     const SortedEdgeList& sorted) {
  for (const auto& e : sorted.edges)
    out << g.original_id(e.u) << ' ' << g.original_id(e.v) << ' ' << format_weight(e.w)
        << '\n';
}

}  // namespace toptri
