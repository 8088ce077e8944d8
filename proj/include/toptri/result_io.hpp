#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toptri/graph.hpp"
#include "toptri/topk.hpp"

namespace toptri {

// One line of a result file: original node ids ascending, the member edge
// weights in lexicographic pair order, then the p-mean.
struct ResultRow {
  std::vector<std::uint64_t> nodes;
  std::vector<double> edge_weights;
  double weight = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

std::vector<ResultRow> to_rows(const WeightedGraph& g, const TopKResult& r);
std::vector<ResultRow> to_rows(const WeightedGraph& g, const CliqueResult& r);

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows);
// Throws ParseError on malformed lines or inconsistent column counts.
std::vector<ResultRow> read_rows(std::istream& in);
std::vector<ResultRow> read_rows_file(const std::string& path);

// FNV-1a over the node lists, as 16 hex digits.
std::string result_digest(const std::vector<ResultRow>& rows);

// Fraction of the oracle's first k rows present in `result`. Any result row
// whose weight equals the k-th oracle weight also counts, since rank k is
// ambiguous under ties. k = 0 means all oracle rows.
double accuracy(const std::vector<ResultRow>& result, const std::vector<ResultRow>& oracle,
                std::size_t k = 0);

template <class Item>
double accuracy(const TopK<Item>& result, const TopK<Item>& oracle) {
  std::vector<ResultRow> a, b;
  auto conv = [](const Item& it) {
    ResultRow r;
    if constexpr (requires { it.a; }) {
      r.nodes = {it.a, it.b, it.c};
    } else {
      r.nodes.assign(it.nodes.begin(), it.nodes.end());
    }
    r.weight = it.weight;
    return r;
  };
  for (const auto& it : result.items) a.push_back(conv(it));
  for (const auto& it : oracle.items) b.push_back(conv(it));
  return accuracy(a, b, oracle.k == kAll ? 0 : oracle.k);
}

}  // namespace toptri
