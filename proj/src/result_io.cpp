#include "toptri/result_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace toptri {

std::vector<ResultRow> to_rows(const WeightedGraph& g, const TopKResult& r) {
  std::vector<ResultRow> rows;
  rows.reserve(r.items.size());
  for (const auto& t : r.items) {
    ResultRow row;
    row.nodes = {g.original_id(t.a), g.original_id(t.b), g.original_id(t.c)};
    row.edge_weights.assign(t.edge_weights.begin(), t.edge_weights.end());
    row.weight = t.weight;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> to_rows(const WeightedGraph& g, const CliqueResult& r) {
  std::vector<ResultRow> rows;
  rows.reserve(r.items.size());
  for (const auto& c : r.items) {
    ResultRow row;
    for (NodeId x : c.nodes) row.nodes.push_back(g.original_id(x));
    row.edge_weights = c.edge_weights;
    row.weight = c.weight;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const auto& row : rows) {
    for (auto id : row.nodes) out << id << '\t';
    for (double w : row.edge_weights) out << format_weight(w) << '\t';
    out << format_weight(row.weight) << '\n';
  }
}

std::vector<ResultRow> read_rows(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t expected_cols = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) cols.push_back(tok);
    // s nodes + s(s-1)/2 weights + 1
    std::size_t size = 0;
    for (std::size_t s = 3; s <= 5; ++s)
      if (cols.size() == s + s * (s - 1) / 2 + 1) size = s;
    if (size == 0) throw ParseError(lineno, "unexpected column count");
    if (expected_cols != 0 && cols.size() != expected_cols)
      throw ParseError(lineno, "inconsistent column count");
    expected_cols = cols.size();

    ResultRow row;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& c = cols[i];
      if (i < size) {
        std::uint64_t id = 0;
        auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), id);
        if (ec != std::errc() || p != c.data() + c.size())
          throw ParseError(lineno, "bad node id '" + c + "'");
        row.nodes.push_back(id);
      } else {
        double w = 0;
        auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), w);
        if (ec != std::errc() || p != c.data() + c.size())
          throw ParseError(lineno, "bad weight '" + c + "'");
        if (i + 1 < cols.size())
          row.edge_weights.push_back(w);
        else
          row.weight = w;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> read_rows_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_rows(in);
}

std::string result_digest(const std::vector<ResultRow>& rows) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& row : rows) {
    mix(row.nodes.size());
    for (auto id : row.nodes) mix(id);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double accuracy(const std::vector<ResultRow>& result, const std::vector<ResultRow>& oracle,
                std::size_t k) {
  const std::size_t top = k == 0 ? oracle.size() : std::min(k, oracle.size());
  if (top == 0) return 1.0;
  std::set<std::vector<std::uint64_t>> truth;
  for (std::size_t i = 0; i < top; ++i) truth.insert(oracle[i].nodes);
  const double boundary = oracle[top - 1].weight;
  std::set<std::vector<std::uint64_t>> seen;
  std::size_t hits = 0;
  for (const auto& row : result) {
    if (!seen.insert(row.nodes).second) continue;
    if (truth.count(row.nodes) || row.weight == boundary) ++hits;
  }
  return static_cast<double>(std::min(hits, top)) / static_cast<double>(top);
}

}  // namespace toptri
