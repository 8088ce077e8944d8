#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toptri/graph.hpp"
#include "toptri/result_io.hpp"
#include "toptri/weighting.hpp"

namespace toptri::cli {

// Everything needed to run one algorithm on one loaded graph.
struct RunOptions {
  std::string algo = "bf";  // bf | shl | dhl | auto | es | ws | ps
  PMeanParam p{1.0};
  std::size_t k = 1000;
  std::string alpha = "1.25";  // real > 1, or "auto" (fit beta, then the power-law formula)
  double heavy_fraction = 0.1;
  std::size_t iterations = 100000;
  std::optional<std::int64_t> budget_ms;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  int clique_size = 3;
};

struct RunReport {
  std::string algorithm;
  std::string dataset;
  std::string p;
  std::size_t k = 0;
  int clique_size = 3;
  double load_ms = 0.0;
  double preprocess_ms = 0.0;  // sort plus index builds
  double main_ms = 0.0;
  std::optional<std::size_t> iterations;
  std::optional<double> alpha;
  std::optional<double> accuracy;
  bool exact = false;
  std::size_t results = 0;
  std::string digest;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

struct RunOutcome {
  RunReport report;
  std::vector<ResultRow> rows;
};

// Throws Error on invalid option combinations.
RunOutcome run_algorithm(const WeightedGraph& g, const RunOptions& opts);

// Exact rows for the same (p, k, clique size), used as the accuracy oracle.
std::vector<ResultRow> exact_rows(const WeightedGraph& g, PMeanParam p, std::size_t k,
                                  int clique_size);

// Full command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toptri::cli
