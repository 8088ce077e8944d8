#include <doctest.h>

#include <sstream>

#include "test_support.hpp"
#include "toptri/enumerate.hpp"
#include "toptri/result_io.hpp"

using namespace toptri;
using namespace toptri::testing;

namespace {

ResultRow row(std::vector<std::uint64_t> nodes, double w) {
  ResultRow r;
  r.nodes = std::move(nodes);
  r.edge_weights = {w, w, w};
  r.weight = w;
  return r;
}

}  // namespace

TEST_SUITE("result_io") {

TEST_CASE("G1 top-2 rows use original ids") {
  auto g = g1();
  auto rows = to_rows(g, brute_force_topk(g, PMeanParam(1), 2));
  std::ostringstream out;
  write_rows(out, rows);
  CHECK(out.str() == "1\t2\t3\t10\t8\t6\t8\n1\t2\t4\t10\t5\t1\t5.333333333333333\n");
}

TEST_CASE("rows round-trip exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_graph(30, 0.3, seed, false);
    for (int size : {3, 4}) {
      auto rows = to_rows(g, enumerate_cliques(g, size, PMeanParam(0.7), 40));
      std::ostringstream out;
      write_rows(out, rows);
      std::istringstream in(out.str());
      REQUIRE(read_rows(in) == rows);
    }
  }
}

TEST_CASE("malformed rows") {
  std::istringstream a("1\t2\t3\t1\t1\n"), b("1\t2\t3\t1\t1\t1\t1\n1\t2\t3\t4\t1\t1\t1\t1\t1\t1\t1\n"),
      c("1\tx\t3\t1\t1\t1\t1\n");
  CHECK_THROWS_AS(read_rows(a), ParseError);
  CHECK_THROWS_AS(read_rows(b), ParseError);
  CHECK_THROWS_AS(read_rows(c), ParseError);
}

TEST_CASE("digest is stable and order sensitive") {
  std::vector<ResultRow> a{row({1, 2, 3}, 2), row({1, 2, 4}, 1)};
  auto b = a;
  std::swap(b[0], b[1]);
  CHECK(result_digest(a) == result_digest(a));
  CHECK(result_digest(a).size() == 16);
  CHECK(result_digest(a) != result_digest(b));
}

TEST_CASE("accuracy") {
  std::vector<ResultRow> oracle{row({1, 2, 3}, 8), row({1, 2, 4}, 5)};
  CHECK(accuracy(oracle, oracle, 2) == 1.0);
  CHECK(accuracy({row({7, 8, 9}, 1)}, oracle, 2) == 0.0);
  CHECK(accuracy({row({1, 2, 3}, 8), row({1, 3, 5}, 4)}, oracle, 2) == 0.5);
  CHECK(accuracy({}, {}, 5) == 1.0);
  // A tie at rank k: any triple with the k-th weight counts.
  std::vector<ResultRow> tied{row({1, 2, 3}, 8), row({1, 2, 4}, 5), row({2, 3, 4}, 5)};
  CHECK(accuracy({row({1, 2, 3}, 8), row({2, 3, 4}, 5)}, tied, 2) == 1.0);
  // k beyond the oracle size uses the oracle size.
  CHECK(accuracy(oracle, oracle, 10) == 1.0);
}

}  // TEST_SUITE
