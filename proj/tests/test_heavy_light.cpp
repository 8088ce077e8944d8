#include <doctest.h>

#include "test_support.hpp"
#include "toptri/enumerate.hpp"
#include "toptri/heavy_light.hpp"

using namespace toptri;
using namespace toptri::testing;

namespace {

std::vector<Triple> result_triples(const TopKResult& r) { return triples_of(r.items); }

using RankMap = std::map<std::pair<NodeId, NodeId>, std::int64_t>;

RankMap ranks_of(const SortedEdgeList& s) {
  RankMap out;
  for (std::size_t i = 0; i < s.size(); ++i) out[{s[i].u, s[i].v}] = static_cast<std::int64_t>(i);
  return out;
}

std::array<std::int64_t, 3> edge_ranks(const RankMap& r, const Triple& t) {
  return {r.at({t[0], t[1]}), r.at({t[0], t[2]}), r.at({t[1], t[2]})};
}

}  // namespace

TEST_SUITE("heavy_light") {

TEST_CASE("static: top 3/8 of G1 edges hold the top triangle") {
  auto g = g1();
  auto s = sort_edges(g);
  auto r = static_heavy_light(g, s, PMeanParam(1), 1, 3.0 / 8.0);
  CHECK_FALSE(r.exact);
  REQUIRE(r.items.size() == 1);
  CHECK(r.items[0].nodes() == Triple{0, 1, 2});
  CHECK(r.items[0].weight == doctest::Approx(8.0));
  CHECK(static_heavy_light(g, s, PMeanParam(1), 5, 1.0 / 8.0).items.empty());
}

TEST_CASE("static: fraction 1 equals brute force") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_graph(25, 0.3, seed, seed % 2 == 0);
    auto s = sort_edges(g);
    for (std::size_t k : {std::size_t{1}, std::size_t{7}, kAll}) {
      auto a = static_heavy_light(g, s, PMeanParam(1), k, 1.0);
      auto b = brute_force_topk(g, PMeanParam(1), k);
      REQUIRE(a.items == b.items);
    }
  }
}

TEST_CASE("static: bad fraction") {
  auto g = g1();
  auto s = sort_edges(g);
  CHECK_THROWS_AS(static_heavy_light(g, s, PMeanParam(1), 1, 0.0), Error);
  CHECK_THROWS_AS(static_heavy_light(g, s, PMeanParam(1), 1, 1.5), Error);
}

TEST_CASE("dynamic: G1 top-1 is certified once tau falls to 24") {
  auto g = g1();
  auto s = sort_edges(g);
  double last_tau = std::numeric_limits<double>::infinity();
  std::size_t last_certified = 0;
  HeavyLightOptions opts;
  opts.observer = [&](const HeavyLightState& st) {
    last_tau = st.tau;
    last_certified = st.certified;
  };
  auto r = dynamic_heavy_light(g, s, PMeanParam(1), 1, kDefaultAlpha, opts);
  CHECK(r.exact);
  REQUIRE(r.items.size() == 1);
  CHECK(r.items[0].nodes() == Triple{0, 1, 2});
  CHECK(r.items[0].weight == doctest::Approx(8.0));
  CHECK(last_certified >= 1);
  CHECK(last_tau < 24.0);
}

TEST_CASE("dynamic: two-edge graph exhausts pointers and returns nothing") {
  auto g = from_text("1 2 3\n2 3 4\n");
  auto s = sort_edges(g);
  HeavyLightStats stats;
  HeavyLightOptions opts;
  opts.stats = &stats;
  auto r = dynamic_heavy_light(g, s, PMeanParam(1), 1, kDefaultAlpha, opts);
  CHECK(r.items.empty());
  CHECK(stats.iterations == 4);  // two l moves, two h moves
  CHECK(auto_heavy_light(g, s, PMeanParam(1), 1).items.empty());
}

TEST_CASE("dynamic: argument checks") {
  auto g = g1();
  auto s = sort_edges(g);
  CHECK_THROWS_AS(dynamic_heavy_light(g, s, PMeanParam(1), 0, 1.25), Error);
  CHECK_THROWS_AS(dynamic_heavy_light(g, s, PMeanParam(0), 1, 1.25), Error);
  CHECK_THROWS_AS(dynamic_heavy_light(g, s, PMeanParam::plus_inf(), 1, 1.25), Error);
  CHECK_THROWS_AS(dynamic_heavy_light(g, s, PMeanParam(1), 1, 1.0), Error);
  CHECK_THROWS_AS(auto_heavy_light(g, s, PMeanParam(-1), 1), Error);
}

TEST_CASE("alpha from power law") {
  CHECK(alpha_from_powerlaw(1, 2) == 1.5);
  CHECK(alpha_from_powerlaw(1, 1e12) == doctest::Approx(2.0));
  CHECK(alpha_from_powerlaw(2, 3) == doctest::Approx(1.5));
  CHECK_THROWS_AS(alpha_from_powerlaw(0.5, 0.5), Error);
}

TEST_CASE("weight drop per edge") {
  SortedEdgeList s;
  s.edges = {{0, 1, 10}, {0, 2, 10}, {1, 2, 8}, {2, 3, 8}, {3, 4, 5}};
  CHECK(weight_drop_per_edge(s, 0) == 1.0);
  CHECK(weight_drop_per_edge(s, 1) == 1.0);
  CHECK(weight_drop_per_edge(s, 2) == 1.5);
  CHECK(weight_drop_per_edge(s, 4) == 5.0);
  CHECK_THROWS_AS(weight_drop_per_edge(s, 5), Error);
}

TEST_CASE("incident triangles with a partition filter") {
  auto g = g1();
  // e = (2,3) original, dense (1,2); keep only pairs within {(1,2),(1,3)} = dense {(0,1),(0,2)}
  const WeightedEdge e{1, 2, 6};
  auto keep = [](const WeightedEdge& a, const WeightedEdge& b) {
    auto in = [](const WeightedEdge& x) {
      return (x.u == 0 && x.v == 1) || (x.u == 0 && x.v == 2);
    };
    return in(a) && in(b);
  };
  auto r = incident_triangles_partitioned(g, e, keep, PMeanParam(1));
  REQUIRE(r.size() == 1);
  CHECK(r[0].nodes() == Triple{0, 1, 2});
  CHECK(r[0].weight == doctest::Approx(8.0));
  CHECK(incident_triangles_partitioned(g, e, [](auto&, auto&) { return false; }, PMeanParam(1))
            .empty());
  auto k4 = complete_graph(4);
  CHECK(incident_triangles_partitioned(k4, {1, 3, 1.0}, nullptr, PMeanParam(1)).size() == 2);
}

TEST_CASE("property: dynamic and auto agree with brute force") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = seed % 4 == 3 ? complete_graph(9, 2.0)  // constant weights
                           : random_graph(50, 0.15, seed, seed % 2 == 0);
    auto s = sort_edges(g);
    for (double p : {0.5, 1.0, 2.0}) {
      for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{50}, kAll}) {
        const auto want = result_triples(brute_force_topk(g, PMeanParam(p), k));
        REQUIRE(result_triples(dynamic_heavy_light(g, s, PMeanParam(p), k, kDefaultAlpha)) == want);
        REQUIRE(result_triples(dynamic_heavy_light(g, s, PMeanParam(p), k, 2.0)) == want);
        REQUIRE(result_triples(auto_heavy_light(g, s, PMeanParam(p), k)) == want);
      }
    }
  }
}

TEST_CASE("property: partition invariant, monotone tau and sound certification") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = random_graph(20, 0.45, 500 + seed, seed % 2 == 1);
    REQUIRE(g.num_edges() <= 200);
    auto s = sort_edges(g);
    const auto ranks = ranks_of(s);
    const PMeanParam p(1.0);
    const EdgeScorer scorer(p);
    const auto all = naive_triangles(g, p);

    for (bool use_auto : {false, true}) {
      double prev_tau = std::numeric_limits<double>::infinity();
      HeavyLightState last;
      TripleSet last_found;
      HeavyLightOptions opts;
      opts.observer = [&](const HeavyLightState& st) {
        REQUIRE(st.tau <= prev_tau);
        prev_tau = st.tau;
        for (const auto& t : all) {
          int heavy = 0, super = 0;
          for (auto r : edge_ranks(ranks, t.nodes())) {
            super += st.classify(r) == EdgeClass::SuperHeavy;
            heavy += st.classify(r) == EdgeClass::Heavy;
          }
          if (super >= 1 || heavy >= 2) REQUIRE(st.found->count(t.nodes()) == 1);
        }
        std::size_t above = 0;
        for (const auto& x : *st.found) {
          EdgeMap m(g);
          const double sc = scorer.triangle(scorer.term(m.at(x[0], x[1])),
                                            scorer.term(m.at(x[0], x[2])),
                                            scorer.term(m.at(x[1], x[2])));
          above += sc > st.tau;
        }
        REQUIRE(st.certified <= above);
        if (st.h >= 0 && st.l + 2 < static_cast<std::int64_t>(s.size())) {
          const double tight = s[st.h + 1].w + s[st.l + 1].w + s[st.l + 2].w;
          REQUIRE(st.tau >= tight);
        }
        last = st;
        last_found = *st.found;
      };
      const std::size_t k = 1 + seed % 8;
      auto r = use_auto ? auto_heavy_light(g, s, p, k, opts)
                        : dynamic_heavy_light(g, s, p, k, kDefaultAlpha, opts);
      for (const auto& t : all)
        if (!last_found.count(t.nodes())) REQUIRE(t.score <= last.tau);
      REQUIRE(result_triples(r) == result_triples(brute_force_topk(g, p, k)));
    }
  }
}

}  // TEST_SUITE
