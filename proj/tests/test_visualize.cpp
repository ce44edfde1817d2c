#include "catch_amalgamated.hpp"

#include <random>

#include "fixtures.hpp"
#include "maxplus/oracle.hpp"
#include "maxplus/visualize.hpp"

using namespace maxplus;
using fixtures::E;

namespace {

DiagonalScaling ints(std::initializer_list<long> xs) {
  DiagonalScaling d;
  for (long x : xs) d.d.emplace_back(x);
  return d;
}

}  // namespace

TEST_CASE("single-sink Dijkstra", "[visualize]") {
  WeightedDigraph lone(3);
  const auto t0 = dijkstra_single_sink(lone, 1);
  CHECK(t0.reached == std::vector<std::size_t>{1});
  CHECK(t0.weight[1] == Scalar(0));

  WeightedDigraph chain(4);
  chain.add_arc(0, 1, Rational(-1));
  chain.add_arc(1, 2, Rational(-2));
  chain.add_arc(2, 3, Rational(-7));
  const auto t1 = dijkstra_single_sink(chain, 2);
  CHECK(t1.reached == std::vector<std::size_t>{0, 1, 2});
  CHECK(t1.weight[0] == Scalar(-3));
  CHECK(t1.weight[1] == Scalar(-2));
  CHECK(t1.weight[3].is_epsilon());
  CHECK(t1.next_arc[0] == std::optional<std::size_t>{0});

  WeightedDigraph into(3);
  into.add_arc(0, 2, Rational(5));
  into.add_arc(1, 0, Rational(-1));
  into.add_arc(1, 2, Rational(1));
  const auto t2 = dijkstra_single_sink(into, 2);
  CHECK(t2.weight[0] == Scalar(5));
  CHECK(t2.weight[1] == Scalar(4));

  WeightedDigraph bad(3);
  bad.add_arc(0, 1, Rational(1));
  bad.add_arc(1, 2, Rational(0));
  CHECK_THROWS_AS(dijkstra_single_sink(bad, 2), InvariantViolation);

  WeightedDigraph loop(2);
  loop.add_arc(0, 1, Rational(2));
  loop.add_arc(1, 0, Rational(-1));
  CHECK_THROWS_AS(dijkstra_single_sink(loop, 0), InvariantViolation);
}

TEST_CASE("visualization of the worked example", "[visualize]") {
  const auto a = fixtures::example();
  const auto vis = visualize_all(a, partition_nodes(characteristic_roots(a), 10));
  REQUIRE(vis.groups.size() == 3);
  CHECK(vis.insertion_order == std::vector<std::size_t>{9, 8, 7, 6, 5, 4, 3, 2, 1, 0});

  const auto& g3 = vis.groups[2];
  CHECK(g3.nodes == std::vector<std::size_t>{5, 6, 7, 8, 9});
  CHECK(g3.potential.d == ints({0, -3, -3, -2, -4}).d);
  CHECK(g3.matrix == fixtures::dense({{E, -5, 0, E, E},
                                      {E, E, E, E, E},
                                      {E, E, E, 0, E},
                                      {0, 0, E, E, -4},
                                      {E, E, E, 0, E}}));

  const auto& g2 = vis.groups[1];
  CHECK(g2.potential.d == ints({0, 0, -9, -4, -10, -6, -11}).d);
  CHECK(g2.matrix == fixtures::dense({{0, -4, -10, E, E, E, E},
                                      {E, E, E, E, E, E, E},
                                      {E, E, E, 0, -1, E, E},
                                      {E, 0, E, E, E, E, E},
                                      {E, E, E, E, E, 0, E},
                                      {E, E, -8, 0, E, E, -10},
                                      {E, E, E, E, E, 0, E}}));

  const auto& g1 = vis.groups[0];
  CHECK(g1.potential.d == ints({0, 1, 0, -9, -3, -16, -9, -19, -13, -20}).d);
  CHECK(g1.matrix == fixtures::dense({{E, 0, E, E, E, E, E, E, E, E},
                                      {0, E, -1, -15, -5, E, E, E, E, E},
                                      {0, E, E, E, E, E, E, E, E, E},
                                      {E, E, E, -2, 0, -10, E, E, E, E},
                                      {E, E, 0, E, E, E, E, E, E, E},
                                      {E, E, E, E, E, E, 0, -5, E, E},
                                      {E, E, E, E, 0, E, E, E, E, E},
                                      {E, E, E, E, E, E, E, E, 0, E},
                                      {E, E, E, E, E, -10, 0, E, E, -14},
                                      {E, E, E, E, E, E, E, E, 0, E}}));
}

TEST_CASE("visualization of a 1x1 matrix", "[visualize]") {
  const auto a = fixtures::dense({{5}});
  const auto vis = visualize_all(a, partition_nodes(characteristic_roots(a), 1));
  REQUIRE(vis.groups.size() == 1);
  CHECK(vis.groups[0].matrix == fixtures::dense({{0}}));
  CHECK(vis.groups[0].potential.d == ints({0}).d);
}

TEST_CASE("visualization rejects mismatched input", "[visualize]") {
  const auto a = fixtures::example();
  const auto part = partition_nodes(characteristic_roots(a), 10);
  CHECK_THROWS_AS(visualize_all(fixtures::dense({{1}}), part), DimensionError);
  CHECK(visualize_all(TropicalMatrix::zero(2, 2), partition_nodes(characteristic_roots(TropicalMatrix::zero(2, 2)), 2))
            .groups.empty());
}

TEST_CASE("visualization invariants on random matrices", "[visualize][property]") {
  std::mt19937_64 rng(23);
  const double densities[] = {0.3, 0.6, 1.0};
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto a = oracle::random_matrix(rng, n, densities[trial % 3], -5, 5);
    const auto part = partition_nodes(characteristic_roots(a), n);
    const auto vis = visualize_all(a, part);
    for (std::size_t s = 0; s < part.r(); ++s) {
      const auto& g = vis.groups[s];
      CHECK(g.nodes == part.suffix(s));
      for (std::size_t i = 0; i < g.matrix.rows(); ++i)
        for (const auto& e : g.matrix.row(i)) CHECK(e.value <= Rational(0));
      CHECK(g.matrix == diag_conjugate(a.principal_submatrix(g.nodes), g.potential, -part.growth_rates[s]));
      const auto& c = part.quasi_critical[s];
      for (std::size_t k = 0; k < c.length(); ++k) {
        const auto u = std::lower_bound(g.nodes.begin(), g.nodes.end(), c.nodes[k]) - g.nodes.begin();
        const auto v = std::lower_bound(g.nodes.begin(), g.nodes.end(), c.nodes[(k + 1) % c.length()]) - g.nodes.begin();
        CHECK(g.matrix.at(u, v) == Scalar(0));
      }
      // Independent visualization: Bellman–Ford potentials on the shifted submatrix.
      const auto sub = a.principal_submatrix(g.nodes);
      const auto p = feasible_potential(build_graph(sub), part.growth_rates[s]);
      const auto other = diag_conjugate(sub, DiagonalScaling{p}, -part.growth_rates[s]);
      for (std::size_t i = 0; i < other.rows(); ++i)
        for (const auto& e : other.row(i)) CHECK(e.value <= Rational(0));
      for (std::size_t k = 0; k < c.length(); ++k) {
        const auto u = std::lower_bound(g.nodes.begin(), g.nodes.end(), c.nodes[k]) - g.nodes.begin();
        const auto v = std::lower_bound(g.nodes.begin(), g.nodes.end(), c.nodes[(k + 1) % c.length()]) - g.nodes.begin();
        CHECK(other.at(u, v) == Scalar(0));
      }
    }
  }
}
