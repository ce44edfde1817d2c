#include "catch_amalgamated.hpp"

#include <random>

#include "fixtures.hpp"
#include "maxplus/digraph.hpp"
#include "maxplus/oracle.hpp"

using namespace maxplus;
using fixtures::E;

TEST_CASE("brute_chi", "[oracle]") {
  CHECK(oracle::brute_chi(fixtures::example(), Rational(7)) == Rational(72));
  CHECK(oracle::brute_chi(fixtures::dense({{3}}), Rational(1)) == Rational(3));
  CHECK(oracle::brute_chi(fixtures::dense({{3}}), Rational(5)) == Rational(5));
  CHECK(oracle::brute_chi(TropicalMatrix(2, 2), Rational(-4)) == Rational(-8));
  CHECK(oracle::brute_chi(TropicalMatrix(2, 2), Rational(1, 2)) == Rational(1));
  CHECK_THROWS_AS(oracle::brute_chi(TropicalMatrix(11, 11), Rational(0)), oracle::TooLarge);
  CHECK_THROWS_AS(oracle::brute_chi(TropicalMatrix(2, 3), Rational(0)), DimensionError);
}

TEST_CASE("enumerate_circuits", "[oracle]") {
  const auto cs = oracle::enumerate_circuits(fixtures::dense({{1, 0, E}, {0, E, 2}, {3, E, 4}}));
  REQUIRE(cs.size() == 4);
  std::vector<std::vector<std::size_t>> nodes;
  for (const auto& c : cs) nodes.push_back(c.nodes);
  std::sort(nodes.begin(), nodes.end());
  CHECK(nodes == std::vector<std::vector<std::size_t>>{{0}, {0, 1}, {0, 1, 2}, {2}});
  CHECK(oracle::enumerate_circuits(fixtures::dense({{E, 1}, {E, E}})).empty());
}

TEST_CASE("brute_mmc on the worked example", "[oracle]") {
  const auto b = oracle::brute_mmc(fixtures::example());
  const std::vector<std::pair<std::size_t, long>> vertices = {{0, 0}, {2, 16}, {3, 23}, {4, 29}, {5, 33}, {8, 42}, {9, 42}};
  for (const auto& [len, w] : vertices) {
    REQUIRE(b.best[len].has_value());
    CHECK(b.best[len]->total_weight == Rational(w));
  }
  CHECK_FALSE(b.best[10].has_value());
  CHECK(b.vertex_lengths == std::vector<std::size_t>{0, 2, 3, 4, 5, 8, 9});
  CHECK(b.roots == std::vector<Rational>{8, 7, 6, 4, 3, 0});
  CHECK(b.multiplicities == std::vector<std::size_t>{2, 1, 1, 1, 3, 1});
  CHECK(b.epsilon_multiplicity == 1);
}

TEST_CASE("brute_mmc small cases", "[oracle]") {
  const auto one = oracle::brute_mmc(fixtures::dense({{-3}}));
  CHECK(one.best[1]->total_weight == Rational(-3));
  CHECK(one.roots == std::vector<Rational>{-3});
  const auto acyclic = oracle::brute_mmc(fixtures::dense({{E, 1}, {E, E}}));
  CHECK(acyclic.best[0].has_value());
  CHECK_FALSE(acyclic.best[1].has_value());
  CHECK_FALSE(acyclic.best[2].has_value());
  CHECK(acyclic.roots.empty());
  CHECK(acyclic.epsilon_multiplicity == 2);
}

TEST_CASE("brute cycle mean and modular closure", "[oracle]") {
  CHECK(oracle::brute_max_cycle_mean(fixtures::example()) == Scalar(8));
  CHECK(oracle::brute_max_cycle_mean(fixtures::dense({{E, 1}, {E, E}})).is_epsilon());
  const auto a = fixtures::dense({{E, 0}, {-1, E}});
  CHECK(oracle::brute_modular_closure(a, 2) == fixtures::dense({{0, E}, {E, 0}}));
  CHECK(oracle::brute_modular_closure(a, 1) == fixtures::dense({{0, 0}, {-1, 0}}));
  CHECK_THROWS_AS(oracle::brute_modular_closure(a, 0), std::invalid_argument);
}

TEST_CASE("brute_power_check", "[oracle]") {
  const auto a = fixtures::example();
  const auto x = expand(a);
  const auto ok = oracle::brute_power_check(a, x, 200, 220, "example");
  CHECK(ok.match);
  CHECK(ok.summary().find("match") != std::string::npos);

  const auto c = fixtures::dense({{5}});
  CHECK(oracle::brute_power_check(c, expand(c), 2, 10).match);

  auto bad = x;
  bad.terms[0].rate += Rational(1);
  const auto r = oracle::brute_power_check(a, bad, 200, 220, "corrupted", 11);
  CHECK_FALSE(r.match);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->t == 200);
  CHECK(r.counterexample->got != r.counterexample->expected);
  CHECK(r.summary().find("seed=11") != std::string::npos);
  CHECK(r.summary().find("mismatch") != std::string::npos);
}

TEST_CASE("oracles agree with the fast paths", "[oracle][property]") {
  std::mt19937_64 rng(101);
  const double densities[] = {0.3, 0.6, 1.0};
  std::uniform_int_distribution<int> num(-30, 30), den(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto a = oracle::random_matrix(rng, n, densities[trial % 3], -5, 5);
    const Rational lambda(num(rng), den(rng));
    CHECK(chi_eval(a, lambda).value == oracle::brute_chi(a, lambda));

    const auto b = oracle::brute_mmc(a);
    const auto m = characteristic_roots(a);
    CHECK(m.roots == b.roots);
    CHECK(m.multiplicities == b.multiplicities);
    CHECK(m.epsilon_multiplicity == b.epsilon_multiplicity);
    for (std::size_t k = 0; k < m.multicircuits.size(); ++k) {
      const auto len = m.multicircuits[k].total_length;
      REQUIRE(b.best[len].has_value());
      CHECK(m.multicircuits[k].total_weight == b.best[len]->total_weight);
    }
    const Scalar karp = karp_max_cycle_mean(build_graph(a));
    CHECK(karp == oracle::brute_max_cycle_mean(a));
    if (m.roots.empty())
      CHECK(karp.is_epsilon());
    else
      CHECK(karp == Scalar(m.roots.front()));
  }
}

TEST_CASE("random_matrix", "[oracle]") {
  std::mt19937_64 r1(5), r2(5);
  CHECK(oracle::random_matrix(r1, 6, 0.5, -2, 2) == oracle::random_matrix(r2, 6, 0.5, -2, 2));
  std::mt19937_64 r3(6);
  const auto full = oracle::random_matrix(r3, 5, 1.0, -2, 2);
  CHECK(full.finite_count() == 25);
  for (std::size_t i = 0; i < 5; ++i)
    for (const auto& e : full.row(i)) CHECK((Rational(-2) <= e.value && e.value <= Rational(2)));
  std::mt19937_64 r4(7);
  CHECK(oracle::random_matrix(r4, 4, 0.0, -2, 2).finite_count() == 0);
}
