#include "catch_amalgamated.hpp"

#include <random>

#include "fixtures.hpp"
#include "maxplus/matrix.hpp"
#include "maxplus/oracle.hpp"

using namespace maxplus;
using fixtures::E;

TEST_CASE("matrix add", "[matrix]") {
  const auto a = fixtures::dense({{1, E}, {E, 2}});
  const auto b = fixtures::dense({{0, 3}, {E, E}});
  CHECK(matrix_add(a, b) == fixtures::dense({{1, 3}, {E, 2}}));
  CHECK(matrix_add(a, TropicalMatrix::zero(2, 2)) == a);
  CHECK(matrix_add(a, a) == a);
  CHECK_THROWS_AS(matrix_add(a, TropicalMatrix(3, 3)), DimensionError);
}

TEST_CASE("matrix multiply", "[matrix]") {
  const auto a = fixtures::dense({{E, 7}, {9, E}});
  CHECK(matrix_mul(a, a) == fixtures::dense({{16, E}, {E, 16}}));
  CHECK(matrix_mul(TropicalMatrix::identity(2), a) == a);
  CHECK(matrix_mul(TropicalMatrix::zero(2, 2), a) == TropicalMatrix::zero(2, 2));
  CHECK_THROWS_AS(matrix_mul(a, TropicalMatrix(3, 1)), DimensionError);
  const auto rect = matrix_mul(fixtures::dense({{0, 1, E}}), fixtures::dense({{2}, {3}, {9}}));
  CHECK(rect == fixtures::dense({{4}}));
}

TEST_CASE("matrix power", "[matrix]") {
  const auto a = fixtures::dense({{E, 7}, {9, E}});
  CHECK(matrix_power(a, std::size_t{1}) == a);
  CHECK(matrix_power(a, std::size_t{3}) == fixtures::dense({{E, 23}, {25, E}}));
  CHECK(matrix_power(a, std::size_t{0}) == TropicalMatrix::identity(2));
  const auto huge = matrix_power(a, BigInt("1000000000000000000000"));
  CHECK(huge.at(0, 0) == Scalar(Rational(BigInt("8000000000000000000000"))));
  CHECK_THROWS_AS(matrix_power(TropicalMatrix(2, 3), std::size_t{2}), DimensionError);
}

TEST_CASE("kleene star", "[matrix]") {
  CHECK(kleene_star(TropicalMatrix::zero(3, 3)) == TropicalMatrix::identity(3));
  CHECK(kleene_star(fixtures::dense({{E, -1}, {-2, E}})) == fixtures::dense({{0, -1}, {-2, 0}}));
  CHECK_THROWS_AS(kleene_star(fixtures::dense({{1}})), PositiveCircuitError);
  CHECK_THROWS_AS(kleene_star(fixtures::dense({{E, 2}, {-1, E}})), PositiveCircuitError);
}

TEST_CASE("diagonal conjugation", "[matrix]") {
  const auto a = fixtures::example();
  DiagonalScaling zero{std::vector<Rational>(10)};
  CHECK(diag_conjugate(a, zero, Rational(0)) == a);
  DiagonalScaling d{{Rational(3), Rational(-2), Rational(1, 2), 0, 0, 0, 0, 0, 0, 0}};
  const auto c = diag_conjugate(a, d, Rational(-1));
  CHECK(c.at(3, 3) == Scalar(5));
  CHECK(diag_conjugate(c, d.inverse(), Rational(1)) == a);
  CHECK_THROWS_AS(diag_conjugate(a, DiagonalScaling{{Rational(0)}}, Rational(0)), DimensionError);
  // Worked example, nodes 6..10, shift -3.
  const auto sub = a.principal_submatrix({5, 6, 7, 8, 9});
  const DiagonalScaling d3{{0, -3, -3, -2, -4}};
  CHECK(diag_conjugate(sub, d3, Rational(-3)) == fixtures::dense({{E, -5, 0, E, E},
                                                                 {E, E, E, E, E},
                                                                 {E, E, E, 0, E},
                                                                 {0, 0, E, E, -4},
                                                                 {E, E, E, 0, E}}));
}

TEST_CASE("submatrix labels", "[matrix]") {
  const auto a = fixtures::example();
  const auto sub = a.principal_submatrix({3, 4, 5});
  CHECK(sub.row_labels() == std::vector<std::size_t>{3, 4, 5});
  const auto subsub = sub.principal_submatrix({1, 2});
  CHECK(subsub.row_labels() == std::vector<std::size_t>{4, 5});
  CHECK_THROWS_AS(a.principal_submatrix({4, 3}), std::invalid_argument);
  TropicalMatrix m(2, 2);
  CHECK_THROWS_AS(m.set_labels({2, 1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(m.set_labels({1}, {}), DimensionError);
}

TEST_CASE("algebraic properties on random matrices", "[matrix][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto a = oracle::random_matrix(rng, n, 0.6, -5, 5);
    const auto b = oracle::random_matrix(rng, n, 0.6, -5, 5);
    const auto c = oracle::random_matrix(rng, n, 0.6, -5, 5);
    CHECK(matrix_mul(matrix_mul(a, b), c) == matrix_mul(a, matrix_mul(b, c)));
    const std::size_t s = trial % 8 + 1, t = (trial * 3) % 8 + 1;
    CHECK(matrix_power(a, s + t) == matrix_mul(matrix_power(a, s), matrix_power(a, t)));
    DiagonalScaling d;
    for (std::size_t i = 0; i < n; ++i) d.d.emplace_back(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    const Rational shift(-2, 3);
    CHECK(diag_conjugate(matrix_power(a, t), d, shift * Rational(static_cast<long>(t))) ==
          matrix_power(diag_conjugate(a, d, shift), t));
    // Kleene star of a matrix shifted below its maximum cycle mean.
    const auto mean = oracle::brute_max_cycle_mean(a);
    const auto shifted = mean.is_finite() ? scale(Scalar(-mean.value()), a) : a;
    TropicalMatrix sum = TropicalMatrix::identity(n), pw = TropicalMatrix::identity(n);
    for (std::size_t k = 1; k < n; ++k) {
      pw = matrix_mul(pw, shifted);
      sum = matrix_add(sum, pw);
    }
    CHECK(kleene_star(shifted) == sum);
  }
}
