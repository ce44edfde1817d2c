#include "catch_amalgamated.hpp"

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "maxplus/cli.hpp"
#include "maxplus/csr.hpp"
#include "maxplus/io.hpp"

using namespace maxplus;
using fixtures::E;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t error_line(std::string_view text) {
  try {
    io::parse_matrix(text);
  } catch (const io::ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse dense and sparse", "[io]") {
  const auto dense = io::parse_matrix(io::read_file(fixtures::data_path("example.mpx")));
  const auto sparse = io::parse_matrix(io::read_file(fixtures::data_path("example_sparse.mpx")));
  CHECK(dense == sparse);
  CHECK(dense == fixtures::example());
  TropicalMatrix m(2, 2);
  m.set(0, 0, Scalar(Rational(1, 2)));
  m.set(1, 1, Scalar(-3));
  CHECK(io::parse_matrix("2\n1/2 -inf\n. -3\n") == m);
  CHECK(io::parse_matrix("2 1  # header\n\n2 1 4/6\n").at(1, 0) == Scalar(Rational(2, 3)));
}

TEST_CASE("parse errors carry line numbers", "[io]") {
  CHECK(error_line("") == 1);
  CHECK(error_line("0\n") == 1);
  CHECK(error_line("x\n") == 1);
  CHECK(error_line("2\n1 2\n3\n") == 3);
  CHECK(error_line("2\n1 2\n") == 2);
  CHECK(error_line("2\n1 2\n3 z\n") == 3);
  CHECK(error_line("2\n1 2\n3 1/0\n") == 3);
  CHECK(error_line("2 2\n1 1 0\n1 1 3\n") == 3);
  CHECK(error_line("2 1\n3 1 0\n") == 2);
  CHECK(error_line("2 1\n1 1\n") == 2);
  CHECK(error_line("1 2 3\n") == 1);
  CHECK_THROWS_AS(io::read_file("/nonexistent/matrix.mpx"), io::FileError);
}

TEST_CASE("serialization round trip", "[io]") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    TropicalMatrix a(4, 4);
    std::uniform_int_distribution<int> coin(0, 2), num(-9, 9), den(1, 3);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (coin(rng)) a.set(i, j, Scalar(Rational(num(rng), den(rng))));
    CHECK(io::parse_matrix(io::write_dense(a)) == a);
    CHECK(io::parse_matrix(io::write_sparse(a)) == a);
    CHECK(io::write_dense(io::parse_matrix(io::write_dense(a))) == io::write_dense(a));
  }
}

TEST_CASE("sha256", "[io]") {
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("JSON expansion round trip", "[io]") {
  std::mt19937_64 rng(17);
  const auto check = [&](const TropicalMatrix& a, bool reduce) {
    const auto x = expand(a, reduce);
    const auto text = io::expansion_to_json(x, io::sha256_hex("m"));
    const auto y = io::expansion_from_json(text);
    CHECK(y.n == x.n);
    CHECK(y.threshold == x.threshold);
    REQUIRE(y.terms.size() == x.terms.size());
    std::uniform_int_distribution<unsigned long> offset(0, 1'000'000'000);
    for (int k = 0; k < 10; ++k) {
      const BigInt t = x.threshold + offset(rng);
      CHECK(evaluate_expansion(y, t) == evaluate_expansion(x, t));
    }
    CHECK(io::expansion_to_json(y, io::sha256_hex("m")) == text);
  };
  check(fixtures::example(), false);
  check(fixtures::example(), true);
  check(fixtures::dense({{E, 1}, {E, E}}), false);
  TropicalMatrix third(1, 1);
  third.set(0, 0, Scalar(Rational(1, 3)));
  check(third, false);
}

TEST_CASE("JSON schema violations", "[io]") {
  const auto text = io::expansion_to_json(expand(fixtures::example()), "x", -1);
  CHECK_THROWS_AS(io::expansion_from_json("{"), io::ParseError);
  CHECK_THROWS_AS(io::expansion_from_json("{\"format\":\"other\"}"), io::ParseError);
  auto broken = text;
  broken.replace(broken.find("\"period\":2"), 10, "\"period\":3");
  CHECK_THROWS_AS(io::expansion_from_json(broken), io::ParseError);
  const auto doc = text.find("\"provenance\"");
  CHECK(doc != std::string::npos);
  CHECK(text.find("\"input_sha256\":\"x\"") != std::string::npos);
}

TEST_CASE("cli roots", "[cli]") {
  const auto r = run({"roots", fixtures::data_path("example.mpx")});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("8 (x2)\n7 (x1)\n6 (x1)\n4 (x1)\n3 (x3)\n0 (x1)\neps (x1)\nM0 = {} length 0 weight 0\n", 0) == 0);
  CHECK(r.out.find("M1 = {(1,2,1)} length 2 weight 16") != std::string::npos);
}

TEST_CASE("cli power", "[cli]") {
  CHECK(run({"power", fixtures::data_path("one.mpx"), "5"}).out == "1\n15\n");
  CHECK(run({"power", fixtures::data_path("one.mpx"), "100000000000000000000000"}).out == "1\n300000000000000000000000\n");
  const auto ex = fixtures::data_path("example.mpx");
  for (const char* t : {"200", "213", "5000", "987654321987654321"}) {
    const auto naive = run({"power", ex, t, "--naive"});
    const auto csr = run({"power", ex, t, "--csr"});
    CHECK(naive.code == 0);
    CHECK(naive.out == csr.out);
  }
  CHECK(run({"power", ex, "3"}).out == io::write_dense(matrix_power(fixtures::example(), std::size_t{3})));
  const auto below = run({"power", ex, "3", "--csr"});
  CHECK(below.err.find("below the threshold") != std::string::npos);
  CHECK(run({"power", ex, "-1"}).code == cli::kExitUsage);
  CHECK(run({"power", ex, "5", "--naive", "--csr"}).code == cli::kExitUsage);
}

TEST_CASE("cli verify", "[cli]") {
  const auto ex = fixtures::data_path("example.mpx");
  const auto r = run({"verify", ex, "--t-range", "200..220"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("match") != std::string::npos);
  CHECK(run({"verify", ex, "--seed", "4"}).code == cli::kExitOk);
  CHECK(run({"verify", ex, "--t-range", "220..200"}).code == cli::kExitUsage);
  CHECK(run({"verify", ex, "--t-range", "200"}).code == cli::kExitUsage);
}

TEST_CASE("cli expand, visualize, eigen", "[cli]") {
  const auto ex = fixtures::data_path("example.mpx");
  const auto e = run({"expand", ex});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("n 10, threshold 200, terms 3\n", 0) == 0);
  CHECK(e.out.find("term 3: rate 3, circuit (6,8,9,6), period 3") != std::string::npos);
  const auto red = run({"expand", ex, "--reduce"});
  CHECK(red.out.find("classes {1} {2}\n") != std::string::npos);
  const auto js = run({"expand", ex, "--json"});
  CHECK(io::expansion_from_json(js.out).terms.size() == 3);
  CHECK(js.out.find(io::sha256_hex(io::read_file(ex))) != std::string::npos);
  const auto v = run({"visualize", ex});
  CHECK(v.out.find("group 1: N = {1,2,3}, V = {1,2,3,4,5,6,7,8,9,10}, rate 8, circuit (1,2,1)") != std::string::npos);
  CHECK(v.out.find("group 3: N = {6,7,8,9,10}") != std::string::npos);
  const auto g = run({"eigen", ex});
  CHECK(g.out.find("lambda 8\ncritical nodes {1,2}\ncritical arcs (1,2) (2,1)\ncyclicity 2\n") == 0);
  CHECK(g.out.find("eigenvector 1 ") != std::string::npos);
}

TEST_CASE("cli errors", "[cli]") {
  const auto missing = run({"roots", "/nonexistent.mpx"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  const auto bad = run({"roots", fixtures::data_path("bad.mpx")});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("malformed matrix") != std::string::npos);
  CHECK(bad.err.find("line 3") != std::string::npos);
  const auto flag = run({"roots", "--frobnicate", fixtures::data_path("one.mpx")});
  CHECK(flag.code == cli::kExitUsage);
  CHECK_FALSE(flag.err.empty());
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"--version"}).out.find(MAXPLUS_VERSION) != std::string::npos);
  CHECK(run({"--help"}).code == cli::kExitOk);
}
