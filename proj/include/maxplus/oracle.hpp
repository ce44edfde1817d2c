#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxplus/charpoly.hpp"
#include "maxplus/csr.hpp"

// Exhaustive reference implementations. They are slow on purpose and refuse
// inputs above a size guard instead of running for hours.
namespace maxplus::oracle {

inline constexpr std::size_t kMaxOracleSize = 10;

/// Thrown when an input exceeds an oracle's size guard.
class TooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Every elementary circuit, each listed once starting at its smallest node.
std::vector<CircuitRecord> enumerate_circuits(const TropicalMatrix& a);

/// Max over all permutations π of ⊗_i [A ⊕ λ⊗I]_{iπ(i)}.
Rational brute_chi(const TropicalMatrix& a, const Rational& lambda);

struct BruteMmc {
  std::size_t n = 0;
  /// best[k]: heaviest multi-circuit of total length k, if any.
  std::vector<std::optional<MultiCircuit>> best;
  /// Upper-envelope breakpoints of k ↦ best[k], descending, with slope jumps.
  std::vector<Rational> roots;
  std::vector<std::size_t> multiplicities;
  std::size_t epsilon_multiplicity = 0;
  /// Lengths of the multi-circuits at the envelope vertices (𝔐_0..𝔐_p).
  std::vector<std::size_t> vertex_lengths;
};

BruteMmc brute_mmc(const TropicalMatrix& a);

/// Max circuit mean by enumeration; ε when acyclic.
Scalar brute_max_cycle_mean(const TropicalMatrix& a);

/// (A^⊗ℓ)*: best weights of walks whose length is a multiple of ℓ.
TropicalMatrix brute_modular_closure(const TropicalMatrix& a, std::size_t ell);

struct Counterexample {
  std::size_t row = 0;
  std::size_t col = 0;
  BigInt t;
  Scalar expected;
  Scalar got;
};

struct OracleReport {
  std::string stage;
  std::string instance;
  std::optional<std::uint64_t> seed;
  bool match = true;
  std::optional<Counterexample> counterexample;

  [[nodiscard]] std::string summary() const;
};

/// Compares evaluate_expansion with repeated multiplication for t in
/// [t_first, t_last]; stops at the first differing entry.
OracleReport brute_power_check(const TropicalMatrix& a, const CsrExpansion& x, const BigInt& t_first,
                               const BigInt& t_last, std::string instance = {},
                               std::optional<std::uint64_t> seed = std::nullopt);

/// Square matrix whose entries are finite with probability `density` and
/// then uniform integers in [lo, hi].
TropicalMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double density, int lo, int hi);

}  // namespace maxplus::oracle
