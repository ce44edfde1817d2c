#pragma once

#include <cstddef>
#include <vector>

#include "maxplus/digraph.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

/// Node-disjoint elementary circuits, ordered by smallest node.
struct MultiCircuit {
  std::vector<CircuitRecord> circuits;
  std::size_t total_length = 0;
  Rational total_weight;

  [[nodiscard]] std::vector<std::size_t> nodes() const;
  friend bool operator==(const MultiCircuit&, const MultiCircuit&) = default;
};

MultiCircuit make_multicircuit(std::vector<CircuitRecord> circuits);

/// χ_A(λ) together with the shortest and longest λ-maximal multi-circuits.
struct ChiEvaluation {
  Rational lambda;
  Rational value;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  MultiCircuit min_witness;
  MultiCircuit max_witness;
};

struct Mmcs {
  std::size_t n = 0;
  std::vector<Rational> roots;              // strictly descending
  std::vector<std::size_t> multiplicities;  // per root
  std::size_t epsilon_multiplicity = 0;
  std::vector<MultiCircuit> multicircuits;  // 𝔐_0 .. 𝔐_p

  [[nodiscard]] std::size_t p() const { return roots.size(); }
};

ChiEvaluation chi_eval(const TropicalMatrix& a, const Rational& lambda);

/// Breakpoints of λ ↦ χ_A(λ) by recursive supporting-line intersection.
Mmcs characteristic_roots(const TropicalMatrix& a);

/// 𝔐_0..𝔐_p for the given finite roots. Throws std::invalid_argument when a
/// value is not a root or a witness fails to attain χ_A on its interval.
std::vector<MultiCircuit> extract_mmcs(const TropicalMatrix& a, const std::vector<Rational>& roots);

}  // namespace maxplus
