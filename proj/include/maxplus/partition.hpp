#pragma once

#include <cstddef>
#include <vector>

#include "maxplus/charpoly.hpp"

namespace maxplus {

/// Groups N_1..N_r of the node set with the circuit that opened each group.
/// Index s below is 0-based; k_of holds the 1-based root index k(s).
struct NodePartition {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<CircuitRecord> quasi_critical;
  std::vector<std::size_t> k_of;
  std::vector<Rational> growth_rates;

  [[nodiscard]] std::size_t r() const { return groups.size(); }
  friend bool operator==(const NodePartition&, const NodePartition&) = default;
  /// U_s = N_1 ∪ ... ∪ N_s, sorted.
  [[nodiscard]] std::vector<std::size_t> prefix(std::size_t s) const;
  /// V_s = N \ U_{s-1}, sorted.
  [[nodiscard]] std::vector<std::size_t> suffix(std::size_t s) const;
};

/// Circuits inside each 𝔐_k are taken in ascending order of their smallest
/// node. An MMCS without roots gives r = 0.
NodePartition partition_nodes(const Mmcs& mmcs, std::size_t n);

}  // namespace maxplus
