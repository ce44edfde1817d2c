#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus {

/// Raised when an algorithm detects that one of its documented preconditions
/// does not hold at runtime.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// 𝒢(A): one arc per finite entry a_ij, weighted a_ij. Arcs are stored
/// structure-of-arrays and indexed by id; out/in adjacency lists hold ids.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  explicit WeightedDigraph(std::size_t node_count);

  void add_arc(std::size_t tail, std::size_t head, Rational weight);

  [[nodiscard]] std::size_t node_count() const { return out_.size(); }
  [[nodiscard]] std::size_t arc_count() const { return tails_.size(); }
  [[nodiscard]] std::size_t tail(std::size_t arc) const { return tails_[arc]; }
  [[nodiscard]] std::size_t head(std::size_t arc) const { return heads_[arc]; }
  [[nodiscard]] const Rational& weight(std::size_t arc) const { return weights_[arc]; }
  [[nodiscard]] std::span<const Rational> weights() const { return weights_; }
  [[nodiscard]] std::span<const std::size_t> out_arcs(std::size_t v) const { return out_[v]; }
  [[nodiscard]] std::span<const std::size_t> in_arcs(std::size_t v) const { return in_[v]; }
  [[nodiscard]] std::optional<std::size_t> find_arc(std::size_t tail, std::size_t head) const;

 private:
  std::vector<std::size_t> tails_;
  std::vector<std::size_t> heads_;
  std::vector<Rational> weights_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Elementary circuit, listed once without repeating the start node and
/// rotated so that the smallest node comes first.
struct CircuitRecord {
  std::vector<std::size_t> nodes;
  Rational weight;
  Rational mean;

  [[nodiscard]] std::size_t length() const { return nodes.size(); }
  friend bool operator==(const CircuitRecord&, const CircuitRecord&) = default;
};

/// Builds the record for the circuit visiting `nodes` in order in 𝒢(a).
/// Throws std::invalid_argument when a step is not an arc or a node repeats.
CircuitRecord make_circuit(const TropicalMatrix& a, std::vector<std::size_t> nodes);

struct CriticalGraph {
  std::vector<std::size_t> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  Rational lambda;
};

struct CyclicityClasses {
  std::size_t sigma = 1;
  std::vector<std::vector<std::size_t>> classes;
  /// Class id per node; nullopt for non-critical nodes.
  std::vector<std::optional<std::size_t>> class_of;
  /// Cyclicity of the critical component each class belongs to.
  std::vector<std::size_t> class_period;
};

WeightedDigraph build_graph(const TropicalMatrix& a);

/// Strongly connected components in reverse topological order (Tarjan).
/// Only arcs with keep[arc] set are used when `keep` is non-empty.
std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedDigraph& g,
                                                                   std::span<const char> keep = {});

/// Maximum circuit mean over all elementary circuits; ε for acyclic graphs.
/// Karp's recurrence, run per strongly connected component.
Scalar karp_max_cycle_mean(const WeightedDigraph& g);

/// p_i = heaviest path weight starting at i (empty path counts) under weights
/// w - shift. Afterwards -p_i + (w_ij - shift) + p_j <= 0 on every arc.
/// Throws PositiveCircuitError if some circuit has mean above `shift`.
std::vector<Rational> feasible_potential(const WeightedDigraph& g, const Rational& shift);

/// Throws std::invalid_argument when lambda is below the maximum cycle mean.
CriticalGraph critical_graph(const WeightedDigraph& g, const Rational& lambda);

/// Throws std::invalid_argument on an empty critical graph.
CyclicityClasses cyclicity_classes(const CriticalGraph& cg, std::size_t node_count);

struct Eigenvector {
  std::size_t node;
  std::vector<Scalar> vector;
};

/// Columns of ((-λ(A)) ⊗ A)* at critical nodes. Throws std::domain_error if λ(A) = ε.
std::vector<Eigenvector> principal_eigenvectors(const TropicalMatrix& a);

}  // namespace maxplus
