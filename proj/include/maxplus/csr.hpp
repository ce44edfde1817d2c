#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "maxplus/charpoly.hpp"
#include "maxplus/partition.hpp"
#include "maxplus/visualize.hpp"

namespace maxplus {

/// ℓ stacked copies of a visualized graph; arc (i,j) becomes
/// ((i,k),(j,k+1 mod ℓ)). Arcs are generated on the fly, never stored.
class ExtendedGraph {
 public:
  ExtendedGraph(const TropicalMatrix& visualized, std::size_t layers);

  [[nodiscard]] std::size_t base_nodes() const { return a_->rows(); }
  [[nodiscard]] std::size_t layers() const { return layers_; }
  [[nodiscard]] std::size_t node_count() const { return base_nodes() * layers_; }
  [[nodiscard]] std::size_t arc_count() const { return layers_ * a_->finite_count(); }
  [[nodiscard]] std::size_t id(std::size_t node, std::size_t layer) const { return layer * base_nodes() + node; }

  /// Heaviest walk weight from (source, 0) to every (j, k); nullopt when
  /// unreachable. Indexed by id(j, k).
  [[nodiscard]] std::vector<std::optional<Rational>> heaviest_from(std::size_t source) const;

 private:
  const TropicalMatrix* a_;
  std::size_t layers_;
};

struct CsrTerm {
  std::size_t group = 0;
  Rational rate;
  CircuitRecord circuit;  // in original node indices
  TropicalMatrix c_factor;  // n × ℓ
  TropicalMatrix s_factor;  // ℓ × ℓ
  TropicalMatrix r_factor;  // ℓ × n
  /// Set by reduce_term: column k of C and row k of R stand for a cyclicity
  /// class instead of the k-th circuit node.
  std::optional<std::vector<std::vector<std::size_t>>> classes;

  [[nodiscard]] std::size_t period() const { return s_factor.rows(); }
};

struct CsrExpansion {
  std::size_t n = 0;
  std::vector<CsrTerm> terms;
  BigInt threshold = 0;
  /// Kept for acyclic input, where small powers are not given by the terms.
  std::optional<TropicalMatrix> source;
};

/// 0 at (k, k+1 mod ℓ).
TropicalMatrix build_s(std::size_t length);
TropicalMatrix build_s(const CircuitRecord& circuit);

/// C (n × ℓ) and R (ℓ × n) for one group, in original coordinates, with ε
/// outside V_s. `group` holds A′_s and d_s; `circuit` uses original indices.
std::pair<TropicalMatrix, TropicalMatrix> compute_cr_pair(const VisualizedGroup& group, const CircuitRecord& circuit,
                                                          std::size_t n);

/// Replaces the circuit by the cyclicity classes of the critical component of
/// A′_s that contains it.
CsrTerm reduce_term(const CsrTerm& term, const VisualizedGroup& group);

struct ExpansionPipeline {
  Mmcs mmcs;
  NodePartition partition;
  VisualizationResult visualization;
  CsrExpansion expansion;
};

ExpansionPipeline expand_with_artifacts(const TropicalMatrix& a, bool reduce = false);
CsrExpansion expand(const TropicalMatrix& a, bool reduce = false);

/// ⊕_s (t·λ_s) ⊗ C_s ⊗ S_s^(t mod ℓ_s) ⊗ R_s. Equals A^⊗t for t ≥ threshold.
TropicalMatrix evaluate_expansion(const CsrExpansion& x, const BigInt& t);

}  // namespace maxplus
