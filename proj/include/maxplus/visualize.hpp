#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "maxplus/digraph.hpp"
#include "maxplus/partition.hpp"

namespace maxplus {

/// Heaviest paths into one sink. weight[j] is ε for nodes that cannot reach
/// the sink; next_arc[j] is the first arc of a heaviest j-sink path.
struct SinkTree {
  std::size_t sink = 0;
  std::vector<std::size_t> reached;  // sorted
  std::vector<Scalar> weight;
  std::vector<std::optional<std::size_t>> next_arc;
};

/// Label-setting sweep on the reverse graph. Every arc not incident to the
/// sink must weigh at most 0, and no circuit through the sink may be
/// positive; either violation raises InvariantViolation.
SinkTree dijkstra_single_sink(const WeightedDigraph& g, std::size_t sink);
/// Same, with arc weights supplied separately (indexed by arc id).
SinkTree dijkstra_single_sink(const WeightedDigraph& g, std::span<const Rational> weights, std::size_t sink);

struct VisualizedGroup {
  std::vector<std::size_t> nodes;  // V_s, sorted
  Rational rate;
  TropicalMatrix matrix;      // A′_s over V_s, labelled with the original nodes
  DiagonalScaling potential;  // d_s over V_s
};

struct VisualizationResult {
  std::vector<VisualizedGroup> groups;   // index s, 0-based
  std::vector<std::size_t> insertion_order;
};

VisualizationResult visualize_all(const TropicalMatrix& a, const NodePartition& part);

}  // namespace maxplus
