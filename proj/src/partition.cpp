#include "maxplus/partition.hpp"

#include <algorithm>

namespace maxplus {

std::vector<std::size_t> NodePartition::prefix(std::size_t s) const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t <= s && t < groups.size(); ++t) out.insert(out.end(), groups[t].begin(), groups[t].end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> NodePartition::suffix(std::size_t s) const {
  std::vector<std::size_t> out;
  for (std::size_t t = s; t < groups.size(); ++t) out.insert(out.end(), groups[t].begin(), groups[t].end());
  std::sort(out.begin(), out.end());
  return out;
}

NodePartition partition_nodes(const Mmcs& mmcs, std::size_t n) {
  if (mmcs.multicircuits.size() != mmcs.roots.size() + 1)
    throw std::invalid_argument("partition_nodes: MMCS needs one multi-circuit per root plus the empty one");
  NodePartition part;
  part.n = n;
  std::vector<char> in_u(n, 0);
  for (std::size_t k = 1; k < mmcs.multicircuits.size(); ++k) {
    std::vector<CircuitRecord> circuits = mmcs.multicircuits[k].circuits;
    std::sort(circuits.begin(), circuits.end(),
              [](const CircuitRecord& x, const CircuitRecord& y) { return x.nodes.front() < y.nodes.front(); });
    for (const auto& c : circuits) {
      for (std::size_t v : c.nodes)
        if (v >= n) throw std::invalid_argument("partition_nodes: circuit node out of range");
      const bool touches = std::any_of(c.nodes.begin(), c.nodes.end(), [&](std::size_t v) { return in_u[v] != 0; });
      if (touches) {
        for (std::size_t v : c.nodes)
          if (!in_u[v]) part.groups.back().push_back(v);
      } else {
        part.groups.emplace_back(c.nodes);
        part.quasi_critical.push_back(c);
        part.k_of.push_back(k);
        part.growth_rates.push_back(mmcs.roots[k - 1]);
      }
      for (std::size_t v : c.nodes) in_u[v] = 1;
    }
  }
  if (!part.groups.empty())
    for (std::size_t v = 0; v < n; ++v)
      if (!in_u[v]) part.groups.back().push_back(v);
  for (auto& g : part.groups) std::sort(g.begin(), g.end());
  return part;
}

}  // namespace maxplus
