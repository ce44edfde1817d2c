#include "maxplus/visualize.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace maxplus {

SinkTree dijkstra_single_sink(const WeightedDigraph& g, std::size_t sink) {
  return dijkstra_single_sink(g, g.weights(), sink);
}

SinkTree dijkstra_single_sink(const WeightedDigraph& g, std::span<const Rational> weights, std::size_t sink) {
  const std::size_t n = g.node_count();
  if (sink >= n) throw std::out_of_range("dijkstra_single_sink: sink out of range");
  if (weights.size() != g.arc_count()) throw DimensionError("dijkstra_single_sink: one weight per arc expected");

  SinkTree tree;
  tree.sink = sink;
  tree.weight.assign(n, Scalar::epsilon());
  tree.next_arc.assign(n, std::nullopt);
  std::vector<std::optional<Rational>> label(n);
  std::vector<char> settled(n, 0);

  using Item = std::pair<Rational, std::size_t>;
  auto lower = [](const Item& x, const Item& y) { return x.first < y.first || (x.first == y.first && x.second > y.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(lower)> heap(lower);
  label[sink] = Rational(0);
  heap.emplace(Rational(0), sink);
  while (!heap.empty()) {
    auto [w, y] = heap.top();
    heap.pop();
    if (settled[y] || *label[y] != w) continue;
    settled[y] = 1;
    for (std::size_t arc : g.in_arcs(y)) {
      const std::size_t x = g.tail(arc);
      const Rational& b = weights[arc];
      if (x != sink && y != sink && b.sign() > 0)
        throw InvariantViolation("dijkstra_single_sink: positive arc (" + std::to_string(x + 1) + "," +
                                 std::to_string(y + 1) + ") away from the sink");
      Rational cand = b + w;
      if (x == sink) {
        if (cand.sign() > 0) throw InvariantViolation("dijkstra_single_sink: positive circuit through the sink");
        continue;
      }
      if (settled[x]) {
        if (*label[x] < cand) throw InvariantViolation("dijkstra_single_sink: label improved after settling");
        continue;
      }
      if (!label[x] || *label[x] < cand) {
        label[x] = cand;
        tree.next_arc[x] = arc;
        heap.emplace(std::move(cand), x);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!settled[v]) continue;
    tree.reached.push_back(v);
    tree.weight[v] = Scalar(*label[v]);
  }
  return tree;
}

VisualizationResult visualize_all(const TropicalMatrix& a, const NodePartition& part) {
  if (!a.is_square()) throw DimensionError("visualize_all: matrix must be square");
  if (part.n != a.rows()) throw DimensionError("visualize_all: partition and matrix sizes differ");
  const std::size_t n = a.rows();
  const std::size_t r = part.r();
  VisualizationResult out;
  out.groups.resize(r);
  if (r == 0) return out;

  const TropicalMatrix at = a.transpose();
  WeightedDigraph g(n);
  std::vector<Rational> b;
  std::vector<Rational> d(n);
  std::vector<char> active(n, 0);
  std::vector<std::size_t> active_nodes;
  std::vector<Rational> w(n);

  for (std::size_t s = r; s-- > 0;) {
    const Rational& lambda = part.growth_rates[s];
    if (s + 1 < r) {
      const Rational shift = part.growth_rates[s + 1] - lambda;
      for (auto& x : b) x += shift;
    }
    std::vector<std::size_t> order = part.groups[s];
    std::sort(order.rbegin(), order.rend());
    for (std::size_t i : order) {
      for (const auto& e : a.row(i)) {
        if (e.col == i) {
          g.add_arc(i, i, -lambda + e.value);
          b.push_back(-lambda + e.value);
        } else if (active[e.col]) {
          g.add_arc(i, e.col, -lambda + e.value + d[e.col]);
          b.push_back(-lambda + e.value + d[e.col]);
        }
      }
      for (const auto& e : at.row(i)) {
        if (e.col == i || !active[e.col]) continue;
        g.add_arc(e.col, i, -d[e.col] - lambda + e.value);
        b.push_back(-d[e.col] - lambda + e.value);
      }
      active[i] = 1;
      active_nodes.push_back(i);
      out.insertion_order.push_back(i);

      const SinkTree tree = dijkstra_single_sink(g, b, i);
      std::vector<char> in_r(n, 0);
      for (std::size_t v : tree.reached) {
        in_r[v] = 1;
        w[v] = tree.weight[v].value();
      }
      Rational worst(0);
      for (std::size_t arc = 0; arc < g.arc_count(); ++arc) {
        const std::size_t x = g.tail(arc), y = g.head(arc);
        if (in_r[x] && !in_r[y]) worst = std::max(worst, -w[x] + b[arc]);
      }
      const Rational w_star = -worst;
      for (std::size_t v : active_nodes)
        if (!in_r[v]) w[v] = w_star;
      for (std::size_t arc = 0; arc < g.arc_count(); ++arc) {
        const std::size_t x = g.tail(arc), y = g.head(arc);
        if (in_r[x]) b[arc] = -w[x] + b[arc] + w[y];
      }
      for (std::size_t v : active_nodes) d[v] += w[v];
    }

    VisualizedGroup& vg = out.groups[s];
    vg.nodes = active_nodes;
    std::sort(vg.nodes.begin(), vg.nodes.end());
    vg.rate = lambda;
    std::vector<std::size_t> local(n, SIZE_MAX);
    for (std::size_t k = 0; k < vg.nodes.size(); ++k) {
      local[vg.nodes[k]] = k;
      vg.potential.d.push_back(d[vg.nodes[k]]);
    }
    vg.matrix = TropicalMatrix(vg.nodes.size(), vg.nodes.size());
    for (std::size_t arc = 0; arc < g.arc_count(); ++arc) {
      if (b[arc].sign() > 0) throw InvariantViolation("visualize_all: positive entry left after phase");
      vg.matrix.set(local[g.tail(arc)], local[g.head(arc)], Scalar(b[arc]));
    }
    vg.matrix.set_labels(vg.nodes, vg.nodes);
  }
  return out;
}

}  // namespace maxplus
