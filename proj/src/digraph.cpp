#include "maxplus/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace maxplus {

WeightedDigraph::WeightedDigraph(std::size_t node_count) : out_(node_count), in_(node_count) {}

void WeightedDigraph::add_arc(std::size_t tail, std::size_t head, Rational weight) {
  if (tail >= node_count() || head >= node_count()) throw std::out_of_range("add_arc: node out of range");
  const std::size_t id = tails_.size();
  tails_.push_back(tail);
  heads_.push_back(head);
  weights_.push_back(std::move(weight));
  out_[tail].push_back(id);
  in_[head].push_back(id);
}

std::optional<std::size_t> WeightedDigraph::find_arc(std::size_t tail, std::size_t head) const {
  for (std::size_t id : out_.at(tail))
    if (heads_[id] == head) return id;
  return std::nullopt;
}

CircuitRecord make_circuit(const TropicalMatrix& a, std::vector<std::size_t> nodes) {
  if (nodes.empty()) throw std::invalid_argument("make_circuit: empty node list");
  std::vector<std::size_t> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("make_circuit: circuit is not elementary");
  Rational weight;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::size_t u = nodes[k], v = nodes[(k + 1) % nodes.size()];
    const Rational* w = a.find(u, v);
    if (!w)
      throw std::invalid_argument("make_circuit: (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                                  ") is not an arc");
    weight += *w;
  }
  std::rotate(nodes.begin(), std::min_element(nodes.begin(), nodes.end()), nodes.end());
  const auto len = static_cast<std::int64_t>(nodes.size());
  CircuitRecord c{std::move(nodes), weight, weight / Rational(len)};
  return c;
}

WeightedDigraph build_graph(const TropicalMatrix& a) {
  if (!a.is_square()) throw DimensionError("build_graph: matrix must be square");
  WeightedDigraph g(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& e : a.row(i)) g.add_arc(i, e.col, e.value);
  return g;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedDigraph& g,
                                                                   std::span<const char> keep) {
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnvisited = SIZE_MAX;
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  // Iterative Tarjan: frames hold (node, next out-arc position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto arcs = g.out_arcs(v);
      if (pos < arcs.size()) {
        const std::size_t arc = arcs[pos++];
        if (!keep.empty() && !keep[arc]) continue;
        const std::size_t w = g.head(arc);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

namespace {

bool has_circuit(const WeightedDigraph& g, const std::vector<std::size_t>& comp, std::span<const char> keep = {}) {
  if (comp.size() > 1) return true;
  for (std::size_t arc : g.out_arcs(comp.front()))
    if (g.head(arc) == comp.front() && (keep.empty() || keep[arc])) return true;
  return false;
}

}  // namespace

Scalar karp_max_cycle_mean(const WeightedDigraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> local(n, SIZE_MAX);
  Scalar best;
  for (const auto& comp : strongly_connected_components(g)) {
    if (!has_circuit(g, comp)) continue;
    const std::size_t s = comp.size();
    for (std::size_t k = 0; k < s; ++k) local[comp[k]] = k;
    // walk[k][v]: heaviest walk of exactly k arcs from comp[0] to comp[v] inside the component.
    std::vector<std::vector<std::optional<Rational>>> walk(s + 1, std::vector<std::optional<Rational>>(s));
    walk[0][0] = Rational(0);
    for (std::size_t k = 1; k <= s; ++k) {
      for (std::size_t v = 0; v < s; ++v) {
        auto& slot = walk[k][v];
        for (std::size_t arc : g.in_arcs(comp[v])) {
          const std::size_t u = local[g.tail(arc)];
          if (u == SIZE_MAX || !walk[k - 1][u]) continue;
          Rational cand = *walk[k - 1][u] + g.weight(arc);
          if (!slot || *slot < cand) slot = std::move(cand);
        }
      }
    }
    Scalar comp_best;
    for (std::size_t v = 0; v < s; ++v) {
      if (!walk[s][v]) continue;
      std::optional<Rational> worst;
      for (std::size_t k = 0; k < s; ++k) {
        if (!walk[k][v]) continue;
        Rational ratio = (*walk[s][v] - *walk[k][v]) / Rational(static_cast<std::int64_t>(s - k));
        if (!worst || ratio < *worst) worst = std::move(ratio);
      }
      if (worst) comp_best += Scalar(*worst);
    }
    best += comp_best;
    for (std::size_t v : comp) local[v] = SIZE_MAX;
  }
  return best;
}

std::vector<Rational> feasible_potential(const WeightedDigraph& g, const Rational& shift) {
  const std::size_t n = g.node_count();
  std::vector<Rational> p(n, Rational(0));
  std::vector<Rational> shifted(g.arc_count());
  for (std::size_t arc = 0; arc < g.arc_count(); ++arc) shifted[arc] = g.weight(arc) - shift;
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (std::size_t arc = 0; arc < g.arc_count(); ++arc) {
      Rational cand = shifted[arc] + p[g.head(arc)];
      if (p[g.tail(arc)] < cand) {
        p[g.tail(arc)] = std::move(cand);
        changed = true;
      }
    }
    if (!changed) return p;
  }
  throw PositiveCircuitError("circuit with mean above " + shift.to_string());
}

CriticalGraph critical_graph(const WeightedDigraph& g, const Rational& lambda) {
  std::vector<Rational> p;
  try {
    p = feasible_potential(g, lambda);
  } catch (const PositiveCircuitError&) {
    throw std::invalid_argument("critical_graph: " + lambda.to_string() + " is below the maximum cycle mean");
  }
  std::vector<char> tight(g.arc_count(), 0);
  for (std::size_t arc = 0; arc < g.arc_count(); ++arc)
    tight[arc] = (-p[g.tail(arc)] + (g.weight(arc) - lambda) + p[g.head(arc)]).sign() == 0;
  CriticalGraph cg;
  cg.lambda = lambda;
  std::vector<std::size_t> comp_of(g.node_count(), SIZE_MAX);
  const auto comps = strongly_connected_components(g, tight);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!has_circuit(g, comps[c], tight)) continue;
    for (std::size_t v : comps[c]) comp_of[v] = c;
    cg.nodes.insert(cg.nodes.end(), comps[c].begin(), comps[c].end());
  }
  std::sort(cg.nodes.begin(), cg.nodes.end());
  for (std::size_t arc = 0; arc < g.arc_count(); ++arc) {
    const std::size_t u = g.tail(arc), v = g.head(arc);
    if (tight[arc] && comp_of[u] != SIZE_MAX && comp_of[u] == comp_of[v]) cg.arcs.emplace_back(u, v);
  }
  std::sort(cg.arcs.begin(), cg.arcs.end());
  return cg;
}

CyclicityClasses cyclicity_classes(const CriticalGraph& cg, std::size_t node_count) {
  if (cg.nodes.empty()) throw std::invalid_argument("cyclicity_classes: empty critical graph");
  WeightedDigraph crit(node_count);
  for (const auto& [u, v] : cg.arcs) crit.add_arc(u, v, Rational(0));

  CyclicityClasses out;
  out.class_of.assign(node_count, std::nullopt);
  std::vector<char> critical(node_count, 0);
  for (std::size_t v : cg.nodes) critical[v] = 1;

  auto comps = strongly_connected_components(crit);
  std::erase_if(comps, [&](const auto& c) { return !critical[c.front()]; });
  std::sort(comps.begin(), comps.end());

  std::vector<std::size_t> comp_of(node_count, SIZE_MAX);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t v : comps[c]) comp_of[v] = c;

  std::vector<std::size_t> level(node_count, SIZE_MAX);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    std::queue<std::size_t> frontier;
    level[comp.front()] = 0;
    frontier.push(comp.front());
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t arc : crit.out_arcs(u)) {
        const std::size_t v = crit.head(arc);
        if (comp_of[v] != c || level[v] != SIZE_MAX) continue;
        level[v] = level[u] + 1;
        frontier.push(v);
      }
    }
    std::size_t period = 0;
    for (std::size_t u : comp) {
      for (std::size_t arc : crit.out_arcs(u)) {
        const std::size_t v = crit.head(arc);
        if (comp_of[v] != c) continue;
        const auto diff = static_cast<std::int64_t>(level[u] + 1) - static_cast<std::int64_t>(level[v]);
        period = std::gcd(period, static_cast<std::size_t>(diff < 0 ? -diff : diff));
      }
    }
    if (period == 0) throw InvariantViolation("cyclicity_classes: critical component without a circuit");
    const std::size_t first = out.classes.size();
    for (std::size_t r = 0; r < period; ++r) {
      out.classes.emplace_back();
      out.class_period.push_back(period);
    }
    for (std::size_t v : comp) {
      out.classes[first + level[v] % period].push_back(v);
      out.class_of[v] = first + level[v] % period;
    }
    out.sigma = std::lcm(out.sigma, period);
  }
  return out;
}

std::vector<Eigenvector> principal_eigenvectors(const TropicalMatrix& a) {
  const WeightedDigraph g = build_graph(a);
  const Scalar lambda = karp_max_cycle_mean(g);
  if (lambda.is_epsilon()) throw std::domain_error("principal_eigenvectors: no finite eigenvalue (acyclic graph)");
  const TropicalMatrix star = kleene_star(scale(Scalar(-lambda.value()), a));
  const CriticalGraph cg = critical_graph(g, lambda.value());
  std::vector<Eigenvector> out;
  for (std::size_t k : cg.nodes) {
    Eigenvector ev{k, std::vector<Scalar>(a.rows())};
    for (std::size_t i = 0; i < a.rows(); ++i) ev.vector[i] = star.at(i, k);
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace maxplus
