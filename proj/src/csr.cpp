#include "maxplus/csr.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace maxplus {

ExtendedGraph::ExtendedGraph(const TropicalMatrix& visualized, std::size_t layers) : a_(&visualized), layers_(layers) {
  if (!visualized.is_square()) throw DimensionError("ExtendedGraph: matrix must be square");
  if (layers == 0) throw std::invalid_argument("ExtendedGraph: at least one layer");
}

std::vector<std::optional<Rational>> ExtendedGraph::heaviest_from(std::size_t source) const {
  const std::size_t nb = base_nodes();
  if (source >= nb) throw std::out_of_range("heaviest_from: source out of range");
  std::vector<std::optional<Rational>> dist(node_count());
  std::vector<char> settled(node_count(), 0);
  using Item = std::pair<Rational, std::size_t>;
  auto lower = [](const Item& x, const Item& y) { return x.first < y.first || (x.first == y.first && x.second > y.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(lower)> heap(lower);
  dist[id(source, 0)] = Rational(0);
  heap.emplace(Rational(0), id(source, 0));
  while (!heap.empty()) {
    auto [w, u] = heap.top();
    heap.pop();
    if (settled[u] || *dist[u] != w) continue;
    settled[u] = 1;
    const std::size_t node = u % nb;
    const std::size_t next_layer = (u / nb + 1) % layers_;
    for (const auto& e : a_->row(node)) {
      if (e.value.sign() > 0) throw InvariantViolation("ExtendedGraph: positive arc in a visualized matrix");
      const std::size_t v = id(e.col, next_layer);
      if (settled[v]) continue;
      Rational cand = w + e.value;
      if (!dist[v] || *dist[v] < cand) {
        dist[v] = cand;
        heap.emplace(std::move(cand), v);
      }
    }
  }
  return dist;
}

TropicalMatrix build_s(std::size_t length) {
  if (length == 0) throw std::invalid_argument("build_s: empty circuit");
  TropicalMatrix s(length, length);
  for (std::size_t k = 0; k < length; ++k) s.set(k, (k + 1) % length, Scalar::unit());
  return s;
}

TropicalMatrix build_s(const CircuitRecord& circuit) { return build_s(circuit.length()); }

namespace {

std::size_t local_index(const VisualizedGroup& group, std::size_t node) {
  auto it = std::lower_bound(group.nodes.begin(), group.nodes.end(), node);
  if (it == group.nodes.end() || *it != node)
    throw std::invalid_argument("node " + std::to_string(node + 1) + " is not in the group");
  return static_cast<std::size_t>(it - group.nodes.begin());
}

// C and R from walks through `source` whose lengths are taken modulo `layers`.
std::pair<TropicalMatrix, TropicalMatrix> cr_from_source(const VisualizedGroup& group, std::size_t source,
                                                         std::size_t layers, std::size_t n) {
  const std::size_t nb = group.nodes.size();
  const auto& d = group.potential.d;
  const auto forward = ExtendedGraph(group.matrix, layers).heaviest_from(source);
  const TropicalMatrix reversed = group.matrix.transpose();
  const auto backward = ExtendedGraph(reversed, layers).heaviest_from(source);

  TropicalMatrix c(n, layers), r(layers, n);
  for (std::size_t k = 0; k < layers; ++k) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (const auto& x = forward[k * nb + j]) r.set(k, group.nodes[j], Scalar(*x - d[j]));
      if (const auto& y = backward[((layers - k) % layers) * nb + j]) c.set(group.nodes[j], k, Scalar(*y + d[j]));
    }
  }
  return {std::move(c), std::move(r)};
}

}  // namespace

std::pair<TropicalMatrix, TropicalMatrix> compute_cr_pair(const VisualizedGroup& group, const CircuitRecord& circuit,
                                                          std::size_t n) {
  if (group.potential.d.size() != group.nodes.size() || group.matrix.rows() != group.nodes.size())
    throw DimensionError("compute_cr_pair: group matrix, potential and node list disagree");
  const std::size_t len = circuit.length();
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t u = local_index(group, circuit.nodes[k]);
    const std::size_t v = local_index(group, circuit.nodes[(k + 1) % len]);
    const Rational* w = group.matrix.find(u, v);
    if (!w || w->sign() != 0)
      throw InvariantViolation("compute_cr_pair: circuit arc (" + std::to_string(circuit.nodes[k] + 1) + "," +
                               std::to_string(circuit.nodes[(k + 1) % len] + 1) + ") is not 0 after visualization");
  }
  return cr_from_source(group, local_index(group, circuit.nodes.front()), len, n);
}

CsrTerm reduce_term(const CsrTerm& term, const VisualizedGroup& group) {
  const std::size_t n = term.c_factor.rows();
  const std::size_t source = local_index(group, term.circuit.nodes.front());
  const CriticalGraph cg = critical_graph(build_graph(group.matrix), Rational(0));
  const CyclicityClasses cc = cyclicity_classes(cg, group.nodes.size());
  const auto own = cc.class_of[source];
  if (!own) throw InvariantViolation("reduce_term: circuit is not critical in the visualized matrix");

  // Classes of one component occupy consecutive ids.
  std::size_t first = 0;
  while (first + cc.class_period[first] <= *own) first += cc.class_period[first];
  const std::size_t sigma = cc.class_period[first];

  CsrTerm out;
  out.group = term.group;
  out.rate = term.rate;
  out.circuit = term.circuit;
  std::tie(out.c_factor, out.r_factor) = cr_from_source(group, source, sigma, n);
  out.s_factor = build_s(sigma);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < sigma; ++k) {
    std::vector<std::size_t> members;
    for (std::size_t v : cc.classes[first + (*own - first + k) % sigma]) members.push_back(group.nodes[v]);
    classes.push_back(std::move(members));
  }
  out.classes = std::move(classes);
  return out;
}

ExpansionPipeline expand_with_artifacts(const TropicalMatrix& a, bool reduce) {
  if (!a.is_square()) throw DimensionError("expand: matrix must be square");
  const std::size_t n = a.rows();
  ExpansionPipeline p;
  p.mmcs = characteristic_roots(a);
  p.partition = partition_nodes(p.mmcs, n);
  p.visualization = visualize_all(a, p.partition);
  p.expansion.n = n;
  p.expansion.threshold = BigInt(static_cast<unsigned long>(2 * n * n));
  for (std::size_t s = 0; s < p.partition.r(); ++s) {
    CsrTerm term;
    term.group = s;
    term.rate = p.partition.growth_rates[s];
    term.circuit = p.partition.quasi_critical[s];
    std::tie(term.c_factor, term.r_factor) = compute_cr_pair(p.visualization.groups[s], term.circuit, n);
    term.s_factor = build_s(term.circuit);
    if (reduce) term = reduce_term(term, p.visualization.groups[s]);
    p.expansion.terms.push_back(std::move(term));
  }
  if (p.expansion.terms.empty()) p.expansion.source = a;
  return p;
}

CsrExpansion expand(const TropicalMatrix& a, bool reduce) { return expand_with_artifacts(a, reduce).expansion; }

namespace {

// C ⊗ S^q ⊗ R with S the cyclic shift: row k of R moves to position k - q.
TropicalMatrix term_product(const CsrTerm& term, std::size_t q) {
  const std::size_t len = term.period();
  TropicalMatrix rotated(len, term.r_factor.cols());
  for (std::size_t k = 0; k < len; ++k)
    for (const auto& e : term.r_factor.row((k + q) % len)) rotated.set(k, e.col, Scalar(e.value));
  return matrix_mul(term.c_factor, rotated);
}

}  // namespace

TropicalMatrix evaluate_expansion(const CsrExpansion& x, const BigInt& t) {
  if (t < 0) throw std::invalid_argument("evaluate_expansion: negative exponent");
  const std::size_t n = x.n;
  if (x.terms.empty()) {
    if (t >= static_cast<unsigned long>(n)) return TropicalMatrix(n, n);
    if (!x.source) throw std::logic_error("evaluate_expansion: small power of an acyclic matrix needs the source");
    return matrix_power(*x.source, t);
  }

  // Terms sharing a growth rate are merged before the large shift t·λ is added.
  std::vector<Rational> shifts;
  std::vector<TropicalMatrix> merged;
  const Rational tr(t);
  for (std::size_t s = 0; s < x.terms.size(); ++s) {
    const CsrTerm& term = x.terms[s];
    if (term.c_factor.rows() != n || term.r_factor.cols() != n)
      throw DimensionError("evaluate_expansion: term " + std::to_string(s + 1) + " has the wrong size");
    const BigInt q_big = t % BigInt(static_cast<unsigned long>(term.period()));
    TropicalMatrix product = term_product(term, q_big.get_ui());
    if (s > 0 && term.rate == x.terms[s - 1].rate) {
      merged.back() = matrix_add(merged.back(), product);
    } else {
      shifts.push_back(tr * term.rate);
      merged.push_back(std::move(product));
    }
  }
  if (merged.size() == 1) return scale(Scalar(shifts.front()), merged.front());

  TropicalMatrix out(n, n);
  std::vector<std::optional<Rational>> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < merged.size(); ++g) {
      for (const auto& e : merged[g].row(i)) {
        Rational v = shifts[g] + e.value;
        auto& slot = row[e.col];
        if (!slot || *slot < v) slot = std::move(v);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j]) continue;
      out.set(i, j, Scalar(std::move(*row[j])));
      row[j].reset();
    }
  }
  return out;
}

}  // namespace maxplus
