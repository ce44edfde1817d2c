#include "maxplus/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace maxplus::oracle {
namespace {

void guard(const TropicalMatrix& a, const char* who) {
  if (!a.is_square()) throw DimensionError(std::string(who) + ": matrix must be square");
  if (a.rows() > kMaxOracleSize)
    throw TooLarge(std::string(who) + ": n = " + std::to_string(a.rows()) + " exceeds the oracle limit " +
                   std::to_string(kMaxOracleSize));
}

}  // namespace

std::vector<CircuitRecord> enumerate_circuits(const TropicalMatrix& a) {
  guard(a, "enumerate_circuits");
  const std::size_t n = a.rows();
  std::vector<CircuitRecord> out;
  std::vector<std::size_t> path;
  std::vector<char> on_path(n, 0);
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t start, std::size_t v) {
    for (const auto& e : a.row(v)) {
      if (e.col == start) {
        out.push_back(make_circuit(a, path));
      } else if (e.col > start && !on_path[e.col]) {
        on_path[e.col] = 1;
        path.push_back(e.col);
        walk(start, e.col);
        path.pop_back();
        on_path[e.col] = 0;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = 1;
    walk(s, s);
    on_path[s] = 0;
  }
  return out;
}

Rational brute_chi(const TropicalMatrix& a, const Rational& lambda) {
  guard(a, "brute_chi");
  const std::size_t n = a.rows();
  std::vector<char> used(n, 0);
  std::optional<Rational> best;
  std::function<void(std::size_t, const Rational&)> assign = [&](std::size_t i, const Rational& acc) {
    if (i == n) {
      if (!best || *best < acc) best = acc;
      return;
    }
    if (!used[i]) {
      const Rational* aii = a.find(i, i);
      used[i] = 1;
      assign(i + 1, acc + (aii && lambda < *aii ? *aii : lambda));
      used[i] = 0;
    }
    for (const auto& e : a.row(i)) {
      if (e.col == i || used[e.col]) continue;
      used[e.col] = 1;
      assign(i + 1, acc + e.value);
      used[e.col] = 0;
    }
  };
  assign(0, Rational(0));
  return *best;
}

BruteMmc brute_mmc(const TropicalMatrix& a) {
  guard(a, "brute_mmc");
  const std::size_t n = a.rows();
  const std::size_t full = std::size_t{1} << n;

  // Heaviest circuit on each exact node set, then heaviest disjoint family.
  std::vector<std::optional<CircuitRecord>> on_set(full);
  for (auto& c : enumerate_circuits(a)) {
    std::size_t mask = 0;
    for (std::size_t v : c.nodes) mask |= std::size_t{1} << v;
    if (!on_set[mask] || on_set[mask]->weight < c.weight) on_set[mask] = std::move(c);
  }
  std::vector<std::optional<Rational>> family(full);
  std::vector<std::size_t> last_piece(full, 0);
  family[0] = Rational(0);
  for (std::size_t mask = 1; mask < full; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    for (std::size_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low) || !on_set[sub] || !family[mask ^ sub]) continue;
      Rational w = *family[mask ^ sub] + on_set[sub]->weight;
      if (!family[mask] || *family[mask] < w) {
        family[mask] = std::move(w);
        last_piece[mask] = sub;
      }
    }
  }

  BruteMmc out;
  out.n = n;
  out.best.resize(n + 1);
  std::vector<std::size_t> best_mask(n + 1, 0);
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!family[mask]) continue;
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (!out.best[k] || out.best[k]->total_weight < *family[mask]) {
      std::vector<CircuitRecord> pieces;
      for (std::size_t m = mask; m; m ^= last_piece[m]) pieces.push_back(*on_set[last_piece[m]]);
      out.best[k] = make_multicircuit(std::move(pieces));
      best_mask[k] = mask;
    }
  }

  // Upper concave hull of the points (k, best weight).
  std::vector<std::size_t> hull;
  auto weight = [&](std::size_t k) -> const Rational& { return out.best[k]->total_weight; };
  for (std::size_t k = 0; k <= n; ++k) {
    if (!out.best[k]) continue;
    while (hull.size() >= 2) {
      const std::size_t k1 = hull[hull.size() - 2], k2 = hull.back();
      const Rational lhs = (weight(k2) - weight(k1)) * Rational(static_cast<std::int64_t>(k - k1));
      const Rational rhs = (weight(k) - weight(k1)) * Rational(static_cast<std::int64_t>(k2 - k1));
      if (lhs <= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  out.vertex_lengths = hull;
  for (std::size_t h = 1; h < hull.size(); ++h) {
    const std::size_t gap = hull[h] - hull[h - 1];
    out.roots.push_back((weight(hull[h]) - weight(hull[h - 1])) / Rational(static_cast<std::int64_t>(gap)));
    out.multiplicities.push_back(gap);
  }
  out.epsilon_multiplicity = n - hull.back();
  return out;
}

Scalar brute_max_cycle_mean(const TropicalMatrix& a) {
  Scalar best;
  for (const auto& c : enumerate_circuits(a)) best += Scalar(c.mean);
  return best;
}

TropicalMatrix brute_modular_closure(const TropicalMatrix& a, std::size_t ell) {
  if (ell == 0) throw std::invalid_argument("brute_modular_closure: ell must be positive");
  return kleene_star(matrix_power(a, ell));
}

std::string OracleReport::summary() const {
  std::ostringstream os;
  os << stage;
  if (!instance.empty()) os << " [" << instance << "]";
  if (seed) os << " seed=" << *seed;
  if (match) {
    os << ": match";
  } else if (counterexample) {
    const auto& c = *counterexample;
    os << ": mismatch at (" << c.row + 1 << "," << c.col + 1 << ") t=" << c.t.get_str() << " expected "
       << c.expected << " got " << c.got;
  } else {
    os << ": mismatch";
  }
  return os.str();
}

OracleReport brute_power_check(const TropicalMatrix& a, const CsrExpansion& x, const BigInt& t_first,
                               const BigInt& t_last, std::string instance, std::optional<std::uint64_t> seed) {
  OracleReport report;
  report.stage = "power";
  report.instance = std::move(instance);
  report.seed = seed;
  if (t_first > t_last) return report;
  TropicalMatrix power = matrix_power(a, t_first);
  for (BigInt t = t_first; t <= t_last; ++t) {
    if (t != t_first) power = matrix_mul(power, a);
    const TropicalMatrix got = evaluate_expansion(x, t);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        Scalar expected = power.at(i, j);
        Scalar value = got.at(i, j);
        if (expected == value) continue;
        report.match = false;
        report.counterexample = Counterexample{i, j, t, std::move(expected), std::move(value)};
        return report;
      }
    }
  }
  return report;
}

TropicalMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double density, int lo, int hi) {
  std::bernoulli_distribution finite(density);
  std::uniform_int_distribution<int> value(lo, hi);
  TropicalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (finite(rng)) m.set(i, j, Scalar(value(rng)));
  return m;
}

}  // namespace maxplus::oracle
