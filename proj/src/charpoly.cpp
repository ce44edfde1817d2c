#include "maxplus/charpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "maxplus/assignment.hpp"

namespace maxplus {

std::vector<std::size_t> MultiCircuit::nodes() const {
  std::vector<std::size_t> out;
  for (const auto& c : circuits) out.insert(out.end(), c.nodes.begin(), c.nodes.end());
  std::sort(out.begin(), out.end());
  return out;
}

MultiCircuit make_multicircuit(std::vector<CircuitRecord> circuits) {
  std::sort(circuits.begin(), circuits.end(),
            [](const CircuitRecord& x, const CircuitRecord& y) { return x.nodes.front() < y.nodes.front(); });
  MultiCircuit m;
  for (const auto& c : circuits) {
    m.total_length += c.length();
    m.total_weight += c.weight;
  }
  m.circuits = std::move(circuits);
  const auto nodes = m.nodes();
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw std::invalid_argument("make_multicircuit: circuits share a node");
  return m;
}

namespace {

enum class Mode { kMinLength, kMaxLength };

// Evaluates χ_A on one matrix at many λ. Entries are rescaled to integers
// once; each evaluation then scales by the λ denominator and by n+1 so that
// the count of λ-diagonal picks rides along as a tie-breaker below the unit.
class ChiSolver {
 public:
  explicit ChiSolver(const TropicalMatrix& a) : a_(a), n_(a.rows()) {
    if (!a.is_square()) throw DimensionError("chi_eval: matrix must be square");
    for (std::size_t i = 0; i < n_; ++i)
      for (const auto& e : a.row(i)) lcm_ = lcm(lcm_, e.value.denominator());
    small_ = true;
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto& e : a.row(i)) {
        BigInt v = e.value.numerator() * (lcm_ / e.value.denominator());
        if (abs(v) > max_abs_) max_abs_ = abs(v);
        small_ = small_ && v.fits_slong_p();
        base_.push_back(v);
      }
    }
    if (small_)
      for (const auto& v : base_) base64_.push_back(v.get_si());
  }

  ChiEvaluation eval(const Rational& lambda) const {
    const BigInt q = lambda.denominator();
    const BigInt l = lcm(lcm_, q);
    const BigInt mult = (l / lcm_) * static_cast<unsigned long>(n_ + 1);
    const BigInt lam = lambda.numerator() * (l / q) * static_cast<unsigned long>(n_ + 1);
    BigInt bound = max_abs_ * mult;
    if (abs(lam) > bound) bound = abs(lam);
    bound = (bound + 1) * static_cast<unsigned long>(4 * (n_ + 1));
    const bool fast = small_ && mult.fits_slong_p() && lam.fits_slong_p() && mpz_sizeinbase(bound.get_mpz_t(), 2) < 62;

    ChiEvaluation out;
    out.lambda = lambda;
    for (Mode mode : {Mode::kMinLength, Mode::kMaxLength}) {
      Pick pick = fast ? solve<std::int64_t>(mode, mult.get_si(), lam.get_si()) : solve<BigInt>(mode, mult, lam);
      auto [value, witness] = decode(pick, lambda);
      out.value = value;
      if (mode == Mode::kMinLength) {
        out.min_length = witness.total_length;
        out.min_witness = std::move(witness);
      } else {
        out.max_length = witness.total_length;
        out.max_witness = std::move(witness);
      }
    }
    return out;
  }

  [[nodiscard]] std::size_t size() const { return n_; }

 private:
  struct Pick {
    std::vector<std::size_t> col_of;
    std::vector<char> lambda_diag;
  };

  static BigInt lcm(const BigInt& x, const BigInt& y) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
  }

  template <class T>
  T base(std::size_t k) const {
    if constexpr (std::is_same_v<T, std::int64_t>)
      return base64_[k];
    else
      return base_[k];
  }

  template <class T>
  Pick solve(Mode mode, const T& mult, const T& lam) const {
    AssignmentProblem<T> problem(n_);
    Pick pick{{}, std::vector<char>(n_, 0)};
    // Tie at a_ii = λ: the λ-pick wins when minimising length, the self-loop
    // wins when maximising it.
    const T lam_pick = mode == Mode::kMinLength ? T(lam + 1) : T(lam - 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      bool diag_seen = false;
      for (const auto& e : a_.row(i)) {
        T w = base<T>(k++) * mult;
        if (e.col == i) {
          diag_seen = true;
          if (lam_pick > w) {
            w = lam_pick;
            pick.lambda_diag[i] = 1;
          }
        }
        problem.set(i, e.col, std::move(w));
      }
      if (!diag_seen) {
        problem.set(i, i, lam_pick);
        pick.lambda_diag[i] = 1;
      }
    }
    pick.col_of = problem.solve_max();
    return pick;
  }

  std::pair<Rational, MultiCircuit> decode(const Pick& pick, const Rational& lambda) const {
    Rational value;
    std::vector<char> seen(n_, 0);
    std::vector<CircuitRecord> circuits;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j = pick.col_of[i];
      if (i == j && pick.lambda_diag[i]) {
        value += lambda;
        seen[i] = 1;
      } else {
        value += *a_.find(i, j);
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i]) continue;
      std::vector<std::size_t> cycle;
      for (std::size_t v = i; !seen[v]; v = pick.col_of[v]) {
        seen[v] = 1;
        cycle.push_back(v);
      }
      circuits.push_back(make_circuit(a_, std::move(cycle)));
    }
    return {value, make_multicircuit(std::move(circuits))};
  }

  const TropicalMatrix& a_;
  std::size_t n_;
  BigInt lcm_ = 1;
  BigInt max_abs_ = 0;
  bool small_ = true;
  std::vector<BigInt> base_;
  std::vector<std::int64_t> base64_;
};

Rational attained(const MultiCircuit& m, const Rational& lambda, std::size_t n) {
  return m.total_weight + lambda * Rational(static_cast<std::int64_t>(n - m.total_length));
}

// Line through (x.lambda, x.value) with the given slope, evaluated at t.
Rational on_line(const ChiEvaluation& x, std::size_t slope, const Rational& t) {
  return x.value + Rational(static_cast<std::int64_t>(slope)) * (t - x.lambda);
}

void search(const ChiSolver& solver, const ChiEvaluation& a, const ChiEvaluation& b,
            std::vector<ChiEvaluation>& roots) {
  const std::size_t n = solver.size();
  const std::size_t sa = n - a.min_length;
  const std::size_t sb = n - b.max_length;
  if (sa == sb) return;
  const Rational sa_r(static_cast<std::int64_t>(sa));
  const Rational sb_r(static_cast<std::int64_t>(sb));
  const Rational c = (b.value - a.value + sa_r * a.lambda - sb_r * b.lambda) / (sa_r - sb_r);
  ChiEvaluation mid = solver.eval(c);
  if (mid.value == on_line(a, sa, c)) {
    roots.push_back(std::move(mid));
    return;
  }
  // Off the line, c can still be a breakpoint between the two sides.
  search(solver, a, mid, roots);
  const bool breakpoint = mid.min_length != mid.max_length;
  ChiEvaluation right = mid;
  if (breakpoint) roots.push_back(std::move(mid));
  search(solver, right, b, roots);
}

// Open interval holding every root, or nothing when A has no finite entry.
// A root is a slope (w_2 - w_1)/(k_2 - k_1) between multi-circuits and can
// sit below every entry; |w_k| <= n·max|a| bounds it by -2n·max|a|.
std::optional<std::pair<Rational, Rational>> root_range(const TropicalMatrix& a) {
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& e : a.row(i)) {
      if (!lo || e.value < *lo) lo = e.value;
      if (!hi || *hi < e.value) hi = e.value;
    }
  }
  if (!lo) return std::nullopt;
  const Rational bound = std::max(-*lo, *hi) * Rational(static_cast<std::int64_t>(2 * a.rows()));
  if (-bound < *lo) lo = -bound;
  return std::pair{*lo - Rational(1), *hi + Rational(1)};
}

}  // namespace

ChiEvaluation chi_eval(const TropicalMatrix& a, const Rational& lambda) { return ChiSolver(a).eval(lambda); }

Mmcs characteristic_roots(const TropicalMatrix& a) {
  const ChiSolver solver(a);
  Mmcs out;
  out.n = a.rows();
  out.multicircuits.emplace_back();
  const auto range = root_range(a);
  if (!range) {
    out.epsilon_multiplicity = out.n;
    return out;
  }
  const ChiEvaluation left = solver.eval(range->first);
  const ChiEvaluation right = solver.eval(range->second);
  std::vector<ChiEvaluation> roots;
  search(solver, left, right, roots);
  std::reverse(roots.begin(), roots.end());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    auto& e = roots[k];
    if (k > 0 && !(e.lambda < roots[k - 1].lambda)) throw InvariantViolation("characteristic_roots: roots out of order");
    const std::size_t prev = out.multicircuits.back().total_length;
    if (e.min_length != prev)
      throw InvariantViolation("characteristic_roots: witness lengths disagree at " + e.lambda.to_string());
    out.roots.push_back(e.lambda);
    out.multiplicities.push_back(e.max_length - e.min_length);
    out.multicircuits.push_back(std::move(e.max_witness));
  }
  out.epsilon_multiplicity = out.n - out.multicircuits.back().total_length;
  return out;
}

std::vector<MultiCircuit> extract_mmcs(const TropicalMatrix& a, const std::vector<Rational>& roots) {
  const ChiSolver solver(a);
  const std::size_t n = a.rows();
  std::vector<MultiCircuit> out;
  out.emplace_back();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (k > 0 && !(roots[k] < roots[k - 1]))
      throw std::invalid_argument("extract_mmcs: roots must be strictly descending");
    ChiEvaluation e = solver.eval(roots[k]);
    if (e.max_length == e.min_length)
      throw std::invalid_argument("extract_mmcs: " + roots[k].to_string() + " is not a root");
    out.push_back(std::move(e.max_witness));
  }
  // 𝔐_k must attain χ_A on [λ_{k+1}, λ_k]; the outer intervals are probed
  // beyond every possible root so that a missing root is caught.
  const auto range = root_range(a);
  const Rational below = range ? range->first : Rational(-1);
  const Rational above = range ? range->second : Rational(1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::vector<Rational> probes;
    probes.push_back(k == 0 ? std::max(above, roots.empty() ? above : roots.front() + Rational(1)) : roots[k - 1]);
    probes.push_back(k < roots.size() ? roots[k] : std::min(below, roots.empty() ? below : roots.back() - Rational(1)));
    for (const auto& lambda : probes)
      if (attained(out[k], lambda, n) != solver.eval(lambda).value)
        throw std::invalid_argument("extract_mmcs: multi-circuit " + std::to_string(k) + " does not attain chi at " +
                                    lambda.to_string());
  }
  return out;
}

}  // namespace maxplus
