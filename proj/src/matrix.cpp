#include "maxplus/matrix.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace maxplus {
namespace {

std::string shape(const TropicalMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_square(const TropicalMatrix& a, const char* op) {
  if (!a.is_square()) throw DimensionError(std::string(op) + ": matrix must be square, got " + shape(a));
}

}  // namespace

TropicalMatrix::TropicalMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

TropicalMatrix TropicalMatrix::identity(std::size_t n) {
  TropicalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, Rational(0)});
  return m;
}

TropicalMatrix TropicalMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  TropicalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("from_dense: ragged rows");
    for (std::size_t j = 0; j < cols; ++j)
      if (rows[i][j].is_finite()) m.rows_[i].push_back({j, rows[i][j].value()});
  }
  return m;
}

TropicalMatrix TropicalMatrix::from_dense(std::initializer_list<std::initializer_list<Scalar>> rows) {
  std::vector<std::vector<Scalar>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_dense(v);
}

std::size_t TropicalMatrix::finite_count() const {
  std::size_t m = 0;
  for (const auto& r : rows_) m += r.size();
  return m;
}

const Rational* TropicalMatrix::find(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  return it != r.end() && it->col == j ? &it->value : nullptr;
}

Scalar TropicalMatrix::at(std::size_t i, std::size_t j) const {
  if (j >= cols_) throw std::out_of_range("column index out of range");
  const Rational* v = find(i, j);
  return v ? Scalar(*v) : Scalar::epsilon();
}

void TropicalMatrix::set(std::size_t i, std::size_t j, Scalar value) {
  if (j >= cols_) throw std::out_of_range("column index out of range");
  auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  const bool present = it != r.end() && it->col == j;
  if (value.is_epsilon()) {
    if (present) r.erase(it);
  } else if (present) {
    it->value = value.value();
  } else {
    r.insert(it, Entry{j, value.value()});
  }
}

std::vector<std::vector<Scalar>> TropicalMatrix::dense() const {
  std::vector<std::vector<Scalar>> out(rows(), std::vector<Scalar>(cols_));
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& e : rows_[i]) out[i][e.col] = Scalar(e.value);
  return out;
}

TropicalMatrix TropicalMatrix::transpose() const {
  TropicalMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& e : rows_[i]) t.rows_[e.col].push_back({i, e.value});
  t.row_labels_ = col_labels_;
  t.col_labels_ = row_labels_;
  return t;
}

TropicalMatrix TropicalMatrix::principal_submatrix(const std::vector<std::size_t>& nodes) const {
  if (!is_square()) throw DimensionError("principal_submatrix: matrix must be square, got " + shape(*this));
  std::vector<std::size_t> local(cols_, SIZE_MAX);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] >= cols_ || (k > 0 && nodes[k] <= nodes[k - 1]))
      throw std::invalid_argument("principal_submatrix: nodes must be strictly increasing and in range");
    local[nodes[k]] = k;
  }
  TropicalMatrix sub(nodes.size(), nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (const auto& e : rows_[nodes[k]])
      if (local[e.col] != SIZE_MAX) sub.rows_[k].push_back({local[e.col], e.value});
  std::vector<std::size_t> labels;
  labels.reserve(nodes.size());
  for (std::size_t v : nodes) labels.push_back(row_labels_.empty() ? v : row_labels_[v]);
  sub.row_labels_ = labels;
  sub.col_labels_ = std::move(labels);
  return sub;
}

void TropicalMatrix::set_labels(std::vector<std::size_t> row_labels, std::vector<std::size_t> col_labels) {
  auto check = [](const std::vector<std::size_t>& l, std::size_t n) {
    if (l.empty()) return;
    if (l.size() != n) throw DimensionError("label count does not match dimension");
    for (std::size_t k = 1; k < l.size(); ++k)
      if (l[k] <= l[k - 1]) throw std::invalid_argument("labels must be strictly increasing");
  };
  check(row_labels, rows());
  check(col_labels, cols_);
  row_labels_ = std::move(row_labels);
  col_labels_ = std::move(col_labels);
}

DiagonalScaling DiagonalScaling::inverse() const {
  DiagonalScaling inv;
  inv.d.reserve(d.size());
  for (const auto& x : d) inv.d.push_back(-x);
  return inv;
}

TropicalMatrix DiagonalScaling::as_matrix() const {
  TropicalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, Scalar(d[i]));
  return m;
}

TropicalMatrix matrix_add(const TropicalMatrix& a, const TropicalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix_add: " + shape(a) + " vs " + shape(b));
  TropicalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = a.row(i);
    auto rb = b.row(i);
    std::size_t x = 0, y = 0;
    while (x < ra.size() || y < rb.size()) {
      if (y == rb.size() || (x < ra.size() && ra[x].col < rb[y].col)) {
        out.set(i, ra[x].col, Scalar(ra[x].value));
        ++x;
      } else if (x == ra.size() || rb[y].col < ra[x].col) {
        out.set(i, rb[y].col, Scalar(rb[y].value));
        ++y;
      } else {
        out.set(i, ra[x].col, Scalar(std::max(ra[x].value, rb[y].value)));
        ++x;
        ++y;
      }
    }
  }
  out.set_labels(a.row_labels(), a.col_labels());
  return out;
}

TropicalMatrix matrix_mul(const TropicalMatrix& a, const TropicalMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix_mul: " + shape(a) + " times " + shape(b));
  TropicalMatrix out(a.rows(), b.cols());
  std::vector<std::optional<Rational>> acc(b.cols());
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    touched.clear();
    for (const auto& ea : a.row(i)) {
      for (const auto& eb : b.row(ea.col)) {
        Rational cand = ea.value + eb.value;
        auto& slot = acc[eb.col];
        if (!slot) {
          slot = std::move(cand);
          touched.push_back(eb.col);
        } else if (*slot < cand) {
          slot = std::move(cand);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t j : touched) {
      out.set(i, j, Scalar(std::move(*acc[j])));
      acc[j].reset();
    }
  }
  return out;
}

TropicalMatrix scale(const Scalar& c, const TropicalMatrix& a) {
  if (c.is_epsilon()) return TropicalMatrix(a.rows(), a.cols());
  TropicalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& e : a.row(i)) out.set(i, e.col, Scalar(e.value + c.value()));
  out.set_labels(a.row_labels(), a.col_labels());
  return out;
}

TropicalMatrix matrix_power(const TropicalMatrix& a, const BigInt& t) {
  require_square(a, "matrix_power");
  if (t < 0) throw std::invalid_argument("matrix_power: negative exponent");
  TropicalMatrix result = TropicalMatrix::identity(a.rows());
  TropicalMatrix base = a;
  const std::size_t bits = t == 0 ? 0 : mpz_sizeinbase(t.get_mpz_t(), 2);
  for (std::size_t k = 0; k < bits; ++k) {
    if (mpz_tstbit(t.get_mpz_t(), k)) result = matrix_mul(result, base);
    if (k + 1 < bits) base = matrix_mul(base, base);
  }
  return result;
}

TropicalMatrix matrix_power(const TropicalMatrix& a, std::size_t t) {
  return matrix_power(a, BigInt(static_cast<unsigned long>(t)));
}

TropicalMatrix kleene_star(const TropicalMatrix& a) {
  require_square(a, "kleene_star");
  const std::size_t n = a.rows();
  // Floyd–Warshall over (max, +); best[i*n+j] is the heaviest nonempty i-j path.
  std::vector<std::optional<Rational>> best(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : a.row(i)) best[i * n + e.col] = e.value;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& ik = best[i * n + k];
      if (!ik) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& kj = best[k * n + j];
        if (!kj) continue;
        Rational cand = *ik + *kj;
        auto& ij = best[i * n + j];
        if (!ij || *ij < cand) ij = std::move(cand);
      }
    }
    if (best[k * n + k] && best[k * n + k]->sign() > 0)
      throw PositiveCircuitError("kleene_star: circuit of positive weight through node " + std::to_string(k + 1));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (best[i * n + i] && best[i * n + i]->sign() > 0)
      throw PositiveCircuitError("kleene_star: circuit of positive weight through node " + std::to_string(i + 1));
  TropicalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Scalar v = best[i * n + j] ? Scalar(*best[i * n + j]) : Scalar::epsilon();
      if (i == j) v += Scalar::unit();
      if (v.is_finite()) out.set(i, j, v);
    }
  }
  out.set_labels(a.row_labels(), a.col_labels());
  return out;
}

TropicalMatrix diag_conjugate(const TropicalMatrix& a, const DiagonalScaling& d, const Rational& shift) {
  require_square(a, "diag_conjugate");
  if (d.d.size() != a.rows())
    throw DimensionError("diag_conjugate: scaling of length " + std::to_string(d.d.size()) + " for " + shape(a));
  TropicalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& e : a.row(i)) out.set(i, e.col, Scalar(-d.d[i] + (e.value + shift) + d.d[e.col]));
  out.set_labels(a.row_labels(), a.col_labels());
  return out;
}

std::vector<Scalar> apply(const TropicalMatrix& a, const std::vector<Scalar>& x) {
  if (x.size() != a.cols()) throw DimensionError("apply: vector length mismatch");
  std::vector<Scalar> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& e : a.row(i)) y[i] += Scalar(e.value) * x[e.col];
  return y;
}

}  // namespace maxplus
