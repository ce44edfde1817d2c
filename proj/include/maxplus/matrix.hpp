#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "maxplus/rational.hpp"
#include "maxplus/scalar.hpp"

namespace maxplus {

/// Thrown when an operation needs compatible shapes and does not get them.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by kleene_star when the graph has a circuit of positive weight.
class PositiveCircuitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Entry {
  std::size_t col;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse max-plus matrix. Only finite entries are stored; rows are kept
/// sorted by column. Optional row/column labels record the node indices of a
/// parent matrix when this one is a principal submatrix.
class TropicalMatrix {
 public:
  TropicalMatrix() = default;
  TropicalMatrix(std::size_t rows, std::size_t cols);

  static TropicalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static TropicalMatrix identity(std::size_t n);
  /// Rows of equal length; ε cells are dropped.
  static TropicalMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);
  static TropicalMatrix from_dense(std::initializer_list<std::initializer_list<Scalar>> rows);

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows() == cols_; }
  [[nodiscard]] std::size_t finite_count() const;

  [[nodiscard]] Scalar at(std::size_t i, std::size_t j) const;
  [[nodiscard]] const Rational* find(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Scalar value);

  [[nodiscard]] std::span<const Entry> row(std::size_t i) const { return rows_.at(i); }

  [[nodiscard]] std::vector<std::vector<Scalar>> dense() const;
  [[nodiscard]] TropicalMatrix transpose() const;

  /// Principal submatrix on `nodes` (strictly increasing); labels map back to
  /// the parent's labels (or indices when the parent is unlabelled).
  [[nodiscard]] TropicalMatrix principal_submatrix(const std::vector<std::size_t>& nodes) const;

  [[nodiscard]] const std::vector<std::size_t>& row_labels() const { return row_labels_; }
  [[nodiscard]] const std::vector<std::size_t>& col_labels() const { return col_labels_; }
  void set_labels(std::vector<std::size_t> row_labels, std::vector<std::size_t> col_labels);

  /// Shape and entries; labels are metadata and do not take part.
  friend bool operator==(const TropicalMatrix& a, const TropicalMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::size_t> row_labels_;
  std::vector<std::size_t> col_labels_;
};

/// diag(d): conjugation by d maps a_ij to -d_i + a_ij + d_j.
struct DiagonalScaling {
  std::vector<Rational> d;

  [[nodiscard]] DiagonalScaling inverse() const;
  [[nodiscard]] TropicalMatrix as_matrix() const;
};

TropicalMatrix matrix_add(const TropicalMatrix& a, const TropicalMatrix& b);
TropicalMatrix matrix_mul(const TropicalMatrix& a, const TropicalMatrix& b);
/// c ⊗ A.
TropicalMatrix scale(const Scalar& c, const TropicalMatrix& a);
/// A^⊗t by binary exponentiation; A^⊗0 = I.
TropicalMatrix matrix_power(const TropicalMatrix& a, const BigInt& t);
TropicalMatrix matrix_power(const TropicalMatrix& a, std::size_t t);
/// I ⊕ A ⊕ A^⊗2 ⊕ ... ; throws PositiveCircuitError when that series diverges.
TropicalMatrix kleene_star(const TropicalMatrix& a);
/// Entry (i,j) becomes -d_i + (a_ij + shift) + d_j.
TropicalMatrix diag_conjugate(const TropicalMatrix& a, const DiagonalScaling& d, const Rational& shift);

/// Max-plus matrix–vector product.
std::vector<Scalar> apply(const TropicalMatrix& a, const std::vector<Scalar>& x);

inline TropicalMatrix operator+(const TropicalMatrix& a, const TropicalMatrix& b) { return matrix_add(a, b); }
inline TropicalMatrix operator*(const TropicalMatrix& a, const TropicalMatrix& b) { return matrix_mul(a, b); }

}  // namespace maxplus
