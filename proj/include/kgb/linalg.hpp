// Exact sparse linear algebra over a kgb::Field.
//
// Matrices act on row vectors: the image of a vector v is v * M, so row i of
// a matrix is the image of the i-th basis vector of the source space.

#ifndef KGB_LINALG_HPP
#define KGB_LINALG_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kgb/scalar.hpp"

namespace kgb {

/// Raised when matrix shapes or vector lengths do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

struct Entry {
  std::size_t index;
  Scalar value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by index, no zero entries.
using SparseVec = std::vector<Entry>;

/// y += a * x
void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Scalar& a);
Scalar dot(const SparseVec& x, const SparseVec& y, Field f);
/// Converts an index -> value map, dropping zeros.
SparseVec to_sparse(const std::map<std::size_t, Scalar>& m);
/// acc += a * x
void accumulate(std::map<std::size_t, Scalar>& acc, const Scalar& a,
                const SparseVec& x);

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(Field f, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(Field f, std::size_t n);
  /// Rows must have entries below `cols`; unsorted input and zeros are fixed up.
  static ExactMatrix from_rows(Field f, std::size_t cols,
                               std::vector<SparseVec> rows);
  static ExactMatrix from_dense(Field f,
                                const std::vector<std::vector<long>>& rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const SparseVec& row(std::size_t i) const { return rows_.at(i); }
  void set_row(std::size_t i, SparseVec v);
  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& value);
  void append_row(SparseVec v);

  std::size_t nonzeros() const;
  bool is_zero() const;
  ExactMatrix transpose() const;
  /// v * M for a row vector v of length rows().
  SparseVec left_apply(const SparseVec& v) const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t cols_ = 0;
  std::vector<SparseVec> rows_;
};

/// Incrementally maintained echelon basis of a row space.
///
/// Every stored row has leading coefficient 1 at a column no other stored row
/// leads with.
class EchelonBasis {
 public:
  EchelonBasis(Field f, std::size_t cols);

  Field field() const { return field_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds v to the span; returns true if the rank grew.
  bool add(SparseVec v);
  /// Clears all entries of v that sit in pivot columns.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  /// Rows in reduced echelon form, sorted by pivot column.
  std::vector<SparseVec> rref() const;
  std::vector<std::size_t> pivots() const;

 private:
  SparseVec reduce_leading(SparseVec v) const;

  Field field_;
  std::size_t cols_;
  std::vector<SparseVec> rows_;
  std::vector<long> pivot_row_;
};

struct RowReduction {
  std::size_t rank = 0;
  ExactMatrix row_basis;     // reduced echelon form, rank x cols
  ExactMatrix kernel_basis;  // rows x with M x^T = 0, (cols - rank) x cols
  std::vector<std::size_t> pivots;
};

/// Dispatches to the dense routine below 64 columns.
RowReduction row_reduce(const ExactMatrix& m);
RowReduction row_reduce_sparse(const ExactMatrix& m);
RowReduction row_reduce_dense(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);

/// Basis of the annihilator of the row space of `subspace` inside the dual of
/// an `ambient_dim`-dimensional space under the coordinate pairing.
ExactMatrix annihilator(const ExactMatrix& subspace, std::size_t ambient_dim);

/// True iff the two matrices have the same row space.
bool same_row_space(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace kgb

#endif
