#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "lietower/rational.hpp"

namespace lietower::qalg {

using Index = std::size_t;
using Vec = std::vector<Rational>;  // dense column vector

// Sparse matrix over Q. Only nonzero entries are stored.
class SparseMatrix {
 public:
  SparseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), row_(rows) {}

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  Rational at(Index r, Index c) const;
  void set(Index r, Index c, const Rational& v);
  void add(Index r, Index c, const Rational& v);

  const std::map<Index, Rational>& row(Index r) const { return row_.at(r); }
  Index nnz() const;

  Vec apply(const Vec& x) const;
  SparseMatrix multiply(const SparseMatrix& rhs) const;
  bool is_zero() const;

 private:
  Index rows_, cols_;
  std::vector<std::map<Index, Rational>> row_;
};

// Exact solution of M x = b under the fixed pivot rule (leftmost column,
// then smallest row index; free variables set to zero), or nullopt when the
// system is inconsistent. Throws InputError on a dimension mismatch.
std::optional<Vec> solve_linear(const SparseMatrix& m, const Vec& b);

// Deterministic kernel basis: one vector per free column, ascending.
std::vector<Vec> kernel_basis(const SparseMatrix& m);

Index rank(const SparseMatrix& m);

// Indices of pivot columns under the fixed elimination order.
std::vector<Index> pivot_columns(const SparseMatrix& m);

// Incremental reduced row span; used for image bases, membership tests and
// greedy extension of independent sets.
class SpanBuilder {
 public:
  explicit SpanBuilder(Index dim) : dim_(dim) {}

  // Reduces v against the span; if the residue is nonzero the (normalized)
  // residue joins the span and the call returns true.
  bool insert(Vec v);
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  Index rank() const { return rows_.size(); }
  Index dim() const { return dim_; }

 private:
  Index dim_;
  std::map<Index, Vec> rows_;  // pivot column -> reduced row
};

}  // namespace lietower::qalg
