#include "lietower/sparse.hpp"

#include <sstream>

#include "lietower/errors.hpp"

namespace lietower {

Rational rational_from_string(std::string_view s) {
  Rational q;
  if (q.set_str(std::string(s), 10) != 0)
    throw InputError("not a rational: '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

}  // namespace lietower

namespace lietower::qalg {

Rational SparseMatrix::at(Index r, Index c) const {
  const auto& m = row_.at(r);
  auto it = m.find(c);
  return it == m.end() ? Rational(0) : it->second;
}

void SparseMatrix::set(Index r, Index c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw InternalError("matrix index out of bounds");
  if (v == 0)
    row_[r].erase(c);
  else
    row_[r][c] = v;
}

void SparseMatrix::add(Index r, Index c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw InternalError("matrix index out of bounds");
  auto it = row_[r].find(c);
  if (it == row_[r].end()) {
    if (v != 0) row_[r].emplace(c, v);
    return;
  }
  it->second += v;
  if (it->second == 0) row_[r].erase(it);
}

Index SparseMatrix::nnz() const {
  Index n = 0;
  for (const auto& r : row_) n += r.size();
  return n;
}

Vec SparseMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  Vec y(rows_, Rational(0));
  for (Index r = 0; r < rows_; ++r)
    for (const auto& [c, v] : row_[r]) y[r] += v * x[c];
  return y;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix-matrix dimension mismatch");
  SparseMatrix out(rows_, rhs.cols_);
  for (Index r = 0; r < rows_; ++r)
    for (const auto& [k, v] : row_[r])
      for (const auto& [c, w] : rhs.row_[k]) out.add(r, c, v * w);
  return out;
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : row_)
    if (!r.empty()) return false;
  return true;
}

namespace {

// Row echelon data from forward elimination in the fixed pivot order:
// columns left to right, pivot row = smallest untouched row index.
struct Echelon {
  std::vector<std::map<Index, Rational>> rows;  // working copy, row-major
  std::vector<std::pair<Index, Index>> pivots;  // (col, row), in pivot order
  std::vector<bool> used_row;
};

Echelon eliminate(const SparseMatrix& m, Vec* b) {
  Echelon e;
  e.rows.resize(m.rows());
  for (Index r = 0; r < m.rows(); ++r) e.rows[r] = m.row(r);
  e.used_row.assign(m.rows(), false);

  for (Index c = 0; c < m.cols(); ++c) {
    Index pivot_row = m.rows();
    for (Index r = 0; r < m.rows(); ++r) {
      if (e.used_row[r]) continue;
      auto it = e.rows[r].find(c);
      if (it != e.rows[r].end()) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row == m.rows()) continue;
    e.used_row[pivot_row] = true;
    e.pivots.emplace_back(c, pivot_row);
    const Rational p = e.rows[pivot_row].at(c);
    // Reduce every other row, pivot rows included, so the result is a
    // reduced echelon form and back-substitution reads off directly.
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == pivot_row) continue;
      auto it = e.rows[r].find(c);
      if (it == e.rows[r].end()) continue;
      const Rational f = it->second / p;
      for (const auto& [cc, v] : e.rows[pivot_row]) {
        auto jt = e.rows[r].find(cc);
        if (jt == e.rows[r].end()) {
          Rational nv = -f * v;
          if (nv != 0) e.rows[r].emplace(cc, nv);
        } else {
          jt->second -= f * v;
          if (jt->second == 0) e.rows[r].erase(jt);
        }
      }
      if (b) (*b)[r] -= f * (*b)[pivot_row];
    }
  }
  return e;
}

}  // namespace

std::optional<Vec> solve_linear(const SparseMatrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw InputError("solve_linear: rhs dimension mismatch");
  Vec rhs = b;
  Echelon e = eliminate(m, &rhs);
  for (Index r = 0; r < m.rows(); ++r)
    if (!e.used_row[r] && e.rows[r].empty() == false) throw InternalError("elimination left junk row");
  for (Index r = 0; r < m.rows(); ++r)
    if (!e.used_row[r] && rhs[r] != 0) return std::nullopt;

  Vec x(m.cols(), Rational(0));
  // Rows were fully reduced against each other, so each pivot solves directly.
  for (const auto& [c, r] : e.pivots) {
    Rational acc = rhs[r];
    for (const auto& [cc, v] : e.rows[r])
      if (cc != c) acc -= v * x[cc];
    x[c] = acc / e.rows[r].at(c);
  }
  return x;
}

std::vector<Vec> kernel_basis(const SparseMatrix& m) {
  Echelon e = eliminate(m, nullptr);
  std::vector<bool> is_pivot_col(m.cols(), false);
  for (const auto& [c, r] : e.pivots) is_pivot_col[c] = true;

  std::vector<Vec> basis;
  for (Index fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot_col[fc]) continue;
    Vec v(m.cols(), Rational(0));
    v[fc] = 1;
    for (const auto& [c, r] : e.pivots) {
      auto it = e.rows[r].find(fc);
      if (it != e.rows[r].end()) v[c] = -it->second / e.rows[r].at(c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Index rank(const SparseMatrix& m) { return eliminate(m, nullptr).pivots.size(); }

std::vector<Index> pivot_columns(const SparseMatrix& m) {
  Echelon e = eliminate(m, nullptr);
  std::vector<Index> cols;
  cols.reserve(e.pivots.size());
  for (const auto& [c, r] : e.pivots) cols.push_back(c);
  return cols;
}

bool SpanBuilder::insert(Vec v) {
  v = reduce(std::move(v));
  Index p = dim_;
  for (Index i = 0; i < dim_; ++i)
    if (v[i] != 0) {
      p = i;
      break;
    }
  if (p == dim_) return false;
  const Rational lead = v[p];
  for (auto& x : v) x /= lead;
  for (auto& [q, row] : rows_) {
    if (row[p] == 0) continue;
    const Rational f = row[p];
    for (Index i = 0; i < dim_; ++i) row[i] -= f * v[i];
  }
  rows_.emplace(p, std::move(v));
  return true;
}

Vec SpanBuilder::reduce(Vec v) const {
  if (v.size() != dim_) throw InputError("SpanBuilder: dimension mismatch");
  for (const auto& [p, row] : rows_) {
    if (v[p] == 0) continue;
    const Rational f = v[p];
    for (Index i = 0; i < dim_; ++i) v[i] -= f * row[i];
  }
  return v;
}

bool SpanBuilder::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

}  // namespace lietower::qalg
