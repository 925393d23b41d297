#include "lietower/chain.hpp"

#include <string>

#include "lietower/errors.hpp"

namespace lietower::qalg {

SparseMatrix ChainComplexSlice::boundary_at(int p) const {
  auto it = boundary.find(p);
  if (it != boundary.end()) return it->second;
  return SparseMatrix(dim(p - 1), dim(p));
}

HomologySpace::HomologySpace(Index ambient, std::vector<Vec> image_basis,
                             std::vector<Vec> kernel_basis)
    : ambient_(ambient), solve_(ambient, 0) {
  SpanBuilder span(ambient);
  for (auto& v : image_basis) {
    if (span.insert(v)) image_.push_back(std::move(v));
  }
  for (auto& k : kernel_basis) {
    if (span.insert(k)) reps_.push_back(std::move(k));
  }
  solve_ = SparseMatrix(ambient, image_.size() + reps_.size());
  Index c = 0;
  for (const auto& v : image_) {
    for (Index r = 0; r < ambient; ++r) solve_.set(r, c, v[r]);
    ++c;
  }
  for (const auto& v : reps_) {
    for (Index r = 0; r < ambient; ++r) solve_.set(r, c, v[r]);
    ++c;
  }
}

Vec HomologySpace::coords(const Vec& cycle) const {
  auto x = solve_linear(solve_, cycle);
  if (!x) throw InternalError("homology reduction: vector is not a cycle");
  Vec out(reps_.size(), Rational(0));
  for (Index i = 0; i < reps_.size(); ++i) out[i] = (*x)[image_.size() + i];
  return out;
}

std::map<int, HomologySpace> chain_homology(const ChainComplexSlice& c, int lo, int hi) {
  for (int p = lo; p <= hi + 2; ++p) {
    if (c.dim(p) == 0 || c.dim(p - 2) == 0) continue;
    SparseMatrix sq = c.boundary_at(p - 1).multiply(c.boundary_at(p));
    if (!sq.is_zero())
      throw InternalError("boundary squared is nonzero at degree " + std::to_string(p));
  }

  std::map<int, HomologySpace> out;
  for (int p = lo; p <= hi; ++p) {
    const Index n = c.dim(p);
    SparseMatrix dp = c.boundary_at(p);
    SparseMatrix dnext = c.boundary_at(p + 1);

    std::vector<Vec> image;
    for (Index col : pivot_columns(dnext)) {
      Vec v(n, Rational(0));
      for (Index r = 0; r < n; ++r) v[r] = dnext.at(r, col);
      image.push_back(std::move(v));
    }
    out.emplace(p, HomologySpace(n, std::move(image), kernel_basis(dp)));
  }
  return out;
}

}  // namespace lietower::qalg
