#pragma once

#include <map>
#include <vector>

#include "lietower/sparse.hpp"

namespace lietower::qalg {

// A finite window of a chain complex over Q. dims[p] is the dimension of the
// degree-p term; boundary.at(p) maps degree p to degree p-1 and has shape
// dims[p-1] x dims[p]. Absent degrees are zero.
struct ChainComplexSlice {
  std::map<int, Index> dims;
  std::map<int, SparseMatrix> boundary;

  Index dim(int p) const {
    auto it = dims.find(p);
    return it == dims.end() ? 0 : it->second;
  }
  SparseMatrix boundary_at(int p) const;  // zero matrix when absent
};

// Homology of one degree, with deterministic representative cycles and the
// data needed to reduce further cycles to homology coordinates.
class HomologySpace {
 public:
  HomologySpace(Index ambient, std::vector<Vec> image_basis, std::vector<Vec> kernel_basis);

  Index dim() const { return reps_.size(); }
  const std::vector<Vec>& representatives() const { return reps_; }

  // Homology coordinates of a cycle (throws InternalError if the vector is
  // not in the span of image + representatives, i.e. not a cycle).
  Vec coords(const Vec& cycle) const;

 private:
  Index ambient_;
  std::vector<Vec> image_;  // basis of the boundary subspace
  std::vector<Vec> reps_;   // kernel vectors extending the image to a basis
  SparseMatrix solve_;      // columns: [image | reps]
};

// chain_homology over [lo, hi]. Verifies boundary-squared-zero on the range
// plus one degree above and below; a violation throws InternalError naming
// the degree.
std::map<int, HomologySpace> chain_homology(const ChainComplexSlice& c, int lo, int hi);

}  // namespace lietower::qalg
