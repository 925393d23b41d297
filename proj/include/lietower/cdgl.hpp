#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lietower/chain.hpp"
#include "lietower/freelie.hpp"

namespace lietower::cdgl {

using freelie::BasisBracket;
using freelie::GeneratorSetPtr;
using freelie::GenIndex;
using freelie::LieElement;
using freelie::TensorElement;

// A presented complete dgl: free generators, differential on generators,
// all arithmetic in L/L^{>N}.
class Cdgl {
 public:
  Cdgl(GeneratorSetPtr gens, int trunc);

  const GeneratorSetPtr& generators() const { return gens_; }
  int truncation() const { return trunc_; }

  void set_differential(GenIndex g, LieElement dg);
  void mark_mc(GenIndex g) { mc_[g] = true; }
  bool mc_marked(GenIndex g) const { return mc_.at(g); }
  std::vector<GenIndex> mc_generators() const;

  const LieElement& d_of(GenIndex g) const { return d_.at(g); }
  LieElement d(const LieElement& e) const;
  TensorElement d(const TensorElement& t) const;

  Cdgl truncated(int new_trunc) const;

  LieElement gen(GenIndex g) const { return freelie::generator_element(gens_, g, trunc_); }
  LieElement gen(const std::string& name) const;
  LieElement zero() const { return freelie::zero_element(gens_, trunc_); }

 private:
  GeneratorSetPtr gens_;
  int trunc_;
  std::vector<LieElement> d_;
  std::vector<bool> mc_;
  mutable std::vector<std::optional<TensorElement>> d_tensor_;

  const TensorElement& gen_d_tensor(GenIndex g) const;
};

struct DifferentialViolation {
  std::string generator;
  std::string reason;
};

struct DifferentialReport {
  std::vector<DifferentialViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Verifies that d lowers degree by exactly one on every generator and that
// d(d g) = 0 mod L^{>N}; failures name the generator and the residue.
DifferentialReport differential_check(const Cdgl& L);

// True iff v is homogeneous of degree -1 and dv + (1/2)[v,v] = 0 mod L^{>N}.
bool is_mc(const Cdgl& L, const LieElement& v);

// Perturbed algebra (L, d_a) with d_a = d + ad_a. Requires a MC.
Cdgl perturb(const Cdgl& L, const LieElement& a);

// Connected component at a: degree 0 replaced by ker(d_a), negative degrees
// dropped. Only reduced presentations are supported (at most one degree -1
// generator, none below).
struct Component {
  Cdgl algebra;  // perturbed differential
  LieElement vertex;
  std::vector<LieElement> degree0_basis;  // kernel basis, deterministic
};

Component component(const Cdgl& L, const LieElement& a);

// Same presentation in L/L^n, i.e. truncation order n-1.
Cdgl lcs_quotient(const Cdgl& L, int n);

// Baker-Campbell-Hausdorff product via the Dynkin expansion, exact, truncated
// at the common truncation order. Arguments must be of degree 0.
LieElement bch(const LieElement& x, const LieElement& y);

// Exponential action e^{ad_alpha}(beta); alpha of degree 0.
LieElement exp_ad(const LieElement& alpha, const LieElement& beta);

// Gauge action x.a = e^{ad_x}(a) - F(ad_x)(dx), F(t) = (e^t - 1)/t.
// The output is re-checked to be MC; a failure is an internal fault.
LieElement gauge_transform(const Cdgl& L, const LieElement& a, const LieElement& x);

// Finite chain-complex view of a (component of a) truncated cdgl, with basis
// bookkeeping to move between Lie elements and coordinate vectors.
class DglComplex {
 public:
  static DglComplex from_cdgl(const Cdgl& L, int lo, int hi);
  static DglComplex from_component(const Component& c, int lo, int hi);

  const Cdgl& algebra() const { return algebra_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  qalg::Index dim(int p) const;
  const std::vector<LieElement>& basis(int p) const;
  qalg::Vec coords(int p, const LieElement& e) const;
  LieElement from_coords(int p, const qalg::Vec& v) const;

  qalg::ChainComplexSlice slice() const;

 private:
  DglComplex(Cdgl algebra, int lo, int hi) : algebra_(std::move(algebra)), lo_(lo), hi_(hi) {}

  struct Degree {
    std::vector<LieElement> basis;
    std::map<BasisBracket, qalg::Index> ambient_index;  // ambient key -> position
    std::optional<qalg::SparseMatrix> solve;  // set when basis != ambient basis
  };

  qalg::Vec ambient_coords(const Degree& deg, const LieElement& e) const;

  Cdgl algebra_;
  int lo_, hi_;
  std::map<int, Degree> degrees_;
};

// Finite-dimensional graded Lie algebra by basis and structure constants.
class FiniteGradedLie {
 public:
  void set_dim(int p, qalg::Index n) { dims_[p] = n; }
  qalg::Index dim(int p) const;
  const std::map<int, qalg::Index>& dims() const { return dims_; }

  void set_bracket(int p, qalg::Index i, int q, qalg::Index j, qalg::Vec v);
  qalg::Vec bracket(int p, qalg::Index i, int q, qalg::Index j) const;
  qalg::Vec bracket_vec(int p, const qalg::Vec& a, int q, const qalg::Vec& b) const;

 private:
  std::map<int, qalg::Index> dims_;
  std::map<std::tuple<int, qalg::Index, int, qalg::Index>, qalg::Vec> table_;
};

// Exact homology of the truncated complex, with deterministic representative
// cycles, coordinate reduction, and the induced Lie structure.
class HomologyResult {
 public:
  HomologyResult(DglComplex cx, int lo, int hi);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  qalg::Index dim(int p) const;
  std::vector<LieElement> representatives(int p) const;
  const LieElement& representative(int p, qalg::Index i) const;
  // Homology coordinates of a cycle given as a Lie element.
  qalg::Vec coords(int p, const LieElement& cycle) const;
  LieElement class_element(int p, const qalg::Vec& h) const;

  const DglComplex& complex() const { return cx_; }

  FiniteGradedLie induced_lie() const;

 private:
  DglComplex cx_;
  int lo_, hi_;
  std::map<int, qalg::HomologySpace> spaces_;
  std::map<int, std::vector<LieElement>> reps_;
};

HomologyResult dgl_homology(const Cdgl& L, int lo, int hi);
HomologyResult dgl_homology(const Component& c, int lo, int hi);

// Lower central series of a finite graded Lie algebra, degree window [lo,hi].
struct LcsInfo {
  bool nilpotent = false;
  int cls = 0;  // class c: G^{c+1} = 0 != G^c; 0 for the zero algebra
  std::vector<std::map<int, qalg::Index>> term_dims;  // dims of G^1, G^2, ...
};

LcsInfo lower_central_series(const FiniteGradedLie& G, int lo, int hi);

struct NilpotencyVerdict {
  bool nilpotent = false;
  int cls = 0;
  LcsInfo lcs;
};

// Prop-style degreewise nilpotency: LCS until stable, zero in each degree.
NilpotencyVerdict is_degreewise_nilpotent(const FiniteGradedLie& G, int lo, int hi);

struct HomNilpotence {
  bool nilpotent = false;
  int class_degreewise = 0;  // route (iii)
  int class_h0 = 0;          // route (ii): H0 as a Lie algebra
  int action_class = 0;      // route (ii): nilpotency of the H0 action
};

// Evaluates both equivalent nilpotency routes on H and insists they agree.
HomNilpotence homological_nilpotence(const FiniteGradedLie& H, int lo, int hi);
HomNilpotence is_homologically_nilpotent(const Cdgl& L, int lo, int hi);
HomNilpotence is_homologically_nilpotent(const Component& c, int lo, int hi);

}  // namespace lietower::cdgl
