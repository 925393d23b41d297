#include "lietower/cdgl.hpp"

#include <algorithm>
#include <sstream>

#include "lietower/errors.hpp"
#include "lietower/fastlie.hpp"

namespace lietower::cdgl {

using freelie::expand;
using freelie::lie_project;
using freelie::normalize_bracket;
using freelie::Word;

Cdgl::Cdgl(GeneratorSetPtr gens, int trunc) : gens_(std::move(gens)), trunc_(trunc) {
  if (trunc_ < 1) throw InputError("truncation order must be >= 1");
  d_.assign(gens_->size(), freelie::zero_element(gens_, trunc_));
  mc_.assign(gens_->size(), false);
  d_tensor_.assign(gens_->size(), std::nullopt);
}

void Cdgl::set_differential(GenIndex g, LieElement dg) {
  if (dg.truncation() != trunc_) throw InputError("differential truncation mismatch");
  d_.at(g) = std::move(dg);
  d_tensor_.at(g).reset();
}

std::vector<GenIndex> Cdgl::mc_generators() const {
  std::vector<GenIndex> out;
  for (GenIndex g = 0; g < mc_.size(); ++g)
    if (mc_[g]) out.push_back(g);
  return out;
}

const TensorElement& Cdgl::gen_d_tensor(GenIndex g) const {
  auto& slot = d_tensor_.at(g);
  if (!slot) slot = expand(d_.at(g));
  return *slot;
}

LieElement Cdgl::d(const LieElement& e) const {
  return lie_project(d(expand(e)), trunc_);
}

TensorElement Cdgl::d(const TensorElement& t) const {
  std::vector<const TensorElement*> images(gens_->size());
  for (GenIndex g = 0; g < gens_->size(); ++g) images[g] = &gen_d_tensor(g);
  return freelie::apply_odd_derivation(t, images, static_cast<std::size_t>(trunc_));
}

Cdgl Cdgl::truncated(int new_trunc) const {
  Cdgl out(gens_, new_trunc);
  for (GenIndex g = 0; g < gens_->size(); ++g) {
    out.d_[g] = d_[g].truncated(new_trunc);
    out.mc_[g] = mc_[g];
  }
  return out;
}

LieElement Cdgl::gen(const std::string& name) const {
  auto i = gens_->find(name);
  if (!i) throw InputError("unknown generator '" + name + "'");
  return gen(*i);
}

DifferentialReport differential_check(const Cdgl& L) {
  DifferentialReport report;
  const auto& gens = *L.generators();
  for (GenIndex g = 0; g < gens.size(); ++g) {
    const LieElement& dg = L.d_of(g);
    const int want = gens[g].degree - 1;
    for (const auto& [b, c] : dg.terms()) {
      if (freelie::degree_of(gens, b) != want) {
        report.violations.push_back(
            {gens[g].name, "differential term " + freelie::bracket_to_string(gens, b) +
                               " has degree " + std::to_string(freelie::degree_of(gens, b)) +
                               ", expected " + std::to_string(want)});
      }
    }
  }
  if (!report.ok()) return report;

  if (fastlie::engine_supports(gens, L.truncation())) {
    fastlie::Context ctx = fastlie::Context::of(L);
    for (GenIndex g = 0; g < gens.size(); ++g) {
      fastlie::Packed dg;
      for (const auto& bucket : ctx.d_image[g])
        dg.t.insert(dg.t.end(), bucket.t.begin(), bucket.t.end());
      fastlie::Packed dd = fastlie::derivation(ctx, dg, 1, ctx.trunc);
      if (!dd.zero())
        report.violations.push_back(
            {gens[g].name, "d(d g) is nonzero (first residue at word length " +
                               std::to_string(fastlie::pw_len(dd.t.front().first)) + ")"});
    }
    return report;
  }

  for (GenIndex g = 0; g < gens.size(); ++g) {
    LieElement dd = L.d(L.d_of(g));
    if (!dd.zero())
      report.violations.push_back({gens[g].name, "d(d g) = " + dd.str() + " is nonzero"});
  }
  return report;
}

bool is_mc(const Cdgl& L, const LieElement& v) {
  if (v.zero()) return true;
  if (!v.homogeneous() || v.degree() != -1) return false;
  LieElement lhs = L.d(v);
  LieElement sq = normalize_bracket(v, v);
  sq *= Rational(1, 2);
  lhs += sq;
  return lhs.zero();
}

Cdgl perturb(const Cdgl& L, const LieElement& a) {
  if (!is_mc(L, a)) throw InputError("perturb: element is not Maurer-Cartan");
  Cdgl out(L.generators(), L.truncation());
  for (GenIndex g = 0; g < L.generators()->size(); ++g) {
    LieElement dg = L.d_of(g);
    dg += normalize_bracket(a, L.gen(g));
    out.set_differential(g, std::move(dg));
    if (L.mc_marked(g)) out.mark_mc(g);
  }
  DifferentialReport check = differential_check(out);
  if (!check.ok())
    throw InternalError("perturbed differential fails d^2 = 0: " +
                        check.violations.front().reason);
  return out;
}

namespace {

// All normal basis brackets of the given homological degree, lengths 1..N.
std::vector<BasisBracket> degree_basis(const GeneratorSetPtr& gens, int trunc, int degree) {
  std::vector<BasisBracket> out;
  for (int len = 1; len <= trunc; ++len) {
    for (auto& b : freelie::lyndon_basis(gens, static_cast<std::size_t>(len), degree))
      out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

Component component(const Cdgl& L, const LieElement& a) {
  const auto& gens = *L.generators();
  std::size_t vertex_count = 0;
  for (GenIndex g = 0; g < gens.size(); ++g) {
    if (gens[g].degree < -1)
      throw InputError("component: generators below degree -1 are unsupported");
    if (gens[g].degree == -1) ++vertex_count;
  }
  if (vertex_count > 1)
    throw InputError("component: multiple degree -1 generators (non-reduced input)");

  Cdgl pert = perturb(L, a);

  const int N = L.truncation();
  auto keys0 = degree_basis(L.generators(), N, 0);
  auto keysm1 = degree_basis(L.generators(), N, -1);
  std::map<BasisBracket, qalg::Index> idxm1;
  for (qalg::Index i = 0; i < keysm1.size(); ++i) idxm1.emplace(keysm1[i], i);

  qalg::SparseMatrix m(keysm1.size(), keys0.size());
  for (qalg::Index j = 0; j < keys0.size(); ++j) {
    LieElement e(L.generators(), N);
    e.add(keys0[j], Rational(1));
    LieElement de = pert.d(e);
    for (const auto& [b, c] : de.terms()) {
      auto it = idxm1.find(b);
      if (it == idxm1.end()) throw InternalError("component: stray differential term");
      m.set(it->second, j, c);
    }
  }

  std::vector<LieElement> kernel;
  for (const auto& v : qalg::kernel_basis(m)) {
    LieElement e(L.generators(), N);
    for (qalg::Index j = 0; j < keys0.size(); ++j)
      if (v[j] != 0) e.add(keys0[j], v[j]);
    kernel.push_back(std::move(e));
  }
  return Component{std::move(pert), a, std::move(kernel)};
}

Cdgl lcs_quotient(const Cdgl& L, int n) {
  if (n < 2) throw InputError("lcs_quotient: stage must be >= 2");
  if (n - 1 > L.truncation())
    throw InputError("lcs_quotient: stage exceeds the truncation order");
  return L.truncated(n - 1);
}

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_degree0(const LieElement& e, const char* who) {
  if (e.zero()) return;
  if (!e.homogeneous() || e.degree() != 0)
    throw InputError(std::string(who) + ": argument must be homogeneous of degree 0");
}

}  // namespace

LieElement bch(const LieElement& x, const LieElement& y) {
  check_degree0(x, "bch");
  check_degree0(y, "bch");
  if (x.truncation() != y.truncation()) throw InputError("bch: truncation mismatch");
  const int N = x.truncation();

  LieElement result = freelie::zero_element(x.generators(), N);

  // Dynkin expansion: sum over block sequences (p_1,q_1)...(p_n,q_n) of the
  // right-nested bracketing of x^{p_1} y^{q_1} ... with coefficient
  // (-1)^{n-1} / (n * total * prod p_i! q_i!).
  std::vector<std::pair<int, int>> blocks;
  std::function<void(int)> walk = [&](int total) {
    if (!blocks.empty()) {
      std::vector<const LieElement*> letters;
      for (const auto& [p, q] : blocks) {
        for (int i = 0; i < p; ++i) letters.push_back(&x);
        for (int i = 0; i < q; ++i) letters.push_back(&y);
      }
      LieElement nested = *letters.back();
      for (std::size_t i = letters.size() - 1; i-- > 0;)
        nested = normalize_bracket(*letters[i], nested);
      if (!nested.zero()) {
        Rational denom = Rational(static_cast<long>(blocks.size())) *
                         Rational(static_cast<long>(total));
        for (const auto& [p, q] : blocks) denom *= factorial(p) * factorial(q);
        Rational coeff = Rational((blocks.size() % 2 == 0) ? -1 : 1) / denom;
        nested *= coeff;
        result += nested;
      }
    }
    for (int p = 0; total + p <= N; ++p) {
      for (int q = (p == 0 ? 1 : 0); total + p + q <= N; ++q) {
        blocks.emplace_back(p, q);
        walk(total + p + q);
        blocks.pop_back();
      }
    }
  };
  walk(0);
  return result;
}

LieElement exp_ad(const LieElement& alpha, const LieElement& beta) {
  check_degree0(alpha, "exp_ad");
  if (alpha.truncation() != beta.truncation()) throw InputError("exp_ad: truncation mismatch");
  LieElement result = beta;
  LieElement term = beta;
  for (int k = 1; k <= beta.truncation(); ++k) {
    term = normalize_bracket(alpha, term);
    if (term.zero()) break;
    term *= Rational(1, k);
    result += term;
  }
  return result;
}

LieElement gauge_transform(const Cdgl& L, const LieElement& a, const LieElement& x) {
  check_degree0(x, "gauge_transform");
  if (!is_mc(L, a)) throw InputError("gauge_transform: base point is not Maurer-Cartan");

  LieElement moved = exp_ad(x, a);

  //  F(ad_x)(dx) with F(t) = sum_k t^k / (k+1)!
  LieElement dx = L.d(x);
  LieElement term = dx;
  LieElement flow = dx;
  for (int k = 1; k <= L.truncation(); ++k) {
    term = normalize_bracket(x, term);
    if (term.zero()) break;
    LieElement scaled = term;
    scaled *= Rational(1) / factorial(k + 1);
    flow += scaled;
  }

  LieElement out = moved;
  out -= flow;
  if (!is_mc(L, out))
    throw InternalError("gauge_transform produced a non-MC element (sign fault)");
  return out;
}

qalg::Index DglComplex::dim(int p) const {
  auto it = degrees_.find(p);
  return it == degrees_.end() ? 0 : it->second.basis.size();
}

const std::vector<LieElement>& DglComplex::basis(int p) const {
  static const std::vector<LieElement> empty;
  auto it = degrees_.find(p);
  return it == degrees_.end() ? empty : it->second.basis;
}

qalg::Vec DglComplex::ambient_coords(const Degree& deg, const LieElement& e) const {
  qalg::Vec v(deg.ambient_index.size(), Rational(0));
  for (const auto& [b, c] : e.terms()) {
    auto it = deg.ambient_index.find(b);
    if (it == deg.ambient_index.end())
      throw InternalError("element does not lie in the expected degree slice");
    v[it->second] = c;
  }
  return v;
}

qalg::Vec DglComplex::coords(int p, const LieElement& e) const {
  auto it = degrees_.find(p);
  if (it == degrees_.end()) {
    if (!e.zero()) throw InternalError("element in a zero degree slice");
    return {};
  }
  qalg::Vec amb = ambient_coords(it->second, e);
  if (!it->second.solve) return amb;
  auto x = qalg::solve_linear(*it->second.solve, amb);
  if (!x) throw InternalError("element is not in the degree subspace");
  return *x;
}

LieElement DglComplex::from_coords(int p, const qalg::Vec& v) const {
  LieElement e = algebra_.zero();
  auto it = degrees_.find(p);
  if (it == degrees_.end()) return e;
  const auto& basis = it->second.basis;
  if (v.size() != basis.size()) throw InternalError("coordinate dimension mismatch");
  for (qalg::Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    LieElement t = basis[i];
    t *= v[i];
    e += t;
  }
  return e;
}

qalg::ChainComplexSlice DglComplex::slice() const {
  qalg::ChainComplexSlice s;
  for (const auto& [p, deg] : degrees_) s.dims[p] = deg.basis.size();
  for (const auto& [p, deg] : degrees_) {
    qalg::SparseMatrix m(dim(p - 1), dim(p));
    for (qalg::Index j = 0; j < deg.basis.size(); ++j) {
      LieElement db = algebra_.d(deg.basis[j]);
      if (db.zero()) continue;
      qalg::Vec col = coords(p - 1, db);
      for (qalg::Index r = 0; r < col.size(); ++r)
        if (col[r] != 0) m.set(r, j, col[r]);
    }
    s.boundary.emplace(p, std::move(m));
  }
  return s;
}

DglComplex DglComplex::from_cdgl(const Cdgl& L, int lo, int hi) {
  DglComplex cx(L, lo, hi);
  for (int p = lo - 1; p <= hi + 1; ++p) {
    Degree deg;
    auto keys = degree_basis(L.generators(), L.truncation(), p);
    for (qalg::Index i = 0; i < keys.size(); ++i) {
      deg.ambient_index.emplace(keys[i], i);
      LieElement e = L.zero();
      e.add(keys[i], Rational(1));
      deg.basis.push_back(std::move(e));
    }
    if (!deg.basis.empty()) cx.degrees_.emplace(p, std::move(deg));
  }
  return cx;
}

DglComplex DglComplex::from_component(const Component& c, int lo, int hi) {
  if (lo < 0) lo = 0;
  const Cdgl& L = c.algebra;
  DglComplex cx(L, lo, hi);
  for (int p = std::max(1, lo - 1); p <= hi + 1; ++p) {
    Degree deg;
    auto keys = degree_basis(L.generators(), L.truncation(), p);
    for (qalg::Index i = 0; i < keys.size(); ++i) {
      deg.ambient_index.emplace(keys[i], i);
      LieElement e = L.zero();
      e.add(keys[i], Rational(1));
      deg.basis.push_back(std::move(e));
    }
    if (!deg.basis.empty()) cx.degrees_.emplace(p, std::move(deg));
  }
  if (lo == 0) {
    Degree deg;
    auto keys = degree_basis(L.generators(), L.truncation(), 0);
    for (qalg::Index i = 0; i < keys.size(); ++i) deg.ambient_index.emplace(keys[i], i);
    deg.basis = c.degree0_basis;
    qalg::SparseMatrix m(keys.size(), deg.basis.size());
    for (qalg::Index j = 0; j < deg.basis.size(); ++j) {
      qalg::Vec col = cx.ambient_coords(deg, deg.basis[j]);
      for (qalg::Index r = 0; r < col.size(); ++r)
        if (col[r] != 0) m.set(r, j, col[r]);
    }
    deg.solve = std::move(m);
    if (!deg.basis.empty()) cx.degrees_.emplace(0, std::move(deg));
  }
  return cx;
}

HomologyResult::HomologyResult(DglComplex cx, int lo, int hi)
    : cx_(std::move(cx)), lo_(lo), hi_(hi) {
  auto spaces = qalg::chain_homology(cx_.slice(), lo, hi);
  for (auto& [p, space] : spaces) {
    std::vector<LieElement> reps;
    for (const auto& v : space.representatives()) reps.push_back(cx_.from_coords(p, v));
    reps_.emplace(p, std::move(reps));
  }
  spaces_ = std::move(spaces);
}

qalg::Index HomologyResult::dim(int p) const {
  auto it = spaces_.find(p);
  return it == spaces_.end() ? 0 : it->second.dim();
}

std::vector<LieElement> HomologyResult::representatives(int p) const {
  auto it = reps_.find(p);
  return it == reps_.end() ? std::vector<LieElement>{} : it->second;
}

const LieElement& HomologyResult::representative(int p, qalg::Index i) const {
  return reps_.at(p).at(i);
}

qalg::Vec HomologyResult::coords(int p, const LieElement& cycle) const {
  auto it = spaces_.find(p);
  if (it == spaces_.end()) {
    if (!cycle.zero()) throw InternalError("cycle in a degree outside the homology window");
    return {};
  }
  return it->second.coords(cx_.coords(p, cycle));
}

LieElement HomologyResult::class_element(int p, const qalg::Vec& h) const {
  LieElement e = cx_.algebra().zero();
  const auto& reps = reps_.at(p);
  if (h.size() != reps.size()) throw InternalError("homology coordinate mismatch");
  for (qalg::Index i = 0; i < h.size(); ++i) {
    if (h[i] == 0) continue;
    LieElement t = reps[i];
    t *= h[i];
    e += t;
  }
  return e;
}

FiniteGradedLie HomologyResult::induced_lie() const {
  FiniteGradedLie G;
  for (int p = lo_; p <= hi_; ++p) G.set_dim(p, dim(p));
  for (int p = lo_; p <= hi_; ++p) {
    for (int q = lo_; q <= hi_; ++q) {
      if (p + q < lo_ || p + q > hi_) continue;
      for (qalg::Index i = 0; i < dim(p); ++i) {
        for (qalg::Index j = 0; j < dim(q); ++j) {
          LieElement br = normalize_bracket(representative(p, i), representative(q, j));
          G.set_bracket(p, i, q, j, coords(p + q, br));
        }
      }
    }
  }
  return G;
}

HomologyResult dgl_homology(const Cdgl& L, int lo, int hi) {
  return HomologyResult(DglComplex::from_cdgl(L, lo, hi), lo, hi);
}

HomologyResult dgl_homology(const Component& c, int lo, int hi) {
  return HomologyResult(DglComplex::from_component(c, lo, hi), std::max(0, lo), hi);
}

qalg::Index FiniteGradedLie::dim(int p) const {
  auto it = dims_.find(p);
  return it == dims_.end() ? 0 : it->second;
}

void FiniteGradedLie::set_bracket(int p, qalg::Index i, int q, qalg::Index j, qalg::Vec v) {
  bool nonzero = false;
  for (const auto& x : v)
    if (x != 0) nonzero = true;
  if (nonzero) table_[{p, i, q, j}] = std::move(v);
}

qalg::Vec FiniteGradedLie::bracket(int p, qalg::Index i, int q, qalg::Index j) const {
  auto it = table_.find({p, i, q, j});
  if (it != table_.end()) return it->second;
  return qalg::Vec(dim(p + q), Rational(0));
}

qalg::Vec FiniteGradedLie::bracket_vec(int p, const qalg::Vec& a, int q,
                                       const qalg::Vec& b) const {
  qalg::Vec out(dim(p + q), Rational(0));
  for (qalg::Index i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (qalg::Index j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      qalg::Vec piece = bracket(p, i, q, j);
      for (qalg::Index r = 0; r < out.size(); ++r) out[r] += a[i] * b[j] * piece[r];
    }
  }
  return out;
}

namespace {

using Subspaces = std::map<int, std::vector<qalg::Vec>>;

std::map<int, qalg::Index> span_dims(const Subspaces& s) {
  std::map<int, qalg::Index> out;
  for (const auto& [p, vecs] : s)
    if (!vecs.empty()) out[p] = vecs.size();
  return out;
}

Subspaces reduce_spans(const FiniteGradedLie& G, const std::map<int, std::vector<qalg::Vec>>& raw) {
  Subspaces out;
  for (const auto& [p, vecs] : raw) {
    qalg::SpanBuilder span(G.dim(p));
    std::vector<qalg::Vec> kept;
    for (const auto& v : vecs)
      if (span.insert(v)) kept.push_back(v);
    if (!kept.empty()) out.emplace(p, std::move(kept));
  }
  return out;
}

bool spans_empty(const Subspaces& s) {
  for (const auto& [p, vecs] : s)
    if (!vecs.empty()) return false;
  return true;
}

}  // namespace

LcsInfo lower_central_series(const FiniteGradedLie& G, int lo, int hi) {
  LcsInfo info;
  Subspaces cur;
  for (const auto& [p, n] : G.dims()) {
    if (p < lo || p > hi || n == 0) continue;
    std::vector<qalg::Vec> unit;
    for (qalg::Index i = 0; i < n; ++i) {
      qalg::Vec v(n, Rational(0));
      v[i] = 1;
      unit.push_back(std::move(v));
    }
    cur.emplace(p, std::move(unit));
  }
  info.term_dims.push_back(span_dims(cur));

  while (!spans_empty(cur)) {
    std::map<int, std::vector<qalg::Vec>> next_raw;
    for (const auto& [p, np] : G.dims()) {
      if (np == 0) continue;
      for (qalg::Index i = 0; i < np; ++i) {
        qalg::Vec e(np, Rational(0));
        e[i] = 1;
        for (const auto& [q, vecs] : cur) {
          const int r = p + q;
          if (r < lo || r > hi) continue;
          for (const auto& v : vecs) {
            qalg::Vec w = G.bracket_vec(p, e, q, v);
            bool nz = false;
            for (const auto& x : w)
              if (x != 0) nz = true;
            if (nz) next_raw[r].push_back(std::move(w));
          }
        }
        e[i] = 0;
      }
    }
    Subspaces next = reduce_spans(G, next_raw);
    if (span_dims(next) == span_dims(cur)) {
      // Stable nonzero series: not nilpotent.
      info.nilpotent = false;
      info.cls = 0;
      return info;
    }
    info.term_dims.push_back(span_dims(next));
    cur = std::move(next);
  }
  info.nilpotent = true;
  info.cls = static_cast<int>(info.term_dims.size()) - 1;
  return info;
}

NilpotencyVerdict is_degreewise_nilpotent(const FiniteGradedLie& G, int lo, int hi) {
  NilpotencyVerdict v;
  v.lcs = lower_central_series(G, lo, hi);
  v.nilpotent = v.lcs.nilpotent;
  v.cls = v.lcs.cls;
  return v;
}

namespace {

// Nilpotency of the degree-0 part acting on degree p by ad; returns the
// smallest n with (ad H0)^n H_p = 0, or nullopt if the chain stabilizes.
std::optional<int> action_class(const FiniteGradedLie& G, int p) {
  const qalg::Index n0 = G.dim(0);
  const qalg::Index np = G.dim(p);
  if (np == 0) return 0;
  std::vector<qalg::Vec> cur;
  for (qalg::Index i = 0; i < np; ++i) {
    qalg::Vec v(np, Rational(0));
    v[i] = 1;
    cur.push_back(std::move(v));
  }
  int steps = 0;
  while (!cur.empty()) {
    std::vector<qalg::Vec> raw;
    for (qalg::Index i = 0; i < n0; ++i) {
      qalg::Vec e(n0, Rational(0));
      e[i] = 1;
      for (const auto& v : cur) raw.push_back(G.bracket_vec(0, e, p, v));
    }
    qalg::SpanBuilder span(np);
    std::vector<qalg::Vec> next;
    for (auto& v : raw)
      if (span.insert(v)) next.push_back(v);
    if (next.size() == cur.size()) {
      qalg::SpanBuilder old(np);
      for (const auto& v : cur) old.insert(v);
      bool same = true;
      for (const auto& v : next)
        if (!old.contains(v)) same = false;
      if (same) return std::nullopt;
    }
    cur = std::move(next);
    ++steps;
  }
  return steps;
}

}  // namespace

HomNilpotence homological_nilpotence(const FiniteGradedLie& H, int lo, int hi) {
  HomNilpotence out;

  // Route (iii): degreewise LCS of the whole algebra.
  NilpotencyVerdict route3 = is_degreewise_nilpotent(H, lo, hi);

  // Route (ii): H0 nilpotent as a Lie algebra and acting nilpotently.
  FiniteGradedLie h0;
  h0.set_dim(0, H.dim(0));
  for (qalg::Index i = 0; i < H.dim(0); ++i)
    for (qalg::Index j = 0; j < H.dim(0); ++j) h0.set_bracket(0, i, 0, j, H.bracket(0, i, 0, j));
  NilpotencyVerdict h0n = is_degreewise_nilpotent(h0, 0, 0);

  bool acts = true;
  int act_cls = 0;
  for (int p = lo; p <= hi; ++p) {
    auto c = action_class(H, p);
    if (!c) {
      acts = false;
      break;
    }
    act_cls = std::max(act_cls, *c);
  }
  const bool route2 = h0n.nilpotent && acts;

  if (route2 != route3.nilpotent)
    throw InternalError("nilpotency routes (ii) and (iii) disagree");

  out.nilpotent = route3.nilpotent;
  out.class_degreewise = route3.cls;
  out.class_h0 = h0n.cls;
  out.action_class = act_cls;
  return out;
}

HomNilpotence is_homologically_nilpotent(const Cdgl& L, int lo, int hi) {
  return homological_nilpotence(dgl_homology(L, lo, hi).induced_lie(), lo, hi);
}

HomNilpotence is_homologically_nilpotent(const Component& c, int lo, int hi) {
  return homological_nilpotence(dgl_homology(c, lo, hi).induced_lie(), std::max(0, lo), hi);
}

}  // namespace lietower::cdgl
