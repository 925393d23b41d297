#include "lietower/simplex_model.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "lietower/errors.hpp"
#include "lietower/fastlie.hpp"

namespace lietower::lsc {

using freelie::BasisBracket;
using freelie::GeneratorSetPtr;
using freelie::TensorElement;
using freelie::Word;

std::string subset_name(const std::vector<int>& subset) {
  std::string name = "a";
  for (int i : subset) name += static_cast<char>('0' + i);
  return name;
}

namespace {

std::vector<std::vector<int>> nonempty_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
    std::vector<int> s;
    for (int i = 0; i <= n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

LieElement mc_self_bracket(const Cdgl& L, const LieElement& v) {
  LieElement d = freelie::normalize_bracket(v, v);
  d *= Rational(-1, 2);
  return d;
}

}  // namespace

GenIndex SimplexModel::generator_of(const std::vector<int>& subset) const {
  auto idx = algebra.generators()->find(subset_name(subset));
  if (!idx) throw InternalError("simplex model: unknown face generator");
  return *idx;
}

LieElement SimplexModel::top() const {
  std::vector<int> full(n + 1);
  for (int i = 0; i <= n; ++i) full[i] = i;
  return algebra.gen(generator_of(full));
}

std::vector<Rational> bernoulli_numbers(int count) {
  std::vector<Rational> b(count);
  std::vector<std::vector<Rational>> choose(count + 2, std::vector<Rational>(count + 2, Rational(0)));
  for (int i = 0; i <= count + 1; ++i) {
    choose[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : Rational(0));
  }
  for (int m = 0; m < count; ++m) {
    if (m == 0) {
      b[0] = 1;
      continue;
    }
    Rational acc(0);
    for (int j = 0; j < m; ++j) acc += choose[m + 1][j] * b[j];
    b[m] = -acc / choose[m + 1][m];
  }
  return b;
}

Cdgl ls_interval(int N) {
  if (N < 1) throw InputError("ls_interval: truncation must be >= 1");
  auto gens = freelie::make_generators({{"a0", -1}, {"a1", -1}, {"a01", 0}});
  Cdgl L(gens, N);
  LieElement a = L.gen("a0"), b = L.gen("a1"), x = L.gen("a01");
  L.set_differential(*gens->find("a0"), mc_self_bracket(L, a));
  L.set_differential(*gens->find("a1"), mc_self_bracket(L, b));
  L.mark_mc(*gens->find("a0"));
  L.mark_mc(*gens->find("a1"));

  LieElement dx = freelie::normalize_bracket(x, b);
  std::vector<Rational> B = bernoulli_numbers(N + 1);
  Rational kfact(1);
  LieElement ad_pow = b - a;  // ad_x^k (b - a), k = 0
  for (int k = 0; k <= N - 1; ++k) {
    if (k > 0) {
      ad_pow = freelie::normalize_bracket(x, ad_pow);
      kfact *= k;
    }
    if (B[k] == 0 || ad_pow.zero()) continue;
    LieElement term = ad_pow;
    term *= B[k] / kfact;
    dx += term;
  }
  L.set_differential(*gens->find("a01"), dx);
  return L;
}

namespace {

// Cone contraction at vertex 0 on the desuspended simplex chains:
// h(a_S) = a_{0 u S} when 0 is not in S, else 0; the harmonic projection
// sends every vertex to a_0 and everything else to 0.
struct ConeContraction {
  fastlie::PW vertex0;                              // a_0 as a length-1 packed word
  std::vector<bool> is_vertex;                      // per letter
  std::vector<std::optional<GenIndex>> lift;        // h on letters
  std::vector<int> parity;                          // letter degree mod 2

  static ConeContraction of(const SimplexModel& model);
};

ConeContraction ConeContraction::of(const SimplexModel& model) {
  const auto& gens = *model.algebra.generators();
  ConeContraction cone;
  cone.vertex0 = fastlie::pw_pack({model.generator_of({0})});
  cone.is_vertex.resize(gens.size());
  cone.lift.resize(gens.size());
  cone.parity.resize(gens.size());
  for (GenIndex g = 0; g < gens.size(); ++g) {
    cone.is_vertex[g] = gens[g].degree == -1;
    cone.parity[g] = gens[g].degree & 1;
    const std::string& name = gens[g].name;
    if (name.size() > 1 && name[1] == '0') continue;  // 0 already in S
    auto idx = gens.find("a0" + name.substr(1));
    if (!idx) throw InternalError("cone contraction: missing lifted generator");
    cone.lift[g] = idx;
  }
  return cone;
}

// Tensor-trick homotopy: sum_i pi^(i) (x) h (x) id, with Koszul signs for the
// odd operator h. The pi-prefix survives only while the prefix letters are
// vertices.
fastlie::Packed tensor_homotopy(const ConeContraction& cone, const fastlie::Packed& t) {
  using fastlie::PW;
  fastlie::Packed out;
  for (const auto& [w, c] : t.t) {
    const int len = fastlie::pw_len(w);
    PW pi_prefix = 0;  // length-0 word
    int prefix_parity = 0;
    for (int i = 0; i < len; ++i) {
      const GenIndex g = fastlie::pw_letter(w, i);
      if (cone.lift[g]) {
        constexpr PW kLetters = 0x00FFFFFFFFFFFFFFull;
        const PW lifted = (static_cast<PW>(1) << 56) |
                          (static_cast<PW>(*cone.lift[g]) << (8 * 6));
        const PW suffix = (((w & kLetters) << (8 * (i + 1))) & kLetters) |
                          (static_cast<PW>(len - i - 1) << 56);
        const PW nw = fastlie::pw_concat(fastlie::pw_concat(pi_prefix, lifted), suffix);
        out.append(nw, (prefix_parity != 0) ? -c : c);
      }
      if (!cone.is_vertex[g]) break;
      pi_prefix = fastlie::pw_concat(pi_prefix, cone.vertex0);
      prefix_parity ^= cone.parity[g];
    }
  }
  out.normalize();
  return out;
}

const SimplexModel& simplex_model_impl(int n, int N);

// Differential of the top generator, inherited from lower dimensions for the
// proper faces and solved length-by-length through the cone contraction for
// the top itself.
LieElement solve_top_differential(SimplexModel& model, int N) {
  const int n = model.n;
  Cdgl& L = model.algebra;
  const GeneratorSetPtr gens = L.generators();
  const GenIndex top = model.generator_of([&] {
    std::vector<int> full(n + 1);
    for (int i = 0; i <= n; ++i) full[i] = i;
    return full;
  }());

  // Linear part: alternating face sum.
  LieElement linear = L.zero();
  for (int j = 0; j <= n; ++j) {
    std::vector<int> face;
    for (int i = 0; i <= n; ++i)
      if (i != j) face.push_back(i);
    LieElement g = L.gen(model.generator_of(face));
    if (j % 2 != 0) g *= Rational(-1);
    linear += g;
  }
  L.set_differential(top, linear);

  ConeContraction cone = ConeContraction::of(model);
  fastlie::Context ctx = fastlie::Context::of(L);
  fastlie::Packed dtop = fastlie::pack_lie(linear);

  LieElement total = linear;
  for (int m = 2; m <= N; ++m) {
    // Residue: length-m part of d(d top) given the partial differential.
    fastlie::Packed residue = fastlie::derivation(ctx, dtop, m, m);
    residue.scale(fastlie::R64::of(-1));
    if (residue.zero()) continue;

    fastlie::Packed correction = fastlie::dynkin_tensor(ctx, tensor_homotopy(cone, residue));

    // The correction must solve the obstruction exactly: its linear-image
    // derivation is the length-m slice again.
    fastlie::Packed check = fastlie::derivation(ctx, correction, m, m);
    check -= residue;
    if (!check.zero())
      throw InternalError("simplex model: obstruction not solved at length " + std::to_string(m));

    total += fastlie::project_to_lie(gens, correction, N);
    dtop += correction;
    ctx.set_image(top, dtop);
  }
  L.set_differential(top, total);
  return total;
}

SimplexModel build_simplex_model(int n, int N) {
  if (n < 0) throw InputError("simplex dimension must be >= 0");
  if (n > kMaxSimplexDim)
    throw InputError("simplex dimension " + std::to_string(n) + " exceeds the supported limit " +
                     std::to_string(kMaxSimplexDim));

  std::vector<freelie::Generator> gens;
  for (const auto& s : nonempty_subsets(n))
    gens.push_back({subset_name(s), static_cast<int>(s.size()) - 2, 1});
  SimplexModel model{n, Cdgl(freelie::make_generators(std::move(gens)), N)};
  Cdgl& L = model.algebra;

  for (const auto& s : nonempty_subsets(n)) {
    GenIndex g = model.generator_of(s);
    if (s.size() == 1) {
      L.set_differential(g, mc_self_bracket(L, L.gen(g)));
      L.mark_mc(g);
      continue;
    }
    const int k = static_cast<int>(s.size()) - 1;
    if (k == n) continue;  // top handled afterwards
    // Pull the top differential of the k-simplex along the order isomorphism
    // {0..k} -> s; cofaces act by renaming, so normal forms transport as-is.
    const SimplexModel& lower = simplex_model_impl(k, N);
    std::vector<GenIndex> index_map(lower.algebra.generators()->size());
    for (const auto& t : nonempty_subsets(k)) {
      std::vector<int> image;
      for (int i : t) image.push_back(s[i]);
      index_map[lower.generator_of(t)] = model.generator_of(image);
    }
    LieElement lower_top = lower.algebra.d_of(lower.generator_of([&] {
      std::vector<int> full(k + 1);
      for (int i = 0; i <= k; ++i) full[i] = i;
      return full;
    }()));
    L.set_differential(g, freelie::relabel(lower_top, L.generators(), index_map, N));
  }

  if (n == 1) {
    Cdgl interval = ls_interval(N);
    // Same generator names and order; adopt the interval differential.
    L.set_differential(model.generator_of({0, 1}),
                       freelie::relabel(interval.d_of(*interval.generators()->find("a01")),
                                        L.generators(), {0, 1, 2}, N));
  } else if (n >= 2) {
    solve_top_differential(model, N);
  }
  return model;
}

const SimplexModel& simplex_model_impl(int n, int N) {
  static std::map<std::pair<int, int>, std::unique_ptr<SimplexModel>> memo;
  auto key = std::make_pair(n, N);
  auto it = memo.find(key);
  if (it == memo.end())
    it = memo.emplace(key, std::make_unique<SimplexModel>(build_simplex_model(n, N))).first;
  return *it->second;
}

}  // namespace

const SimplexModel& simplex_model(int n, int N) { return simplex_model_impl(n, N); }

LieElement CdglMorphism::apply(const LieElement& e) const {
  std::vector<TensorElement> expanded;
  std::vector<const TensorElement*> ptrs;
  expanded.reserve(images.size());
  for (const auto& img : images) expanded.push_back(freelie::expand(img));
  for (const auto& t : expanded) ptrs.push_back(&t);
  TensorElement out = freelie::apply_substitution(
      freelie::expand(e), target.generators(), ptrs, static_cast<std::size_t>(target.truncation()));
  return freelie::lie_project(out, target.truncation());
}

bool CdglMorphism::commutes_with_differentials() const {
  // Letter-map morphisms over packable alphabets compare in tensor form;
  // expansion is injective, so tensor equality is Lie equality.
  const bool packable = fastlie::engine_supports(*source.generators(), source.truncation()) &&
                        fastlie::engine_supports(*target.generators(), target.truncation()) &&
                        target.truncation() <= source.truncation();
  std::vector<std::optional<GenIndex>> letter_map(images.size());
  bool letters_only = packable;
  for (GenIndex g = 0; letters_only && g < images.size(); ++g) {
    if (images[g].zero()) continue;
    const auto& terms = images[g].terms();
    if (terms.size() == 1 && terms.begin()->first.length() == 1 &&
        terms.begin()->second == 1 && !terms.begin()->first.square)
      letter_map[g] = terms.begin()->first.word[0];
    else
      letters_only = false;
  }
  if (letters_only) {
    for (GenIndex g = 0; g < source.generators()->size(); ++g) {
      fastlie::Packed lhs = fastlie::substitute(fastlie::pack_lie(source.d_of(g)), letter_map);
      fastlie::Packed pruned;
      for (const auto& [w, c] : lhs.t)
        if (fastlie::pw_len(w) <= target.truncation()) pruned.append(w, c);
      fastlie::Packed rhs =
          letter_map[g] ? fastlie::pack_lie(target.d_of(*letter_map[g])) : fastlie::Packed{};
      pruned -= rhs;
      if (!pruned.zero()) return false;
    }
    return true;
  }

  for (GenIndex g = 0; g < source.generators()->size(); ++g) {
    LieElement lhs = apply(source.d_of(g));
    LieElement rhs = target.d(images[g]);
    lhs -= rhs;
    if (!lhs.zero()) return false;
  }
  return true;
}

CdglMorphism compose(const CdglMorphism& g, const CdglMorphism& f) {
  CdglMorphism out{f.source, g.target, {}};
  out.images.reserve(f.images.size());
  for (const auto& img : f.images) out.images.push_back(g.apply(img));
  return out;
}

CdglMorphism cosimplicial_operator(CosimplicialKind kind, int i, int n, int N) {
  if (kind == CosimplicialKind::coface) {
    if (i < 0 || i > n) throw InputError("coface index out of range");
    const SimplexModel& src = simplex_model(n - 1, N);
    const SimplexModel& tgt = simplex_model(n, N);
    CdglMorphism phi{src.algebra, tgt.algebra, {}};
    phi.images.assign(src.algebra.generators()->size(), tgt.algebra.zero());
    for (const auto& s : nonempty_subsets(n - 1)) {
      std::vector<int> image;
      for (int v : s) image.push_back(v < i ? v : v + 1);
      phi.images[src.generator_of(s)] = tgt.algebra.gen(tgt.generator_of(image));
    }
    return phi;
  }
  if (i < 0 || i > n - 1) throw InputError("codegeneracy index out of range");
  const SimplexModel& src = simplex_model(n, N);
  const SimplexModel& tgt = simplex_model(n - 1, N);
  CdglMorphism phi{src.algebra, tgt.algebra, {}};
  phi.images.assign(src.algebra.generators()->size(), tgt.algebra.zero());
  for (const auto& s : nonempty_subsets(n)) {
    bool collapsed = std::find(s.begin(), s.end(), i) != s.end() &&
                     std::find(s.begin(), s.end(), i + 1) != s.end();
    if (collapsed) continue;  // chain-level image is degenerate
    std::vector<int> image;
    for (int v : s) image.push_back(v <= i ? v : v - 1);
    phi.images[src.generator_of(s)] = tgt.algebra.gen(tgt.generator_of(image));
  }
  return phi;
}

}  // namespace lietower::lsc
