#include "lietower/freelie.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lietower/errors.hpp"
#include "lietower/sparse.hpp"

namespace lietower::freelie {

GeneratorSet::GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
  std::stable_sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.name < b.name;
  });
  for (GenIndex i = 0; i < gens_.size(); ++i) {
    if (!index_.emplace(gens_[i].name, i).second)
      throw InputError("duplicate generator name '" + gens_[i].name + "'");
  }
}

std::optional<GenIndex> GeneratorSet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool GeneratorSet::operator==(const GeneratorSet& o) const {
  if (gens_.size() != o.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree ||
        gens_[i].upper != o.gens_[i].upper)
      return false;
  }
  return true;
}

GeneratorSetPtr make_generators(std::vector<Generator> gens) {
  return std::make_shared<const GeneratorSet>(std::move(gens));
}

int word_degree(const GeneratorSet& gens, const Word& w) {
  int d = 0;
  for (GenIndex g : w) d += gens[g].degree;
  return d;
}

int word_upper(const GeneratorSet& gens, const Word& w) {
  int u = 0;
  for (GenIndex g : w) u += gens[g].upper;
  return u;
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) return false;
  }
  return true;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2) throw InternalError("standard_factorization of a letter");
  std::size_t best = 1;
  for (std::size_t i = 2; i < w.size(); ++i) {
    if (std::lexicographical_compare(w.begin() + i, w.end(), w.begin() + best, w.end())) best = i;
  }
  return {Word(w.begin(), w.begin() + best), Word(w.begin() + best, w.end())};
}

std::vector<Word> lyndon_words(std::size_t letters, std::size_t len) {
  std::vector<Word> out;
  if (letters == 0 || len == 0) return out;
  Word w{0};
  while (true) {
    if (w.size() == len) out.push_back(w);
    // Duval: extend periodically to the cap, then increment the last
    // incrementable position.
    Word t;
    for (std::size_t i = 0; i < len; ++i) t.push_back(w[i % w.size()]);
    while (!t.empty() && t.back() == letters - 1) t.pop_back();
    if (t.empty()) break;
    ++t.back();
    w = t;
  }
  return out;
}

int degree_of(const GeneratorSet& gens, const BasisBracket& b) {
  return word_degree(gens, b.word);
}

int upper_of(const GeneratorSet& gens, const BasisBracket& b) {
  return word_upper(gens, b.word);
}

namespace {

std::string lyndon_tree_string(const GeneratorSet& gens, const Word& w) {
  if (w.size() == 1) return gens[w[0]].name;
  auto [u, v] = standard_factorization(w);
  return "[" + lyndon_tree_string(gens, u) + "," + lyndon_tree_string(gens, v) + "]";
}

}  // namespace

std::string bracket_to_string(const GeneratorSet& gens, const BasisBracket& b) {
  if (b.square) {
    std::string h = lyndon_tree_string(gens, b.half());
    return "[" + h + "," + h + "]";
  }
  return lyndon_tree_string(gens, b.word);
}

void TensorElement::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

TensorElement TensorElement::concat(const TensorElement& rhs, std::size_t trunc) const {
  TensorElement out(gens_);
  for (const auto& [w1, c1] : terms_) {
    if (w1.size() > trunc) continue;
    for (const auto& [w2, c2] : rhs.terms_) {
      if (w2.size() > trunc || w1.size() > trunc - w2.size()) continue;
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.add(w, c1 * c2);
    }
  }
  return out;
}

TensorElement TensorElement::truncated(std::size_t trunc) const {
  TensorElement out(gens_);
  for (const auto& [w, c] : terms_)
    if (w.size() <= trunc) out.add(w, c);
  return out;
}

TensorElement word_element(GeneratorSetPtr gens, const Word& w, const Rational& c) {
  TensorElement t(std::move(gens));
  t.add(w, c);
  return t;
}

void LieElement::add(const BasisBracket& b, const Rational& c) {
  if (c == 0 || static_cast<int>(b.length()) > trunc_) return;
  auto it = terms_.find(b);
  if (it == terms_.end()) {
    terms_.emplace(b, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LieElement& LieElement::operator+=(const LieElement& o) {
  for (const auto& [b, c] : o.terms_) add(b, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  for (const auto& [b, c] : o.terms_) add(b, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, v] : terms_) v *= c;
  return *this;
}

bool LieElement::operator==(const LieElement& o) const {
  if (trunc_ != o.trunc_) return false;
  if (gens_ != o.gens_ && !(*gens_ == *o.gens_)) return false;
  return terms_ == o.terms_;
}

bool LieElement::homogeneous() const {
  std::optional<int> d;
  for (const auto& [b, c] : terms_) {
    int bd = degree_of(*gens_, b);
    if (!d)
      d = bd;
    else if (*d != bd)
      return false;
  }
  return true;
}

std::optional<int> LieElement::degree() const {
  if (terms_.empty() || !homogeneous()) return std::nullopt;
  return degree_of(*gens_, terms_.begin()->first);
}

LieElement LieElement::truncated(int new_trunc) const {
  LieElement out(gens_, new_trunc);
  for (const auto& [b, c] : terms_) out.add(b, c);
  return out;
}

LieElement LieElement::upper_truncated(int max_upper) const {
  LieElement out(gens_, trunc_);
  for (const auto& [b, c] : terms_)
    if (upper_of(*gens_, b) <= max_upper) out.add(b, c);
  return out;
}

LieElement LieElement::linear_part() const {
  LieElement out(gens_, trunc_);
  for (const auto& [b, c] : terms_)
    if (b.length() == 1) out.add(b, c);
  return out;
}

std::string LieElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (a != 1) os << to_string(a) << " ";
    os << bracket_to_string(*gens_, b);
    first = false;
  }
  return os.str();
}

LieElement generator_element(GeneratorSetPtr gens, GenIndex g, int trunc) {
  LieElement e(gens, trunc);
  e.add(BasisBracket{Word{g}, false}, Rational(1));
  return e;
}

LieElement zero_element(GeneratorSetPtr gens, int trunc) { return LieElement(std::move(gens), trunc); }

namespace {

// Graded commutator of two tensor elements that are homogeneous of the given
// homological degrees. No length truncation: expansions are length-pure.
TensorElement graded_comm(const TensorElement& a, int da, const TensorElement& b, int db,
                          std::size_t trunc) {
  TensorElement out = a.concat(b, trunc);
  TensorElement ba = b.concat(a, trunc);
  if ((da % 2 != 0) && (db % 2 != 0))
    out += ba;
  else
    out -= ba;
  return out;
}

struct ExpansionCache {
  GeneratorSetPtr keepalive;
  std::map<BasisBracket, TensorElement> memo;
};

std::map<const GeneratorSet*, ExpansionCache>& expansion_caches() {
  static std::map<const GeneratorSet*, ExpansionCache> caches;
  return caches;
}

const std::size_t kNoTrunc = static_cast<std::size_t>(-1);

const TensorElement& expand_cached(const GeneratorSetPtr& gens, const BasisBracket& b) {
  auto& cache = expansion_caches()[gens.get()];
  cache.keepalive = gens;
  auto it = cache.memo.find(b);
  if (it != cache.memo.end()) return it->second;

  TensorElement t(gens);
  if (b.square) {
    BasisBracket h{b.half(), false};
    const TensorElement e = expand_cached(gens, h);
    int d = word_degree(*gens, h.word);
    t = graded_comm(e, d, e, d, kNoTrunc);
  } else if (b.word.size() == 1) {
    t = word_element(gens, b.word);
  } else {
    auto [u, v] = standard_factorization(b.word);
    const TensorElement eu = expand_cached(gens, BasisBracket{u, false});
    const TensorElement ev = expand_cached(gens, BasisBracket{v, false});
    t = graded_comm(eu, word_degree(*gens, u), ev, word_degree(*gens, v), kNoTrunc);
  }
  return cache.memo.emplace(b, std::move(t)).first->second;
}

}  // namespace

TensorElement expand(GeneratorSetPtr gens, const BasisBracket& b) {
  return expand_cached(gens, b);
}

TensorElement expand(const LieElement& e) {
  TensorElement t(e.generators());
  for (const auto& [b, c] : e.terms()) {
    TensorElement eb = expand_cached(e.generators(), b);
    eb *= c;
    t += eb;
  }
  return t;
}

LieElement lie_project(const TensorElement& t, int trunc) {
  const GeneratorSetPtr& gens = t.generators();
  TensorElement rest = t.truncated(static_cast<std::size_t>(trunc));
  LieElement out(gens, trunc);
  while (!rest.zero()) {
    const auto& [w, c] = *rest.terms().begin();
    BasisBracket b;
    Rational lead(1);
    if (is_lyndon(w)) {
      b = BasisBracket{w, false};
    } else {
      const std::size_t n = w.size();
      Word half(w.begin(), w.begin() + n / 2);
      if (n % 2 == 0 && std::equal(w.begin() + n / 2, w.end(), half.begin()) && is_lyndon(half) &&
          (word_degree(*gens, half) % 2 != 0)) {
        b = BasisBracket{w, true};
        lead = 2;
      } else {
        throw InternalError("lie_project: leading word is not in the Lie subspace");
      }
    }
    Rational coeff = c / lead;
    const Word leading = w;
    TensorElement eb = expand_cached(gens, b);
    eb *= coeff;
    rest -= eb;
    out.add(b, coeff);
    if (!rest.zero() && !WordLess{}(leading, rest.terms().begin()->first))
      throw InternalError("lie_project failed to eliminate the leading word");
  }
  return out;
}

LieElement normalize_bracket(const LieElement& u, const LieElement& v) {
  if (u.truncation() != v.truncation())
    throw InputError("normalize_bracket: mismatched truncation orders");
  const GeneratorSetPtr& gens = u.generators();
  if (gens != v.generators() && !(*gens == *v.generators()))
    throw InputError("normalize_bracket: mismatched algebras");
  const std::size_t trunc = static_cast<std::size_t>(u.truncation());

  // Split into homological-degree components so each pair takes one Koszul
  // sign, then expand, commutate and project once.
  auto split = [&](const LieElement& e) {
    std::map<int, TensorElement> parts;
    for (const auto& [b, c] : e.terms()) {
      int d = degree_of(*gens, b);
      auto [it, fresh] = parts.try_emplace(d, gens);
      TensorElement eb = expand_cached(gens, b);
      eb *= c;
      it->second += eb;
    }
    return parts;
  };

  TensorElement acc(gens);
  for (const auto& [du, tu] : split(u))
    for (const auto& [dv, tv] : split(v)) acc += graded_comm(tu, du, tv, dv, trunc);
  return lie_project(acc, u.truncation());
}

std::vector<BasisBracket> lyndon_basis(GeneratorSetPtr gens, std::size_t length,
                                       std::optional<int> degree_filter) {
  std::vector<BasisBracket> out;
  for (const Word& w : lyndon_words(gens->size(), length)) {
    BasisBracket b{w, false};
    if (degree_filter && degree_of(*gens, b) != *degree_filter) continue;
    out.push_back(std::move(b));
  }
  if (length % 2 == 0 && length > 0) {
    for (const Word& w : lyndon_words(gens->size(), length / 2)) {
      if (word_degree(*gens, w) % 2 == 0) continue;
      Word full = w;
      full.insert(full.end(), w.begin(), w.end());
      BasisBracket b{full, true};
      if (degree_filter && degree_of(*gens, b) != *degree_filter) continue;
      out.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Right-nested bracketing of a plain word, expanded in the tensor algebra.
// Used as the spanning set for the rank oracle; independent of the Lyndon
// machinery above.
TensorElement right_nested_expansion(const GeneratorSetPtr& gens, const Word& w) {
  TensorElement t = word_element(gens, Word{w.back()});
  int dt = (*gens)[w.back()].degree;
  for (std::size_t i = w.size() - 1; i-- > 0;) {
    TensorElement letter = word_element(gens, Word{w[i]});
    t = graded_comm(letter, (*gens)[w[i]].degree, t, dt, kNoTrunc);
    dt += (*gens)[w[i]].degree;
  }
  return t;
}

}  // namespace

std::size_t graded_witt_dimension(GeneratorSetPtr gens, std::size_t length) {
  if (length == 0) return 0;
  const std::size_t g = gens->size();
  if (g == 0) return 0;
  double est = 1;
  for (std::size_t i = 0; i < length; ++i) est *= static_cast<double>(g);
  if (est > 4.0e6) throw InputError("graded_witt_dimension: alphabet too large for the oracle");

  // Expansions of the spanning set stay inside one anagram class, so the
  // rank splits as a sum over letter multisets.
  std::map<Word, std::vector<Word>> classes;  // sorted letters -> words
  Word w(length, 0);
  while (true) {
    Word key = w;
    std::sort(key.begin(), key.end());
    classes[key].push_back(w);
    std::size_t i = length;
    while (i > 0 && w[i - 1] == g - 1) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }

  std::size_t total = 0;
  for (const auto& [key, words] : classes) {
    std::map<Word, qalg::Index> columns;
    std::vector<std::map<qalg::Index, Rational>> rows;
    for (const Word& word : words) {
      TensorElement t = right_nested_expansion(gens, word);
      if (t.zero()) continue;
      std::map<qalg::Index, Rational> row;
      for (const auto& [tw, c] : t.terms()) {
        auto [it, fresh] = columns.try_emplace(tw, columns.size());
        row[it->second] = c;
      }
      rows.push_back(std::move(row));
    }
    qalg::SparseMatrix m(rows.size(), columns.size());
    for (qalg::Index r = 0; r < rows.size(); ++r)
      for (const auto& [c, v] : rows[r]) m.set(r, c, v);
    total += qalg::rank(m);
  }
  return total;
}

namespace {

std::vector<std::size_t> divisors(std::size_t q) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= q; ++d)
    if (q % d == 0) out.push_back(d);
  return out;
}

int moebius(std::size_t n) {
  int mu = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

std::size_t witt_formula(std::size_t letters, std::size_t length) {
  if (length == 0) return 0;
  long long total = 0;
  for (std::size_t d : divisors(length)) {
    long long pw = 1;
    for (std::size_t i = 0; i < length / d; ++i) pw *= static_cast<long long>(letters);
    total += moebius(d) * pw;
  }
  return static_cast<std::size_t>(total / static_cast<long long>(length));
}

LieElement dynkin_project(const TensorElement& t, int trunc) {
  const GeneratorSetPtr& gens = t.generators();
  TensorElement acc(gens);
  for (const auto& [w, c] : t.terms()) {
    if (static_cast<int>(w.size()) > trunc) continue;
    TensorElement nested = word_element(gens, Word{w[0]});
    int dn = (*gens)[w[0]].degree;
    for (std::size_t i = 1; i < w.size(); ++i) {
      TensorElement letter = word_element(gens, Word{w[i]});
      nested = graded_comm(nested, dn, letter, (*gens)[w[i]].degree, kNoTrunc);
      dn += (*gens)[w[i]].degree;
    }
    nested *= c / Rational(static_cast<long>(w.size()));
    acc += nested;
  }
  return lie_project(acc, trunc);
}

TensorElement apply_odd_derivation(const TensorElement& t,
                                   const std::vector<const TensorElement*>& images,
                                   std::size_t trunc) {
  const GeneratorSetPtr& gens = t.generators();
  TensorElement out(gens);
  for (const auto& [w, c] : t.terms()) {
    int prefix_deg = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const TensorElement* img = images.at(w[i]);
      if (img != nullptr && !img->zero()) {
        const Rational sign((prefix_deg % 2 != 0) ? -1 : 1);
        for (const auto& [iw, ic] : img->terms()) {
          if (w.size() - 1 + iw.size() > trunc) continue;
          Word nw(w.begin(), w.begin() + i);
          nw.insert(nw.end(), iw.begin(), iw.end());
          nw.insert(nw.end(), w.begin() + i + 1, w.end());
          out.add(nw, c * sign * ic);
        }
      }
      prefix_deg += (*gens)[w[i]].degree;
    }
  }
  return out;
}

TensorElement apply_substitution(const TensorElement& t, GeneratorSetPtr target,
                                 const std::vector<const TensorElement*>& images,
                                 std::size_t trunc) {
  TensorElement out(target);
  for (const auto& [w, c] : t.terms()) {
    TensorElement acc = word_element(target, Word{});
    acc *= c;
    for (GenIndex g : w) {
      if (acc.zero()) break;
      const TensorElement* img = images.at(g);
      if (img == nullptr) {
        acc = TensorElement(target);
        break;
      }
      acc = acc.concat(*img, trunc);
    }
    out += acc;
  }
  return out;
}

LieElement relabel(const LieElement& e, GeneratorSetPtr target,
                   const std::vector<GenIndex>& index_map, int trunc) {
  const GeneratorSet& src = *e.generators();
  for (std::size_t i = 0; i + 1 < index_map.size(); ++i)
    if (index_map[i] >= index_map[i + 1]) throw InternalError("relabel: index map not monotone");
  for (std::size_t i = 0; i < index_map.size(); ++i)
    if (src[static_cast<GenIndex>(i)].degree != (*target)[index_map[i]].degree)
      throw InternalError("relabel: degree mismatch");

  LieElement out(target, trunc);
  for (const auto& [b, c] : e.terms()) {
    Word w;
    w.reserve(b.word.size());
    for (GenIndex g : b.word) w.push_back(index_map.at(g));
    out.add(BasisBracket{std::move(w), b.square}, c);
  }
  return out;
}

}  // namespace lietower::freelie
