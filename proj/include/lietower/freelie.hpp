#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lietower/rational.hpp"

namespace lietower::freelie {

using GenIndex = std::uint16_t;

struct Generator {
  std::string name;
  int degree = 0;  // homological degree
  int upper = 1;   // upper (word-length style) weight; 1 unless set explicitly
};

// Ordered graded alphabet. The order is (degree, name), fixed at construction
// and immutable afterwards; all words refer to generators by index.
class GeneratorSet {
 public:
  explicit GeneratorSet(std::vector<Generator> gens);

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](GenIndex i) const { return gens_.at(i); }
  std::optional<GenIndex> find(const std::string& name) const;

  bool operator==(const GeneratorSet& o) const;

 private:
  std::vector<Generator> gens_;
  std::map<std::string, GenIndex> index_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

GeneratorSetPtr make_generators(std::vector<Generator> gens);

using Word = std::vector<GenIndex>;

// Word order: first by length, then lexicographically by generator index.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

int word_degree(const GeneratorSet& gens, const Word& w);
int word_upper(const GeneratorSet& gens, const Word& w);
bool is_lyndon(const Word& w);
// Standard factorization of a Lyndon word of length >= 2: the right factor is
// the lexicographically least proper suffix.
std::pair<Word, Word> standard_factorization(const Word& w);
// All Lyndon words over `letters` generators of exact length `len`, sorted.
std::vector<Word> lyndon_words(std::size_t letters, std::size_t len);

// A normal-form basis bracket of the free graded Lie algebra: the standard
// bracketing b(w) of a Lyndon word w, or the square [b(w), b(w)] for w of odd
// homological degree. `word` is the underlying associative word (w or ww).
struct BasisBracket {
  Word word;
  bool square = false;

  std::size_t length() const { return word.size(); }
  Word half() const { return Word(word.begin(), word.begin() + word.size() / 2); }

  friend bool operator==(const BasisBracket& a, const BasisBracket& b) {
    return a.square == b.square && a.word == b.word;
  }
  friend bool operator<(const BasisBracket& a, const BasisBracket& b) {
    WordLess less;
    if (less(a.word, b.word)) return true;
    if (less(b.word, a.word)) return false;
    return a.square < b.square;
  }
};

int degree_of(const GeneratorSet& gens, const BasisBracket& b);
int upper_of(const GeneratorSet& gens, const BasisBracket& b);
std::string bracket_to_string(const GeneratorSet& gens, const BasisBracket& b);

// Element of the free associative algebra T(V): finite Q-combination of words.
class TensorElement {
 public:
  explicit TensorElement(GeneratorSetPtr gens) : gens_(std::move(gens)) {}

  const GeneratorSetPtr& generators() const { return gens_; }
  const std::map<Word, Rational, WordLess>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  void add(const Word& w, const Rational& c);
  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  TensorElement& operator*=(const Rational& c);

  // Concatenation product, discarding words longer than trunc.
  TensorElement concat(const TensorElement& rhs, std::size_t trunc) const;
  TensorElement truncated(std::size_t trunc) const;

 private:
  GeneratorSetPtr gens_;
  std::map<Word, Rational, WordLess> terms_;
};

TensorElement word_element(GeneratorSetPtr gens, const Word& w, const Rational& c = Rational(1));

// Element of L(V)/L^{>N}: combination of normal basis brackets, all of word
// length <= N. Mixed homological degrees are allowed; bookkeeping is per term.
class LieElement {
 public:
  LieElement(GeneratorSetPtr gens, int trunc) : gens_(std::move(gens)), trunc_(trunc) {}

  const GeneratorSetPtr& generators() const { return gens_; }
  int truncation() const { return trunc_; }
  const std::map<BasisBracket, Rational>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  void add(const BasisBracket& b, const Rational& c);  // drops lengths > trunc
  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  bool operator==(const LieElement& o) const;

  bool homogeneous() const;           // all terms of one homological degree
  std::optional<int> degree() const;  // degree if homogeneous and nonzero
  LieElement truncated(int new_trunc) const;
  LieElement upper_truncated(int max_upper) const;
  LieElement linear_part() const;  // length-1 terms only

  std::string str() const;

 private:
  GeneratorSetPtr gens_;
  int trunc_;
  std::map<BasisBracket, Rational> terms_;
};

LieElement generator_element(GeneratorSetPtr gens, GenIndex g, int trunc);
LieElement zero_element(GeneratorSetPtr gens, int trunc);

// Tensor expansion of normal-form data (cached per alphabet).
TensorElement expand(GeneratorSetPtr gens, const BasisBracket& b);
TensorElement expand(const LieElement& e);

// Inverse of `expand` on the Lie subspace: triangular projection onto the
// normal basis. Throws InternalError if t is not the expansion of a Lie
// element of word length <= trunc.
LieElement lie_project(const TensorElement& t, int trunc);

// Graded bracket, rewritten into the normal basis; words longer than the
// common truncation order are discarded.
LieElement normalize_bracket(const LieElement& u, const LieElement& v);

// Basis of the length-q component, optionally filtered by homological degree.
std::vector<BasisBracket> lyndon_basis(GeneratorSetPtr gens, std::size_t length,
                                       std::optional<int> degree_filter = std::nullopt);

// Dimension of the length-q component by the independent tensor-algebra
// route: expand the right-nested spanning set and take the exact rank.
std::size_t graded_witt_dimension(GeneratorSetPtr gens, std::size_t length);

// Necklace form of the Witt formula; valid for alphabets concentrated in
// even homological degree.
std::size_t witt_formula(std::size_t letters, std::size_t length);

// Dynkin projection theta(x1...xm) = (1/m)[[..[x1,x2],..],xm], word by word.
LieElement dynkin_project(const TensorElement& t, int trunc);

// Extends a degree-(-1) map on letters (g -> images[g], a tensor element) to
// an odd derivation of T(V): Koszul sign by the degree of the prefix. Words
// longer than trunc are discarded.
TensorElement apply_odd_derivation(const TensorElement& t,
                                   const std::vector<const TensorElement*>& images,
                                   std::size_t trunc);

// Extends a degree-0 map on letters to an algebra map T(V) -> T(W): letter g
// maps to images[g], a tensor element over `target` (zero allowed; no signs).
TensorElement apply_substitution(const TensorElement& t, GeneratorSetPtr target,
                                 const std::vector<const TensorElement*>& images,
                                 std::size_t trunc);

// Letter-for-letter renaming along a strictly monotone, degree-preserving
// index map into another alphabet. Normal forms are preserved, so this is a
// plain key rewrite.
LieElement relabel(const LieElement& e, GeneratorSetPtr target,
                   const std::vector<GenIndex>& index_map, int trunc);

}  // namespace lietower::freelie
