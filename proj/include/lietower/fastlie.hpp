#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lietower/cdgl.hpp"
#include "lietower/freelie.hpp"

// Packed fixed-width engine for the heavy Lawrence-Sullivan computations:
// words of length <= 7 over alphabets of < 256 generators packed into one
// uint64, coefficients as machine-integer rationals with overflow checks.
// Semantics match the generic freelie operations exactly.
namespace lietower::fastlie {

using freelie::GenIndex;
using freelie::Word;

constexpr int kMaxLen = 7;
constexpr std::size_t kMaxLetters = 255;

bool engine_supports(const freelie::GeneratorSet& gens, int trunc);

// Exact machine rational; operations throw InternalError on int64 overflow.
struct R64 {
  long long num = 0;
  long long den = 1;

  static R64 of(long long n, long long d = 1);
  static R64 from_mpq(const Rational& q);
  Rational to_mpq() const;

  bool zero() const { return num == 0; }
  R64 operator-() const { return R64{-num, den}; }
  friend R64 operator+(const R64& a, const R64& b);
  friend R64 operator*(const R64& a, const R64& b);
};

// Packed word: byte 7 = length, bytes 6..0 = letters from the left. Integer
// order coincides with (length, lex) order on words.
using PW = std::uint64_t;

inline int pw_len(PW p) { return static_cast<int>(p >> 56); }
inline GenIndex pw_letter(PW p, int i) {
  return static_cast<GenIndex>((p >> (8 * (6 - i))) & 0xFF);
}
PW pw_pack(const Word& w);
Word pw_unpack(PW p);
inline PW pw_concat(PW a, PW b) {
  const int la = pw_len(a), lb = pw_len(b);
  const PW letters_a = a & 0x00FFFFFFFFFFFFFFull;
  const PW letters_b = b & 0x00FFFFFFFFFFFFFFull;
  return (static_cast<PW>(la + lb) << 56) | letters_a | (letters_b >> (8 * la));
}

// Sorted, duplicate-free, zero-free term list.
class Packed {
 public:
  std::vector<std::pair<PW, R64>> t;

  bool zero() const { return t.empty(); }
  void append(PW w, const R64& c) { t.emplace_back(w, c); }
  void normalize();  // sort, merge, drop zeros
  Packed& operator+=(const Packed& o);
  Packed& operator-=(const Packed& o);
  void scale(const R64& c);
};

// Per-algebra packed tables: letter degrees and the packed expansions of the
// generator differentials, bucketed by word length.
struct Context {
  freelie::GeneratorSetPtr gens;
  int trunc = 0;
  std::vector<int> degree;
  // d_image[g][len] = length-len slice of the expansion of d(g)
  std::vector<std::vector<Packed>> d_image;

  static Context of(const cdgl::Cdgl& L);
  // Refresh one generator after set_differential.
  void refresh(const cdgl::Cdgl& L, GenIndex g);
  void set_image(GenIndex g, const Packed& full);
};

Packed pack_tensor(const freelie::TensorElement& t);
Packed pack_lie(const freelie::LieElement& e);
freelie::LieElement project_to_lie(freelie::GeneratorSetPtr gens, const Packed& e, int trunc);

// Odd-derivation slices: all output words with min_len <= len <= max_len.
Packed derivation(const Context& ctx, const Packed& e, int min_len, int max_len);

// Letter-for-letter substitution (generator to generator-or-zero), producing
// words over the target alphabet.
Packed substitute(const Packed& e, const std::vector<std::optional<GenIndex>>& letter_map);

// Dynkin projection as a tensor: each word w maps to the expansion of the
// left-normed bracketing of its letters, scaled by 1/len(w).
Packed dynkin_tensor(const Context& ctx, const Packed& e);

// d^2 = 0 check over the packed engine; returns a nonzero residue description
// or nullopt.
std::optional<std::string> d_squared_residue(const cdgl::Cdgl& L, GenIndex g);

}  // namespace lietower::fastlie
