#include "lietower/fastlie.hpp"

#include <algorithm>
#include <numeric>

#include "lietower/errors.hpp"

namespace lietower::fastlie {

bool engine_supports(const freelie::GeneratorSet& gens, int trunc) {
  return gens.size() <= kMaxLetters && trunc <= kMaxLen;
}

namespace {

long long checked_mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out))
    throw InternalError("fastlie: rational overflow (multiply)");
  return out;
}

long long checked_add(long long a, long long b) {
  long long out;
  if (__builtin_add_overflow(a, b, &out)) throw InternalError("fastlie: rational overflow (add)");
  return out;
}

}  // namespace

R64 R64::of(long long n, long long d) {
  if (d == 0) throw InternalError("fastlie: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) return R64{0, 1};
  long long g = std::gcd(n < 0 ? -n : n, d);
  return R64{n / g, d / g};
}

R64 R64::from_mpq(const Rational& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
    throw InternalError("fastlie: coefficient exceeds machine range");
  return R64{q.get_num().get_si(), q.get_den().get_si()};
}

Rational R64::to_mpq() const { return frac(num, den); }

R64 operator+(const R64& a, const R64& b) {
  if (a.num == 0) return b;
  if (b.num == 0) return a;
  long long g = std::gcd(a.den, b.den);
  long long da = a.den / g, db = b.den / g;
  long long n = checked_add(checked_mul(a.num, db), checked_mul(b.num, da));
  long long d = checked_mul(checked_mul(da, g), db);
  return R64::of(n, d);
}

R64 operator*(const R64& a, const R64& b) {
  if (a.num == 0 || b.num == 0) return R64{0, 1};
  long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  return R64{checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1)};
}

PW pw_pack(const Word& w) {
  if (w.size() > kMaxLen) throw InternalError("fastlie: word too long for packing");
  PW p = static_cast<PW>(w.size()) << 56;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > kMaxLetters) throw InternalError("fastlie: letter out of packed range");
    p |= static_cast<PW>(w[i] & 0xFF) << (8 * (6 - i));
  }
  return p;
}

Word pw_unpack(PW p) {
  Word w(pw_len(p));
  for (int i = 0; i < pw_len(p); ++i) w[i] = pw_letter(p, i);
  return w;
}

void Packed::normalize() {
  std::sort(t.begin(), t.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    PW w = t[i].first;
    R64 acc = t[i].second;
    for (++i; i < t.size() && t[i].first == w; ++i) acc = acc + t[i].second;
    if (!acc.zero()) t[out++] = {w, acc};
  }
  t.resize(out);
}

Packed& Packed::operator+=(const Packed& o) {
  t.insert(t.end(), o.t.begin(), o.t.end());
  normalize();
  return *this;
}

Packed& Packed::operator-=(const Packed& o) {
  t.reserve(t.size() + o.t.size());
  for (const auto& [w, c] : o.t) t.emplace_back(w, -c);
  normalize();
  return *this;
}

void Packed::scale(const R64& c) {
  if (c.zero()) {
    t.clear();
    return;
  }
  for (auto& [w, v] : t) v = v * c;
}

Context Context::of(const cdgl::Cdgl& L) {
  if (!engine_supports(*L.generators(), L.truncation()))
    throw InternalError("fastlie: algebra outside packed engine limits");
  Context ctx;
  ctx.gens = L.generators();
  ctx.trunc = L.truncation();
  ctx.degree.resize(ctx.gens->size());
  for (GenIndex g = 0; g < ctx.gens->size(); ++g) ctx.degree[g] = (*ctx.gens)[g].degree;
  ctx.d_image.resize(ctx.gens->size());
  for (GenIndex g = 0; g < ctx.gens->size(); ++g) ctx.refresh(L, g);
  return ctx;
}

void Context::refresh(const cdgl::Cdgl& L, GenIndex g) { set_image(g, pack_lie(L.d_of(g))); }

void Context::set_image(GenIndex g, const Packed& full) {
  std::vector<Packed> buckets(static_cast<std::size_t>(trunc) + 1);
  for (const auto& [w, c] : full.t) {
    if (pw_len(w) <= trunc) buckets[pw_len(w)].append(w, c);
  }
  d_image[g] = std::move(buckets);
}

Packed pack_tensor(const freelie::TensorElement& t) {
  Packed p;
  p.t.reserve(t.terms().size());
  for (const auto& [w, c] : t.terms()) p.append(pw_pack(w), R64::from_mpq(c));
  p.normalize();
  return p;
}

namespace {

struct PackedExpansionCache {
  freelie::GeneratorSetPtr keepalive;
  std::map<freelie::BasisBracket, Packed> memo;
};

const Packed& packed_expansion(const freelie::GeneratorSetPtr& gens,
                               const freelie::BasisBracket& b) {
  static std::map<const freelie::GeneratorSet*, PackedExpansionCache> caches;
  auto& cache = caches[gens.get()];
  cache.keepalive = gens;
  auto it = cache.memo.find(b);
  if (it != cache.memo.end()) return it->second;
  return cache.memo.emplace(b, pack_tensor(freelie::expand(gens, b))).first->second;
}

}  // namespace

Packed pack_lie(const freelie::LieElement& e) {
  Packed out;
  for (const auto& [b, c] : e.terms()) {
    const R64 coeff = R64::from_mpq(c);
    for (const auto& [w, bc] : packed_expansion(e.generators(), b).t)
      out.append(w, coeff * bc);
  }
  out.normalize();
  return out;
}

freelie::LieElement project_to_lie(freelie::GeneratorSetPtr gens, const Packed& e, int trunc) {
  std::map<PW, R64> rest;
  for (const auto& [w, c] : e.t)
    if (pw_len(w) <= trunc) rest.emplace(w, c);

  freelie::LieElement out(gens, trunc);
  while (!rest.empty()) {
    const PW pw = rest.begin()->first;
    const R64 c = rest.begin()->second;
    const Word w = pw_unpack(pw);
    freelie::BasisBracket b;
    long long lead = 1;
    if (freelie::is_lyndon(w)) {
      b = freelie::BasisBracket{w, false};
    } else {
      const std::size_t n = w.size();
      Word half(w.begin(), w.begin() + n / 2);
      if (n % 2 == 0 && std::equal(w.begin() + n / 2, w.end(), half.begin()) &&
          freelie::is_lyndon(half) && (freelie::word_degree(*gens, half) % 2 != 0)) {
        b = freelie::BasisBracket{w, true};
        lead = 2;
      } else {
        throw InternalError("fastlie: leading word is not in the Lie subspace");
      }
    }
    R64 coeff = c * R64::of(1, lead);
    for (const auto& [bw, bc] : packed_expansion(gens, b).t) {
      auto [it, fresh] = rest.try_emplace(bw, R64{0, 1});
      it->second = it->second + (-(coeff * bc));
      if (it->second.zero()) rest.erase(it);
    }
    out.add(b, coeff.to_mpq());
    if (!rest.empty() && rest.begin()->first <= pw)
      throw InternalError("fastlie: projection failed to advance");
  }
  return out;
}

namespace {

// Accumulates a very large stream of (word, coeff) pairs without holding the
// raw emission list: buffered chunks are sorted and merged into a running
// sorted vector.
class ChunkedBuilder {
 public:
  void add(PW w, const R64& c) {
    buf_.emplace_back(w, c);
    if (buf_.size() >= kFlush) flush();
  }

  Packed take() {
    flush();
    Packed p;
    p.t = std::move(acc_);
    return p;
  }

 private:
  static constexpr std::size_t kFlush = 1u << 23;

  void flush() {
    if (buf_.empty()) return;
    Packed chunk;
    chunk.t = std::move(buf_);
    buf_.clear();
    chunk.normalize();
    if (acc_.empty()) {
      acc_ = std::move(chunk.t);
      return;
    }
    std::vector<std::pair<PW, R64>> merged;
    merged.reserve(acc_.size() + chunk.t.size());
    std::size_t i = 0, j = 0;
    while (i < acc_.size() || j < chunk.t.size()) {
      if (j == chunk.t.size() || (i < acc_.size() && acc_[i].first < chunk.t[j].first)) {
        merged.push_back(acc_[i++]);
      } else if (i == acc_.size() || chunk.t[j].first < acc_[i].first) {
        merged.push_back(chunk.t[j++]);
      } else {
        R64 s = acc_[i].second + chunk.t[j].second;
        if (!s.zero()) merged.emplace_back(acc_[i].first, s);
        ++i;
        ++j;
      }
    }
    acc_ = std::move(merged);
  }

  std::vector<std::pair<PW, R64>> acc_;
  std::vector<std::pair<PW, R64>> buf_;
};

}  // namespace

Packed derivation(const Context& ctx, const Packed& e, int min_len, int max_len) {
  ChunkedBuilder out;
  for (const auto& [w, c] : e.t) {
    const int len = pw_len(w);
    if (len - 1 + 1 > max_len) continue;
    int prefix_parity = 0;
    for (int i = 0; i < len; ++i) {
      const GenIndex g = pw_letter(w, i);
      const R64 signed_c = (prefix_parity != 0) ? -c : c;
      const auto& buckets = ctx.d_image[g];
      const int lo = std::max(min_len - (len - 1), 1);
      const int hi = std::min<int>(max_len - (len - 1), static_cast<int>(buckets.size()) - 1);
      // prefix p = w[0..i), suffix s = w(i..]; image word x gives p|x|s
      constexpr PW kLetters = 0x00FFFFFFFFFFFFFFull;
      const PW prefix =
          ((i == 0) ? 0 : (w & ((kLetters << (8 * (7 - i))) & kLetters))) |
          (static_cast<PW>(i) << 56);
      const PW suffix = (((w & kLetters) << (8 * (i + 1))) & kLetters) |
                        (static_cast<PW>(len - i - 1) << 56);
      for (int l = lo; l <= hi; ++l) {
        for (const auto& [iw, ic] : buckets[l].t)
          out.add(pw_concat(pw_concat(prefix, iw), suffix), signed_c * ic);
      }
      prefix_parity ^= (ctx.degree[g] & 1);
    }
  }
  return out.take();
}

Packed substitute(const Packed& e, const std::vector<std::optional<GenIndex>>& letter_map) {
  Packed out;
  out.t.reserve(e.t.size());
  for (const auto& [w, c] : e.t) {
    PW nw = static_cast<PW>(pw_len(w)) << 56;
    bool dead = false;
    for (int i = 0; i < pw_len(w); ++i) {
      const auto& img = letter_map.at(pw_letter(w, i));
      if (!img) {
        dead = true;
        break;
      }
      nw |= static_cast<PW>(*img & 0xFF) << (8 * (6 - i));
    }
    if (!dead) out.append(nw, c);
  }
  out.normalize();
  return out;
}

Packed dynkin_tensor(const Context& ctx, const Packed& e) {
  Packed out;
  for (const auto& [w, c] : e.t) {
    const int len = pw_len(w);
    // expansion of [[..[x0,x1],..],x_{len-1}], built iteratively
    std::vector<std::pair<PW, R64>> cur;
    cur.emplace_back((static_cast<PW>(1) << 56) |
                         (static_cast<PW>(pw_letter(w, 0)) << (8 * 6)),
                     R64::of(1));
    int acc_parity = ctx.degree[pw_letter(w, 0)] & 1;
    for (int i = 1; i < len; ++i) {
      const GenIndex g = pw_letter(w, i);
      const PW letter = (static_cast<PW>(1) << 56) | (static_cast<PW>(g) << (8 * 6));
      const int letter_parity = ctx.degree[g] & 1;
      std::vector<std::pair<PW, R64>> next;
      next.reserve(cur.size() * 2);
      const bool plus = (acc_parity != 0) && (letter_parity != 0);
      for (const auto& [cw, cc] : cur) {
        next.emplace_back(pw_concat(cw, letter), cc);
        next.emplace_back(pw_concat(letter, cw), plus ? cc : -cc);
      }
      cur = std::move(next);
      acc_parity ^= letter_parity;
    }
    const R64 scale = c * R64::of(1, len);
    for (const auto& [cw, cc] : cur) out.append(cw, cc * scale);
  }
  out.normalize();
  return out;
}

std::optional<std::string> d_squared_residue(const cdgl::Cdgl& L, GenIndex g) {
  Context ctx = Context::of(L);
  Packed dg = pack_lie(L.d_of(g));
  Packed dd = derivation(ctx, dg, 1, ctx.trunc);
  if (dd.zero()) return std::nullopt;
  const auto& [w, c] = dd.t.front();
  return "d(d g) has residue at word length " + std::to_string(pw_len(w));
}

}  // namespace lietower::fastlie
