#pragma once

#include "drinfeld/ncseries.hpp"
#include "drinfeld/scalars.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace drinfeld {

enum class Arena { a3, a4 };

/// Generator labels. a3 uses the first three.
enum Gen : int { t12 = 0, t13 = 1, t23 = 2, t14 = 3, t24 = 4, t34 = 5 };

inline int generator_count(Arena a) { return a == Arena::a3 ? 3 : 6; }
const char* generator_name(int g);

/// PBW monomial u * v * c^k with u a word in {t14,t24,t34} (2 bits per
/// letter), v a word in {t13,t23} (1 bit per letter) and c = t12+t13+t23.
struct Mono {
  uint32_t u = 0, v = 0;
  int ulen = 0, vlen = 0, k = 0;

  int degree() const { return ulen + vlen + k; }
  uint64_t key() const {
    return static_cast<uint64_t>(ulen) | static_cast<uint64_t>(vlen) << 5 |
           static_cast<uint64_t>(k) << 10 | static_cast<uint64_t>(u) << 15 |
           static_cast<uint64_t>(v) << 47;
  }
  static Mono from_key(uint64_t key) {
    Mono m;
    m.ulen = static_cast<int>(key & 31);
    m.vlen = static_cast<int>((key >> 5) & 31);
    m.k = static_cast<int>((key >> 10) & 31);
    m.u = static_cast<uint32_t>((key >> 15) & 0xFFFFFFFFull);
    m.v = static_cast<uint32_t>(key >> 47);
    return m;
  }
  int u_letter(int i) const { return static_cast<int>((u >> (2 * (ulen - 1 - i))) & 3u); }
  int v_letter(int i) const { return static_cast<int>((v >> (vlen - 1 - i)) & 1u); }
};

inline int key_degree(uint64_t key) {
  return static_cast<int>((key & 31) + ((key >> 5) & 31) + ((key >> 10) & 31));
}

std::string mono_str(uint64_t key);

struct MonoKeyHash {
  std::size_t operator()(uint64_t z) const noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

/// Number of PBW monomials of degree n.
uint64_t basis_count(Arena a, int n);
/// All PBW monomial keys of degree n.
std::vector<uint64_t> basis_monomials(Arena a, int n);

/// [x, f] for x in {t12,t13,t23} and f in {t14,t24,t34} as a combination of
/// two-letter free words (letters 0,1,2 = t14,t24,t34).
struct Bracket {
  int sign, first, second;
};
const std::vector<Bracket>& bracket_rule(int x, int f);

/// Element of U a3 or U a4 kept in PBW normal form, truncated at `order`.
template <class S>
class BraidElement {
 public:
  using Scalar = S;
  using Terms = std::unordered_map<uint64_t, S, MonoKeyHash>;

  BraidElement() = default;
  BraidElement(Arena a, int order) : arena_(a), order_(order) {
    if (order > 16) throw std::invalid_argument("braid truncation order above 16");
  }
  static BraidElement one(Arena a, int order) {
    BraidElement e(a, order);
    e.terms_.emplace(Mono().key(), S(1));
    return e;
  }

  Arena arena() const { return arena_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  Terms& mutable_terms() { return terms_; }
  bool empty() const { return terms_.empty(); }

  S coeff(uint64_t key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? S(0) : it->second;
  }
  void add(uint64_t key, const S& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = is_zero(it->second) ? terms_.erase(it) : std::next(it);
  }

  BraidElement& operator+=(const BraidElement& y) {
    check_same(y);
    for (const auto& [k, c] : y.terms_) add(k, c);
    return *this;
  }
  BraidElement& operator-=(const BraidElement& y) {
    check_same(y);
    for (const auto& [k, c] : y.terms_) add(k, -c);
    return *this;
  }
  BraidElement& operator*=(const S& s) {
    if (is_zero(s)) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend BraidElement operator+(BraidElement x, const BraidElement& y) { return x += y; }
  friend BraidElement operator-(BraidElement x, const BraidElement& y) { return x -= y; }
  friend BraidElement operator*(const S& s, BraidElement x) { return x *= s; }

  /// Terms sorted by degree, then key.
  std::vector<std::pair<uint64_t, S>> sorted_terms() const {
    std::vector<std::pair<uint64_t, S>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
      int dx = key_degree(x.first), dy = key_degree(y.first);
      return dx != dy ? dx < dy : x.first < y.first;
    });
    return out;
  }
  BraidElement homogeneous(int n) const {
    BraidElement e(arena_, order_);
    for (const auto& [k, c] : terms_)
      if (key_degree(k) == n) e.terms_.emplace(k, c);
    return e;
  }
  friend bool operator==(const BraidElement& x, const BraidElement& y) {
    if (x.arena_ != y.arena_ || x.terms_.size() != y.terms_.size()) return false;
    for (const auto& [k, c] : x.terms_) {
      auto it = y.terms_.find(k);
      if (it == y.terms_.end() || !(it->second == c)) return false;
    }
    return true;
  }

 private:
  void check_same(const BraidElement& y) const {
    if (arena_ != y.arena_) throw std::invalid_argument("braid elements from different arenas");
  }

  Arena arena_ = Arena::a3;
  int order_ = 0;
  Terms terms_;
};

template <class S>
BigFloat max_abs_coeff(const BraidElement<S>& e) {
  BigFloat m = 0;
  for (const auto& [k, c] : e.terms()) {
    BigFloat a = magnitude(c);
    if (a > m) m = a;
  }
  return m;
}

namespace detail {

inline Mono insert_pair(const Mono& m, int pos, int a, int b) {
  Mono r = m;
  int tail = m.ulen - 1 - pos;
  uint32_t suffix = tail == 0 ? 0u : (m.u & ((1u << (2 * tail)) - 1u));
  uint32_t prefix = m.u >> (2 * (tail + 1));
  r.u = (((prefix << 4) | static_cast<uint32_t>(a << 2 | b)) << (2 * tail)) | suffix;
  r.ulen = m.ulen + 1;
  return r;
}

/// out += c * D_x(u) * v * c^k for an a3 letter x (t12, t13 or t23).
template <class S, class Map>
void add_derivation(int x, const Mono& m, const S& c, Map& out) {
  for (int i = 0; i < m.ulen; ++i) {
    for (const Bracket& br : bracket_rule(x, m.u_letter(i) + 3)) {
      uint64_t key = insert_pair(m, i, br.first, br.second).key();
      auto it = out.find(key);
      if (it == out.end()) {
        out.emplace(key, br.sign > 0 ? c : S(-c));
      } else if (br.sign > 0) {
        it->second += c;
      } else {
        it->second -= c;
      }
    }
  }
}

template <class S, class Map>
void accumulate(Map& out, uint64_t key, const S& c) {
  auto it = out.find(key);
  if (it == out.end())
    out.emplace(key, c);
  else
    it->second += c;
}

template <class S, class Map>
void subtract(Map& out, uint64_t key, const S& c) {
  auto it = out.find(key);
  if (it == out.end())
    out.emplace(key, -c);
  else
    it->second -= c;
}

}  // namespace detail

/// out += c * g * m (normal form), dropping results above maxdeg. The caller
/// prunes zeros.
template <class S, class Map>
void lmul_generator(int g, uint64_t key, const S& c, Map& out, int maxdeg) {
  Mono m = Mono::from_key(key);
  if (m.degree() + 1 > maxdeg) return;
  if (g >= t14) {
    Mono r = m;
    r.u = m.u | (static_cast<uint32_t>(g - t14) << (2 * m.ulen));
    r.ulen = m.ulen + 1;
    detail::accumulate(out, r.key(), c);
    return;
  }
  if (g == t13 || g == t23) {
    Mono r = m;
    r.v = m.v | (static_cast<uint32_t>(g == t23) << m.vlen);
    r.vlen = m.vlen + 1;
    detail::accumulate(out, r.key(), c);
    detail::add_derivation(g, m, c, out);
    return;
  }
  // t12 = c - t13 - t23, and c moves right through v.
  Mono r = m;
  r.k = m.k + 1;
  detail::accumulate(out, r.key(), c);
  Mono r13 = m, r23 = m;
  r13.vlen = r23.vlen = m.vlen + 1;
  r23.v = m.v | (1u << m.vlen);
  detail::subtract(out, r13.key(), c);
  detail::subtract(out, r23.key(), c);
  detail::add_derivation(t12, m, c, out);
}

/// out += c * (t12+t13+t23) * m.
template <class S, class Map>
void lmul_center(uint64_t key, const S& c, Map& out, int maxdeg) {
  Mono m = Mono::from_key(key);
  if (m.degree() + 1 > maxdeg) return;
  Mono r = m;
  r.k = m.k + 1;
  detail::accumulate(out, r.key(), c);
  for (int x : {t12, t13, t23}) detail::add_derivation(x, m, c, out);
}

template <class S>
BraidElement<S> generator_element(Arena a, int g, int order) {
  if (g < 0 || g >= generator_count(a)) throw std::invalid_argument("generator outside the arena");
  BraidElement<S> e(a, order);
  lmul_generator(g, Mono().key(), S(1), e.mutable_terms(), order);
  e.prune();
  return e;
}

template <class S>
BraidElement<S> generator_sum(Arena a, std::initializer_list<int> gens, int order) {
  BraidElement<S> e(a, order);
  for (int g : gens) e += generator_element<S>(a, g, order);
  return e;
}

/// img * x truncated at maxdeg.
template <class S>
BraidElement<S> lmul(const BraidElement<S>& img, const BraidElement<S>& x, int maxdeg) {
  if (img.arena() != x.arena()) throw std::invalid_argument("braid elements from different arenas");
  BraidElement<S> out(x.arena(), x.order());
  bool linear = std::all_of(img.terms().begin(), img.terms().end(),
                            [](const auto& t) { return key_degree(t.first) == 1; });
  if (linear) {
    // Every image used by the associator equations is a sum of generators.
    std::vector<std::pair<int, S>> gens;  // -1 stands for the center c
    for (const auto& [ik, ic] : img.terms()) {
      Mono im = Mono::from_key(ik);
      gens.emplace_back(im.ulen ? im.u + t14 : im.vlen ? (im.v ? t23 : t13) : -1, ic);
    }
    auto& terms = out.mutable_terms();
    terms.reserve(x.terms().size() * 2);
    S prod;
    for (const auto& [k, c] : x.terms()) {
      if (key_degree(k) + 1 > maxdeg) continue;
      for (const auto& [g, ic] : gens) {
        prod = ic * c;
        if (g < 0)
          lmul_center(k, prod, terms, maxdeg);
        else
          lmul_generator(g, k, prod, terms, maxdeg);
      }
    }
    out.prune();
    return out;
  }
  for (const auto& [ik, ic] : img.terms()) {
    Mono im = Mono::from_key(ik);
    if (im.degree() == 0) {
      for (const auto& [k, c] : x.terms())
        if (key_degree(k) <= maxdeg) detail::accumulate(out.mutable_terms(), k, S(ic * c));
      continue;
    }
    // Apply c^k, then the v letters, then the u letters, each from the right.
    typename BraidElement<S>::Terms cur;
    for (const auto& [k, c] : x.terms())
      if (key_degree(k) + im.degree() <= maxdeg) cur.emplace(k, ic * c);
    auto step = [&](auto&& fn) {
      typename BraidElement<S>::Terms next;
      for (const auto& [k, c] : cur)
        if (!is_zero(c)) fn(k, c, next);
      cur.swap(next);
    };
    for (int j = 0; j < im.k; ++j)
      step([&](uint64_t k, const S& c, auto& next) { lmul_center(k, c, next, maxdeg); });
    for (int j = im.vlen - 1; j >= 0; --j) {
      int g = im.v_letter(j) ? t23 : t13;
      step([&](uint64_t k, const S& c, auto& next) { lmul_generator(g, k, c, next, maxdeg); });
    }
    for (int j = im.ulen - 1; j >= 0; --j) {
      int g = im.u_letter(j) + t14;
      step([&](uint64_t k, const S& c, auto& next) { lmul_generator(g, k, c, next, maxdeg); });
    }
    for (const auto& [k, c] : cur) detail::accumulate(out.mutable_terms(), k, c);
  }
  out.prune();
  return out;
}

/// Raw linear combination of generator words.
template <class S>
struct RawBraid {
  Arena arena = Arena::a3;
  std::vector<std::pair<std::vector<int>, S>> terms;
};

template <class S>
BraidElement<S> normal_form(const RawBraid<S>& e, int order) {
  BraidElement<S> out(e.arena, order);
  for (const auto& [word, c] : e.terms) {
    typename BraidElement<S>::Terms cur{{Mono().key(), c}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (*it < 0 || *it >= generator_count(e.arena)) throw std::invalid_argument("generator outside the arena");
      typename BraidElement<S>::Terms next;
      for (const auto& [k, v] : cur)
        if (!is_zero(v)) lmul_generator(*it, k, v, next, order);
      cur.swap(next);
    }
    for (const auto& [k, v] : cur) out.add(k, v);
  }
  return out;
}

template <class S>
BraidElement<S> a3_normal_form(const RawBraid<S>& e, int order) {
  if (e.arena != Arena::a3) throw std::invalid_argument("a3_normal_form: element is not in a3");
  return normal_form(e, order);
}
template <class S>
BraidElement<S> a4_normal_form(const RawBraid<S>& e, int order) {
  if (e.arena != Arena::a4) throw std::invalid_argument("a4_normal_form: element is not in a4");
  return normal_form(e, order);
}

/// Independent normalizer: applies the rewrite rules to raw words at randomly
/// chosen positions until every word has PBW shape.
BraidElement<Rational> normal_form_by_rewriting(const RawBraid<Rational>& e, int order, uint64_t seed);

/// Target algebra adapter for substitute().
template <class S>
struct BraidAlgebra {
  using Element = BraidElement<S>;
  using Scalar = S;
  Arena arena;
  int order;

  Element zero() const { return Element(arena, order); }
  Element one() const { return Element::one(arena, order); }
  bool has_constant(const Element& x) const { return !is_zero(x.coeff(Mono().key())); }
  void axpy(Element& acc, const S& c, const Element& x, int maxdeg) const {
    for (const auto& [k, v] : x.terms())
      if (key_degree(k) <= maxdeg) acc.add(k, c * v);
  }
  Element left_mul(const Element& img, const Element& x, int maxdeg) const { return lmul(img, x, maxdeg); }
  void add_into(Element& acc, const Element& x) const {
    if (acc.empty()) {
      acc = x;
      return;
    }
    acc += x;
  }
};

// ---------------------------------------------------------------- dense engine

/// Dense ranking of PBW monomials: within degree n, blocks by (ulen, vlen),
/// then u read in base 3, then v in base 2.
class PbwIndexer {
 public:
  PbwIndexer(Arena a, int order);
  Arena arena() const { return arena_; }
  int order() const { return order_; }
  std::size_t size(int n) const { return sizes_[n]; }
  std::size_t offset(int n, int ulen, int vlen) const { return offsets_[(n * 17 + ulen) * 17 + vlen]; }
  uint32_t pow3(int e) const { return pow3_[e]; }
  uint64_t key_of(int n, std::size_t idx) const;
  std::size_t index_of(uint64_t key) const;

 private:
  Arena arena_;
  int order_;
  std::vector<std::size_t> sizes_, offsets_;
  std::vector<uint32_t> pow3_;
};

/// Same element as BraidElement, stored as one dense coefficient vector per
/// degree (an empty vector means that degree is zero).
template <class S>
struct DenseBraid {
  const PbwIndexer* ix = nullptr;
  std::vector<std::vector<S>> deg;

  DenseBraid() = default;
  explicit DenseBraid(const PbwIndexer& indexer) : ix(&indexer), deg(indexer.order() + 1) {}
  std::vector<S>& ensure(int n) {
    if (deg[n].empty()) deg[n].assign(ix->size(n), S(0));
    return deg[n];
  }
};

template <class S>
DenseBraid<S> to_dense(const BraidElement<S>& e, const PbwIndexer& ix) {
  DenseBraid<S> d(ix);
  for (const auto& [k, c] : e.terms()) {
    int n = key_degree(k);
    if (n <= ix.order()) d.ensure(n)[ix.index_of(k)] = c;
  }
  return d;
}

template <class S>
BraidElement<S> from_dense(const DenseBraid<S>& d, int order) {
  BraidElement<S> e(d.ix->arena(), order);
  for (int n = 0; n < static_cast<int>(d.deg.size()); ++n)
    for (std::size_t i = 0; i < d.deg[n].size(); ++i)
      if (!is_zero(d.deg[n][i])) e.mutable_terms().emplace(d.ix->key_of(n, i), d.deg[n][i]);
  return e;
}

namespace detail {

/// out += sum_g coef_g * g * x, for generators g (-1 = center), truncated.
template <class S>
void dense_lmul_into(const std::vector<std::pair<int, S>>& gens, const DenseBraid<S>& x, int maxdeg,
                     DenseBraid<S>& out) {
  const PbwIndexer& ix = *x.ix;
  int umax_arena = ix.arena() == Arena::a3 ? 0 : 16;
  S prod;
  for (int n = 0; n + 1 <= maxdeg && n < static_cast<int>(x.deg.size()); ++n) {
    const auto& src = x.deg[n];
    if (src.empty()) continue;
    auto& dst = out.ensure(n + 1);
    for (int ulen = 0; ulen <= std::min(n, umax_arena); ++ulen)
      for (int vlen = 0; ulen + vlen <= n; ++vlen) {
        std::size_t base = ix.offset(n, ulen, vlen);
        uint32_t nu = ix.pow3(ulen), nv = 1u << vlen;
        std::size_t up_u = ix.offset(n + 1, ulen + 1, vlen);   // u grows
        std::size_t up_v = ix.offset(n + 1, ulen, vlen + 1);   // v grows
        std::size_t up_k = ix.offset(n + 1, ulen, vlen);       // k grows
        for (uint32_t u = 0; u < nu; ++u)
          for (uint32_t v = 0; v < nv; ++v) {
            const S& c = src[base + static_cast<std::size_t>(u) * nv + v];
            if (is_zero(c)) continue;
            for (const auto& [g, coef] : gens) {
              prod = coef * c;
              auto derive = [&](int xg) {
                // D_x(u): replace letter i by [x, letter].
                for (int i = 0; i < ulen; ++i) {
                  int tail = ulen - 1 - i;
                  uint32_t low = ix.pow3(tail);
                  uint32_t letter = (u / low) % 3, prefix = u / (low * 3), suffix = u % low;
                  for (const Bracket& br : bracket_rule(xg, static_cast<int>(letter) + t14)) {
                    uint32_t nu2 = ((prefix * 9 + static_cast<uint32_t>(br.first * 3 + br.second)) * low) + suffix;
                    auto& slot = dst[up_u + static_cast<std::size_t>(nu2) * nv + v];
                    if (br.sign > 0)
                      slot += prod;
                    else
                      slot -= prod;
                  }
                }
              };
              if (g >= t14) {
                uint32_t nu2 = static_cast<uint32_t>(g - t14) * nu + u;
                dst[up_u + static_cast<std::size_t>(nu2) * nv + v] += prod;
              } else if (g == t13 || g == t23) {
                uint32_t nv2 = (g == t23 ? nv : 0u) + v;
                dst[up_v + static_cast<std::size_t>(u) * (nv * 2) + nv2] += prod;
                derive(g);
              } else if (g == t12) {
                dst[up_k + static_cast<std::size_t>(u) * nv + v] += prod;
                dst[up_v + static_cast<std::size_t>(u) * (nv * 2) + v] -= prod;
                dst[up_v + static_cast<std::size_t>(u) * (nv * 2) + nv + v] -= prod;
                derive(t12);
              } else {
                dst[up_k + static_cast<std::size_t>(u) * nv + v] += prod;
                derive(t12);
                derive(t13);
                derive(t23);
              }
            }
          }
      }
  }
}

}  // namespace detail

/// Target algebra adapter over DenseBraid; images must be sums of generators.
template <class S>
struct DenseBraidAlgebra {
  using Element = DenseBraid<S>;
  using Scalar = S;
  const PbwIndexer* ix;

  Element zero() const { return Element(*ix); }
  Element one() const {
    Element e(*ix);
    e.ensure(0)[0] = S(1);
    return e;
  }
  bool has_constant(const Element& x) const { return !x.deg[0].empty() && !is_zero(x.deg[0][0]); }
  void axpy(Element& acc, const S& c, const Element& x, int maxdeg) const {
    for (int n = 0; n <= maxdeg && n < static_cast<int>(x.deg.size()); ++n) {
      if (x.deg[n].empty()) continue;
      auto& dst = acc.ensure(n);
      for (std::size_t i = 0; i < x.deg[n].size(); ++i)
        if (!is_zero(x.deg[n][i])) dst[i] += c * x.deg[n][i];
    }
  }
  static std::vector<std::pair<int, S>> generators_of(const Element& img) {
    std::vector<std::pair<int, S>> gens;
    for (int n = 0; n < static_cast<int>(img.deg.size()); ++n)
      for (std::size_t i = 0; i < img.deg[n].size(); ++i) {
        if (is_zero(img.deg[n][i])) continue;
        if (n != 1) throw std::invalid_argument("dense substitution needs images that are sums of generators");
        Mono m = Mono::from_key(img.ix->key_of(1, i));
        gens.emplace_back(m.ulen ? static_cast<int>(m.u) + t14 : m.vlen ? (m.v ? t23 : t13) : -1, img.deg[n][i]);
      }
    return gens;
  }
  Element left_mul(const Element& img, const Element& x, int maxdeg) const {
    Element out(*ix);
    detail::dense_lmul_into(generators_of(img), x, maxdeg, out);
    return out;
  }
  void add_into(Element& acc, const Element& x) const {
    for (int n = 0; n < static_cast<int>(x.deg.size()); ++n) {
      if (x.deg[n].empty()) continue;
      if (acc.deg[n].empty()) {
        acc.deg[n] = x.deg[n];
        continue;
      }
      for (std::size_t i = 0; i < x.deg[n].size(); ++i)
        if (!is_zero(x.deg[n][i])) acc.deg[n][i] += x.deg[n][i];
    }
  }
};

// ---------------------------------------------------------------- associator equations

/// (mu, phi). mu is carried through mu2 = mu^2; mu2 == 0 means mu = 0.
template <class S>
struct AssociatorCandidate {
  S mu2;
  NCSeries<S> phi;
};

namespace detail {

template <class S>
DenseBraid<S> dense_generators(const PbwIndexer& ix, std::initializer_list<int> gens) {
  return to_dense(generator_sum<S>(ix.arena(), gens, ix.order()), ix);
}

template <class S>
BraidElement<S> dense_difference(DenseBraid<S> lhs, const DenseBraid<S>& rhs, int order) {
  for (int n = 0; n < static_cast<int>(rhs.deg.size()); ++n) {
    if (rhs.deg[n].empty()) continue;
    auto& dst = lhs.ensure(n);
    for (std::size_t i = 0; i < rhs.deg[n].size(); ++i) dst[i] -= rhs.deg[n][i];
  }
  return from_dense(lhs, order);
}

/// exp(s * x) * r for a sum of generators x.
template <class Q>
DenseBraid<Q> exp_lmul(const Q& s, const DenseBraid<Q>& x, const DenseBraid<Q>& r, const DenseBraidAlgebra<Q>& alg) {
  int W = r.ix->order();
  DenseBraid<Q> result = r, term = r;
  for (int n = 1; n <= W; ++n) {
    term = alg.left_mul(x, term, W);
    Q f = s / Q(n);
    for (auto& v : term.deg)
      for (auto& c : v) c *= f;
    alg.add_into(result, term);
  }
  return result;
}

}  // namespace detail

/// LHS - RHS of the pentagon equation in U a4, truncated at the order of phi.
template <class S>
BraidElement<S> pentagon_residual(const NCSeries<S>& phi) {
  int W = phi.order();
  PbwIndexer ix(Arena::a4, W);
  DenseBraidAlgebra<S> alg{&ix};
  auto g = [&](std::initializer_list<int> gens) { return detail::dense_generators<S>(ix, gens); };
  auto inner = substitute(phi, g({t13, t23}), g({t34}), alg);
  auto lhs = substitute(phi, g({t12}), g({t23, t24}), alg, inner);
  inner = {};
  auto r1 = substitute(phi, g({t12}), g({t23}), alg);
  auto r2 = substitute(phi, g({t12, t13}), g({t24, t34}), alg, r1);
  r1 = {};
  auto rhs = substitute(phi, g({t23}), g({t34}), alg, r2);
  return detail::dense_difference(std::move(lhs), rhs, W);
}

template <class S>
BraidElement<S> pentagon_residual(const AssociatorCandidate<S>& cand) {
  return pentagon_residual(cand.phi);
}

/// Hexagon residuals (LHS - RHS) in U a3 over Q(mu).
template <class S>
std::pair<BraidElement<QuadExt<S>>, BraidElement<QuadExt<S>>> hexagon_residuals(const AssociatorCandidate<S>& cand) {
  using Q = QuadExt<S>;
  int W = cand.phi.order();
  Q mu = is_zero(cand.mu2) ? Q(0) : Q::mu(Q::make_context(cand.mu2));
  Q half = mu / Q(2);
  PbwIndexer ix(Arena::a3, W);
  DenseBraidAlgebra<Q> alg{&ix};
  auto g = [&](std::initializer_list<int> gens) { return detail::dense_generators<Q>(ix, gens); };
  NCSeries<Q> phi = lift_quad(cand.phi);
  NCSeries<Q> inv = series_inverse(phi);
  auto one = alg.one();

  // (hexagon)
  auto lhs1 = detail::exp_lmul(half, g({t13, t23}), one, alg);
  auto r = substitute(phi, g({t12}), g({t23}), alg);
  r = detail::exp_lmul(half, g({t23}), r, alg);
  r = substitute(inv, g({t13}), g({t23}), alg, r);
  r = detail::exp_lmul(half, g({t13}), r, alg);
  r = substitute(phi, g({t13}), g({t12}), alg, r);

  // (hexagon-b)
  auto lhs2 = detail::exp_lmul(half, g({t12, t13}), one, alg);
  auto s = substitute(inv, g({t12}), g({t23}), alg);
  s = detail::exp_lmul(half, g({t12}), s, alg);
  s = substitute(phi, g({t12}), g({t13}), alg, s);
  s = detail::exp_lmul(half, g({t13}), s, alg);
  s = substitute(inv, g({t23}), g({t13}), alg, s);
  return {detail::dense_difference(std::move(lhs1), r, W), detail::dense_difference(std::move(lhs2), s, W)};
}

template <class S>
NCSeries<S> two_cycle_residual(const NCSeries<S>& phi) {
  return concat_mul(phi, swap_letters(phi)) - NCSeries<S>::one(phi.order());
}

template <class S>
bool is_degenerate_associator(const NCSeries<S>& phi, const BigFloat& tol = 0) {
  if (!is_grouplike(phi, tol)) return false;
  if (max_abs_coeff(pentagon_residual(phi)) > tol) return false;
  auto [h1, h2] = hexagon_residuals(AssociatorCandidate<S>{S(0), phi});
  return max_abs_coeff(h1) <= tol && max_abs_coeff(h2) <= tol;
}

}  // namespace drinfeld
