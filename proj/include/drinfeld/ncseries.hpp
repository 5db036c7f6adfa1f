#pragma once

#include "drinfeld/scalars.hpp"
#include "drinfeld/word.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace drinfeld {

struct TruncationError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Truncated series in the free algebra on X0 (letter 0) and X1 (letter 1).
template <class S>
class NCSeries {
 public:
  using Scalar = S;
  using Terms = std::map<Word, S>;

  NCSeries() = default;
  explicit NCSeries(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("negative truncation order");
  }
  static NCSeries one(int order) {
    NCSeries f(order);
    f.terms_.emplace(Word(), S(1));
    return f;
  }
  static NCSeries letter(int a, int order) {
    NCSeries f(order);
    if (order >= 1) f.terms_.emplace(Word::letter(a), S(1));
    return f;
  }

  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  S coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S(0) : it->second;
  }
  const S* find(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? nullptr : &it->second;
  }
  S constant() const { return coeff(Word()); }

  void set(const Word& w, S c) {
    if (w.size() > order_) throw TruncationError("word " + w.str() + " exceeds truncation order");
    if (is_zero(c)) {
      terms_.erase(w);
    } else {
      terms_[w] = std::move(c);
    }
  }
  /// Adds c to the coefficient of w; silently drops words beyond the order.
  void add(const Word& w, const S& c) {
    if (w.size() > order_ || is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  NCSeries truncated(int n) const {
    NCSeries g(std::min(n, order_));
    for (const auto& [w, c] : terms_)
      if (w.size() <= g.order_) g.terms_.emplace(w, c);
    g.order_ = n;
    return g;
  }
  NCSeries homogeneous(int n) const {
    NCSeries g(order_);
    for (const auto& [w, c] : terms_)
      if (w.size() == n) g.terms_.emplace(w, c);
    return g;
  }
  int min_degree() const { return terms_.empty() ? order_ + 1 : terms_.begin()->first.size(); }

  NCSeries& operator+=(const NCSeries& g) {
    for (const auto& [w, c] : g.terms_) add(w, c);
    return *this;
  }
  NCSeries& operator-=(const NCSeries& g) {
    for (const auto& [w, c] : g.terms_) add(w, -c);
    return *this;
  }
  NCSeries& operator*=(const S& s) {
    if (is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }
  friend NCSeries operator+(NCSeries f, const NCSeries& g) { return f += g; }
  friend NCSeries operator-(NCSeries f, const NCSeries& g) { return f -= g; }
  friend NCSeries operator*(const S& s, NCSeries f) { return f *= s; }
  NCSeries operator-() const {
    NCSeries g = *this;
    for (auto& [w, c] : g.terms_) c = -c;
    return g;
  }
  friend bool operator==(const NCSeries& f, const NCSeries& g) {
    return f.order_ == g.order_ && f.terms_ == g.terms_;
  }

 private:
  int order_ = 0;
  Terms terms_;
};

template <class T, class S>
NCSeries<T> convert_series(const NCSeries<S>& f) {
  NCSeries<T> g(f.order());
  for (const auto& [w, c] : f.terms()) g.set(w, T(c));
  return g;
}
template <class T>
NCSeries<QuadExt<T>> lift_quad(const NCSeries<T>& f) {
  NCSeries<QuadExt<T>> g(f.order());
  for (const auto& [w, c] : f.terms()) g.set(w, QuadExt<T>(c));
  return g;
}

/// Largest coefficient magnitude (0 for the zero series).
template <class S>
BigFloat max_abs_coeff(const NCSeries<S>& f) {
  BigFloat m = 0;
  for (const auto& [w, c] : f.terms()) {
    BigFloat a = magnitude(c);
    if (a > m) m = a;
  }
  return m;
}

// ---------------------------------------------------------------- products

template <class S>
NCSeries<S> concat_mul(const NCSeries<S>& f, const NCSeries<S>& g) {
  if (f.order() != g.order()) throw std::invalid_argument("concat_mul: truncation orders differ");
  int W = f.order();
  NCSeries<S> h(W);
  for (const auto& [u, a] : f.terms())
    for (const auto& [v, b] : g.terms()) {
      if (u.size() + v.size() > W) break;  // g's map is degree-ordered
      h.add(u.concat(v), a * b);
    }
  return h;
}

/// Multiplicities of all interleavings of w and v.
std::map<Word, int64_t> shuffle_words(const Word& w, const Word& v);
/// Shuffle of a formal integer combination of words with one word.
std::map<Word, Integer> shuffle_combination(const std::map<Word, Integer>& x, const Word& v);

/// Calls fn(u) once for each interleaving of w and v (so u repeats with multiplicity).
template <class Fn>
void for_each_interleaving(const Word& w, const Word& v, Fn&& fn) {
  int n = w.size() + v.size(), a = w.size();
  if (a == 0 || v.empty()) {
    fn(w.concat(v));
    return;
  }
  // Iterate over n-bit masks with popcount a (Gosper's hack).
  uint64_t mask = (uint64_t{1} << a) - 1, limit = uint64_t{1} << n;
  while (mask < limit) {
    Word u;
    int i = 0, j = 0;
    for (int pos = n - 1; pos >= 0; --pos) u = u.append((mask >> pos) & 1 ? w[i++] : v[j++]);
    fn(u);
    uint64_t c = mask & (~mask + 1), r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

// Binary words of length n are also indexed densely by their letters read as bits.
inline uint32_t binary_rank(const Word& w) {
  uint32_t r = 0;
  for (int i = 0; i < w.size(); ++i) r = (r << 1) | static_cast<uint32_t>(w[i]);
  return r;
}

namespace detail {
template <class S>
std::vector<std::vector<const S*>> dense_table(const NCSeries<S>& f) {
  std::vector<std::vector<const S*>> t(f.order() + 1);
  for (int n = 0; n <= f.order(); ++n) t[n].assign(std::size_t{1} << n, nullptr);
  for (const auto& [w, c] : f.terms()) t[w.size()][binary_rank(w)] = &c;
  return t;
}
}  // namespace detail

/// Largest |I(w)I(v) - I(w sh v)| over |w|+|v| <= W, together with |I(1) - 1|.
template <class S>
BigFloat grouplike_defect(const NCSeries<S>& f, bool stop_at_first = false) {
  auto tab = detail::dense_table(f);
  auto I = [&](const Word& w) -> S {
    const S* p = tab[w.size()][binary_rank(w)];
    return p ? *p : S(0);
  };
  BigFloat worst = magnitude(S(f.constant() - S(1)));
  if (stop_at_first && worst != 0) return worst;
  int W = f.order();
  for (int n = 2; n <= W; ++n)
    for (int a = 1; 2 * a <= n; ++a)
      for (const Word& w : words_of_length(a)) {
        S iw = I(w);
        for (const Word& v : words_of_length(n - a)) {
          if (a == n - a && v < w) continue;
          S sum(0);
          for_each_interleaving(w, v, [&](const Word& u) {
            if (const S* p = tab[n][binary_rank(u)]) sum += *p;
          });
          S diff = iw * I(v) - sum;
          if (!is_zero(diff)) {
            BigFloat m = magnitude(diff);
            if (m > worst) worst = m;
            if (stop_at_first) return worst;
          }
        }
      }
  return worst;
}

template <class S>
bool is_grouplike(const NCSeries<S>& f, const BigFloat& tol = 0) {
  if (tol == 0) return grouplike_defect(f, true) == 0;
  return grouplike_defect(f) <= tol;
}

template <class S>
NCSeries<S> antipode(const NCSeries<S>& f) {
  NCSeries<S> g(f.order());
  for (const auto& [w, c] : f.terms()) g.set(w.reversed(), w.size() % 2 ? S(-c) : c);
  return g;
}

template <class S>
NCSeries<S> series_inverse(const NCSeries<S>& f) {
  S c0 = f.constant();
  if (is_zero(c0)) throw std::domain_error("series_inverse: constant term is not invertible");
  int W = f.order();
  S inv0 = S(1) / c0;
  std::vector<NCSeries<S>> fh(W + 1), gh(W + 1);
  for (int n = 0; n <= W; ++n) fh[n] = f.homogeneous(n);
  gh[0] = NCSeries<S>(W);
  gh[0].set(Word(), inv0);
  NCSeries<S> g = gh[0];
  for (int n = 1; n <= W; ++n) {
    NCSeries<S> acc(W);
    for (int k = 1; k <= n; ++k)
      if (!fh[k].empty() && !gh[n - k].empty()) acc += concat_mul(fh[k], gh[n - k]);
    gh[n] = (-inv0) * acc;
    g += gh[n];
  }
  return g;
}

template <class S>
NCSeries<S> series_exp(const NCSeries<S>& f) {
  if (!is_zero(f.constant())) throw std::domain_error("series_exp: nonzero constant term");
  int W = f.order();
  NCSeries<S> result = NCSeries<S>::one(W), power = NCSeries<S>::one(W);
  for (int n = 1; n <= W; ++n) {
    power = concat_mul(power, f);
    if (power.empty()) break;
    power *= S(1) / S(n);  // power now holds f^n / n!
    result += power;
  }
  return result;
}

template <class S>
NCSeries<S> series_log(const NCSeries<S>& f) {
  if (f.constant() != S(1)) throw std::domain_error("series_log: constant term must be 1");
  int W = f.order();
  NCSeries<S> x = f - NCSeries<S>::one(W);
  NCSeries<S> result(W), power = NCSeries<S>::one(W);
  for (int n = 1; n <= W; ++n) {
    power = concat_mul(power, x);
    if (power.empty()) break;
    NCSeries<S> term = power;
    term *= S(n % 2 ? 1 : -1) / S(n);
    result += term;
  }
  return result;
}

/// Keeps the constant term and the words X0...X1.
template <class S>
NCSeries<S> pi_project(const NCSeries<S>& f) {
  NCSeries<S> g(f.order());
  for (const auto& [w, c] : f.terms())
    if (w.empty() || (w.front() == 0 && w.back() == 1)) g.set(w, c);
  return g;
}

// ---------------------------------------------------------------- zeta values

template <class S>
using ZetaProvider = std::function<S(const Index&)>;

/// zeta_f(k) = (-1)^dp(k) * coefficient of index_to_word(k).
template <class S>
S zeta_of(const NCSeries<S>& f, const Index& k) {
  if (wt(k) > f.order())
    throw TruncationError("weight of (" + index_str(k) + ") exceeds truncation order " + std::to_string(f.order()));
  S c = f.coeff(index_to_word(k));
  return dp(k) % 2 ? S(-c) : c;
}

template <class S>
ZetaProvider<S> zeta_provider(const NCSeries<S>& f) {
  return [&f](const Index& k) { return zeta_of(f, k); };
}

/// Value that an admissible-shaped word (X0...X1, or empty) would carry in a
/// series with zeta values z.
template <class S>
S admissible_coeff(const ZetaProvider<S>& z, const Word& w) {
  if (w.empty()) return S(1);
  Index k = word_to_index(w);
  S v = z(k);
  return dp(k) % 2 ? S(-v) : v;
}

/// Coefficient of an arbitrary word in the group-like series without linear
/// terms whose admissible coefficients come from z.
template <class S>
S regularized_coeff(const ZetaProvider<S>& z, const Word& w) {
  int n = w.size();
  int r = 0;
  while (r < n && w[r] == 1) ++r;
  int s = 0;
  while (s < n - r && w[n - 1 - s] == 0) ++s;
  if (r == 0 && s == 0) return admissible_coeff(z, w);
  Word V = w.prefix(n - s).suffix_from(r);
  std::map<Word, Integer> acc;
  for (int a = 0; a <= r; ++a)
    for (int b = 0; b <= s; ++b) {
      Word mid;
      for (int i = 0; i < r - a; ++i) mid = mid.append(1);
      mid = mid.concat(V);
      for (int i = 0; i < s - b; ++i) mid = mid.append(0);
      Word xa, xb;
      for (int i = 0; i < a; ++i) xa = xa.append(1);
      for (int i = 0; i < b; ++i) xb = xb.append(0);
      auto part = shuffle_combination(shuffle_combination({{xa, Integer(1)}}, mid), xb);
      int sign = (a + b) % 2 ? -1 : 1;
      for (auto& [u, m] : part) {
        if (!(u.empty() || (u.front() == 0 && u.back() == 1))) continue;
        acc[u] += sign * m;
      }
    }
  S total(0);
  for (const auto& [u, m] : acc)
    if (m != 0) total += from_rational<S>(Rational(m)) * admissible_coeff(z, u);
  return total;
}

template <class S>
NCSeries<S> series_from_admissible(const ZetaProvider<S>& z, int W) {
  NCSeries<S> f = NCSeries<S>::one(W);
  for (int n = 2; n <= W; ++n)
    for (const Word& w : words_of_length(n)) f.set(w, regularized_coeff(z, w));
  return f;
}

// ---------------------------------------------------------------- substitution

/// Target algebra adapter for NCSeries itself.
template <class S>
struct SeriesAlgebra {
  using Element = NCSeries<S>;
  using Scalar = S;
  int order;

  Element zero() const { return Element(order); }
  Element one() const { return Element::one(order); }
  bool has_constant(const Element& x) const { return !is_zero(x.constant()); }
  void axpy(Element& acc, const S& c, const Element& x, int maxdeg) const {
    for (const auto& [w, v] : x.terms()) {
      if (w.size() > maxdeg) break;
      acc.add(w, c * v);
    }
  }
  /// img * x restricted to degree <= maxdeg.
  Element left_mul(const Element& img, const Element& x, int maxdeg) const {
    Element h(order);
    for (const auto& [u, a] : img.terms())
      for (const auto& [v, b] : x.terms()) {
        if (u.size() + v.size() > maxdeg) break;
        h.add(u.concat(v), a * b);
      }
    return h;
  }
  void add_into(Element& acc, const Element& x) const { acc += x; }
};

namespace detail {
template <class S, class Alg>
typename Alg::Element substitute_node(const NCSeries<S>& f, const std::unordered_set<Word>& prefixes,
                                      const Word& p, int budget, const typename Alg::Element& x0,
                                      const typename Alg::Element& x1, const Alg& alg,
                                      const typename Alg::Element& right) {
  typename Alg::Element acc = alg.zero();
  if (const S* c = f.find(p)) alg.axpy(acc, *c, right, budget);
  if (budget >= 1 && p.size() < f.order()) {
    for (int a = 0; a < 2; ++a) {
      Word q = p.append(a);
      if (!prefixes.count(q)) continue;
      auto sub = substitute_node(f, prefixes, q, budget - 1, x0, x1, alg, right);
      alg.add_into(acc, alg.left_mul(a == 0 ? x0 : x1, sub, budget));
    }
  }
  return acc;
}
}  // namespace detail

/// f(x0, x1) * right in the target algebra, truncated at the order of f.
/// Evaluated Horner-style over the prefix tree of f's support.
template <class S, class Alg>
typename Alg::Element substitute(const NCSeries<S>& f, const typename Alg::Element& x0,
                                 const typename Alg::Element& x1, const Alg& alg,
                                 const typename Alg::Element& right) {
  if (alg.has_constant(x0) || alg.has_constant(x1))
    throw std::invalid_argument("substitute: images must have no constant term");
  std::unordered_set<Word> prefixes;
  for (const auto& [w, c] : f.terms())
    for (int i = 0; i <= w.size(); ++i) prefixes.insert(w.prefix(i));
  if (!prefixes.count(Word())) return alg.zero();
  return detail::substitute_node(f, prefixes, Word(), f.order(), x0, x1, alg, right);
}

template <class S, class Alg>
typename Alg::Element substitute(const NCSeries<S>& f, const typename Alg::Element& x0,
                                 const typename Alg::Element& x1, const Alg& alg) {
  return substitute(f, x0, x1, alg, alg.one());
}

/// g * f(X0, g^{-1} X1 g).
template <class S>
NCSeries<S> grt_mul(const NCSeries<S>& f, const NCSeries<S>& g) {
  if (f.order() != g.order()) throw std::invalid_argument("grt_mul: truncation orders differ");
  int W = f.order();
  NCSeries<S> ginv = series_inverse(g);
  NCSeries<S> x1 = concat_mul(concat_mul(ginv, NCSeries<S>::letter(1, W)), g);
  SeriesAlgebra<S> alg{W};
  return concat_mul(g, substitute(f, NCSeries<S>::letter(0, W), x1, alg));
}

/// f(X1, X0).
template <class S>
NCSeries<S> swap_letters(const NCSeries<S>& f) {
  static const int swap[2] = {1, 0};
  NCSeries<S> g(f.order());
  for (const auto& [w, c] : f.terms()) g.set(w.relabel(swap), c);
  return g;
}

// ---------------------------------------------------------------- fixtures

/// Lyndon words over {0,1} of length 1..n, by length then lexicographically.
std::vector<Word> lyndon_words(int n);

/// Standard bracketing of a Lyndon word, expanded in the free algebra.
NCSeries<Rational> lyndon_bracket(const Word& w, int order);

/// exp of a random Lie element on the Lyndon basis with coefficients in
/// [-10, 10]. Degrees below min_degree get no Lie component.
NCSeries<Rational> random_grouplike(uint64_t seed, int W, int min_degree = 1);

// ---------------------------------------------------------------- text format

struct SeriesRecords {
  int order = 0;
  std::string kind;  // "rational" or "decimal"
  std::vector<std::pair<Word, std::string>> records;
};

SeriesRecords read_series_records(std::istream& in);
void write_series_header(std::ostream& out, int order, const std::string& kind);

NCSeries<Rational> series_from_records_rational(const SeriesRecords& rec);
NCSeries<BigFloat> series_from_records_decimal(const SeriesRecords& rec);

void write_series(std::ostream& out, const NCSeries<Rational>& f);
void write_series(std::ostream& out, const NCSeries<BigFloat>& f);

}  // namespace drinfeld
