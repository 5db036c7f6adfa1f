#pragma once

#include "drinfeld/ncseries.hpp"
#include "drinfeld/scalars.hpp"
#include "drinfeld/word.hpp"

#include <string>
#include <vector>

namespace drinfeld {

/// Power series in h truncated after h^W.
template <class S>
class TaylorH {
 public:
  TaylorH() = default;
  explicit TaylorH(int W) : c_(W + 1, S(0)) {
    if (W < 0) throw std::invalid_argument("negative Taylor order");
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const S& operator[](int i) const { return c_.at(i); }
  S& operator[](int i) { return c_.at(i); }
  const std::vector<S>& coeffs() const { return c_; }

  TaylorH& operator+=(const TaylorH& g) {
    check(g);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += g.c_[i];
    return *this;
  }
  TaylorH& operator-=(const TaylorH& g) {
    check(g);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= g.c_[i];
    return *this;
  }
  TaylorH& operator*=(const S& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend TaylorH operator+(TaylorH f, const TaylorH& g) { return f += g; }
  friend TaylorH operator-(TaylorH f, const TaylorH& g) { return f -= g; }
  friend TaylorH operator*(const S& s, TaylorH f) { return f *= s; }
  friend TaylorH operator*(const TaylorH& f, const TaylorH& g) {
    f.check(g);
    TaylorH r(f.order());
    for (int i = 0; i <= f.order(); ++i)
      for (int j = 0; i + j <= f.order(); ++j) r.c_[i + j] += f.c_[i] * g.c_[j];
    return r;
  }

  /// f / h^v; the low coefficients must vanish. The result has order W - v.
  TaylorH divide_by_h(int v) const {
    if (v > order()) throw std::invalid_argument("shift beyond the truncation order");
    for (int i = 0; i < v; ++i)
      if (!is_zero(c_[i])) throw std::domain_error("series is not divisible by h^" + std::to_string(v));
    TaylorH r(order() - v);
    for (int i = v; i <= order(); ++i) r.c_[i - v] = c_[i];
    return r;
  }

 private:
  void check(const TaylorH& g) const {
    if (g.c_.size() != c_.size()) throw std::invalid_argument("Taylor series of different orders");
  }
  std::vector<S> c_;
};

enum class HKind { sinh, cosh, exp };

/// sinh(s h), cosh(s h) or exp(s h) through h^W.
template <class S>
TaylorH<S> hseries_elementary(HKind kind, const S& scale, int W) {
  TaylorH<S> f(W);
  S term(1);  // (s^n / n!)
  for (int n = 0; n <= W; ++n) {
    if (n > 0) term = term * scale / S(n);
    bool odd = n % 2 == 1;
    if (kind == HKind::exp || (kind == HKind::sinh && odd) || (kind == HKind::cosh && !odd)) f[n] = term;
  }
  return f;
}

template <class S>
TaylorH<S> hseries_div(const TaylorH<S>& f, const TaylorH<S>& g) {
  if (f.order() != g.order()) throw std::invalid_argument("Taylor series of different orders");
  if (is_zero(g[0])) throw std::domain_error("division by a series with zero constant term");
  TaylorH<S> q(f.order());
  for (int n = 0; n <= f.order(); ++n) {
    S acc = f[n];
    for (int j = 1; j <= n; ++j) acc -= g[j] * q[n - j];
    q[n] = acc / g[0];
  }
  return q;
}

/// [n]_q at q = e^h, i.e. sinh(nh/2) / sinh(h/2).
TaylorH<Rational> qint_series(int n, int W);

/// prod_i C(a_i + b_i, b_i).
Integer multi_binom(const std::vector<int>& a, const std::vector<int>& b);

/// g(k) = (0,1,0) u v^{k1-1} ... u v^{km-1} (1,1,N)^t.
Rational g_val(const Index& k, const Rational& N);

/// w(p,q) = -(7,7,7,7) x^{p1} y x^{q1} y ... (27,7,14,0)^t.
Rational w_val(const Index& p, const Index& q);

struct IndexTriple {
  std::vector<int> p, q, r;
  int weight() const;
  friend bool operator==(const IndexTriple& x, const IndexTriple& y) {
    return x.p == y.p && x.q == y.q && x.r == y.r;
  }
};

/// Membership test for I_{n,k}.
bool in_I(const IndexTriple& t, int n, int k);
/// Every (p,q,r) of length k and weight n with q_i >= 1, p_i + r_i >= 1, p_1 >= 1.
std::vector<IndexTriple> enum_I(int n, int k);

/// Reading of the degenerate r-factor in relation (C).
struct CConvention {
  /// literal: A carries (x-1)^e - (x+1)^e, so A = 0 when wt(r) = 0, and B
  /// carries the same factor for r+u with the value 2 at e = 0.
  /// even: both carry (x-1)^e + (x+1)^e (2 at e = 0).
  enum class RFactor { literal, even } r_factor = RFactor::even;
  /// printed: (-1)^{wt r + wt u + m}; flipped: one extra minus sign.
  enum class DoubleSign { printed, flipped } double_sign = DoubleSign::flipped;

  std::string describe() const;
};

/// A without its r-factor.
Rational A_prime(const IndexTriple& t, const Rational& x);
Rational A_val(const IndexTriple& t, const Rational& x, const CConvention& conv = {});
/// Cancelled form A'(p,q,r) A'(s,t,u) times the r-factor of wt(r) + wt(u).
Rational B_val(const IndexTriple& t1, const IndexTriple& t2, const Rational& x, const CConvention& conv = {});
/// The r-factor of weight e under the convention (used by tests for the
/// polynomial identity behind B).
Rational r_factor(int e, const Rational& x, const CConvention& conv);

/// Left-hand side of relation A, B, C or D as an exact series in h.
TaylorH<Rational> relation_lhs(char which, const Rational& N, int W);
/// Leading term of the right-hand side: 1, 1, N, 7.
Rational relation_constant(char which, const Rational& N);

/// Numerators S_w of the right-hand side: coefficient of h^w is S_w / mu^w.
template <class S>
std::vector<S> rhs_numerators(char which, const ZetaProvider<S>& z, int W, const Rational& N,
                              const CConvention& conv = {});

struct ResidualEntry {
  std::string N;
  int degree = 0;
  std::string value;
  BigFloat magnitude;
};

struct RelationReport {
  char relation = 'A';
  std::string phi_source;
  std::string mu;
  std::vector<std::string> N;
  int W = 0;
  bool exact = true;
  std::string tolerance;
  std::string convention;  // relation (C) only
  std::vector<ResidualEntry> residuals;
  bool pass = false;
  double elapsed_ms = 0;
};

template <class S>
struct RelationInputs {
  ZetaProvider<S> zeta;
  S mu2;
  std::string mu_desc;
  std::string phi_source;
  int W = 0;
  std::vector<Rational> Ns;
  BigFloat tol = 0;  // numeric mode only
  CConvention conv;
};

/// Residual per h-degree: LHS_w - S_w / (mu^2)^{w/2} at even w, and S_w at odd
/// w (which must vanish on its own).
template <class S>
RelationReport verify_relation(char which, const RelationInputs<S>& in);

template <class S>
RelationReport verify_A(const RelationInputs<S>& in) { return verify_relation('A', in); }
template <class S>
RelationReport verify_B(const RelationInputs<S>& in) { return verify_relation('B', in); }
template <class S>
RelationReport verify_C(const RelationInputs<S>& in) { return verify_relation('C', in); }
template <class S>
RelationReport verify_D(const RelationInputs<S>& in) { return verify_relation('D', in); }

}  // namespace drinfeld
