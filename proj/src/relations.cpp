#include "drinfeld/relations.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <chrono>
#include <functional>

namespace drinfeld {

namespace {

using Mat3 = Eigen::Matrix<Rational, 3, 3>;
using Mat4 = Eigen::Matrix<Rational, 4, 4>;

Rational rpow(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

/// sinh(s h) / h through h^W.
TaylorH<Rational> sinhc(const Rational& s, int W) {
  return hseries_elementary(HKind::sinh, s, W + 1).divide_by_h(1);
}

std::vector<int> plus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// A-type summand data for a triple: binomial, tau index.
struct TripleTerm {
  Integer binom;
  Index index;
};

TripleTerm triple_term(const IndexTriple& t) {
  return {multi_binom(t.p, t.r), tau(plus(t.p, t.r), t.q)};
}

template <class S>
S scalar(const Rational& r) {
  return from_rational<S>(r);
}

template <class S>
std::string value_string(const S& x);
template <>
std::string value_string(const Rational& x) {
  return to_string(x);
}
template <>
std::string value_string(const BigFloat& x) {
  return x.str(20, std::ios_base::scientific);
}

}  // namespace

TaylorH<Rational> qint_series(int n, int W) {
  if (n < 1) throw std::invalid_argument("quantum integer needs n >= 1");
  return hseries_div(sinhc(Rational(n, 2), W), sinhc(Rational(1, 2), W));
}

Integer multi_binom(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multi_binom: length mismatch");
  Integer r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || b[i] < 0) throw std::invalid_argument("multi_binom: negative entry");
    Integer c = 1;
    for (int j = 1; j <= b[i]; ++j) c = c * (a[i] + j) / j;
    r *= c;
  }
  return r;
}

Rational g_val(const Index& k, const Rational& N) {
  Mat3 u, v;
  u << N - 1, 1, -1, 1, N - 1, -1, 0, 0, 0;
  v << N - 1, -1, 1, 0, 0, 0, 1, -1, N - 1;
  Eigen::Matrix<Rational, 1, 3> row;
  row << 0, 1, 0;
  for (int kk : k) {
    if (kk < 1) throw std::invalid_argument("g_val: index entries must be positive");
    row = row * u;
    for (int j = 1; j < kk; ++j) row = row * v;
  }
  Eigen::Matrix<Rational, 3, 1> col;
  col << 1, 1, N;
  return (row * col)(0, 0);
}

Rational w_val(const Index& p, const Index& q) {
  if (p.size() != q.size() || p.empty()) throw std::invalid_argument("w_val: p and q need the same positive length");
  Mat4 y;
  y << Rational(5, 14), Rational(-9, 14), Rational(-9, 14), Rational(27, 7),  //
      Rational(-1, 6), Rational(-1, 2), Rational(1, 2), 1,                    //
      Rational(-1, 3), 1, 0, 2,                                               //
      Rational(1, 7), Rational(1, 7), Rational(1, 7), Rational(1, 7);
  const Rational xd[4] = {-14, -6, -12, 0};
  Eigen::Matrix<Rational, 1, 4> row;
  row << 7, 7, 7, 7;
  auto xpow = [&](int e) {
    if (e < 1) throw std::invalid_argument("w_val: entries must be positive");
    for (int i = 0; i < 4; ++i) row(0, i) *= rpow(xd[i], e);
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    xpow(p[i]);
    row = row * y;
    xpow(q[i]);
    row = row * y;
  }
  Eigen::Matrix<Rational, 4, 1> col;
  col << 27, 7, 14, 0;
  return -(row * col)(0, 0);
}

int IndexTriple::weight() const { return sum(p) + sum(q) + sum(r); }

bool in_I(const IndexTriple& t, int n, int k) {
  if (static_cast<int>(t.p.size()) != k || t.q.size() != t.p.size() || t.r.size() != t.p.size()) return false;
  if (k < 1 || t.weight() != n || t.p[0] < 1) return false;
  for (int i = 0; i < k; ++i)
    if (t.p[i] < 0 || t.r[i] < 0 || t.q[i] < 1 || t.p[i] + t.r[i] < 1) return false;
  return true;
}

std::vector<IndexTriple> enum_I(int n, int k) {
  std::vector<IndexTriple> out;
  if (k < 1) return out;
  IndexTriple cur;
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == k) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    // Each later position needs weight >= 2.
    int reserve = 2 * (k - i - 1);
    for (int q = 1; q <= rem - reserve; ++q)
      for (int p = i == 0 ? 1 : 0; q + p <= rem - reserve; ++p)
        for (int r = 0; q + p + r <= rem - reserve; ++r) {
          if (p + r < 1) continue;
          cur.p.push_back(p);
          cur.q.push_back(q);
          cur.r.push_back(r);
          rec(i + 1, rem - p - q - r);
          cur.p.pop_back();
          cur.q.pop_back();
          cur.r.pop_back();
        }
  };
  rec(0, n);
  return out;
}

std::string CConvention::describe() const {
  std::string s = r_factor == RFactor::even ? "r-factor=(x-1)^e+(x+1)^e" : "r-factor=(x-1)^e-(x+1)^e";
  s += double_sign == DoubleSign::flipped ? ";double-sign=(-1)^(wt r+wt u+m+1)" : ";double-sign=(-1)^(wt r+wt u+m)";
  s += ";product=a=2..k,exponent p_a+1";
  return s;
}

Rational A_prime(const IndexTriple& t, const Rational& x) {
  int k = static_cast<int>(t.p.size());
  Rational v = rpow(x, sum(t.q) - k) * (rpow(x - 1, t.p[0]) - rpow(x + 1, t.p[0]));
  for (int a = 1; a < k; ++a) v *= rpow(x - 1, t.p[a] + 1) + rpow(x + 1, t.p[a] + 1);
  return v;
}

Rational r_factor(int e, const Rational& x, const CConvention& conv) {
  if (conv.r_factor == CConvention::RFactor::even) return rpow(x - 1, e) + rpow(x + 1, e);
  return rpow(x - 1, e) - rpow(x + 1, e);
}

Rational A_val(const IndexTriple& t, const Rational& x, const CConvention& conv) {
  return A_prime(t, x) * r_factor(sum(t.r), x, conv);
}

Rational B_val(const IndexTriple& t1, const IndexTriple& t2, const Rational& x, const CConvention& conv) {
  int e = sum(t1.r) + sum(t2.r);
  Rational f = e == 0 ? Rational(2) : r_factor(e, x, conv);
  return A_prime(t1, x) * A_prime(t2, x) * f;
}

TaylorH<Rational> relation_lhs(char which, const Rational& N, int W) {
  switch (which) {
    case 'A':
      if (N == 0) throw std::invalid_argument("relation A needs N != 0");
      return N * hseries_div(sinhc(1, W), sinhc(N, W));
    case 'B':
      if (N == 1 || N == 0) throw std::invalid_argument("relation B needs N != 0, 1 (degenerate denominator)");
      return N * hseries_div(sinhc(1, W), sinhc(N - 1, W) + sinhc(1, W));
    case 'C': {
      if (N == 0) throw std::invalid_argument("relation C needs N != 0");
      auto r = hseries_div(sinhc(1, W), sinhc(N, W));
      auto c = hseries_div(hseries_elementary(HKind::cosh, N, W), hseries_elementary(HKind::cosh, Rational(1), W));
      return (N * N) * (r * c);
    }
    case 'D': {
      auto num = qint_series(6, W) * qint_series(4, W);
      auto den = qint_series(12, W) * qint_series(7, W) * qint_series(2, W);
      return Rational(49) * hseries_div(num, den);
    }
    default:
      throw std::invalid_argument(std::string("unknown relation '") + which + "'");
  }
}

Rational relation_constant(char which, const Rational& N) {
  switch (which) {
    case 'A':
    case 'B':
      return 1;
    case 'C':
      return N;
    case 'D':
      return 7;
    default:
      throw std::invalid_argument(std::string("unknown relation '") + which + "'");
  }
}

template <class S>
std::vector<S> rhs_numerators(char which, const ZetaProvider<S>& z, int W, const Rational& N, const CConvention& conv) {
  std::vector<S> out(W + 1, S(0));
  out[0] = scalar<S>(relation_constant(which, N));
  if (which == 'A' || which == 'B' || which == 'D') {
    for (const Index& k : admissible_upto(W)) {
      int w = wt(k);
      Rational c;
      if (which == 'A') {
        c = (1 - N * N) * rpow(2 * N, w) / rpow(N, 2 * ht(k));
        if (dp(k) % 2) c = -c;
      } else if (which == 'B') {
        c = rpow(Rational(2), w) * g_val(k, N);
        if (dp(k) % 2) c = -c;
      } else {
        std::vector<int> p, q;
        tau_decompose(k, p, q);
        c = w_val(p, q);
        if (sum(p) % 2) c = -c;
      }
      if (c != 0) out[w] += scalar<S>(c) * z(k);
    }
    return out;
  }
  if (which != 'C') throw std::invalid_argument(std::string("unknown relation '") + which + "'");
  relation_lhs('C', N, 0);  // rejects N = 0
  Rational pre = (N * N - 1) * N;
  for (int n = 1; 2 * n <= W; ++n) {
    S acc(0);
    for (int k = 1; k <= n; ++k)
      for (const IndexTriple& t : enum_I(2 * n, k)) {
        Rational a = A_val(t, N, conv);
        if (a == 0) continue;
        TripleTerm tt = triple_term(t);
        Rational c = rpow(Rational(2), 2 * n - k) * a * Rational(tt.binom);
        if (sum(t.r) % 2) c = -c;
        acc += scalar<S>(c) * z(tt.index);
      }
    for (int l = 2; l <= 2 * n - 2; ++l) {
      int m = 2 * n - l;
      for (int i = 1; i <= l / 2; ++i)
        for (int j = 1; j <= m / 2; ++j) {
          auto I1 = enum_I(l, i), I2 = enum_I(m, j);
          for (const IndexTriple& t1 : I1) {
            TripleTerm a1 = triple_term(t1);
            S z1 = z(a1.index);
            for (const IndexTriple& t2 : I2) {
              TripleTerm a2 = triple_term(t2);
              Rational c = rpow(Rational(2), 2 * n - i - j - 1) * B_val(t1, t2, N, conv) * Rational(a1.binom * a2.binom);
              int sign = sum(t1.r) + sum(t2.r) + m;
              if (conv.double_sign == CConvention::DoubleSign::flipped) ++sign;
              if (sign % 2) c = -c;
              if (c != 0) acc += scalar<S>(c) * z1 * z(a2.index);
            }
          }
        }
    }
    out[2 * n] = scalar<S>(pre) * acc;
  }
  return out;
}

template <class S>
RelationReport verify_relation(char which, const RelationInputs<S>& in) {
  auto t0 = std::chrono::steady_clock::now();
  constexpr bool exact = std::is_same_v<S, Rational>;
  if (in.W < 2) throw std::invalid_argument("relations need max weight >= 2");
  if (in.Ns.empty() && which != 'D') throw std::invalid_argument("no N values given");
  if (is_zero(in.mu2)) throw std::invalid_argument("mu = 0: relations divide by powers of mu");
  RelationReport rep;
  rep.relation = which;
  rep.phi_source = in.phi_source;
  rep.mu = in.mu_desc;
  rep.W = in.W;
  rep.exact = exact;
  rep.tolerance = exact ? "0" : in.tol.str(3, std::ios_base::scientific);
  if (which == 'C') rep.convention = in.conv.describe();
  std::vector<Rational> Ns = which == 'D' ? std::vector<Rational>{Rational(0)} : in.Ns;
  bool pass = true;
  for (const Rational& N : Ns) {
    std::string Nstr = which == 'D' ? "-" : to_string(N);
    if (which != 'D') rep.N.push_back(Nstr);
    TaylorH<Rational> lhs = relation_lhs(which, N, in.W);
    std::vector<S> num = rhs_numerators(which, in.zeta, in.W, N, in.conv);
    S mu_pow(1);
    for (int d = 0; d <= in.W; ++d) {
      S r;
      if (d % 2 == 1) {
        r = num[d];
      } else {
        r = scalar<S>(lhs[d]) - num[d] / mu_pow;
        mu_pow *= in.mu2;
      }
      ResidualEntry e{Nstr, d, value_string(r), magnitude(r)};
      if (!within(r, exact ? BigFloat(0) : in.tol)) pass = false;
      rep.residuals.push_back(std::move(e));
    }
  }
  rep.pass = pass;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

template std::vector<Rational> rhs_numerators(char, const ZetaProvider<Rational>&, int, const Rational&,
                                              const CConvention&);
template std::vector<BigFloat> rhs_numerators(char, const ZetaProvider<BigFloat>&, int, const Rational&,
                                              const CConvention&);
template RelationReport verify_relation(char, const RelationInputs<Rational>&);
template RelationReport verify_relation(char, const RelationInputs<BigFloat>&);

}  // namespace drinfeld
