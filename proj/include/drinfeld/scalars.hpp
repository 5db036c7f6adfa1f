#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <memory>
#include <stdexcept>
#include <string>

namespace drinfeld {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

struct ContextMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// Lowest terms, positive denominator. Throws on d == 0.
Rational rational_normalize(const Integer& n, const Integer& d);

std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

/// Guard digits carried beyond every requested precision.
inline constexpr unsigned kGuardDigits = 10;

/// Working precision for BigFloat values created on this thread.
/// Scopes nest; the destructor restores the previous setting.
class FloatContext {
 public:
  explicit FloatContext(unsigned digits);
  ~FloatContext();
  FloatContext(const FloatContext&) = delete;
  FloatContext& operator=(const FloatContext&) = delete;

  /// Requested digits D of the innermost scope (0 when none is active).
  static unsigned digits();

 private:
  unsigned saved_digits_;
  unsigned saved_working_;
};

BigFloat pi_value();

/// Correctly rounded fixed-point rendering. Requires places <= digits - guard.
std::string to_decimal(const BigFloat& x, unsigned places);

/// Shortest faithful rendering at the working precision (used by file formats).
std::string to_decimal_full(const BigFloat& x);
BigFloat parse_bigfloat(const std::string& s);

/// a + b*mu with mu^2 = d. The context is shared by pointer; a value with no
/// context has b == 0 and adopts the context of whatever it meets.
template <class T>
class QuadExt {
 public:
  using Context = std::shared_ptr<const T>;

  QuadExt() : a_(0), b_(0) {}
  QuadExt(int a) : a_(a), b_(0) {}  // NOLINT(google-explicit-constructor)
  QuadExt(const T& a) : a_(a), b_(0) {}  // NOLINT(google-explicit-constructor)
  QuadExt(T a, T b, Context d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (!d_ && b_ != 0) throw ContextMismatch("QuadExt with a mu part needs a context");
  }

  static Context make_context(const T& d) { return std::make_shared<const T>(d); }
  static QuadExt mu(const Context& d) { return QuadExt(T(0), T(1), d); }

  const T& a() const { return a_; }
  const T& b() const { return b_; }
  const Context& context() const { return d_; }

  QuadExt conj() const { return QuadExt(a_, -b_, d_); }
  T norm() const { return a_ * a_ - dval() * b_ * b_; }

  QuadExt& operator+=(const QuadExt& y) {
    d_ = merge(d_, y.d_);
    a_ += y.a_;
    b_ += y.b_;
    return *this;
  }
  QuadExt& operator-=(const QuadExt& y) {
    d_ = merge(d_, y.d_);
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
  }
  QuadExt& operator*=(const QuadExt& y) {
    d_ = merge(d_, y.d_);
    if (b_ == 0 && y.b_ == 0) {
      a_ *= y.a_;
      return *this;
    }
    T na = a_ * y.a_ + *d_ * b_ * y.b_;
    T nb = a_ * y.b_ + b_ * y.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& y) {
    d_ = merge(d_, y.d_);
    if (y.b_ == 0) {
      if (y.a_ == 0) throw std::domain_error("QuadExt division by zero");
      a_ /= y.a_;
      b_ /= y.a_;
      return *this;
    }
    T n = y.norm();
    if (n == 0) throw std::domain_error("QuadExt division by a zero-norm element");
    *this *= y.conj();
    a_ /= n;
    b_ /= n;
    return *this;
  }
  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  T dval() const { return d_ ? *d_ : T(0); }

  static Context merge(const Context& x, const Context& y) {
    if (!x) return y;
    if (!y || x == y) return x;
    if (*x != *y) throw ContextMismatch("QuadExt values from different mu^2 contexts");
    return x;
  }

  T a_, b_;
  Context d_;
};

// Uniform access used by the generic algorithms.

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const BigFloat& x) { return x == 0; }
template <class T>
bool is_zero(const QuadExt<T>& x) {
  return is_zero(x.a()) && is_zero(x.b());
}

inline BigFloat magnitude(const Rational& x) { return BigFloat(mp::abs(x)); }
inline BigFloat magnitude(const BigFloat& x) { return mp::abs(x); }
template <class T>
BigFloat magnitude(const QuadExt<T>& x) {
  BigFloat ma = magnitude(x.a()), mb = magnitude(x.b());
  return ma > mb ? ma : mb;
}

std::string scalar_string(const Rational& x);
std::string scalar_string(const BigFloat& x);
template <class T>
std::string scalar_string(const QuadExt<T>& x) {
  if (is_zero(x.b())) return scalar_string(x.a());
  return scalar_string(x.a()) + " + (" + scalar_string(x.b()) + ")*mu";
}

template <class S>
struct ScalarFrom {
  static S from(const Rational& r) { return S(r); }
};
template <class T>
struct ScalarFrom<QuadExt<T>> {
  static QuadExt<T> from(const Rational& r) { return QuadExt<T>(ScalarFrom<T>::from(r)); }
};
template <class S>
S from_rational(const Rational& r) {
  return ScalarFrom<S>::from(r);
}

/// True when |x| <= tol (tol == 0 means exact zero).
template <class S>
bool within(const S& x, const BigFloat& tol) {
  if (tol == 0) return is_zero(x);
  return magnitude(x) <= tol;
}

/// Exact square root of a rational when one exists.
bool rational_sqrt(const Rational& x, Rational& root);

}  // namespace drinfeld
