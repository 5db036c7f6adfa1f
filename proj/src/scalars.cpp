#include "drinfeld/scalars.hpp"

#include <ios>

namespace drinfeld {

Rational rational_normalize(const Integer& n, const Integer& d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  // gmp_rational canonicalizes on construction.
  return Rational(n, d);
}

std::string to_string(const Rational& x) {
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return rational_normalize(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::domain_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

namespace {
thread_local unsigned g_digits = 0;
}

FloatContext::FloatContext(unsigned digits)
    : saved_digits_(g_digits), saved_working_(BigFloat::default_precision()) {
  g_digits = digits;
  BigFloat::default_precision(digits + kGuardDigits);
}

FloatContext::~FloatContext() {
  g_digits = saved_digits_;
  BigFloat::default_precision(saved_working_);
}

unsigned FloatContext::digits() { return g_digits; }

BigFloat pi_value() {
  BigFloat x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

std::string to_decimal(const BigFloat& x, unsigned places) {
  unsigned avail = x.precision();
  if (places + kGuardDigits > avail)
    throw std::out_of_range("requested " + std::to_string(places) +
                            " places but only " + std::to_string(avail) +
                            " working digits (with guard) are available");
  std::string s = x.str(places, std::ios_base::fixed);
  if (s.empty() || s[0] != '-') return s;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] != '0' && s[i] != '.') return s;
  return s.substr(1);
}

std::string to_decimal_full(const BigFloat& x) {
  return x.str(x.precision(), std::ios_base::scientific);
}

BigFloat parse_bigfloat(const std::string& s) {
  try {
    return BigFloat(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed decimal '" + s + "'");
  }
}

std::string scalar_string(const Rational& x) { return to_string(x); }

std::string scalar_string(const BigFloat& x) {
  return x.str(FloatContext::digits() ? FloatContext::digits() : 20, std::ios_base::scientific);
}

bool rational_sqrt(const Rational& x, Rational& root) {
  if (x < 0) return false;
  Integer n = mp::numerator(x), d = mp::denominator(x);
  Integer rn = mp::sqrt(n), rd = mp::sqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  root = Rational(rn, rd);
  return true;
}

}  // namespace drinfeld
