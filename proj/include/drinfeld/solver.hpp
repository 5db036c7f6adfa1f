#pragma once

#include "drinfeld/braid.hpp"
#include "drinfeld/ncseries.hpp"

#include <optional>

namespace drinfeld {

template <class S>
struct BasicConstraintOptions {
  bool pentagon = true;
  bool shuffle = true;
  std::optional<S> hexagon_mu2;  // adds hexagon rows for this mu^2
};
using ConstraintOptions = BasicConstraintOptions<Rational>;

enum class RowKind { shuffle, pentagon, hexagon };

/// sum_c coeffs[c] * x_c + constant = 0, x_c the coefficient of columns[c].
/// The coefficients never depend on phi; the constant carries phi's scalars.
template <class S>
struct BasicAffineRow {
  RowKind kind;
  std::vector<std::pair<int, Rational>> coeffs;  // sorted by column
  S constant;
};
using AffineRow = BasicAffineRow<Rational>;

template <class S>
struct BasicAffineSystem {
  int degree = 0;
  std::vector<Word> columns;  // all words of the degree, in Word order
  std::vector<BasicAffineRow<S>> rows;
};
using AffineSystem = BasicAffineSystem<Rational>;

/// Constraints on the degree-n coefficients given phi through degree n-1.
/// Hexagon rows split each Q(mu) equation a + b*mu = 0 into a = 0 and b = 0.
/// Instantiated for Rational and BigFloat.
template <class S>
BasicAffineSystem<S> constraints_at_degree(const NCSeries<S>& phi_below, int n,
                                           const BasicConstraintOptions<S>& opt = {});

/// sum_c coeffs[c] * coefficient of columns[c] in phi + constant.
template <class S>
S row_value(const BasicAffineSystem<S>& sys, const BasicAffineRow<S>& row, const NCSeries<S>& phi) {
  S v = row.constant;
  for (const auto& [c, x] : row.coeffs) v += from_rational<S>(x) * phi.coeff(sys.columns[c]);
  return v;
}

struct DegreeReport {
  int degree = 0;
  int unknowns = 0;
  int shuffle_rank = 0;
  int extra_rank = 0;  // pentagon and hexagon rows beyond the shuffle rank
  int free_parameters = 0;
  std::vector<Rational> parameters;
};

struct SolveResult {
  NCSeries<Rational> phi;
  std::vector<DegreeReport> degrees;
};

/// Draws each free parameter as p/q, 1 <= |p| <= 100, 1 <= q <= 10.
SolveResult solve_generic(int W, uint64_t seed, const ConstraintOptions& opt = {});
/// Consumes `params` in order across degrees; throws if too few are given.
SolveResult solve_generic(int W, const std::vector<Rational>& params, const ConstraintOptions& opt = {});

/// mu^2 = -24 zeta_phi(2) = 24 * coefficient of X0X1.
template <class S>
S mu_from_phi(const NCSeries<S>& phi) {
  if (phi.order() < 2) throw TruncationError("mu needs phi through degree 2");
  return S(24) * phi.coeff(Word::parse("01"));
}

}  // namespace drinfeld
