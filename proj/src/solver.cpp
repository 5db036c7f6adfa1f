#include "drinfeld/solver.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace drinfeld {

namespace {

using SparseRow = std::map<int, Rational>;

/// Echelon store; each pivot is the largest column of its row, scaled to 1.
class Eliminator {
 public:
  /// Reduces the row; returns false if it reduces to 0 = nonzero.
  bool add(SparseRow row, Rational constant) {
    reduce(row, constant);
    if (row.empty()) return constant == 0;
    auto last = std::prev(row.end());
    int p = last->first;
    Rational inv = 1 / last->second;
    for (auto& [c, v] : row) v *= inv;
    constant *= inv;
    pivots_.emplace(p, Entry{std::move(row), std::move(constant)});
    return true;
  }
  bool is_pivot(int c) const { return pivots_.count(c) != 0; }
  int rank() const { return static_cast<int>(pivots_.size()); }

  /// Solves for every pivot given values of the free columns, in increasing
  /// pivot order. `value` maps a column to its affine expression.
  template <class Expr>
  void back_substitute(std::vector<Expr>& value, const std::function<Expr(const Expr&, const Rational&)>& scale,
                       const std::function<void(Expr&, const Expr&)>& add_to, const std::function<Expr(Rational)>& constant_expr) const {
    for (const auto& [p, e] : pivots_) {
      Expr x = constant_expr(-e.constant);
      for (const auto& [c, v] : e.row)
        if (c != p) add_to(x, scale(value[c], -v));
      value[p] = std::move(x);
    }
  }

 private:
  struct Entry {
    SparseRow row;
    Rational constant;
  };

  void reduce(SparseRow& row, Rational& constant) const {
    while (!row.empty()) {
      auto it = row.end();
      bool hit = false;
      while (it != row.begin()) {
        --it;
        auto pv = pivots_.find(it->first);
        if (pv == pivots_.end()) continue;
        Rational f = it->second;
        for (const auto& [c, v] : pv->second.row) {
          auto [slot, fresh] = row.try_emplace(c, -f * v);
          if (!fresh) {
            slot->second -= f * v;
            if (slot->second == 0) row.erase(slot);
          }
        }
        constant -= f * pv->second.constant;
        hit = true;
        break;
      }
      if (!hit) break;
    }
  }

  std::map<int, Entry> pivots_;
};

/// Affine expression: constant + sum coeff[j] * t_j.
struct Affine {
  Rational constant;
  SparseRow coeff;
};

Affine scale_affine(const Affine& a, const Rational& s) {
  Affine r{a.constant * s, {}};
  for (const auto& [j, v] : a.coeff) r.coeff.emplace(j, v * s);
  return r;
}

void add_affine(Affine& acc, const Affine& a) {
  acc.constant += a.constant;
  for (const auto& [j, v] : a.coeff) {
    auto [slot, fresh] = acc.coeff.try_emplace(j, v);
    if (!fresh) {
      slot->second += v;
      if (slot->second == 0) acc.coeff.erase(slot);
    }
  }
}

template <class S>
DenseBraid<S> word_image(const Word& w, const DenseBraid<S>& a, const DenseBraid<S>& b, const DenseBraidAlgebra<S>& alg) {
  NCSeries<S> single(w.size());
  single.set(w, S(1));
  return substitute(single, a, b, alg);
}

/// out += s * x restricted to degree n, keyed by PBW monomial.
template <class S>
void add_degree(std::map<uint64_t, S>& out, const DenseBraid<S>& x, int n, const S& s) {
  if (n >= static_cast<int>(x.deg.size()) || x.deg[n].empty()) return;
  for (std::size_t i = 0; i < x.deg[n].size(); ++i)
    if (!is_zero(x.deg[n][i])) out[x.ix->key_of(n, i)] += s * x.deg[n][i];
}

template <class S>
NCSeries<S> below(const NCSeries<S>& phi, int n) { return phi.truncated(n - 1).truncated(n); }

Rational random_parameter(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> p(1, 100), q(1, 10), sign(0, 1);
  int num = p(rng);
  if (sign(rng)) num = -num;
  return Rational(num, q(rng));
}

SolveResult solve_impl(int W, const ConstraintOptions& opt, const std::function<Rational()>& next_param) {
  if (W < 2) throw std::invalid_argument("solver needs max weight >= 2");
  SolveResult res;
  res.phi = NCSeries<Rational>::one(W);
  for (int n = 1; n <= W; ++n) {
    AffineSystem sys = constraints_at_degree(res.phi, n, opt);
    int ncol = static_cast<int>(sys.columns.size());
    auto fail = [n] { throw std::runtime_error("inconsistent constraint system at degree " + std::to_string(n)); };

    Eliminator shuffle;
    for (const auto& r : sys.rows)
      if (r.kind == RowKind::shuffle && !shuffle.add(SparseRow(r.coeffs.begin(), r.coeffs.end()), r.constant)) fail();

    // Columns as affine functions of the shuffle-free columns.
    std::vector<int> free1;
    std::vector<Affine> expr(ncol);
    for (int c = 0; c < ncol; ++c)
      if (!shuffle.is_pivot(c)) {
        expr[c].coeff.emplace(static_cast<int>(free1.size()), Rational(1));
        free1.push_back(c);
      }
    shuffle.back_substitute<Affine>(expr, scale_affine, add_affine, [](Rational c) { return Affine{std::move(c), {}}; });

    Eliminator rest;
    for (const auto& r : sys.rows) {
      if (r.kind == RowKind::shuffle) continue;
      Affine acc{r.constant, {}};
      for (const auto& [c, v] : r.coeffs) add_affine(acc, scale_affine(expr[c], v));
      if (!rest.add(std::move(acc.coeff), acc.constant)) fail();
    }

    DegreeReport rep;
    rep.degree = n;
    rep.unknowns = ncol;
    rep.shuffle_rank = shuffle.rank();
    rep.extra_rank = rest.rank();
    int nfree = static_cast<int>(free1.size());
    std::vector<Rational> t(nfree);
    for (int j = 0; j < nfree; ++j)
      if (!rest.is_pivot(j)) {
        t[j] = next_param();
        rep.parameters.push_back(t[j]);
      }
    rep.free_parameters = static_cast<int>(rep.parameters.size());
    std::function<Rational(const Rational&, const Rational&)> scale_r = [](const Rational& x, const Rational& s) {
      return x * s;
    };
    rest.back_substitute<Rational>(t, scale_r, [](Rational& a, const Rational& b) { a += b; },
                                   [](Rational c) { return c; });
    for (int c = 0; c < ncol; ++c) {
      Rational x = expr[c].constant;
      for (const auto& [j, v] : expr[c].coeff) x += v * t[j];
      res.phi.set(sys.columns[c], x);
    }
    res.degrees.push_back(std::move(rep));
  }
  return res;
}

}  // namespace

template <class S>
BasicAffineSystem<S> constraints_at_degree(const NCSeries<S>& phi_below, int n, const BasicConstraintOptions<S>& opt) {
  if (n < 1) throw std::invalid_argument("constraint degree must be >= 1");
  if (phi_below.order() < n - 1)
    throw std::invalid_argument("phi is only known through degree " + std::to_string(phi_below.order()) +
                                ", need " + std::to_string(n - 1));
  if (phi_below.constant() != S(1)) throw std::invalid_argument("phi must have constant term 1");
  BasicAffineSystem<S> sys;
  sys.degree = n;
  sys.columns = words_of_length(n);
  auto col = [&](const Word& w) { return static_cast<int>(binary_rank(w)); };
  for (int c = 0; c < static_cast<int>(sys.columns.size()); ++c)
    if (col(sys.columns[c]) != c) throw std::logic_error("word enumeration is not in rank order");

  NCSeries<S> P = below(phi_below, n);

  if (opt.shuffle) {
    for (int a = 1; 2 * a <= n; ++a)
      for (const Word& w : words_of_length(a))
        for (const Word& v : words_of_length(n - a)) {
          if (a == n - a && v < w) continue;
          std::map<int, Rational> acc;
          for_each_interleaving(w, v, [&](const Word& u) { acc[col(u)] += 1; });
          BasicAffineRow<S> row{RowKind::shuffle, {acc.begin(), acc.end()}, S(-(P.coeff(w) * P.coeff(v)))};
          sys.rows.push_back(std::move(row));
        }
  }

  auto emit = [&](RowKind kind, const std::map<uint64_t, std::vector<std::pair<int, Rational>>>& cols,
                  const std::map<uint64_t, S>& constants) {
    std::map<uint64_t, BasicAffineRow<S>> rows;
    for (const auto& [key, entries] : cols) {
      auto& r = rows.try_emplace(key, BasicAffineRow<S>{kind, {}, S(0)}).first->second;
      for (const auto& e : entries)
        if (e.second != 0) r.coeffs.push_back(e);
    }
    for (const auto& [key, c] : constants) rows.try_emplace(key, BasicAffineRow<S>{kind, {}, S(0)}).first->second.constant = c;
    std::set<std::pair<std::vector<std::pair<int, Rational>>, S>> seen;
    for (auto& [key, r] : rows) {
      if (r.coeffs.empty() && is_zero(r.constant)) continue;
      if (!seen.emplace(r.coeffs, r.constant).second) continue;
      sys.rows.push_back(std::move(r));
    }
  };

  if (opt.pentagon) {
    PbwIndexer ix(Arena::a4, n);
    DenseBraidAlgebra<Rational> alg{&ix};
    auto g = [&](std::initializer_list<int> gens) { return detail::dense_generators<Rational>(ix, gens); };
    const std::array<std::pair<DenseBraid<Rational>, DenseBraid<Rational>>, 5> slots{{
        {g({t12}), g({t23, t24})},
        {g({t13, t23}), g({t34})},
        {g({t23}), g({t34})},
        {g({t12, t13}), g({t24, t34})},
        {g({t12}), g({t23})},
    }};
    const int sign[5] = {1, 1, -1, -1, -1};
    std::map<uint64_t, std::vector<std::pair<int, Rational>>> cols;
    for (const Word& w : sys.columns) {
      std::map<uint64_t, Rational> acc;
      for (int s = 0; s < 5; ++s) add_degree(acc, word_image(w, slots[s].first, slots[s].second, alg), n, Rational(sign[s]));
      for (const auto& [key, v] : acc) cols[key].emplace_back(col(w), v);
    }
    std::map<uint64_t, S> constants;
    auto top = pentagon_residual(P).homogeneous(n);
    for (const auto& [key, v] : top.terms()) constants[key] = v;
    emit(RowKind::pentagon, cols, constants);
  }

  if (opt.hexagon_mu2) {
    PbwIndexer ix(Arena::a3, n);
    DenseBraidAlgebra<Rational> alg{&ix};
    auto g = [&](std::initializer_list<int> gens) { return detail::dense_generators<Rational>(ix, gens); };
    auto [h1, h2] = hexagon_residuals(AssociatorCandidate<S>{*opt.hexagon_mu2, P});
    // Linear parts of LHS - RHS in the degree-n coefficients.
    const std::array<std::array<std::pair<int, int>, 3>, 2> pairs{{{{{t13, t12}, {t13, t23}, {t12, t23}}},
                                                                  {{{t23, t13}, {t12, t13}, {t12, t23}}}}};
    const int sign[2][3] = {{-1, 1, -1}, {1, -1, 1}};
    for (int h = 0; h < 2; ++h) {
      std::map<uint64_t, std::vector<std::pair<int, Rational>>> cols;
      for (const Word& w : sys.columns) {
        std::map<uint64_t, Rational> acc;
        for (int s = 0; s < 3; ++s)
          add_degree(acc, word_image(w, g({pairs[h][s].first}), g({pairs[h][s].second}), alg), n, Rational(sign[h][s]));
        for (const auto& [key, v] : acc) cols[key].emplace_back(col(w), v);
      }
      const auto& res = h == 0 ? h1 : h2;
      std::map<uint64_t, S> ca, cb;
      auto top = res.homogeneous(n);
      for (const auto& [key, v] : top.terms()) {
        if (!is_zero(v.a())) ca[key] = v.a();
        if (!is_zero(v.b())) cb[key] = v.b();
      }
      emit(RowKind::hexagon, cols, ca);
      std::map<uint64_t, std::vector<std::pair<int, Rational>>> none;
      for (const auto& [key, c] : cb) none[key];
      emit(RowKind::hexagon, none, cb);
    }
  }
  return sys;
}

template BasicAffineSystem<Rational> constraints_at_degree(const NCSeries<Rational>&, int,
                                                             const BasicConstraintOptions<Rational>&);
template BasicAffineSystem<BigFloat> constraints_at_degree(const NCSeries<BigFloat>&, int,
                                                             const BasicConstraintOptions<BigFloat>&);

SolveResult solve_generic(int W, uint64_t seed, const ConstraintOptions& opt) {
  std::mt19937_64 rng(seed);
  return solve_impl(W, opt, [&rng] { return random_parameter(rng); });
}

SolveResult solve_generic(int W, const std::vector<Rational>& params, const ConstraintOptions& opt) {
  std::size_t next = 0;
  return solve_impl(W, opt, [&]() -> Rational {
    if (next >= params.size()) throw std::invalid_argument("not enough explicit parameters for the solution space");
    return params[next++];
  });
}

}  // namespace drinfeld
