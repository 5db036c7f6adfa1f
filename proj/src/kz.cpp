#include "drinfeld/kz.hpp"

namespace drinfeld {

KZTruncation build_kz(int W, unsigned D, MZVCache* cache) {
  if (W < 2) throw std::invalid_argument("KZ truncation needs weight >= 2");
  FloatContext ctx(D);
  auto table = mzv_table(W, D, cache);
  ZetaProvider<BigFloat> z = [&table](const Index& k) {
    auto it = table.find(k);
    if (it == table.end()) throw std::out_of_range("no MZV for (" + index_str(k) + ")");
    return it->second;
  };
  KZTruncation t;
  t.phi = series_from_admissible(z, W);
  t.W = W;
  t.digits = D;
  BigFloat pi = pi_value();
  t.mu2 = -4 * pi * pi;
  if (cache) t.cache_digest = cache->digest();
  return t;
}

KZCheck check_kz(const KZTruncation& t, const BigFloat& tol) {
  KZCheck r;
  r.tol = tol;
  r.grouplike = grouplike_defect(t.phi);
  r.pentagon = max_abs_coeff(pentagon_residual(t.phi));
  auto [h1, h2] = hexagon_residuals(AssociatorCandidate<BigFloat>{t.mu2, t.phi});
  r.hexagon1 = max_abs_coeff(h1);
  r.hexagon2 = max_abs_coeff(h2);
  r.two_cycle = max_abs_coeff(two_cycle_residual(t.phi));
  r.pass = r.grouplike <= tol && r.pentagon <= tol && r.hexagon1 <= tol && r.hexagon2 <= tol && r.two_cycle <= tol;
  return r;
}

}  // namespace drinfeld
