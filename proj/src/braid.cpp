#include "drinfeld/braid.hpp"

#include <map>
#include <random>

namespace drinfeld {

const char* generator_name(int g) {
  static const char* names[] = {"t12", "t13", "t23", "t14", "t24", "t34"};
  return g >= 0 && g < 6 ? names[g] : "?";
}

std::string mono_str(uint64_t key) {
  Mono m = Mono::from_key(key);
  std::string s;
  auto put = [&](const std::string& x) {
    if (!s.empty()) s += '*';
    s += x;
  };
  for (int i = 0; i < m.ulen; ++i) put(generator_name(m.u_letter(i) + t14));
  for (int i = 0; i < m.vlen; ++i) put(m.v_letter(i) ? "t23" : "t13");
  if (m.k == 1) put("c");
  if (m.k > 1) put("c^" + std::to_string(m.k));
  return s.empty() ? "1" : s;
}

uint64_t basis_count(Arena a, int n) {
  uint64_t total = 0;
  for (int k = 0; k <= n; ++k) {
    int rest = n - k;
    if (a == Arena::a3) {
      total += uint64_t{1} << rest;
      continue;
    }
    for (int vlen = 0; vlen <= rest; ++vlen) {
      uint64_t p3 = 1;
      for (int i = 0; i < rest - vlen; ++i) p3 *= 3;
      total += p3 << vlen;
    }
  }
  return total;
}

std::vector<uint64_t> basis_monomials(Arena a, int n) {
  std::vector<uint64_t> out;
  int umax = a == Arena::a3 ? 0 : n;
  for (int ulen = 0; ulen <= umax; ++ulen)
    for (int vlen = 0; ulen + vlen <= n; ++vlen) {
      Mono m;
      m.ulen = ulen;
      m.vlen = vlen;
      m.k = n - ulen - vlen;
      for (uint32_t u = 0; u < (1u << (2 * ulen)); ++u) {
        bool ok = true;
        for (int i = 0; i < ulen; ++i) ok = ok && ((u >> (2 * i)) & 3u) != 3u;
        if (!ok) continue;
        for (uint32_t v = 0; v < (1u << vlen); ++v) {
          m.u = u;
          m.v = v;
          out.push_back(m.key());
        }
      }
    }
  return out;
}

const std::vector<Bracket>& bracket_rule(int x, int f) {
  // [x, f] for x in {t12,t13,t23}, f in {t14,t24,t34}; letters 0,1,2 = t14,t24,t34.
  static const std::vector<Bracket> none;
  static const std::vector<Bracket> r12_14{{1, 0, 1}, {-1, 1, 0}};  // [t14,t24]
  static const std::vector<Bracket> r12_24{{1, 1, 0}, {-1, 0, 1}};  // [t24,t14]
  static const std::vector<Bracket> r13_14{{1, 0, 2}, {-1, 2, 0}};  // [t14,t34]
  static const std::vector<Bracket> r13_34{{1, 2, 0}, {-1, 0, 2}};  // [t34,t14]
  static const std::vector<Bracket> r23_24{{1, 1, 2}, {-1, 2, 1}};  // [t24,t34]
  static const std::vector<Bracket> r23_34{{1, 2, 1}, {-1, 1, 2}};  // [t34,t24]
  switch (x * 8 + f) {
    case t12 * 8 + t14: return r12_14;
    case t12 * 8 + t24: return r12_24;
    case t13 * 8 + t14: return r13_14;
    case t13 * 8 + t34: return r13_34;
    case t23 * 8 + t24: return r23_24;
    case t23 * 8 + t34: return r23_34;
    default: return none;
  }
}

namespace {

constexpr int kCenter = 6;

bool is_free(int a) { return a >= t14 && a <= t34; }

struct Redex {
  int pos;
  int kind;  // 0: t12 -> c - t13 - t23; 1: move past a free letter; 2: c past t13/t23
};

std::vector<Redex> redexes(const std::vector<int>& w) {
  std::vector<Redex> out;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] == t12) out.push_back({i, 0});
    if (i + 1 < static_cast<int>(w.size())) {
      if (!is_free(w[i]) && is_free(w[i + 1])) out.push_back({i, 1});
      if (w[i] == kCenter && (w[i + 1] == t13 || w[i + 1] == t23)) out.push_back({i, 2});
    }
  }
  return out;
}

}  // namespace

BraidElement<Rational> normal_form_by_rewriting(const RawBraid<Rational>& e, int order, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<std::vector<int>, Rational> work;
  for (const auto& [w, c] : e.terms) {
    for (int a : w)
      if (a < 0 || a >= generator_count(e.arena)) throw std::invalid_argument("generator outside the arena");
    if (static_cast<int>(w.size()) <= order) work[w] += c;
  }
  auto add = [&](const std::vector<int>& w, const Rational& c) {
    auto& slot = work[w];
    slot += c;
  };
  while (true) {
    std::vector<std::vector<int>> pending;
    for (const auto& [w, c] : work)
      if (c != 0 && !redexes(w).empty()) pending.push_back(w);
    if (pending.empty()) break;
    const auto w = pending[std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng)];
    Rational c = work[w];
    work.erase(w);
    auto rs = redexes(w);
    Redex r = rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng)];
    auto replaced = [&](std::initializer_list<int> middle, int width) {
      std::vector<int> out(w.begin(), w.begin() + r.pos);
      out.insert(out.end(), middle);
      out.insert(out.end(), w.begin() + r.pos + width, w.end());
      return out;
    };
    if (r.kind == 0) {
      add(replaced({kCenter}, 1), c);
      add(replaced({t13}, 1), -c);
      add(replaced({t23}, 1), -c);
    } else if (r.kind == 2) {
      add(replaced({w[r.pos + 1], kCenter}, 2), c);
    } else {
      int x = w[r.pos], f = w[r.pos + 1];
      add(replaced({f, x}, 2), c);
      std::vector<int> xs = x == kCenter ? std::vector<int>{t12, t13, t23} : std::vector<int>{x};
      for (int y : xs)
        for (const Bracket& br : bracket_rule(y, f))
          add(replaced({br.first + t14, br.second + t14}, 2), br.sign > 0 ? c : Rational(-c));
    }
  }
  BraidElement<Rational> out(e.arena, order);
  for (const auto& [w, c] : work) {
    Mono m;
    for (int a : w) {
      if (is_free(a)) {
        m.u = (m.u << 2) | static_cast<uint32_t>(a - t14);
        ++m.ulen;
      } else if (a == kCenter) {
        ++m.k;
      } else {
        m.v = (m.v << 1) | static_cast<uint32_t>(a == t23);
        ++m.vlen;
      }
    }
    out.add(m.key(), c);
  }
  return out;
}

PbwIndexer::PbwIndexer(Arena a, int order)
    : arena_(a), order_(order), sizes_(order + 2, 0), offsets_((order + 2) * 17 * 17, 0), pow3_(18, 1) {
  if (order > 15) throw std::invalid_argument("dense braid order above 15");
  for (int e = 1; e < 18; ++e) pow3_[e] = pow3_[e - 1] * 3;
  for (int n = 0; n <= order + 1; ++n) {
    std::size_t off = 0;
    int umax = a == Arena::a3 ? 0 : n;
    for (int ulen = 0; ulen <= umax; ++ulen)
      for (int vlen = 0; ulen + vlen <= n; ++vlen) {
        offsets_[(n * 17 + ulen) * 17 + vlen] = off;
        off += static_cast<std::size_t>(pow3_[ulen]) << vlen;
      }
    sizes_[n] = off;
  }
}

uint64_t PbwIndexer::key_of(int n, std::size_t idx) const {
  int umax = arena_ == Arena::a3 ? 0 : n;
  for (int ulen = umax; ulen >= 0; --ulen)
    for (int vlen = n - ulen; vlen >= 0; --vlen) {
      std::size_t off = offset(n, ulen, vlen);
      if (idx < off) continue;
      std::size_t local = idx - off;
      Mono m;
      m.ulen = ulen;
      m.vlen = vlen;
      m.k = n - ulen - vlen;
      m.v = static_cast<uint32_t>(local & ((std::size_t{1} << vlen) - 1));
      uint32_t u3 = static_cast<uint32_t>(local >> vlen);
      for (int i = ulen - 1; i >= 0; --i) {
        m.u |= (u3 % 3) << (2 * (ulen - 1 - i));
        u3 /= 3;
      }
      return m.key();
    }
  throw std::out_of_range("dense braid index out of range");
}

std::size_t PbwIndexer::index_of(uint64_t key) const {
  Mono m = Mono::from_key(key);
  uint32_t u3 = 0;
  for (int i = 0; i < m.ulen; ++i) u3 = u3 * 3 + static_cast<uint32_t>(m.u_letter(i));
  return offset(m.degree(), m.ulen, m.vlen) + (static_cast<std::size_t>(u3) << m.vlen) + m.v;
}

}  // namespace drinfeld
