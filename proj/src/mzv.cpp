#include "drinfeld/mzv.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace drinfeld {

namespace {

void require_admissible(const Index& k) {
  if (!is_admissible(k))
    throw std::invalid_argument("index (" + index_str(k) +
                                ") is not admissible: the series converges only when the last entry is > 1");
}

/// Li over a word 0^{s1-1}1 0^{s2-1}1 ... at 0 < x < 1:
/// sum over n1 > n2 > ... > nk >= 1 of x^n1 / (n1^s1 ... nk^sk), n1 <= M.
class Polylog {
 public:
  Polylog(long M, const BigFloat& x) : M_(M), inv_(M + 1), x_pow_(M + 1) {
    BigFloat h = 1;
    for (long n = 1; n <= M; ++n) {
      inv_[n] = BigFloat(1) / BigFloat(n);
      h *= x;
      x_pow_[n] = h;
    }
  }

  BigFloat operator()(const Word& w) {
    if (w.empty()) return BigFloat(1);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    std::vector<int> s;
    int zeros = 0;
    for (int i = 0; i < w.size(); ++i) {
      if (w[i] == 0) {
        ++zeros;
      } else {
        s.push_back(zeros + 1);
        zeros = 0;
      }
    }
    // inner[n] = sum over the deeper indices, all < n.
    std::vector<BigFloat> inner(M_ + 2, BigFloat(1)), next(M_ + 2);
    BigFloat result = 0;
    for (int level = static_cast<int>(s.size()) - 1; level >= 0; --level) {
      BigFloat acc = 0;
      next[1] = 0;
      for (long n = 1; n <= M_; ++n) {
        BigFloat term = inner[n] * power(n, s[level]);
        if (level == 0) term *= x_pow_[n];
        acc += term;
        next[n + 1] = acc;
      }
      if (level == 0) result = acc;
      inner.swap(next);
    }
    memo_.emplace(w, result);
    return result;
  }

 private:
  BigFloat power(long n, int s) const {
    BigFloat p = inv_[n];
    for (int i = 1; i < s; ++i) p *= inv_[n];
    return p;
  }

  long M_;
  std::vector<BigFloat> inv_, x_pow_;
  std::map<Word, BigFloat> memo_;
};

Word swap_reverse(const Word& w) {
  static const int swap[2] = {1, 0};
  return w.reversed().relabel(swap);
}

/// Digits beyond D needed so that absolute error control implies relative
/// error control: zeta(k) >= m^{-wt}.
unsigned extra_digits(const Index& k) {
  double m = static_cast<double>(dp(k));
  return static_cast<unsigned>(std::ceil(wt(k) * std::log10(std::max(m, 1.0)))) + 3;
}

/// Terms needed so the geometric tail at ratio x (<= 1/2 by default) is below 10^-digits.
long truncation_for(unsigned working_digits, int depth, double x = 0.5) {
  double rate = -std::log2(x);
  long M = static_cast<long>(std::ceil(working_digits * std::log2(10.0) / rate));
  auto log2_tail = [&](long m) {
    return -rate * static_cast<double>(m) - std::log2(1.0 - x) + (depth - 1) * std::log2(1.0 + std::log(static_cast<double>(m)));
  };
  while (log2_tail(M) > -(working_digits + 2.0) * std::log2(10.0)) M += 8;
  return M;
}

/// Path split at t: zeta(w) = sum_j Li_{1-t}(swaprev(w[:j])) Li_t(w[j:]).
BigFloat zeta_by_splitting(const Word& w, Polylog& li_t, Polylog& li_rest) {
  BigFloat total = 0;
  for (int j = 0; j <= w.size(); ++j) total += li_rest(swap_reverse(w.prefix(j))) * li_t(w.suffix_from(j));
  return total;
}

}  // namespace

BigFloat mzv_partial_sum(const Index& k, long M) {
  require_admissible(k);
  int m = dp(k);
  if (M < m) throw std::invalid_argument("cutoff below the depth of the index");
  // S[n] = partial sum over the first j entries with n_j <= n.
  std::vector<BigFloat> prev(M + 1, BigFloat(1)), cur(M + 1);
  for (int j = 0; j < m; ++j) {
    BigFloat acc = 0;
    cur[0] = 0;
    for (long n = 1; n <= M; ++n) {
      BigFloat t = prev[n - 1];
      if (j == 0) t = 1;
      BigFloat p = 1;
      BigFloat nn(n);
      for (int e = 0; e < k[j]; ++e) p *= nn;
      acc += t / p;
      cur[n] = acc;
    }
    prev.swap(cur);
  }
  return prev[M];
}

BigFloat mzv_tail_bound(const Index& k, long M) {
  require_admissible(k);
  int j = dp(k) - 1, s = k.back();
  // Terms with n_m > M: inner sum <= (1 + ln n)^j / j!, and x^-s (1 + ln x)^j is
  // decreasing past exp(j/s - 1), so the sum is bounded by the integral.
  double x0 = std::exp(static_cast<double>(j) / s - 1.0);
  if (static_cast<double>(M) < std::max(x0, 1.0)) return BigFloat(std::numeric_limits<double>::infinity());
  BigFloat L = 1 + mp::log(BigFloat(M));
  BigFloat Mpow = mp::pow(BigFloat(M), 1 - s);
  BigFloat I = Mpow / (s - 1);  // I_0
  for (int i = 1; i <= j; ++i) I = Mpow * mp::pow(L, i) / (s - 1) + BigFloat(i) / (s - 1) * I;
  BigFloat fact = 1;
  for (int i = 2; i <= j; ++i) fact *= i;
  return I / fact;
}

MZVResult mzv_eval(const Index& k, unsigned D) {
  require_admissible(k);
  if (D > kMaxDigits) throw std::invalid_argument("requested precision above the configured maximum");
  MZVResult r{k, D, BigFloat(0), "accelerated"};
  {
    FloatContext inner(D + extra_digits(k));
    Polylog li(truncation_for(D + extra_digits(k) + kGuardDigits, dp(k)), BigFloat(1) / 2);
    r.value = zeta_by_splitting(index_to_word(k), li, li);
  }
  r.value.precision(D + kGuardDigits);
  return r;
}

BigFloat mzv_eval_split(const Index& k, unsigned D, const Rational& t) {
  require_admissible(k);
  if (D > kMaxDigits) throw std::invalid_argument("requested precision above the configured maximum");
  if (t <= 0 || t >= 1) throw std::invalid_argument("split point must lie strictly between 0 and 1");
  BigFloat value;
  {
    FloatContext inner(D + extra_digits(k));
    unsigned work = D + extra_digits(k) + kGuardDigits;
    BigFloat x(t), y(1 - t);
    double worst = std::max(x.convert_to<double>(), y.convert_to<double>());
    long M = truncation_for(work, dp(k), worst);
    Polylog li_t(M, x), li_rest(M, y);
    value = zeta_by_splitting(index_to_word(k), li_t, li_rest);
  }
  value.precision(D + kGuardDigits);
  return value;
}

std::string mzv_decimal(const BigFloat& x, unsigned D) { return x.str(D + kGuardDigits, std::ios_base::scientific); }

MZVCache::MZVCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') absorb(line);
}

void MZVCache::absorb(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string part;
  while (std::getline(ss, part, ';')) f.push_back(part);
  if (f.size() != 4) throw std::runtime_error("malformed cache record: " + line);
  Index k = parse_index(f[0]);
  unsigned d = static_cast<unsigned>(std::stoul(f[1]));
  auto& slot = best_[k];
  if (d > slot.digits) slot = Record{d, f[2], f[3]};
  for (unsigned char c : line + "\n") {
    hash_ ^= c;
    hash_ *= 0x100000001b3ull;
  }
}

std::optional<MZVCache::Record> MZVCache::lookup(const Index& k, unsigned D) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = best_.find(k);
  if (it == best_.end() || it->second.digits < D) return std::nullopt;
  return it->second;
}

void MZVCache::append(const std::vector<MZVResult>& results) {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> lines;
  for (const auto& r : results)
    lines.push_back(index_str(r.index) + ";" + std::to_string(r.digits) + ";" + mzv_decimal(r.value, r.digits) + ";" +
                    r.method);
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache file " + path_);
    for (const auto& l : lines) out << l << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write to cache file " + path_ + " failed");
  }
  for (const auto& l : lines) absorb(l);
}

std::string MZVCache::digest() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash_;
  return os.str();
}

std::map<Index, BigFloat> mzv_table(int maxW, unsigned D, MZVCache* cache) {
  if (maxW < 2) throw std::invalid_argument("mzv_table needs max weight >= 2");
  std::map<Index, BigFloat> out;
  std::vector<MZVResult> fresh;
  for (const Index& k : admissible_upto(maxW)) {
    if (cache) {
      if (auto rec = cache->lookup(k, D)) {
        out.emplace(k, parse_bigfloat(rec->decimal));
        continue;
      }
    }
    MZVResult r = mzv_eval(k, D);
    // Store and serve the same rounded decimal so reruns are bit-identical.
    out.emplace(k, parse_bigfloat(mzv_decimal(r.value, D)));
    fresh.push_back(std::move(r));
  }
  if (cache && !fresh.empty()) cache->append(fresh);
  return out;
}

}  // namespace drinfeld
