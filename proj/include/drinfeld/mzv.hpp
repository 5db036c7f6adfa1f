#pragma once

#include "drinfeld/scalars.hpp"
#include "drinfeld/word.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

inline constexpr unsigned kMaxDigits = 2000;

struct MZVResult {
  Index index;
  unsigned digits = 0;
  BigFloat value;
  std::string method;  // "accelerated" or "partial-sum"
};

/// Sum over 0 < n1 < ... < nm <= M of 1 / (n1^k1 ... nm^km).
BigFloat mzv_partial_sum(const Index& k, long M);

/// Upper bound on zeta(k) - mzv_partial_sum(k, M). Infinite when M is below
/// the point where the bound's integral comparison applies.
BigFloat mzv_tail_bound(const Index& k, long M);

/// Relative error <= 10^-D. The value carries D + guard digits.
MZVResult mzv_eval(const Index& k, unsigned D);
/// Same value with the integration path split at t instead of 1/2. Slower for
/// t far from 1/2; k and its dual go through different sums unless t = 1/2.
BigFloat mzv_eval_split(const Index& k, unsigned D, const Rational& t);

/// Append-only text cache, one "index;digits;decimal;method" record per line.
class MZVCache {
 public:
  struct Record {
    unsigned digits = 0;
    std::string decimal;
    std::string method;
  };

  MZVCache() = default;
  /// Loads the file if it exists; a missing file is an empty cache.
  explicit MZVCache(std::string path);

  const std::string& path() const { return path_; }
  std::size_t size() const { return best_.size(); }
  /// Highest-precision record with digits >= D.
  std::optional<Record> lookup(const Index& k, unsigned D) const;
  /// Appends records and flushes; throws std::runtime_error on I/O failure.
  void append(const std::vector<MZVResult>& results);
  /// FNV-1a digest of the loaded and appended records.
  std::string digest() const;

 private:
  void absorb(const std::string& line);

  std::string path_;
  std::map<Index, Record> best_;
  uint64_t hash_ = 0xcbf29ce484222325ull;
  mutable std::mutex mu_;
};

/// All admissible indices of weight 2..maxW at D digits, served from and
/// written back to the cache when one is given.
std::map<Index, BigFloat> mzv_table(int maxW, unsigned D, MZVCache* cache = nullptr);

/// Decimal rendering used by the cache (D + guard significant digits).
std::string mzv_decimal(const BigFloat& x, unsigned D);

}  // namespace drinfeld
