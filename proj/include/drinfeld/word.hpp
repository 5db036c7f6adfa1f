#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace drinfeld {

/// Word over an alphabet of at most 8 letters, 3 bits per letter, first
/// letter in the most significant used position. Length <= 21.
class Word {
 public:
  static constexpr int kMaxLength = 21;

  Word() = default;
  static Word letter(int a) { return Word().append(a); }
  static Word from_letters(const std::vector<int>& letters);
  /// Parses a string of digits ("0110"); "-" or "" is the empty word.
  static Word parse(const std::string& s);

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  int operator[](int i) const { return static_cast<int>((bits_ >> (3 * (len_ - 1 - i))) & 7u); }
  int front() const { return (*this)[0]; }
  int back() const { return static_cast<int>(bits_ & 7u); }

  Word append(int a) const;
  Word prepend(int a) const;
  Word concat(const Word& w) const;
  Word prefix(int n) const;
  Word suffix_from(int i) const;
  Word reversed() const;
  /// Replaces each letter a by map[a].
  Word relabel(const int* map) const;
  int count(int a) const;
  std::vector<int> letters() const;

  std::string str() const;

  uint64_t bits() const { return bits_; }
  friend bool operator==(const Word& x, const Word& y) { return x.len_ == y.len_ && x.bits_ == y.bits_; }
  friend bool operator!=(const Word& x, const Word& y) { return !(x == y); }
  /// Degree first, then lexicographic.
  friend bool operator<(const Word& x, const Word& y) {
    return x.len_ != y.len_ ? x.len_ < y.len_ : x.bits_ < y.bits_;
  }

 private:
  uint64_t bits_ = 0;
  int len_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    uint64_t z = w.bits() * 0x9E3779B97F4A7C15ull + static_cast<uint64_t>(w.size());
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

/// All words of length n over {0, .., alphabet-1} in increasing order.
std::vector<Word> words_of_length(int n, int alphabet = 2);

using Index = std::vector<int>;

int wt(const Index& k);
int dp(const Index& k);
int ht(const Index& k);
bool is_admissible(const Index& k);
std::string index_str(const Index& k);
/// Parses "k1,k2,...".
Index parse_index(const std::string& s);

/// (k1..km) -> X0^{km-1} X1 ... X0^{k1-1} X1. Letters: 0 = X0, 1 = X1.
Word index_to_word(const Index& k);
/// Inverse of index_to_word; requires a nonempty word over {0,1} ending in X1.
Index word_to_index(const Word& w);

/// All admissible indices of weight exactly w (2^{w-2} of them for w >= 2).
std::vector<Index> admissible_indices(int w);
/// All admissible indices of weight 2..maxw.
std::vector<Index> admissible_upto(int maxw);

/// tau(p, q) = (1^{p1-1}, q1+1, ..., 1^{pk-1}, qk+1).
Index tau(const std::vector<int>& p, const std::vector<int>& q);
/// Unique (p, q) with tau(p, q) == k; k admissible.
void tau_decompose(const Index& k, std::vector<int>& p, std::vector<int>& q);
/// tau(q*, p*) for k = tau(p, q), with * the reversal.
Index duality_partner(const Index& k);

}  // namespace drinfeld

template <>
struct std::hash<drinfeld::Word> : drinfeld::WordHash {};
