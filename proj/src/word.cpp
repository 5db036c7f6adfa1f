#include "drinfeld/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace drinfeld {

Word Word::from_letters(const std::vector<int>& letters) {
  Word w;
  for (int a : letters) w = w.append(a);
  return w;
}

Word Word::parse(const std::string& s) {
  Word w;
  if (s == "-") return w;
  for (char c : s) {
    if (c < '0' || c > '7') throw std::invalid_argument("bad letter in word '" + s + "'");
    w = w.append(c - '0');
  }
  return w;
}

Word Word::append(int a) const {
  if (len_ >= kMaxLength) throw std::length_error("word too long");
  Word w;
  w.bits_ = (bits_ << 3) | static_cast<uint64_t>(a);
  w.len_ = len_ + 1;
  return w;
}

Word Word::prepend(int a) const {
  if (len_ >= kMaxLength) throw std::length_error("word too long");
  Word w;
  w.bits_ = bits_ | (static_cast<uint64_t>(a) << (3 * len_));
  w.len_ = len_ + 1;
  return w;
}

Word Word::concat(const Word& v) const {
  if (len_ + v.len_ > kMaxLength) throw std::length_error("word too long");
  Word w;
  w.bits_ = (bits_ << (3 * v.len_)) | v.bits_;
  w.len_ = len_ + v.len_;
  return w;
}

Word Word::prefix(int n) const {
  Word w;
  w.len_ = n;
  w.bits_ = bits_ >> (3 * (len_ - n));
  return w;
}

Word Word::suffix_from(int i) const {
  Word w;
  w.len_ = len_ - i;
  w.bits_ = w.len_ == 0 ? 0 : bits_ & ((uint64_t{1} << (3 * w.len_)) - 1);
  return w;
}

Word Word::reversed() const {
  Word w;
  for (int i = len_ - 1; i >= 0; --i) w = w.append((*this)[i]);
  return w;
}

Word Word::relabel(const int* map) const {
  Word w;
  for (int i = 0; i < len_; ++i) w = w.append(map[(*this)[i]]);
  return w;
}

int Word::count(int a) const {
  int c = 0;
  for (int i = 0; i < len_; ++i) c += (*this)[i] == a;
  return c;
}

std::vector<int> Word::letters() const {
  std::vector<int> out(len_);
  for (int i = 0; i < len_; ++i) out[i] = (*this)[i];
  return out;
}

std::string Word::str() const {
  if (len_ == 0) return "-";
  std::string s;
  for (int i = 0; i < len_; ++i) s.push_back(static_cast<char>('0' + (*this)[i]));
  return s;
}

std::vector<Word> words_of_length(int n, int alphabet) {
  std::vector<Word> out{Word()};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * alphabet);
    for (const Word& w : out)
      for (int a = 0; a < alphabet; ++a) next.push_back(w.append(a));
    out.swap(next);
  }
  return out;
}

int wt(const Index& k) {
  int s = 0;
  for (int x : k) s += x;
  return s;
}

int dp(const Index& k) { return static_cast<int>(k.size()); }

int ht(const Index& k) {
  return static_cast<int>(std::count_if(k.begin(), k.end(), [](int x) { return x > 1; }));
}

bool is_admissible(const Index& k) {
  if (k.empty() || k.back() < 2) return false;
  return std::all_of(k.begin(), k.end(), [](int x) { return x >= 1; });
}

std::string index_str(const Index& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(k[i]);
  }
  return s;
}

Index parse_index(const std::string& s) {
  Index k;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed index '" + s + "'");
    }
    if (used != part.size() || v < 1) throw std::invalid_argument("malformed index '" + s + "'");
    k.push_back(v);
  }
  if (k.empty()) throw std::invalid_argument("empty index");
  return k;
}

Word index_to_word(const Index& k) {
  if (k.empty()) throw std::invalid_argument("empty index");
  Word w;
  for (auto it = k.rbegin(); it != k.rend(); ++it) {
    for (int j = 1; j < *it; ++j) w = w.append(0);
    w = w.append(1);
  }
  return w;
}

Index word_to_index(const Word& w) {
  if (w.empty() || w.back() != 1) throw std::invalid_argument("word does not end in X1");
  Index rev;
  int zeros = 0;
  for (int i = 0; i < w.size(); ++i) {
    int a = w[i];
    if (a == 0) {
      ++zeros;
    } else if (a == 1) {
      rev.push_back(zeros + 1);
      zeros = 0;
    } else {
      throw std::invalid_argument("word is not over {X0, X1}");
    }
  }
  return Index(rev.rbegin(), rev.rend());
}

std::vector<Index> admissible_indices(int w) {
  std::vector<Index> out;
  if (w < 2) return out;
  // Compositions of w with last part >= 2, in word order.
  for (const Word& word : words_of_length(w, 2))
    if (word.front() == 0 && word.back() == 1) out.push_back(word_to_index(word));
  return out;
}

std::vector<Index> admissible_upto(int maxw) {
  std::vector<Index> out;
  for (int w = 2; w <= maxw; ++w) {
    auto part = admissible_indices(w);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Index tau(const std::vector<int>& p, const std::vector<int>& q) {
  if (p.size() != q.size() || p.empty()) throw std::invalid_argument("tau needs equal nonempty lengths");
  Index k;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1 || q[i] < 1) throw std::invalid_argument("tau needs positive entries");
    for (int j = 1; j < p[i]; ++j) k.push_back(1);
    k.push_back(q[i] + 1);
  }
  return k;
}

void tau_decompose(const Index& k, std::vector<int>& p, std::vector<int>& q) {
  if (!is_admissible(k)) throw std::invalid_argument("index (" + index_str(k) + ") is not admissible");
  p.clear();
  q.clear();
  int ones = 0;
  for (int x : k) {
    if (x == 1) {
      ++ones;
    } else {
      p.push_back(ones + 1);
      q.push_back(x - 1);
      ones = 0;
    }
  }
}

Index duality_partner(const Index& k) {
  std::vector<int> p, q;
  tau_decompose(k, p, q);
  std::reverse(p.begin(), p.end());
  std::reverse(q.begin(), q.end());
  return tau(q, p);
}

}  // namespace drinfeld
