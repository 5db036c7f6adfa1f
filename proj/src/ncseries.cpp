#include "drinfeld/ncseries.hpp"

#include <sstream>

namespace drinfeld {

std::map<Word, int64_t> shuffle_words(const Word& w, const Word& v) {
  std::map<Word, int64_t> out;
  for_each_interleaving(w, v, [&](const Word& u) { ++out[u]; });
  return out;
}

std::map<Word, Integer> shuffle_combination(const std::map<Word, Integer>& x, const Word& v) {
  std::map<Word, Integer> out;
  for (const auto& [w, m] : x) {
    if (m == 0) continue;
    for_each_interleaving(w, v, [&](const Word& u) { out[u] += m; });
  }
  return out;
}

namespace {

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_lyndon(const std::vector<int>& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::vector<int> suffix(w.begin() + static_cast<long>(i), w.end());
    if (!lex_less(w, suffix)) return false;
  }
  return !w.empty();
}

}  // namespace

std::vector<Word> lyndon_words(int n) {
  std::vector<Word> out;
  if (n < 1) return out;
  // Duval's generator over {0,1}.
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    int m = static_cast<int>(w.size());
    out.push_back(Word::from_letters(w));
    while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == 1) w.pop_back();
  }
  std::sort(out.begin(), out.end());
  return out;
}

NCSeries<Rational> lyndon_bracket(const Word& w, int order) {
  if (w.size() == 1) return NCSeries<Rational>::letter(w[0], order);
  std::vector<int> letters = w.letters();
  std::size_t split = 1;
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (is_lyndon(std::vector<int>(letters.begin() + static_cast<long>(i), letters.end()))) {
      split = i;
      break;
    }
  }
  auto u = lyndon_bracket(w.prefix(static_cast<int>(split)), order);
  auto v = lyndon_bracket(w.suffix_from(static_cast<int>(split)), order);
  return concat_mul(u, v) - concat_mul(v, u);
}

NCSeries<Rational> random_grouplike(uint64_t seed, int W, int min_degree) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den(1, 4);
  NCSeries<Rational> lie(W);
  for (const Word& w : lyndon_words(W)) {
    int q = den(rng);
    int p = std::uniform_int_distribution<int>(-10 * q, 10 * q)(rng);
    if (w.size() < min_degree || p == 0) continue;
    NCSeries<Rational> b = lyndon_bracket(w, W);
    b *= Rational(p, q);
    lie += b;
  }
  return series_exp(lie);
}

SeriesRecords read_series_records(std::istream& in) {
  SeriesRecords rec;
  bool have_order = false, have_kind = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw std::runtime_error("series line " + std::to_string(lineno) + ": expected two fields");
    if (a == "order") {
      try {
        rec.order = std::stoi(b);
      } catch (const std::exception&) {
        throw std::runtime_error("series line " + std::to_string(lineno) + ": bad order");
      }
      have_order = rec.order >= 0;
    } else if (a == "kind") {
      if (b != "rational" && b != "decimal") throw std::runtime_error("series: unknown scalar kind '" + b + "'");
      rec.kind = b;
      have_kind = true;
    } else {
      if (!have_order || !have_kind) throw std::runtime_error("series: records before header");
      Word w;
      try {
        w = Word::parse(a);
      } catch (const std::exception&) {
        throw std::runtime_error("series line " + std::to_string(lineno) + ": bad word '" + a + "'");
      }
      for (int i = 0; i < w.size(); ++i)
        if (w[i] > 1) throw std::runtime_error("series line " + std::to_string(lineno) + ": letter outside {0,1}");
      if (w.size() > rec.order) throw std::runtime_error("series line " + std::to_string(lineno) + ": word beyond order");
      rec.records.emplace_back(w, b);
    }
  }
  if (!have_order || !have_kind) throw std::runtime_error("series: missing header");
  return rec;
}

void write_series_header(std::ostream& out, int order, const std::string& kind) {
  out << "# drinfeld series\norder " << order << "\nkind " << kind << "\n";
}

NCSeries<Rational> series_from_records_rational(const SeriesRecords& rec) {
  if (rec.kind != "rational") throw std::runtime_error("series is not rational");
  NCSeries<Rational> f(rec.order);
  for (const auto& [w, s] : rec.records) {
    try {
      f.set(w, parse_rational(s));
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("series: ") + e.what());
    }
  }
  return f;
}

NCSeries<BigFloat> series_from_records_decimal(const SeriesRecords& rec) {
  NCSeries<BigFloat> f(rec.order);
  for (const auto& [w, s] : rec.records) {
    try {
      if (rec.kind == "rational")
        f.set(w, BigFloat(parse_rational(s)));
      else
        f.set(w, parse_bigfloat(s));
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("series: ") + e.what());
    }
  }
  return f;
}

void write_series(std::ostream& out, const NCSeries<Rational>& f) {
  write_series_header(out, f.order(), "rational");
  for (const auto& [w, c] : f.terms()) out << w.str() << ' ' << to_string(c) << '\n';
}

void write_series(std::ostream& out, const NCSeries<BigFloat>& f) {
  write_series_header(out, f.order(), "decimal");
  for (const auto& [w, c] : f.terms()) out << w.str() << ' ' << to_decimal_full(c) << '\n';
}

}  // namespace drinfeld
