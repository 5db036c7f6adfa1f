#include "drinfeld/mzv.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace drinfeld;

namespace {

BigFloat rel_err(const BigFloat& x, const BigFloat& ref) { return mp::abs(x - ref) / mp::abs(ref); }

std::string temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("drinfeld_test_" + name);
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST_CASE("partial sums") {
  FloatContext ctx(40);
  BigFloat direct = 0;
  for (int n = 1; n <= 10; ++n) direct += BigFloat(1) / (n * n);
  CHECK(mp::abs(mzv_partial_sum({2}, 10) - direct) < BigFloat("1e-38"));
  CHECK(to_decimal(mzv_partial_sum({2}, 10), 6) == "1.549768");
  CHECK(mzv_partial_sum({2}, 1) == 1);
  BigFloat z3 = mzv_eval({3}, 30).value;
  BigFloat last = 0;
  for (long M : {10, 100, 1000}) {
    BigFloat s = mzv_partial_sum({1, 2}, M);
    CHECK(s > last);
    CHECK(s < z3);
    last = s;
  }
  CHECK(z3 - last < BigFloat("0.01"));
  CHECK_THROWS_AS(mzv_partial_sum({2, 1}, 10), std::invalid_argument);
}

TEST_CASE("partial sums stay below the value within the tail bound") {
  FloatContext ctx(40);
  for (const Index& k : admissible_upto(5)) {
    BigFloat z = mzv_eval(k, 30).value;
    for (long M : {20, 200}) {
      BigFloat s = mzv_partial_sum(k, M);
      CHECK(s <= z);
      CHECK(z - s <= mzv_tail_bound(k, M));
    }
  }
}

TEST_CASE("classical values") {
  FloatContext ctx(60);
  BigFloat pi = pi_value();
  CHECK(rel_err(mzv_eval({2}, 50).value, pi * pi / 6) < BigFloat("1e-50"));
  CHECK(rel_err(mzv_eval({4}, 50).value, mp::pow(pi, 4) / 90) < BigFloat("1e-50"));
  CHECK(rel_err(mzv_eval({1, 2}, 50).value, mzv_eval({3}, 50).value) < BigFloat("1e-50"));
  CHECK_THROWS_AS(mzv_eval({2, 1}, 30), std::invalid_argument);
  CHECK_THROWS_AS(mzv_eval({}, 30), std::invalid_argument);
}

TEST_CASE("stuffle spot check") {
  FloatContext ctx(60);
  BigFloat z2 = mzv_eval({2}, 50).value;
  BigFloat lhs = z2 * z2, rhs = 2 * mzv_eval({2, 2}, 50).value + mzv_eval({4}, 50).value;
  CHECK(mp::abs(lhs - rhs) < BigFloat("1e-45"));
}

TEST_CASE("split point does not change the value") {
  FloatContext ctx(50);
  for (const Index& k : admissible_upto(6))
    CHECK(rel_err(mzv_eval_split(k, 40, Rational(1, 3)), mzv_eval(k, 40).value) < BigFloat("1e-40"));
  CHECK_THROWS_AS(mzv_eval_split({2}, 40, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(mzv_eval_split({2, 1}, 40, Rational(1, 3)), std::invalid_argument);
}

TEST_CASE("duality to weight 8") {
  // At split 1/2 a word and its dual share every term, so use 1/3.
  FloatContext ctx(50);
  for (const Index& k : admissible_upto(8)) {
    Index d = duality_partner(k);
    if (d < k) continue;
    CHECK(rel_err(mzv_eval_split(k, 40, Rational(1, 3)), mzv_eval_split(d, 40, Rational(1, 3))) < BigFloat("1e-40"));
  }
}

TEST_CASE("doubling precision reproduces digits") {
  for (const Index& k : std::vector<Index>{{2}, {1, 3}, {2, 1, 2}, {1, 1, 1, 3}}) {
    BigFloat lo, hi;
    {
      FloatContext c(30);
      lo = mzv_eval(k, 30).value;
    }
    {
      FloatContext c(60);
      hi = mzv_eval(k, 60).value;
      CHECK(rel_err(lo, hi) < BigFloat("1e-30"));
      FloatContext c30(30);
      CHECK(to_decimal(BigFloat(lo), 20) == to_decimal(BigFloat(hi), 20));
    }
  }
}

TEST_CASE("table counts") {
  FloatContext ctx(40);
  CHECK(mzv_table(2, 30).size() == 1);
  CHECK(mzv_table(4, 30).size() == 7);
  CHECK(mzv_table(6, 30).size() == 31);
  CHECK_THROWS_AS(mzv_table(1, 30), std::invalid_argument);
}

TEST_CASE("cache reuse") {
  FloatContext ctx(50);
  std::string path = temp_path("reuse.cache");
  std::map<Index, BigFloat> first, second;
  std::string digest;
  {
    MZVCache cache(path);
    first = mzv_table(5, 40, &cache);
    CHECK(cache.size() == 15);
    digest = cache.digest();
  }
  {
    MZVCache cache(path);
    CHECK(cache.size() == 15);
    CHECK(cache.digest() == digest);
    second = mzv_table(5, 40, &cache);
    CHECK(cache.digest() == digest);  // nothing appended
  }
  CHECK(first == second);
  {
    MZVCache cache(path);
    auto r = cache.lookup({3}, 40);
    REQUIRE(r.has_value());
    CHECK(r->method == "accelerated");
    CHECK_FALSE(cache.lookup({3}, 45).has_value());
    mzv_table(3, 45, &cache);
    CHECK(cache.lookup({3}, 45)->digits == 45);
    CHECK(cache.lookup({3}, 30)->digits == 45);
  }
  std::filesystem::remove(path);
}

TEST_CASE("cache failures") {
  FloatContext ctx(40);
  MZVCache cache("/nonexistent-dir/mzv.cache");
  CHECK_THROWS_AS(mzv_table(3, 30, &cache), std::runtime_error);
  std::string path = temp_path("bad.cache");
  std::ofstream(path) << "2;30\n";
  CHECK_THROWS_AS(MZVCache{path}, std::runtime_error);
  std::filesystem::remove(path);
}
