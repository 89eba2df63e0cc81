#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walg/qseries.hpp"

#include <random>

using namespace walg;
using namespace walg::qs;

namespace {

// Number of partitions of n into parts from `parts`, each part usable without
// bound. Classic DP oracle, independent of the series machinery.
std::vector<Int> restricted_partitions(long n, const std::vector<long>& parts) {
  std::vector<Int> dp(static_cast<size_t>(n) + 1, 0);
  dp[0] = 1;
  for (long p : parts)
    for (long v = p; v <= n; ++v) dp[static_cast<size_t>(v)] += dp[static_cast<size_t>(v - p)];
  return dp;
}

QSeries random_series(std::mt19937& rng, long order, long scale, bool unit = false) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<int> fill(0, 2);
  QSeries s;
  s.order = order;
  s.scale = scale;
  for (long k = unit ? 1 : -2 * scale; k < order * scale; ++k) {
    if (fill(rng) == 0) continue;
    long n = num(rng);
    if (n == 0) continue;
    s.coeff.emplace(k, rat(n, den(rng)));
  }
  if (unit) s.coeff.emplace(0, 1);
  return s;
}

}  // namespace

TEST_CASE("partition generating function matches DP oracle") {
  const long N = 60;
  ProductSpec spec;
  spec.factors.push_back({1, 0, -1});
  QSeries p = qs_product(spec, N);
  std::vector<long> parts;
  for (long k = 1; k < N; ++k) parts.push_back(k);
  auto dp = restricted_partitions(N - 1, parts);
  for (long n = 0; n < N; ++n) {
    CHECK(qs_coeff(p, n) == Rat(dp[static_cast<size_t>(n)]));
  }
  CHECK(qs_coeff(p, 50) == rat(204226));
}

TEST_CASE("Euler function expansion is pentagonal") {
  const long N = 80;
  ProductSpec spec;
  spec.factors.push_back({1, 0, 1});
  QSeries e = qs_product(spec, N);
  QSeries expect = qs_zero(N);
  for (long k = -20; k <= 20; ++k) {
    long g = k * (3 * k - 1) / 2;
    if (g < N) expect = qs_add(expect, qs_monomial(g, (k % 2 == 0) ? 1 : -1, N));
  }
  CHECK(qs_compare(e, expect).equal);
}

TEST_CASE("restricted parts match the mod-5 product") {
  // 1 / prod_{n = +-2 mod 5} (1 - q^n): partitions into parts = 2,3 mod 5.
  const long N = 40;
  ProductSpec spec;
  spec.factors.push_back({5, -3, -1});
  spec.factors.push_back({5, -2, -1});
  QSeries s = qs_product(spec, N);
  std::vector<long> parts;
  for (long k = 1; k < N; ++k)
    if (k % 5 == 2 || k % 5 == 3) parts.push_back(k);
  auto dp = restricted_partitions(N - 1, parts);
  for (long n = 0; n < N; ++n) CHECK(qs_coeff(s, n) == Rat(dp[static_cast<size_t>(n)]));
}

TEST_CASE("ring laws on random series") {
  std::mt19937 rng(915237);
  for (int trial = 0; trial < 25; ++trial) {
    long scale = (trial % 3 == 0) ? 2 : 1;
    QSeries a = random_series(rng, 12, scale);
    QSeries b = random_series(rng, 14, 1);
    QSeries c = random_series(rng, 11, scale);
    CHECK(qs_compare(qs_add(a, b), qs_add(b, a)).equal);
    CHECK(qs_compare(qs_mul(a, b), qs_mul(b, a)).equal);
    CHECK(qs_compare(qs_mul(qs_add(a, b), c), qs_add(qs_mul(a, c), qs_mul(b, c))).equal);
    CHECK(qs_compare(qs_mul(qs_mul(a, b), c), qs_mul(a, qs_mul(b, c))).equal);
    QSeries zero = qs_zero(10);
    CHECK(qs_compare(qs_add(a, zero), a).agreement_order == 10);
    CHECK(qs_compare(qs_add(a, zero), a).equal);
  }
}

TEST_CASE("truncation order tracks the weakest operand") {
  QSeries a = qs_one(10), b = qs_one(7);
  CHECK(qs_mul(a, b).order == 7);
  CHECK(qs_add(a, b).order == 7);
  CHECK(qs_truncate(a, 3).order == 3);
  CHECK(qs_truncate(a, 99).order == 10);
}

TEST_CASE("inversion is exact and guarded") {
  std::mt19937 rng(22911);
  for (int trial = 0; trial < 15; ++trial) {
    QSeries a = random_series(rng, 15, (trial % 2) ? 1 : 2, /*unit=*/true);
    QSeries inv = qs_invert(a);
    CHECK(qs_compare(qs_mul(a, inv), qs_one(15)).equal);
  }
  QSeries shifted = qs_monomial(1, 1, 8);  // q has no inverse in the truncated ring
  CHECK_THROWS_WITH_AS(qs_invert(shifted), doctest::Contains("NotAUnit"), MathError);
  QSeries low = qs_monomial(rat(-1, 2), 3, 8);
  CHECK_THROWS_AS(qs_invert(low), MathError);
  CHECK_THROWS_AS(qs_invert(qs_zero(5)), MathError);
}

TEST_CASE("normalize_lowest factors out the lead term") {
  QSeries s = qs_add(qs_monomial(rat(-3, 2), rat(-5, 7), 9), qs_monomial(2, 4, 9));
  Normalized n = qs_normalize_lowest(s);
  CHECK(n.exponent == rat(-3, 2));
  CHECK(n.lead == rat(-5, 7));
  CHECK(qs_coeff(n.series, 0) == 1);
  CHECK(qs_coeff(n.series, rat(7, 2)) == rat(4) / rat(-5, 7));
  // Round trip: shifting and scaling back recovers the original.
  QSeries back = qs_shift(qs_scale(n.series, n.lead), n.exponent);
  CHECK(qs_compare(back, s).equal);
  CHECK_THROWS_AS(qs_normalize_lowest(qs_zero(4)), MathError);
}

TEST_CASE("compare pinpoints the first mismatch") {
  QSeries a = qs_add(qs_one(10), qs_monomial(3, 2, 10));
  QSeries b = qs_add(qs_one(12), qs_monomial(3, 5, 12));
  Comparison c = qs_compare(a, b);
  CHECK_FALSE(c.equal);
  CHECK(c.first_exponent == 3);
  CHECK(c.lhs == 2);
  CHECK(c.rhs == 5);
  CHECK(c.agreement_order == 10);
  // Differences beyond the shared order are invisible.
  QSeries d = qs_add(a, qs_monomial(11, 9, 12));
  CHECK(qs_compare(a, d).equal);
}

TEST_CASE("fractional grids combine via lcm") {
  QSeries half = qs_monomial(rat(1, 2), 1, 6);
  QSeries third = qs_monomial(rat(1, 3), 1, 6);
  QSeries prod = qs_mul(half, third);
  CHECK(prod.scale == 6);
  CHECK(qs_coeff(prod, rat(5, 6)) == 1);
  QSeries sum = qs_add(half, third);
  CHECK(qs_coeff(sum, rat(1, 2)) == 1);
  CHECK(qs_coeff(sum, rat(1, 3)) == 1);
  CHECK(qs_coeff(sum, rat(1, 6)) == 0);
  CHECK(qs_canonical(qs_mul(half, half)).scale == 1);
}

TEST_CASE("shift moves terms and order together") {
  QSeries s = qs_add(qs_one(5), qs_monomial(2, 3, 5));
  QSeries up = qs_shift(s, rat(3, 2));
  CHECK(qs_coeff(up, rat(3, 2)) == 1);
  CHECK(qs_coeff(up, rat(7, 2)) == 3);
  CHECK(up.order == 6);  // floor(5 + 3/2)
  QSeries down = qs_shift(s, -4);
  CHECK(down.order == 1);
  CHECK(qs_coeff(down, -4) == 1);
  CHECK(qs_coeff(down, -2) == 3);
}

TEST_CASE("product spec validation") {
  ProductSpec bad;
  bad.factors.push_back({1, -1, 1});  // first factor would be (1 - q^0)
  CHECK_THROWS_WITH_AS(qs_product(bad, 10), doctest::Contains("BadFactor"), MathError);
  ProductSpec negb;
  negb.factors.push_back({5, -3, 2});  // exponents 2, 7, 12, ... each squared
  QSeries s = qs_product(negb, 10);
  CHECK(qs_coeff(s, 2) == -2);
  CHECK(qs_coeff(s, 4) == 1);
  CHECK(qs_coeff(s, 7) == -2);
  CHECK(qs_coeff(s, 9) == 2);
}

TEST_CASE("string rendering stays canonical") {
  QSeries s = qs_add(qs_one(9), qs_add(qs_monomial(1, -2, 9), qs_monomial(rat(5, 2), rat(1, 3), 9)));
  CHECK(qs_str(s) == "1 - 2*q + 1/3*q^5/2 (mod q^9)");
  CHECK(qs_str(qs_zero(4)) == "0 (mod q^4)");
}
