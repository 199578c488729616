#include <numeric>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "topweight/arith.hpp"
#include "topweight/rational.hpp"

using namespace topweight;

namespace {

// Coefficients of x/(e^x - 1) = sum B_n x^n/n!, by inverting the power
// series (e^x - 1)/x = sum x^k/(k+1)!.
std::vector<Rational> bernoulli_by_series_inversion(int n) {
  std::vector<Rational> e(n + 1), inv(n + 1);
  for (int k = 0; k <= n; ++k) e[k] = Rational(Integer(1), factorial(k + 1));
  inv[0] = Rational(1);
  for (int k = 1; k <= n; ++k) {
    Rational acc;
    for (int j = 1; j <= k; ++j) acc += e[j] * inv[k - j];
    inv[k] = -acc;
  }
  std::vector<Rational> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = inv[k] * Rational(factorial(k));
  return out;
}

int moebius_by_trial_division(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

long long partition_count(int n) {
  std::vector<long long> ways(n + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int t = part; t <= n; ++t) ways[t] += ways[t - part];
  }
  return ways[n];
}

}  // namespace

TEST_CASE("rational arithmetic stays reduced and exact") {
  const Rational a(6, -4);
  CHECK(a.numerator_str() == "-3");
  CHECK(a.denominator_str() == "2");
  CHECK(a.str() == "-3/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(a + Rational(3, 2) == Rational(0));
  CHECK(a * Rational(-2, 3) == Rational(1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(5).pow(0) == Rational(1));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(0).reciprocal(), std::domain_error);
}

TEST_CASE("rational string round trip rejects non-canonical input") {
  CHECK(Rational::from_strings("-7", "12") == Rational(-7, 12));
  CHECK_THROWS_AS(Rational::from_strings("2", "4"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_strings("1", "0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_strings("1", "-3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_strings("x", "3"), std::invalid_argument);
}

TEST_CASE("decimal rendering rounds half away from zero") {
  CHECK(Rational(1, 3).decimal(4) == "0.3333");
  CHECK(Rational(2, 3).decimal(2) == "0.67");
  CHECK(Rational(-1, 8).decimal(2) == "-0.13");
  CHECK(Rational(-1, 1000).decimal(2) == "0.00");
  CHECK(Rational(5, 2).decimal(0) == "3");
  CHECK(Rational(7).decimal(1) == "7.0");
}

TEST_CASE("Bernoulli numbers match the series inversion of x/(e^x - 1)") {
  const auto oracle = bernoulli_by_series_inversion(40);
  for (int n = 0; n <= 40; ++n) {
    INFO("n = " << n);
    CHECK(bernoulli(n) == oracle[n]);
  }
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  for (int n = 3; n <= 41; n += 2) CHECK(bernoulli(n).is_zero());
  CHECK_THROWS(bernoulli(-1));
}

TEST_CASE("Moebius, totient and divisors agree with direct definitions") {
  for (std::int64_t n = 1; n <= 500; ++n) {
    INFO("n = " << n);
    CHECK(moebius(n) == moebius_by_trial_division(n));
    std::int64_t coprime = 0;
    for (std::int64_t k = 1; k <= n; ++k) coprime += std::gcd(k, n) == 1;
    CHECK(totient(n) == coprime);
    std::vector<std::int64_t> divs;
    for (std::int64_t k = 1; k <= n; ++k) {
      if (n % k == 0) divs.push_back(k);
    }
    CHECK(divisors(n) == divs);
    int mu_sum = 0;
    for (auto d : divs) mu_sum += moebius(d);
    CHECK(mu_sum == (n == 1 ? 1 : 0));
    std::int64_t phi_sum = 0;
    for (auto d : divs) phi_sum += totient(d);
    CHECK(phi_sum == n);
  }
  CHECK(prime_divisors(360) == std::vector<std::int64_t>{2, 3, 5});
  CHECK(prime_divisors(1).empty());
  CHECK_THROWS_AS(moebius(0), std::domain_error);
  CHECK_THROWS_AS(divisors(-3), std::domain_error);
}

TEST_CASE("factorial and generalized binomial coefficients") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  for (int i = 0; i <= 8; ++i) {
    CHECK(binomial(-1, i) == (i % 2 ? -1 : 1));
    CHECK(binomial(-2, i) == (i % 2 ? -(i + 1) : i + 1));
  }
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(7, 0) == 1);
}

TEST_CASE("partitions: counts, order, and class sizes") {
  for (int n = 0; n <= 14; ++n) {
    const auto ps = partitions_of(n);
    CHECK(static_cast<long long>(ps.size()) == partition_count(n));
    // Class sizes n!/z_mu add up to n!.
    Rational total;
    for (const auto& p : ps) {
      CHECK(p.size() == n);
      total += Rational(factorial(n), p.centralizer_order());
    }
    CHECK(total == Rational(factorial(n)));
    for (std::size_t i = 1; i < ps.size(); ++i) CHECK(CanonicalOrder{}(ps[i - 1], ps[i]));
  }
  const auto p4 = partitions_of(4);
  CHECK(p4.front() == Partition({4}));
  CHECK(p4.back() == Partition({1, 1, 1, 1}));
  CHECK(CanonicalOrder{}(Partition({5}), Partition({1, 1, 1, 1, 1, 1})));
  const Partition lambda({1, 3, 1, 2});
  CHECK(lambda.parts() == std::vector<int>{3, 2, 1, 1});
  CHECK(lambda.size() == 7);
  CHECK(lambda.length() == 4);
  CHECK(lambda.centralizer_order() == 3 * 2 * 2);
  CHECK(lambda.sign() == -1);
  CHECK(Partition({2}).sign() == -1);
  CHECK(lambda.merged(Partition({2})) == Partition({3, 2, 2, 1, 1}));
  CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
}

TEST_CASE("cycle types of random permutations") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Partition c = cycle_type(perm);
    CHECK(c.size() == n);
    // Sign by counting inversions.
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    CHECK(c.sign() == (inversions % 2 ? -1 : 1));
    // Number of fixed points.
    int fixed = 0;
    for (int i = 0; i < n; ++i) fixed += perm[i] == i;
    CHECK(c.multiplicities()[1] == fixed);
  }
  CHECK(cycle_type({1, 2, 0, 4, 3}) == Partition({3, 2}));
  CHECK(cycle_type({}).empty());
}
