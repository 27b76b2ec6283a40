#include <doctest.h>

#include <numeric>

#include "arith.hpp"
#include "error.hpp"
#include "oracles.hpp"

using namespace hecke;

TEST_CASE("tau table matches the direct q-expansion") {
  auto t = CoefficientTable::ramanujan_tau(60);
  auto ref = oracle::tau_by_expansion(60);
  for (std::size_t n = 1; n <= 60; ++n) CHECK(t.exact(n) == ref[n]);
  CHECK(t.exact(1) == 1);
  CHECK(t.exact(2) == -24);
  CHECK(t.exact(6) == t.exact(2) * t.exact(3));
}

TEST_CASE("tau and sigma_l are multiplicative on coprime pairs") {
  const std::size_t N = 600;
  auto tau = CoefficientTable::ramanujan_tau(N);
  auto s3 = CoefficientTable::sigma(N, 3);
  for (std::size_t m = 1; m <= N; ++m)
    for (std::size_t n = 1; m * n <= N; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(tau.exact(m * n) == tau.exact(m) * tau.exact(n));
      CHECK(s3.exact(m * n) == s3.exact(m) * s3.exact(n));
    }
}

TEST_CASE("Hecke recursion for tau at prime squares") {
  auto tau = CoefficientTable::ramanujan_tau(400);
  for (i128 p : {2, 3, 5, 7, 11, 13, 17, 19}) {
    i128 p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    CHECK(tau.exact(static_cast<std::size_t>(p * p)) ==
          tau.exact(static_cast<std::size_t>(p)) * tau.exact(static_cast<std::size_t>(p)) - p11);
  }
}

TEST_CASE("sigma_l values") {
  CHECK(sigma_l(1, 3) == 1);
  CHECK(sigma_l(6, 1) == 12);
  CHECK(sigma_l(4, 3) == 73);
  auto t = CoefficientTable::sigma(500, 5);
  for (long long n = 1; n <= 500; ++n) CHECK(t.exact(n) == oracle::sigma_brute(n, 5));
  CHECK_THROWS_AS(sigma_l(1000000, 5), Failure);
}

TEST_CASE("table access past capacity is an error") {
  auto t = CoefficientTable::unit(10);
  CHECK(t.value(10) == 1.0);
  CHECK_THROWS_AS(t.value(11), Failure);
  CHECK_THROWS_AS(t.exact(0), Failure);
  try {
    t.value(11);
  } catch (const Failure& f) {
    CHECK(f.code() == Errc::capacity);
  }
}

TEST_CASE("weighted self convolution") {
  Frequency half(FreqKind::HalfSquares), ints(FreqKind::Integers);
  auto unit = CoefficientTable::unit(300);
  CHECK(std::abs(weighted_self_convolution(unit, half, 0.0, 6) - 4.0) < 1e-14);
  auto tau = CoefficientTable::ramanujan_tau(10);
  CHECK(std::abs(weighted_self_convolution(tau, ints, 0.0, 1) - 1.0) < 1e-14);
  auto s3 = CoefficientTable::sigma(10, 3);
  cplx expect = 73.0 + 9.0 * 9.0 / 4.0 + 73.0 / 16.0;
  CHECK(std::abs(weighted_self_convolution(s3, ints, -2.0, 4) - expect) < 1e-12);

  // a = 0 with unit coefficients counts divisors.
  for (std::size_t n = 1; n <= 200; ++n) {
    double d = static_cast<double>(divisors(n).size());
    CHECK(std::abs(weighted_self_convolution(unit, half, 0.0, n) - d) < 1e-12);
  }
}

TEST_CASE("convolution reflection f_a(n) = lambda_n^a f_{-a}(n) for integer frequencies") {
  Frequency ints(FreqKind::Integers);
  auto s3 = CoefficientTable::sigma(200, 3);
  cplx a(-1.3, 0.7);
  for (std::size_t n = 1; n <= 200; ++n) {
    cplx lhs = weighted_self_convolution(s3, ints, a, n);
    cplx rhs = std::exp(a * std::log(static_cast<double>(n))) *
               weighted_self_convolution(s3, ints, -a, n);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("convolution table agrees with the pointwise routine") {
  Frequency half(FreqKind::HalfSquares);
  auto unit = CoefficientTable::unit(120);
  auto table = weighted_self_convolution_table(unit, half, cplx(-2.0, 0.3), 120);
  for (std::size_t n = 1; n <= 120; ++n)
    CHECK(std::abs(table[n] - weighted_self_convolution(unit, half, cplx(-2.0, 0.3), n)) <
          1e-12 * std::abs(table[n]));
  CHECK_THROWS_AS(weighted_self_convolution_table(unit, half, 0.0, 121), Failure);
}

TEST_CASE("frequency comparisons are exact") {
  Frequency half(FreqKind::HalfSquares), ints(FreqKind::Integers);
  // lambda_m = m^2/2 equals mu_n x exactly when x = m^2/n^2 is a double.
  CHECK(compare_scaled(half, 3, half, 6, 0.25) == 0);
  CHECK(compare_scaled(half, 3, half, 6, std::nextafter(0.25, 1.0)) == -1);
  CHECK(compare_scaled(half, 3, half, 6, std::nextafter(0.25, 0.0)) == 1);
  CHECK(compare_scaled(ints, 7, ints, 5, 1.4) == 1);  // 1.4 is not exactly 7/5
  CHECK(compare_scaled(ints, 3, ints, 4, 0.75) == 0);
  CHECK(last_index_below(ints, ints, 10, 1.3) == 13);
  CHECK(last_index_below(half, half, 10, 1.0) == 10);
  CHECK(last_index_below(half, half, 10, 0.0099) == 0);
  for (std::size_t n = 1; n < 50; ++n)
    CHECK(last_index_below(half, half, n, 2.25) == (3 * n) / 2);
}

TEST_CASE("frequency sequences are increasing and log is consistent") {
  for (auto kind : {FreqKind::Integers, FreqKind::HalfSquares}) {
    Frequency f(kind);
    CHECK(f(1) > 0.0);
    for (std::size_t n = 1; n < 100; ++n) {
      CHECK(f(n + 1) > f(n));
      CHECK(std::fabs(f.log(n) - std::log(f(n))) < 1e-13);
    }
  }
}
