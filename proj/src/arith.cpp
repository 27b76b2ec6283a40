#include "arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace hecke {

namespace {

using Poly = std::vector<i128>;

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::capacity, "128-bit overflow in tau expansion");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::capacity, "128-bit overflow in tau expansion");
  return r;
}

// Truncated product mod q^len; skips zero coefficients of a, so a sparse first
// factor costs O(nnz * len).
Poly multiply(const Poly& a, const Poly& b, std::size_t len) {
  Poly out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) {
      if (b[j] == 0) continue;
      out[i + j] = checked_add(out[i + j], checked_mul(a[i], b[j]));
    }
  }
  return out;
}

// prod (1 - q^n)^3 mod q^len by Jacobi's identity: sum (-1)^k (2k+1) q^{k(k+1)/2}.
Poly jacobi_cube(std::size_t len) {
  Poly e(len, 0);
  for (std::size_t k = 0; k * (k + 1) / 2 < len; ++k) e[k * (k + 1) / 2] = (k % 2 ? -1 : 1) * static_cast<i128>(2 * k + 1);
  return e;
}

}  // namespace

CoefficientTable::CoefficientTable(Family f, int l, std::vector<i128> v)
    : family_(f), l_(l), exact_(std::move(v)), value_(exact_.size(), 0.0) {
  for (std::size_t i = 1; i < exact_.size(); ++i) value_[i] = static_cast<double>(exact_[i]);
}

CoefficientTable CoefficientTable::ramanujan_tau(std::size_t n) {
  if (n < 1) fail(Errc::invalid_argument, "tau table needs N >= 1");
  // tau(n) is the coefficient of q^(n-1) in prod(1 - q^m)^24, eight sparse
  // multiplications by the Jacobi cube.
  Poly j3 = jacobi_cube(n);
  Poly e24 = j3;
  for (int i = 1; i < 8; ++i) e24 = multiply(j3, e24, n);
  std::vector<i128> v(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) v[i] = e24[i - 1];
  return CoefficientTable(Family::RamanujanTau, 0, std::move(v));
}

CoefficientTable CoefficientTable::sigma(std::size_t n, int l) {
  if (n < 1) fail(Errc::invalid_argument, "sigma table needs N >= 1");
  if (l < 0) fail(Errc::invalid_argument, "sigma_l needs l >= 0");
  std::vector<i128> v(n + 1, 0);
  for (std::size_t d = 1; d <= n; ++d) {
    i128 p = 1;
    for (int i = 0; i < l; ++i) p = checked_mul(p, static_cast<i128>(d));
    for (std::size_t m = d; m <= n; m += d) v[m] = checked_add(v[m], p);
  }
  return CoefficientTable(Family::SigmaL, l, std::move(v));
}

CoefficientTable CoefficientTable::unit(std::size_t n) {
  if (n < 1) fail(Errc::invalid_argument, "unit table needs N >= 1");
  std::vector<i128> v(n + 1, 1);
  v[0] = 0;
  return CoefficientTable(Family::UnitZeta, 0, std::move(v));
}

i128 CoefficientTable::exact(std::size_t n) const {
  if (n < 1 || n > capacity())
    fail(Errc::capacity, "coefficient index " + std::to_string(n) + " outside table 1.." +
                             std::to_string(capacity()));
  return exact_[n];
}

double CoefficientTable::value(std::size_t n) const {
  if (n < 1 || n > capacity())
    fail(Errc::capacity, "coefficient index " + std::to_string(n) + " outside table 1.." +
                             std::to_string(capacity()));
  return value_[n];
}

double Frequency::log(std::size_t n) const {
  double d = std::log(static_cast<double>(n));
  return kind_ == FreqKind::Integers ? d : 2.0 * d - std::log(2.0);
}

int compare_scaled(const Frequency& lam, std::size_t m, const Frequency& mu, std::size_t n,
                   double x) {
  // lambda_m <= mu_n x  <=>  num_l(m) den_m <= num_m(n) den_l x. Both
  // integer products are exact, and fma rounds b*x - a once, so the sign of
  // the rounded result is the sign of the exact difference.
  double a = lam.num(m) * mu.den();
  double b = mu.num(n) * lam.den();
  double r = std::fma(b, x, -a);
  return r > 0 ? -1 : (r < 0 ? 1 : 0);
}

std::size_t last_index_below(const Frequency& lam, const Frequency& mu, std::size_t n, double x) {
  double target = mu(n) * x;
  double guess = lam.kind() == FreqKind::Integers ? target : std::sqrt(2.0 * target);
  auto m = static_cast<std::size_t>(std::max(0.0, std::floor(guess)));
  while (m > 0 && compare_scaled(lam, m, mu, n, x) > 0) --m;
  while (compare_scaled(lam, m + 1, mu, n, x) <= 0) ++m;
  return m;
}

std::int64_t sigma_l(std::int64_t n, int l) {
  if (n < 1) fail(Errc::invalid_argument, "sigma_l needs n >= 1");
  if (l < 0) fail(Errc::invalid_argument, "sigma_l needs l >= 0");
  std::int64_t total = 0;
  auto power = [l](std::int64_t d) {
    std::int64_t p = 1;
    for (int i = 0; i < l; ++i)
      if (__builtin_mul_overflow(p, d, &p)) fail(Errc::capacity, "sigma_l overflow");
    return p;
  };
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    if (__builtin_add_overflow(total, power(d), &total)) fail(Errc::capacity, "sigma_l overflow");
    std::int64_t e = n / d;
    if (e != d && __builtin_add_overflow(total, power(e), &total))
      fail(Errc::capacity, "sigma_l overflow");
  }
  return total;
}

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> lo, hi;
  for (std::size_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

cplx weighted_self_convolution(const CoefficientTable& t, const Frequency& freq, cplx a,
                               std::size_t n, double twist) {
  if (n < 1 || n > t.capacity())
    fail(Errc::capacity, "convolution index " + std::to_string(n) + " outside table");
  ComplexSum s;
  for (std::size_t d : divisors(n))
    s.add(std::exp(a * freq.log(d)) * (twist * t[d]) * (twist * t[n / d]));
  return s.value();
}

std::vector<cplx> weighted_self_convolution_table(const CoefficientTable& t,
                                                  const Frequency& freq, cplx a,
                                                  std::size_t n_max, double twist) {
  if (n_max > t.capacity())
    fail(Errc::capacity, "convolution table size " + std::to_string(n_max) +
                             " exceeds coefficient capacity " + std::to_string(t.capacity()));
  std::vector<cplx> out(n_max + 1, 0.0);
  for (std::size_t d = 1; d <= n_max; ++d) {
    cplx w = std::exp(a * freq.log(d)) * (twist * t[d]);
    for (std::size_t m = d, q = 1; m <= n_max; m += d, ++q) out[m] += w * (twist * t[q]);
  }
  return out;
}

}  // namespace hecke
