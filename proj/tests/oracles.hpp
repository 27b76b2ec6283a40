#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using i128 = __int128;

// tau(1..n) by multiplying q by (1 - q^m) twenty-four times for every m.
inline std::vector<i128> tau_by_expansion(std::size_t n) {
  std::vector<i128> p(n, 0);
  p[0] = 1;
  for (std::size_t m = 1; m < n; ++m)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = n - 1; i >= m; --i) p[i] -= p[i - m];
  std::vector<i128> tau(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) tau[i] = p[i - 1];
  return tau;
}

inline long long sigma_brute(long long n, int l) {
  long long s = 0;
  for (long long d = 1; d <= n; ++d)
    if (n % d == 0) {
      long long p = 1;
      for (int i = 0; i < l; ++i) p *= d;
      s += p;
    }
  return s;
}

// Riemann zeta for real s != 1 by Euler-Maclaurin with a fixed cut.
inline double zeta_em(double s) {
  const int N = 20;
  double sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::pow(n, -s);
  double Ns = std::pow(N, -s);
  sum += Ns * N / (s - 1.0) + 0.5 * Ns;
  // B_2k / (2k)! terms with rising factorial s (s+1) ... (s+2k-2)
  const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  double fact = 1.0, rising = s, pw = Ns / N;
  for (int k = 1; k <= 7; ++k) {
    fact *= (2 * k - 1) * (2 * k);
    sum += b[k - 1] / fact * rising * pw;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    pw /= static_cast<double>(N) * N;
  }
  return sum;
}

// Complex zeta for Re s > 0, |Im s| <= 60, s != 1. Euler-Maclaurin with a
// wider cut than the library uses so the two do not share truncation error.
inline std::complex<double> zeta_em(std::complex<double> s) {
  using C = std::complex<double>;
  const int N = 60;
  C sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  C Ns = std::exp(-s * std::log(static_cast<double>(N)));
  sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
                      -3617.0 / 510, 43867.0 / 798, -174611.0 / 330};
  double fact = 1.0;
  C rising = s, pw = Ns / static_cast<double>(N);
  for (int k = 1; k <= 10; ++k) {
    fact *= (2 * k - 1) * (2 * k);
    sum += b[k - 1] / fact * rising * pw;
    rising *= (s + (2.0 * k - 1)) * (s + 2.0 * k);
    pw /= static_cast<double>(N) * N;
  }
  return sum;
}

}  // namespace oracle
