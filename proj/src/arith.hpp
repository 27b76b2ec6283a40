#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sum.hpp"

namespace hecke {

using i128 = __int128;

enum class Family { RamanujanTau, SigmaL, UnitZeta };
enum class FreqKind { Integers, HalfSquares };

// Exact coefficients f(1..N). Index 0 is unused.
class CoefficientTable {
 public:
  static CoefficientTable ramanujan_tau(std::size_t n);
  static CoefficientTable sigma(std::size_t n, int l);
  static CoefficientTable unit(std::size_t n);

  Family family() const { return family_; }
  int l() const { return l_; }
  std::size_t capacity() const { return exact_.size() - 1; }

  i128 exact(std::size_t n) const;
  double value(std::size_t n) const;
  // Unchecked access for hot loops that already validated n <= capacity().
  double operator[](std::size_t n) const { return value_[n]; }

 private:
  CoefficientTable(Family f, int l, std::vector<i128> v);
  Family family_;
  int l_ = 0;
  std::vector<i128> exact_;
  std::vector<double> value_;
};

// lambda_n = num(n) / den, with num(n) an integer held exactly in a double.
class Frequency {
 public:
  explicit Frequency(FreqKind k) : kind_(k) {}
  FreqKind kind() const { return kind_; }
  double num(std::size_t n) const {
    double d = static_cast<double>(n);
    return kind_ == FreqKind::Integers ? d : d * d;
  }
  double den() const { return kind_ == FreqKind::Integers ? 1.0 : 2.0; }
  double operator()(std::size_t n) const { return num(n) / den(); }
  double log(std::size_t n) const;

  // Frequency attached to index n of the convolved sequence, i.e.
  // lambda_d * lambda_{n/d}; independent of the divisor d for both kinds.
  double product(std::size_t n) const { return num(n) / (den() * den()); }

 private:
  FreqKind kind_;
};

// Sign of lambda_m - mu_n * x, decided exactly for any double x.
int compare_scaled(const Frequency& lam, std::size_t m, const Frequency& mu, std::size_t n,
                   double x);

// Largest m with lambda_m <= mu_n * x (0 if none).
std::size_t last_index_below(const Frequency& lam, const Frequency& mu, std::size_t n, double x);

// sigma_l(n) with overflow detection; l >= 0.
std::int64_t sigma_l(std::int64_t n, int l);

// sum_{d | n} lambda_d^a f(d) f(n/d)
cplx weighted_self_convolution(const CoefficientTable& t, const Frequency& freq, cplx a,
                               std::size_t n, double twist = 1.0);

// All values n = 1..n_max of the convolution above (index 0 unused).
std::vector<cplx> weighted_self_convolution_table(const CoefficientTable& t,
                                                  const Frequency& freq, cplx a,
                                                  std::size_t n_max, double twist = 1.0);

std::vector<std::size_t> divisors(std::size_t n);

}  // namespace hecke
