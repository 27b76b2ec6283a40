#include <doctest.h>

#include <random>

#include "error.hpp"
#include "special.hpp"

using namespace hecke;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("log gamma at simple points") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(4.0) - std::log(6.0)) < 1e-14);
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(kPi)) < 1e-14);
  CHECK_THROWS_AS(log_gamma(0.0), Failure);
  CHECK_THROWS_AS(log_gamma(-3.0), Failure);
  for (double x : {0.1, 1.7, 3.3, 9.9, 25.5, 140.25})
    CHECK(std::abs(log_gamma(x).real() - std::lgamma(x)) < 1e-13 * std::max(1.0, std::lgamma(x)));
}

TEST_CASE("log gamma recurrence on a random grid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(0.5, 20.0), im(-50.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    cplx s(re(rng), im(rng));
    cplx lhs = log_gamma(s + 1.0);
    cplx rhs = log_gamma(s) + std::log(s);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("log gamma stays on the principal branch across the negative axis") {
  // Im log Gamma(x + i0) jumps only across the cut; continuity in t for x<0.
  cplx prev = log_gamma(cplx(-2.5, 0.5));
  for (double t = 0.45; t > 0.01; t -= 0.05) {
    cplx cur = log_gamma(cplx(-2.5, t));
    CHECK(std::fabs(cur.imag() - prev.imag()) < 0.5);
    prev = cur;
  }
  // Conjugate symmetry.
  cplx a = log_gamma(cplx(-7.3, 2.0)), b = log_gamma(cplx(-7.3, -2.0));
  CHECK(std::abs(a - std::conj(b)) < 1e-12);
}

TEST_CASE("reflection formula") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-6.0, 6.0), im(-5.0, 5.0);
  for (int i = 0; i < 60; ++i) {
    cplx s(re(rng), im(rng));
    if (std::fabs(s.imag()) < 0.05 && std::fabs(s.real() - std::round(s.real())) < 0.05) continue;
    cplx v = cgamma(s) * cgamma(1.0 - s) * std::sin(kPi * s) / kPi;
    CHECK(std::abs(v - 1.0) < 1e-10);
  }
}

TEST_CASE("reciprocal gamma is entire") {
  CHECK(std::abs(rgamma(0.0)) == 0.0);
  CHECK(std::abs(rgamma(-4.0)) == 0.0);
  // Derivative-like behaviour next to a pole: 1/Gamma(-n + e) ~ (-1)^n n! e.
  double e = 1e-7;
  CHECK(rel(rgamma(-3.0 + e), -6.0 * e) < 1e-5);
  CHECK(rel(rgamma(5.0), 1.0 / 24.0) < 1e-14);
  CHECK(rel(gamma_ratio(2.5, 4.5), 1.0 / (2.5 * 3.5)) < 1e-14);
  CHECK(std::abs(gamma_ratio(2.5, -1.0)) == 0.0);
}

TEST_CASE("upper incomplete gamma") {
  CHECK(rel(upper_incomplete_gamma(1.0, 2.0), std::exp(-2.0)) < 1e-13);
  CHECK(rel(upper_incomplete_gamma(2.0, 1.0), 2.0 * std::exp(-1.0)) < 1e-13);
  CHECK(rel(upper_incomplete_gamma(cplx(2.3, 1.1), 1e-12), cgamma(cplx(2.3, 1.1))) < 1e-10);
  // (s+1) recurrence: Gamma(s+1, x) = s Gamma(s, x) + x^s e^{-x}
  for (cplx s : {cplx(0.3, 2.0), cplx(-1.7, 0.4), cplx(4.5, -3.0), cplx(9.0, 1.0)})
    for (double x : {0.3, 2.0, 7.5, 30.0}) {
      cplx lhs = upper_incomplete_gamma(s + 1.0, x);
      cplx rhs = s * upper_incomplete_gamma(s, x) + std::exp(s * std::log(x) - x);
      CHECK(rel(lhs, rhs) < 1e-11);
    }
  CHECK_THROWS_AS(upper_incomplete_gamma(1.0, -1.0), Failure);
}

TEST_CASE("incomplete gamma branches agree in the splice band") {
  for (cplx s : {cplx(0.7, 0.0), cplx(2.5, 1.5), cplx(-0.4, 2.2), cplx(6.0, -2.0), cplx(3.1, 3.9)})
    for (double off : {0.0, 0.5, 1.0, 1.5, 2.0}) {
      double x = std::abs(s) + off;
      cplx a = upper_incomplete_gamma_series(s, x), b = upper_incomplete_gamma_cf(s, x);
      CHECK(rel(a, b) < 1e-9);
    }
}

TEST_CASE("1F2 basic identities") {
  auto h = hyp_1f2(0.3, 1.7, 2.2, 0.0);
  CHECK(std::abs(h.value - 1.0) < 1e-16);
  // d = b reduces to 0F1(; c; w) = Gamma(c) w^{(1-c)/2} I_{c-1}(2 sqrt w)
  double c = 2.5, w = 3.0;
  double ref = std::tgamma(c) * std::pow(w, (1 - c) / 2) * std::cyl_bessel_i(c - 1, 2 * std::sqrt(w));
  CHECK(rel(hyp_1f2(1.3, 1.3, c, w).value, ref) < 1e-14);
  // Negative argument: J Bessel.
  ref = std::tgamma(c) * std::pow(w, (1 - c) / 2) * std::cyl_bessel_j(c - 1, 2 * std::sqrt(w));
  CHECK(rel(hyp_1f2(1.3, 1.3, c, -w).value, ref) < 1e-13);
  CHECK_THROWS_AS(hyp_1f2(1.0, -2.0, 1.0, 1.0), Failure);
}

TEST_CASE("multiprecision 1F2 matches double where double is reliable") {
  for (double w : {-0.5, -7.0, -30.0, 12.0}) {
    auto a = hyp_1f2(-0.7, 1.3, 0.5, w);
    auto b = hyp_1f2_mp(-0.7, 1.3, 0.5, w, 200);
    CHECK(rel(a.value, b.value) < 1e-13 * std::max(1.0, a.severity));
  }
  auto a = hyp_1f2(cplx(0.2, 0.4), cplx(1.5, -0.3), 2.0, cplx(-5.0, 1.0));
  auto b = hyp_1f2_mp(cplx(0.2, 0.4), cplx(1.5, -0.3), 2.0, cplx(-5.0, 1.0), 200);
  CHECK(rel(a.value, b.value) < 1e-13);
}

TEST_CASE("multiprecision 1F2 at large negative argument against the Bessel form") {
  // d = b again, so the exact value is a J Bessel function.
  double c = 1.5;
  for (double w : {400.0, 2500.0, 10000.0}) {
    double ref =
        std::tgamma(c) * std::pow(w, (1 - c) / 2) * std::cyl_bessel_j(c - 1, 2 * std::sqrt(w));
    long bits = 64 + static_cast<long>(2.9 * std::sqrt(w)) + 32;
    auto h = hyp_1f2_mp(0.8, 0.8, c, -w, bits);
    CHECK(rel(h.value, ref) < 1e-12);
    CHECK(h.log2_severity > 20.0);
  }
}

TEST_CASE("meijer: small-argument limit and parameter validation") {
  MeijerParams p{3.2, 0.5, -0.7, 1e9};
  auto r = meijer_g_1f2(p);
  cplx expect = cgamma(-0.7) / (cgamma(3.2) * cgamma(0.5));
  CHECK(rel(r.value, expect) < 1e-8);
  CHECK_THROWS_AS(meijer_g_1f2(MeijerParams{3.2, 0.5, -2.0, 0.1}), Failure);
  CHECK_THROWS_AS(meijer_g_1f2(MeijerParams{-1.0, 0.5, 0.3, 0.1}), Failure);
}

TEST_CASE("meijer: two routes agree on representative parameters") {
  struct Case {
    double delta, u;
    int k;
    double nu, x;
  };
  const double pi2 = 4.0 * kPi * kPi;
  for (Case c : {Case{0.5, 1.2, 1, 0.25, 1.0}, Case{12.0, 7.0, 3, 1.0, 1.0},
                 Case{4.0, 4.6, 5, 3.0, 1.7}, Case{0.5, 1.3, 1, 25.0, 1.7}}) {
    MeijerParams p{c.delta - c.u + c.k + 1, c.delta, c.delta - c.u, 1.0 / (pi2 * c.nu * c.x)};
    auto a = meijer_g_1f2(p);
    auto b = meijer_contour(p);
    CHECK(rel(a.value, b.value) < 1e-8);
  }
}

TEST_CASE("meijer contour: invariance under admissible line shifts") {
  MeijerParams p{12.0 - 7.0 + 4.0, 12.0, 5.0, 1.0 / (4.0 * kPi * kPi * 2.0)};
  QuadratureConfig q1, q2, q3;
  q1.abscissa = 1.5;
  q2.abscissa = 4.3;
  q3.abscissa = 5.6;  // one pole of Gamma(d - s) to the left
  auto a = meijer_contour(p, q1), b = meijer_contour(p, q2), c = meijer_contour(p, q3);
  CHECK(rel(a.value, b.value) < 1e-9);
  CHECK(rel(c.value, b.value) < 1e-9);
}

TEST_CASE("meijer contour: too short a line is an error, not a silent answer") {
  MeijerParams p{0.5 - 1.2 + 2.0, 0.5, 0.5 - 1.2, 1.0 / (4.0 * kPi * kPi * 0.25)};
  QuadratureConfig q;
  q.half_height = 4.0;
  CHECK_THROWS_AS(meijer_contour(p, q), Failure);
}

TEST_CASE("meijer line value adds the residues passed by the line") {
  MeijerParams p{12.0 - 7.0 + 6.0, 12.0, 5.0, 1.0 / (4.0 * kPi * kPi * 1.3)};
  auto std_path = meijer_g_1f2(p);
  QuadratureConfig q;
  q.abscissa = 7.2;
  auto direct = meijer_contour(p, q);  // corrected back to the standard path
  cplx line = meijer_line_value(p, 7.2, std_path);
  // Undo the correction to recover the raw line integral.
  cplx raw = direct.value;
  for (int i = 0; 5.0 + i < 7.2; ++i) raw += meijer_residue_right(p, i);
  CHECK(rel(line, raw) < 1e-9);
}

namespace {
// Oscillatory part (standard path plus every right residue) at z = 1/X,
// reference values from an independent 50-digit evaluation.
struct FullCase {
  double b, c, d, X, ref;
};
const FullCase kFull[] = {
    {5.4, 4.0, -0.6, 1000.0, -1.756774578254965e-15},
    {5.4, 4.0, -0.6, 3000.0, 1.656107071933562e-17},
    {1.3, 0.5, -0.7, 1000.0, -0.0005279253440919544},
    {9.0, 12.0, 5.0, 1000.0, -1.666431601133032e-24},
};
}  // namespace

TEST_CASE("large-argument expansion of the oscillatory part") {
  for (const FullCase& f : kFull) {
    CAPTURE(f.b);
    CAPTURE(f.X);
    MeijerAsymptotic a(f.b, f.c, f.d);
    CHECK(a.nu() == cplx(f.d - f.b - f.c + 0.5));
    MeijerAsymptotic::Value v = a(1.0 / f.X);
    CHECK(rel(v.value, f.ref) < 1e-12);
    CHECK(v.error_estimate < 1e-12 * std::abs(v.value));
    MeijerResult m = meijer_full({f.b, f.c, f.d, 1.0 / f.X}, &a);
    CHECK(m.route == MeijerRoute::Asymptotic);
  }
}

TEST_CASE("oscillatory part through the series survives the cancellation") {
  // The residues are ~60 while the result is ~1e-15: b - d must be an exact
  // integer and d + i exact in the exponent, or an O(eps) remainder survives.
  for (const FullCase& f : kFull) {
    CAPTURE(f.b);
    CAPTURE(f.X);
    MeijerResult m = meijer_full({f.b, f.c, f.d, 1.0 / f.X});
    CHECK(m.route == MeijerRoute::SeriesMP);
    CHECK(rel(m.value, f.ref) < 1e-12);
  }
  // Where the double route is still accurate the two agree.
  MeijerParams p{5.4, 4.0, -0.6, 1.0 / 3.0};
  CHECK(rel(meijer_full(p).value, meijer_full_from(p, meijer_g_1f2(p))) < 1e-12);
  CHECK(rel(meijer_full(p).value, meijer_full_from(p, meijer_contour(p))) < 1e-10);
  CHECK_THROWS_AS(meijer_full(MeijerParams{5.5, 4.0, -0.6, 0.1}), Failure);
}

TEST_CASE("expansion and series hand over smoothly") {
  // Around X = 1000 both are good; their difference is within the expansion's own estimate.
  MeijerAsymptotic a(5.4, 4.0, -0.6);
  for (double X : {500.0, 700.0, 1000.0}) {
    MeijerAsymptotic::Value v = a(1.0 / X);
    MeijerResult m = meijer_full({5.4, 4.0, -0.6, 1.0 / X});
    CAPTURE(X);
    CHECK(std::abs(v.value - m.value) <= 2.0 * v.error_estimate + 1e-12 * std::abs(m.value));
  }
}
