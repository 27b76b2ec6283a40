#include "special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"
#include "mp.hpp"
#include "quad.hpp"

namespace hecke {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHalfLog2Pi = 0.918938533204672741780329736405617639;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_2k / (2k (2k - 1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,        -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0,
};

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && std::floor(s.real()) == s.real();
}

double distance_to_nonpositive_integer(cplx s) {
  double r = std::min(0.0, std::round(s.real()));
  return std::abs(s - cplx(r, 0.0));
}

// sin(pi s) without the argument-reduction loss near integers.
cplx sin_pi(cplx s) {
  double x = s.real(), y = s.imag();
  double n = std::round(x);
  double f = x - n;
  double sign = std::fmod(std::fabs(n), 2.0) == 1.0 ? -1.0 : 1.0;
  double sf = sign * std::sin(kPi * f), cf = sign * std::cos(kPi * f);
  return {sf * std::cosh(kPi * y), cf * std::sinh(kPi * y)};
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) fail(Errc::pole, "Gamma has a pole at " + std::to_string(z.real()));
  // Sum of principal logs stays on the principal branch of log Gamma
  // because each log(z + j) is analytic off (-inf, -j].
  cplx shift = 0.0;
  while (z.real() < 0.0 || std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  cplx zi = 1.0 / z, zi2 = zi * zi, acc = 0.0, p = zi;
  for (double c : kStirling) {
    acc += c * p;
    p *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + acc - shift;
}

cplx cgamma(cplx s) { return std::exp(log_gamma(s)); }

cplx rgamma(cplx s) {
  if (is_nonpositive_integer(s)) return 0.0;
  if (s.real() < 0.5 && std::fabs(s.imag()) < 50.0)
    return sin_pi(s) / kPi * std::exp(log_gamma(1.0 - s));
  return std::exp(-log_gamma(s));
}

cplx gamma_ratio(cplx a, cplx b) {
  if (is_nonpositive_integer(b)) {
    if (is_nonpositive_integer(a)) fail(Errc::pole, "gamma ratio with poles in numerator and denominator");
    return 0.0;
  }
  if (distance_to_nonpositive_integer(b) < 1e-3) return cgamma(a) * rgamma(b);
  return std::exp(log_gamma(a) - log_gamma(b));
}

cplx upper_incomplete_gamma_series(cplx s, double x) {
  if (!(x > 0.0)) fail(Errc::invalid_argument, "incomplete gamma needs x > 0");
  if (distance_to_nonpositive_integer(s) < 1e-6)
    fail(Errc::numeric, "series route for Gamma(s, x) is singular near nonpositive integer s");
  // lower gamma(s, x) = x^s e^{-x} sum x^n / (s (s+1) ... (s+n))
  ComplexSum sum;
  cplx term = 1.0 / s;
  sum.add(term);
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + static_cast<double>(n));
    sum.add(term);
    if (std::abs(term) < 1e-17 * std::abs(sum.value()) && n > x - s.real()) break;
    if (n == 99999) fail(Errc::numeric, "incomplete gamma series did not converge");
  }
  cplx lower = std::exp(s * std::log(x) - x) * sum.value();
  return cgamma(s) - lower;
}

cplx upper_incomplete_gamma_cf(cplx s, double x) {
  if (!(x > 0.0)) fail(Errc::invalid_argument, "incomplete gamma needs x > 0");
  // Legendre continued fraction, modified Lentz.
  const double tiny = 1e-300;
  cplx b = x + 1.0 - s;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 200000; ++i) {
    cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    cplx delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return std::exp(s * std::log(x) - x) * h;
  }
  fail(Errc::numeric, "incomplete gamma continued fraction did not converge");
}

cplx upper_incomplete_gamma(cplx s, double x) {
  if (!(x > 0.0)) fail(Errc::invalid_argument, "incomplete gamma needs x > 0");
  if (x >= std::abs(s) + 1.0 || distance_to_nonpositive_integer(s) < 1e-6)
    return upper_incomplete_gamma_cf(s, x);
  return upper_incomplete_gamma_series(s, x);
}

namespace {

void check_denominators(cplx b, cplx c) {
  if (is_nonpositive_integer(b) || is_nonpositive_integer(c))
    fail(Errc::invalid_argument, "1F2 lower parameters must not be nonpositive integers");
}

}  // namespace

HypResult hyp_1f2(cplx d, cplx b, cplx c, cplx w) {
  check_denominators(b, c);
  ComplexSum sum;
  cplx term = 1.0;
  sum.add(term);
  double peak = 1.0;
  int n = 0;
  const double aw = std::abs(w);
  for (;; ++n) {
    double dn = static_cast<double>(n);
    term *= (d + dn) * w / ((dn + 1.0) * (b + dn) * (c + dn));
    sum.add(term);
    double at = std::abs(term);
    peak = std::max(peak, at);
    if (at == 0.0) break;
    if (at < 1e-17 * peak && dn * dn > aw) break;
    if (n > 2000000) fail(Errc::numeric, "1F2 series did not terminate");
  }
  HypResult r;
  r.value = sum.value();
  r.terms = n + 1;
  double mag = std::abs(r.value);
  r.severity = mag > 0.0 ? peak / mag : std::numeric_limits<double>::infinity();
  r.log2_severity = std::log2(r.severity);
  return r;
}

HypResult hyp_1f2_mp(cplx d, cplx b, cplx c, cplx w, long bits) {
  check_denominators(b, c);
  if (bits < 53) bits = 53;
  const mpfr_prec_t prec = bits;
  const double aw = std::abs(w);
  HypResult r;
  r.bits = bits;
  long peak_exp = 1;  // exponent of the first term, 1.0 = 0.5 * 2^1
  int n = 0;
  const bool real = d.imag() == 0.0 && b.imag() == 0.0 && c.imag() == 0.0 && w.imag() == 0.0;
  if (real) {
    mp::Real t(prec, 1.0), sum(prec, 1.0), num(prec), den(prec), tmp(prec);
    mp::Real dm(prec, d.real()), bm(prec, b.real()), cm(prec, c.real()), wm(prec, w.real());
    for (;; ++n) {
      mpfr_add_ui(num.get(), dm.get(), n, MPFR_RNDN);
      mpfr_mul(t.get(), t.get(), num.get(), MPFR_RNDN);
      mpfr_mul(t.get(), t.get(), wm.get(), MPFR_RNDN);
      mpfr_add_ui(den.get(), bm.get(), n, MPFR_RNDN);
      mpfr_add_ui(tmp.get(), cm.get(), n, MPFR_RNDN);
      mpfr_mul(den.get(), den.get(), tmp.get(), MPFR_RNDN);
      mpfr_mul_ui(den.get(), den.get(), n + 1, MPFR_RNDN);
      mpfr_div(t.get(), t.get(), den.get(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), t.get(), MPFR_RNDN);
      if (mpfr_zero_p(t.get())) break;
      long te = t.exponent();
      peak_exp = std::max(peak_exp, te);
      if (te < peak_exp - bits - 8 && static_cast<double>(n) * n > aw) break;
      if (n > 4000000) fail(Errc::numeric, "1F2 multiprecision series did not terminate");
    }
    r.value = sum.to_double();
    r.log2_severity = static_cast<double>(peak_exp - sum.exponent());
  } else {
    mp::Complex t(prec, 1.0), sum(prec, 1.0), num(prec), den(prec), tmp(prec), prod(prec);
    mp::Complex dm(prec, d), bm(prec, b), cm(prec, c), wm(prec, w);
    mp::Real s1(prec), s2(prec), s3(prec);
    for (;; ++n) {
      mpfr_add_ui(num.re.get(), dm.re.get(), n, MPFR_RNDN);
      mpfr_set(num.im.get(), dm.im.get(), MPFR_RNDN);
      mp::mul(prod, t, num, s1, s2);
      mp::mul(t, prod, wm, s1, s2);
      mpfr_add_ui(den.re.get(), bm.re.get(), n, MPFR_RNDN);
      mpfr_set(den.im.get(), bm.im.get(), MPFR_RNDN);
      mpfr_add_ui(tmp.re.get(), cm.re.get(), n, MPFR_RNDN);
      mpfr_set(tmp.im.get(), cm.im.get(), MPFR_RNDN);
      mp::mul(prod, den, tmp, s1, s2);
      mpfr_mul_ui(prod.re.get(), prod.re.get(), n + 1, MPFR_RNDN);
      mpfr_mul_ui(prod.im.get(), prod.im.get(), n + 1, MPFR_RNDN);
      mp::div_inplace(t, prod, s1, s2, s3);
      mpfr_add(sum.re.get(), sum.re.get(), t.re.get(), MPFR_RNDN);
      mpfr_add(sum.im.get(), sum.im.get(), t.im.get(), MPFR_RNDN);
      if (mpfr_zero_p(t.re.get()) && mpfr_zero_p(t.im.get())) break;
      long te = t.exponent();
      peak_exp = std::max(peak_exp, te);
      if (te < peak_exp - bits - 8 && static_cast<double>(n) * n > aw) break;
      if (n > 4000000) fail(Errc::numeric, "1F2 multiprecision series did not terminate");
    }
    r.value = sum.to_complex();
    r.log2_severity = static_cast<double>(peak_exp - sum.exponent());
  }
  r.terms = n + 1;
  r.severity = std::exp2(std::min(r.log2_severity, 1000.0));
  return r;
}

void MeijerParams::validate() const {
  if (is_nonpositive_integer(b) || is_nonpositive_integer(c))
    fail(Errc::invalid_argument, "Meijer parameters b, c must not be nonpositive integers");
  // Poles of Gamma(d - s) sit at d + i, those of Gamma(s) at -j; they meet
  // exactly when d is a nonpositive integer.
  if (is_nonpositive_integer(d))
    fail(Errc::invalid_argument, "Meijer parameter d is a nonpositive integer: poles collide");
  if (z == 0.0) fail(Errc::invalid_argument, "Meijer argument must be nonzero");
}

MeijerResult meijer_g_1f2(const MeijerParams& p, double rel_tol) {
  p.validate();
  cplx w = -1.0 / p.z;
  cplx pre = cgamma(p.d) * rgamma(p.b) * rgamma(p.c);
  MeijerResult out;
  // Peak term of the series is about exp(2 sqrt|w|); predict the loss before
  // paying for a double-precision pass that would be thrown away.
  double predicted_bits = 2.0 * std::sqrt(std::abs(w)) / std::log(2.0);
  double allowed_bits = std::log2(rel_tol / kEps);
  if (predicted_bits < allowed_bits) {
    HypResult h = hyp_1f2(p.d, p.b, p.c, w);
    if (h.severity * kEps <= rel_tol) {
      out.value = pre * h.value;
      out.route = MeijerRoute::SeriesDouble;
      out.error_estimate = h.severity * kEps * 4.0 * std::abs(out.value);
      return out;
    }
  }
  long target = static_cast<long>(std::ceil(-std::log2(rel_tol))) + 16;
  long bits = target + static_cast<long>(std::ceil(predicted_bits)) + 16;
  for (int attempt = 0; attempt < 4; ++attempt) {
    HypResult h = hyp_1f2_mp(p.d, p.b, p.c, w, bits);
    if (h.log2_severity + target <= static_cast<double>(bits)) {
      out.value = pre * h.value;
      out.route = MeijerRoute::SeriesMP;
      out.bits = bits;
      // The series itself is exact to ~2^-target; the prefactor is double.
      out.error_estimate = 8.0 * kEps * std::abs(out.value);
      return out;
    }
    bits = static_cast<long>(std::ceil(h.log2_severity)) + target + 32;
  }
  fail(Errc::numeric, "1F2 series: precision exhausted");
}

double meijer_decay_exponent(const MeijerParams& p, double sigma) {
  return (p.d - p.b - p.c).real() + 2.0 * sigma;
}

cplx meijer_residue_right(const MeijerParams& p, int i) {
  double di = static_cast<double>(i);
  double sign = (i % 2 == 0) ? -1.0 : 1.0;  // -(-1)^i
  return sign * std::exp(-std::lgamma(di + 1.0)) * cgamma(p.d + di) * rgamma(p.b - p.d - di) *
         rgamma(p.c - p.d - di) * std::pow(p.z, p.d + di);
}

cplx meijer_residue_left(const MeijerParams& p, int j) {
  double dj = static_cast<double>(j);
  double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(-std::lgamma(dj + 1.0)) * cgamma(p.d + dj) * rgamma(p.b + dj) *
         rgamma(p.c + dj) * std::pow(p.z, -dj);
}

namespace {

// Nearest distance from the line Re s = sigma to a pole of the integrand,
// looking only at poles with real part within `reach` of the line.
double pole_clearance(const MeijerParams& p, double sigma) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; -j > sigma - 50.0; ++j) best = std::min(best, std::fabs(-j - sigma));
  for (int i = 0; p.d.real() + i < sigma + 50.0; ++i)
    best = std::min(best, std::fabs(p.d.real() + i - sigma));
  return best;
}

double choose_abscissa(const MeijerParams& p) {
  // Aim for |integrand| ~ |t|^-7, then back off from nearby poles.
  double sigma = (-7.0 - (p.d - p.b - p.c).real()) / 2.0;
  const double clearance = 0.3;
  if (pole_clearance(p, sigma) >= clearance) return sigma;
  for (int step = 1; step < 400; ++step) {
    for (double cand : {sigma - 0.05 * step, sigma + 0.05 * step}) {
      if (meijer_decay_exponent(p, cand) >= -3.0) continue;
      if (pole_clearance(p, cand) >= clearance) return cand;
    }
  }
  fail(Errc::numeric, "no admissible Mellin-Barnes abscissa");
}

cplx mb_integrand(const MeijerParams& p, cplx s, cplx logz) {
  return std::exp(log_gamma(p.d - s) + log_gamma(s) + s * logz) * rgamma(p.b - s) *
         rgamma(p.c - s);
}

}  // namespace

MeijerResult meijer_contour(const MeijerParams& p, const QuadratureConfig& q) {
  p.validate();
  if (p.z.imag() != 0.0 || p.z.real() <= 0.0)
    fail(Errc::invalid_argument, "contour route needs a positive real argument");
  const double sigma = q.abscissa ? *q.abscissa : choose_abscissa(p);
  const double rho = meijer_decay_exponent(p, sigma);
  if (rho >= -1.0)
    fail(Errc::numeric, "Mellin-Barnes integrand does not decay fast enough on Re s = " +
                            std::to_string(sigma));
  if (pole_clearance(p, sigma) < 1e-3) fail(Errc::pole, "integration line passes through a pole");

  const cplx logz = std::log(p.z);
  const bool real = p.b.imag() == 0.0 && p.c.imag() == 0.0 && p.d.imag() == 0.0;

  // Residue corrections relative to the standard path.
  ComplexSum residues;
  for (int i = 0; p.d.real() + i < sigma; ++i) residues.add(-meijer_residue_right(p, i));
  for (int j = 0; -j > sigma; ++j) residues.add(meijer_residue_left(p, j));

  auto order_for = [&](double t, double width) {
    double freq = std::fabs(logz.real()) + 2.0 * std::log1p(std::fabs(t)) + 2.0;
    return std::max(q.nodes_per_unit, static_cast<int>(std::ceil(freq * width)) + 12);
  };

  ComplexSum line;
  int nodes = 0;
  auto panel = [&](double a, double b) {
    const GaussRule& g = gauss_rule(order_for(std::max(std::fabs(a), std::fabs(b)), b - a));
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    ComplexSum ps;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
      double t = mid + half * g.x[k];
      cplx v = mb_integrand(p, cplx(sigma, t), logz);
      if (real) {
        ps.add(2.0 * g.w[k] * v.real());
      } else {
        ps.add(g.w[k] * v);
        ps.add(g.w[k] * mb_integrand(p, cplx(sigma, -t), logz));
      }
    }
    nodes += static_cast<int>(g.x.size()) * (real ? 1 : 2);
    line.add(half * ps.value());
  };

  // t in [0, T], doubled by symmetry (or paired with -t); panels of width 0.5
  // near the real axis where poles are closest, width 1 beyond.
  const double inv2pi = 1.0 / (2.0 * kPi);
  for (double a = 0.0; a < 3.0; a += 0.5) panel(a, a + 0.5);
  double T = 3.0;
  double tail = 0.0;
  const double fixed_T = q.half_height;
  // The power-law tail model only holds once Stirling's regime is reached.
  const double t_min =
      std::max({8.0, 3.0 * std::abs(p.b), 3.0 * std::abs(p.c), 3.0 * std::abs(p.d), 3.0 * std::fabs(sigma)});
  for (;;) {
    double edge = std::abs(mb_integrand(p, cplx(sigma, T), logz));
    if (!real) edge = std::max(edge, std::abs(mb_integrand(p, cplx(sigma, -T), logz)));
    tail = 2.0 * edge * T / (-rho - 1.0) * inv2pi;
    cplx current = line.value() * inv2pi + residues.value();
    double scale = std::max(std::abs(current), 1e-300);
    bool done = fixed_T > 0.0 ? T >= fixed_T : (T >= t_min && tail <= q.tol * scale);
    if (done) {
      if (fixed_T > 0.0 && tail > q.tol * scale)
        fail(Errc::numeric, "Mellin-Barnes truncation at T = " + std::to_string(T) +
                                " leaves tail estimate " + std::to_string(tail / scale) +
                                " above tolerance");
      break;
    }
    if (T >= q.max_half_height)
      fail(Errc::numeric, "Mellin-Barnes tail not below tolerance by T = " + std::to_string(T));
    panel(T, T + 1.0);
    T += 1.0;
  }

  MeijerResult out;
  out.value = line.value() * inv2pi + residues.value();
  out.route = MeijerRoute::Contour;
  out.error_estimate = tail;
  out.abscissa = sigma;
  out.half_height = T;
  out.nodes = nodes;
  return out;
}

cplx meijer_line_value(const MeijerParams& p, double gamma_line, const MeijerResult& standard) {
  if (!(gamma_line > 0.0)) fail(Errc::invalid_argument, "line abscissa must be positive");
  ComplexSum s;
  s.add(standard.value);
  for (int i = 0; p.d.real() + i < gamma_line; ++i) s.add(meijer_residue_right(p, i));
  return s.value();
}

cplx meijer_full_from(const MeijerParams& p, const MeijerResult& standard) {
  ComplexSum s;
  s.add(standard.value);
  // Gamma(d - s) / Gamma(b - s) leaves poles at d + i for i < b - d only.
  cplx span = p.b - p.d;
  int last = std::abs(span - std::round(span.real())) < 1e-12 ? static_cast<int>(std::round(span.real())) - 1
                                                             : -1;
  if (last < 0) fail(Errc::invalid_argument, "oscillatory part needs b - d to be a positive integer");
  for (int i = 0; i <= last; ++i) s.add(meijer_residue_right(p, i));
  return s.value();
}

namespace {

// Coefficients of L[e^{sign i w} w^m] at exponents m, m+1, m+2, m+3 for
// L = D(D + 2b - 2)(D + 2c - 2) + w^2 (D + 2d), D = w d/dw: the hypergeometric
// operator of 1F2(d; b, c; -w^2/4).
std::array<cplx, 4> hankel_operator(cplx m, cplx b, cplx c, cplx d, double sign) {
  const cplx is(0.0, sign);
  auto apply_d = [&](const std::array<cplx, 4>& v) {
    std::array<cplx, 4> out{};
    for (int o = 0; o < 4; ++o) {
      out[o] += (m + static_cast<double>(o)) * v[o];
      if (o < 3) out[o + 1] += is * v[o];
    }
    return out;
  };
  auto shift_add = [](std::array<cplx, 4> v, const std::array<cplx, 4>& w, cplx k) {
    for (int o = 0; o < 4; ++o) v[o] += k * w[o];
    return v;
  };
  std::array<cplx, 4> one{1.0, 0.0, 0.0, 0.0};
  // P(D) = D (D + beta1) (D + beta2)
  std::array<cplx, 4> t = shift_add(apply_d(one), one, 2.0 * c - 2.0);
  t = shift_add(apply_d(t), t, 2.0 * b - 2.0);
  std::array<cplx, 4> p = apply_d(t);
  // w^2 (D + 2d) lifts two exponents.
  std::array<cplx, 4> q = shift_add(apply_d(one), one, 2.0 * d);
  p[2] += q[0];
  p[3] += q[1];
  return p;
}

std::vector<cplx> hankel_coefficients(cplx b, cplx c, cplx d, cplx nu, double sign, int n) {
  std::vector<cplx> f;
  f.reserve(n);
  // DLMF normalization of the exponentially large part of the regularized 1F2.
  f.push_back(std::pow(2.0 * kPi, -0.5) * std::exp(-(nu + 0.5) * std::log(2.0)) *
              std::exp(cplx(0.0, sign * kPi / 2.0) * nu));
  auto col = [&](int k) { return hankel_operator(nu - static_cast<double>(k), b, c, d, sign); };
  std::vector<std::array<cplx, 4>> ops;
  for (int k = 0; k < n; ++k) ops.push_back(col(k));
  if (std::abs(ops[0][3]) > 1e-9 || std::abs(ops[0][2]) > 1e-9 * (1.0 + std::abs(nu)))
    fail(Errc::internal, "Hankel exponent does not solve the indicial equation");
  for (int j = 1; j < n; ++j) {
    cplx rhs = ops[j - 1][1] * f[j - 1];
    if (j >= 2) rhs += ops[j - 2][0] * f[j - 2];
    if (std::abs(ops[j][2]) == 0.0) fail(Errc::internal, "degenerate Hankel recursion");
    f.push_back(-rhs / ops[j][2]);
  }
  return f;
}

}  // namespace

MeijerAsymptotic::MeijerAsymptotic(cplx b, cplx c, cplx d, int max_terms) {
  nu_ = d - b - c + 0.5;
  plus_ = hankel_coefficients(b, c, d, nu_, 1.0, max_terms);
  minus_ = hankel_coefficients(b, c, d, nu_, -1.0, max_terms);
}

MeijerAsymptotic::Value MeijerAsymptotic::operator()(double z) const {
  if (!(z > 0.0)) fail(Errc::invalid_argument, "asymptotic Meijer expansion needs real z > 0");
  const double w = 2.0 / std::sqrt(z);
  Value out{0.0, 0.0, 0};
  const cplx lead = std::exp(nu_ * std::log(w));
  for (double sign : {1.0, -1.0}) {
    const std::vector<cplx>& f = sign > 0 ? plus_ : minus_;
    ComplexSum s;
    double wk = 1.0, prev = std::numeric_limits<double>::infinity(), omitted;
    std::size_t j = 0;
    for (; j < f.size(); ++j, wk /= w) {
      double mag = std::abs(f[j]) * wk;
      if (mag > prev) break;  // divergent from here on
      s.add(f[j] * wk);
      prev = mag;
      if (mag <= 1e-17 * std::abs(s.value())) {
        ++j;
        break;
      }
    }
    omitted = j < f.size() ? std::abs(f[j]) * std::pow(w, -static_cast<double>(j)) : prev;
    cplx part = std::exp(cplx(0.0, sign * w)) * lead * s.value();
    out.value += part;
    out.error_estimate += omitted * std::abs(lead);
    out.terms = std::max(out.terms, static_cast<int>(j));
  }
  return out;
}

namespace {

// Real parameters: the standard value and the residues at d + i are summed in
// MPFR, so the cancellation between them (about z^{-d}/|result| in size) costs
// working precision instead of accuracy. Returns false if precision ran out.
// b is rebuilt as d + (last + 1) exactly: with b - d off an integer by one ulp
// the poles at d + i, i > last, stop cancelling and leave an O(eps) remainder.
bool meijer_full_real_mp(double c, double d, double z, int last, double rel_tol, double* value,
                         double* err) {
  const double x = 1.0 / z;
  long target = static_cast<long>(std::ceil(-std::log2(rel_tol))) + 16;
  long bits = target + static_cast<long>(std::ceil(2.0 * std::sqrt(x) / std::log(2.0))) + 64;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const mpfr_prec_t prec = bits;
    mp::Real t(prec, 1.0), sum(prec, 1.0), num(prec), den(prec), tmp(prec), w(prec), zm(prec), bm(prec);
    mpfr_set_d(bm.get(), d, MPFR_RNDN);
    mpfr_add_si(bm.get(), bm.get(), last + 1, MPFR_RNDN);
    mpfr_set_d(zm.get(), z, MPFR_RNDN);
    mpfr_ui_div(w.get(), 1, zm.get(), MPFR_RNDN);
    mpfr_neg(w.get(), w.get(), MPFR_RNDN);
    long peak = 1;
    for (long n = 0;; ++n) {
      mpfr_set_d(num.get(), d, MPFR_RNDN);
      mpfr_add_si(num.get(), num.get(), n, MPFR_RNDN);
      mpfr_mul(t.get(), t.get(), num.get(), MPFR_RNDN);
      mpfr_mul(t.get(), t.get(), w.get(), MPFR_RNDN);
      mpfr_add_si(den.get(), bm.get(), n, MPFR_RNDN);
      mpfr_set_d(tmp.get(), c, MPFR_RNDN);
      mpfr_add_si(tmp.get(), tmp.get(), n, MPFR_RNDN);
      mpfr_mul(den.get(), den.get(), tmp.get(), MPFR_RNDN);
      mpfr_mul_si(den.get(), den.get(), n + 1, MPFR_RNDN);
      mpfr_div(t.get(), t.get(), den.get(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), t.get(), MPFR_RNDN);
      if (mpfr_zero_p(t.get())) break;
      peak = std::max(peak, t.exponent());
      if (t.exponent() < peak - bits - 8 && static_cast<double>(n) * n > x) break;
      if (n > 4000000) fail(Errc::numeric, "1F2 multiprecision series did not terminate");
    }
    // Gamma(d) / (Gamma(b) Gamma(c)) 1F2
    mpfr_set_d(tmp.get(), d, MPFR_RNDN);
    mpfr_gamma(tmp.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(sum.get(), sum.get(), tmp.get(), MPFR_RNDN);
    mpfr_gamma(tmp.get(), bm.get(), MPFR_RNDN);
    mpfr_div(sum.get(), sum.get(), tmp.get(), MPFR_RNDN);
    mpfr_set_d(tmp.get(), c, MPFR_RNDN);
    mpfr_gamma(tmp.get(), tmp.get(), MPFR_RNDN);
    mpfr_div(sum.get(), sum.get(), tmp.get(), MPFR_RNDN);
    long biggest = sum.exponent() + std::max(0L, peak);
    // -(-1)^i / i! Gamma(d+i) / (Gamma(b-d-i) Gamma(c-d-i)) z^{d+i}; d + i and
    // c - d - i are formed in MPFR, z^{d+i} magnifies their rounding by log(1/z).
    mp::Real di(prec), cdi(prec);
    for (int i = 0; i <= last; ++i) {
      if (is_nonpositive_integer(c - d - i)) continue;
      mpfr_set_d(di.get(), d, MPFR_RNDN);
      mpfr_add_si(di.get(), di.get(), i, MPFR_RNDN);
      mpfr_set_d(cdi.get(), c, MPFR_RNDN);
      mpfr_sub(cdi.get(), cdi.get(), di.get(), MPFR_RNDN);
      mpfr_gamma(t.get(), di.get(), MPFR_RNDN);
      mpfr_fac_ui(tmp.get(), last - i, MPFR_RNDN);  // Gamma(b - d - i)
      mpfr_div(t.get(), t.get(), tmp.get(), MPFR_RNDN);
      mpfr_gamma(tmp.get(), cdi.get(), MPFR_RNDN);
      mpfr_div(t.get(), t.get(), tmp.get(), MPFR_RNDN);
      mpfr_fac_ui(tmp.get(), i, MPFR_RNDN);
      mpfr_div(t.get(), t.get(), tmp.get(), MPFR_RNDN);
      mpfr_pow(tmp.get(), zm.get(), di.get(), MPFR_RNDN);
      mpfr_mul(t.get(), t.get(), tmp.get(), MPFR_RNDN);
      biggest = std::max(biggest, t.exponent());
      if (i % 2 == 0)
        mpfr_sub(sum.get(), sum.get(), t.get(), MPFR_RNDN);
      else
        mpfr_add(sum.get(), sum.get(), t.get(), MPFR_RNDN);
    }
    long lost = biggest - sum.exponent();
    if (!mpfr_zero_p(sum.get()) && lost + target <= bits) {
      *value = sum.to_double();
      *err = 4.0 * kEps * std::abs(*value);
      return true;
    }
    bits = lost + target + 64;
  }
  return false;
}

}  // namespace

MeijerResult meijer_full(const MeijerParams& p, const MeijerAsymptotic* asym, double rel_tol) {
  p.validate();
  MeijerResult out;
  const bool real_z = p.z.imag() == 0.0 && p.z.real() > 0.0;
  if (asym && real_z) {
    MeijerAsymptotic::Value a = (*asym)(p.z.real());
    if (a.error_estimate <= rel_tol * std::abs(a.value)) {
      out.value = a.value;
      out.route = MeijerRoute::Asymptotic;
      out.error_estimate = a.error_estimate;
      return out;
    }
  }
  cplx span = p.b - p.d;
  if (std::abs(span - std::round(span.real())) > 1e-12 || std::round(span.real()) < 1.0)
    fail(Errc::invalid_argument, "oscillatory part needs b - d to be a positive integer");
  const int last = static_cast<int>(std::round(span.real())) - 1;
  if (real_z && p.b.imag() == 0.0 && p.c.imag() == 0.0 && p.d.imag() == 0.0) {
    double v, e;
    if (meijer_full_real_mp(p.c.real(), p.d.real(), p.z.real(), last, rel_tol, &v, &e)) {
      out.value = v;
      out.route = MeijerRoute::SeriesMP;
      out.error_estimate = e;
      return out;
    }
  }
  // Complex parameters: double-precision residues, with the cancellation in the error.
  MeijerResult standard = meijer_g_1f2(p, rel_tol);
  out = standard;
  out.value = meijer_full_from(p, standard);
  double scale = std::abs(standard.value);
  for (int i = 0; i <= last; ++i) scale = std::max(scale, std::abs(meijer_residue_right(p, i)));
  out.error_estimate = standard.error_estimate + 8.0 * kEps * scale;
  return out;
}

}  // namespace hecke
