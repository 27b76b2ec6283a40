#include "riesz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "error.hpp"
#include "quad.hpp"
#include "special.hpp"

namespace hecke {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double sigma_a(const HeckePair& p) { return std::max(p.phi.sigma_a, p.psi.sigma_a); }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cplx power(double base, cplx e) { return std::exp(e * std::log(base)); }

}  // namespace

std::vector<Violation> check_hypotheses(const HeckePair& p, cplx u, cplx v, int k, double gamma) {
  std::vector<Violation> out;
  double sa = sigma_a(p);
  auto need = [&out](bool ok, const char* what, std::string detail) {
    if (!ok) out.push_back({what, std::move(detail)});
  };
  need(u.real() > p.phi.sigma_a, "Re u > σ_a", "Re u = " + num(u.real()) + ", σ_a = " + num(p.phi.sigma_a));
  need(v.real() > p.psi.sigma_a, "Re v > σ_a", "Re v = " + num(v.real()) + ", σ_a = " + num(p.psi.sigma_a));
  need(gamma > sa, "γ > σ_a", "γ = " + num(gamma) + ", σ_a = " + num(sa));
  need(gamma > p.delta / 2.0, "γ > δ/2", "γ = " + num(gamma) + ", δ/2 = " + num(p.delta / 2.0));
  need(k > 2.0 * gamma - p.delta, "k > 2γ − δ", "k = " + std::to_string(k) + ", 2γ − δ = " + num(2.0 * gamma - p.delta));
  need(u.real() + v.real() - gamma > sa, "Re u + Re v − γ > σ_a",
       "Re u + Re v − γ = " + num(u.real() + v.real() - gamma) + ", σ_a = " + num(sa));
  return out;
}

void require_hypotheses(const HeckePair& p, const RieszParams& r) {
  auto bad = check_hypotheses(p, r.u, r.v, r.k, r.gamma);
  if (bad.empty()) return;
  std::string msg = "hypothesis violated:";
  for (const Violation& b : bad) msg += " [" + b.inequality + "] (" + b.detail + ")";
  fail(Errc::hypothesis, msg);
}

double perron_abscissa(const HeckePair& p, const RieszParams& r) {
  double lo = r.u.real(), hi = r.u.real() + r.v.real() - p.psi.sigma_a;
  if (!(lo < hi)) fail(Errc::hypothesis, "no admissible Perron line: needs Re v > σ_a");
  if (r.abscissa) {
    if (!(*r.abscissa > lo && *r.abscissa < hi))
      fail(Errc::hypothesis, "Perron line must satisfy Re u < c < Re(u + v) − σ_a (c = " +
                                 num(*r.abscissa) + ", window (" + num(lo) + ", " + num(hi) + "))");
    return *r.abscissa;
  }
  if (r.gamma > lo && r.gamma < hi) return r.gamma;
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Double sums

namespace {

struct InnerSeries {
  const SeriesData& d;
  cplx u;
  std::vector<cplx> cache{0.0};  // f(m) lambda_m^{-u}
  cplx at(std::size_t m) {
    while (cache.size() <= m) {
      std::size_t i = cache.size();
      cache.push_back(d.coeff(i) * std::exp(-u * d.freq.log(i)));
    }
    return cache[m];
  }
};

// (1/k!) sum'_{lambda_m <= mu_n x} f(m) lambda_m^{-u} (mu_n x - lambda_m)^k
cplx inner_riesz(InnerSeries& in, const Frequency& mu, std::size_t n, double x, int k, double inv_fact) {
  const Frequency& lam = in.d.freq;
  double big_x = mu(n) * x;
  ComplexSum acc;
  for (std::size_t m = 1;; ++m) {
    int c = compare_scaled(lam, m, mu, n, x);
    if (c > 0) break;
    if (m > in.d.capacity()) fail(Errc::capacity, "inner sum runs past the coefficient table");
    if (k == 0) {
      acc.add(c == 0 ? 0.5 * in.at(m) : in.at(m));
    } else if (c < 0) {
      acc.add(in.at(m) * std::pow(big_x - lam(m), k));
    }
  }
  return acc.value() * inv_fact;
}

// sum_j c_j X^{k-j} + sum_p d_p X^{p-u+k}: the part of the inner Riesz sum
// that the outer sum turns into closed-form products.
struct MainPart {
  std::vector<cplx> poly;  // coefficient of X^{k-j}
  std::vector<std::pair<cplx, cplx>> poles;  // (coefficient, exponent)
  cplx at(double big_x, int k) const {
    cplx s = 0.0;
    for (std::size_t j = 0; j < poly.size(); ++j) s += poly[j] * std::pow(big_x, k - static_cast<int>(j));
    for (const auto& [c, e] : poles) s += c * power(big_x, e);
    return s;
  }
};

std::size_t outer_limit(const HeckePair& p, double x) {
  // Largest n whose inner range stays inside the phi table.
  std::size_t hi = p.psi.capacity();
  while (hi > 1 && last_index_below(p.phi.freq, p.psi.freq, hi, x) >= p.phi.capacity()) hi = hi * 9 / 10;
  return hi;
}

RieszResult double_sum(const HeckePair& p, const RieszParams& r, const RieszOptions& o) {
  if (!(r.x > 0.0)) fail(Errc::invalid_argument, "x must be positive");
  if (r.k < 0) fail(Errc::invalid_argument, "k must be nonnegative");
  if (!(r.u.real() > p.phi.sigma_a)) fail(Errc::hypothesis, "hypothesis violated: [Re u > σ_a]");
  if (!(r.v.real() > p.psi.sigma_a)) fail(Errc::hypothesis, "hypothesis violated: [Re v > σ_a]");
  RieszMode mode = o.mode;
  if (mode == RieszMode::Auto) mode = p.has_fe ? RieszMode::Accelerated : RieszMode::Plain;
  if (mode == RieszMode::Plain && o.n_max == 0) fail(Errc::invalid_argument, "plain mode needs an explicit n_max");

  const int k = r.k;
  const double inv_fact = 1.0 / factorial(k);
  const SeriesData& g = p.psi;
  InnerSeries inner{p.phi, r.u};

  RieszResult res;
  res.mode = mode;
  MainPart main;
  if (mode == RieszMode::Accelerated) {
    ComplexSum closed;
    for (int j = 0; j <= k; ++j) {
      double c = (j % 2 ? -1.0 : 1.0) / (factorial(j) * factorial(k - j));
      cplx phi_j = evaluate(p, Side::Phi, r.u - static_cast<double>(j));
      main.poly.push_back(c * phi_j);
      closed.add(c * phi_j * evaluate(p, Side::Psi, r.v + static_cast<double>(j)) * std::pow(r.x, k - j));
    }
    for (const Pole& q : p.phi.poles) {
      if (q.residue == 0.0) continue;
      cplx a = q.location - r.u;
      cplx c = q.residue * gamma_ratio(a, a + static_cast<double>(k + 1));
      main.poles.push_back({c, a + static_cast<double>(k)});
      closed.add(c * evaluate(p, Side::Psi, r.v + r.u - q.location) * power(r.x, a + static_cast<double>(k)));
    }
    res.main_terms = closed.value();
  }

  std::size_t limit = o.n_max ? o.n_max : outer_limit(p, r.x);
  if (o.n_max && o.n_max > outer_limit(p, r.x)) fail(Errc::capacity, "n_max exceeds the coefficient tables");

  // Decay model of the outer terms for the tail estimate.
  double pe = g.freq.kind() == FreqKind::Integers ? 1.0 : 2.0;
  double beta = (p.delta + k) / 2.0 - r.u.real();
  double alpha = pe * (r.v.real() + k) - g.growth_e - pe * beta;

  ComplexSum outer;
  std::size_t checkpoint = 64;
  double block_max = 0.0;
  for (std::size_t n = 1; n <= limit; ++n) {
    double big_x = g.freq(n) * r.x;
    cplx in = inner_riesz(inner, g.freq, n, r.x, k, inv_fact);
    if (mode == RieszMode::Accelerated) in -= main.at(big_x, k);
    cplx term = g.coeff(n) * std::exp(-(r.v + static_cast<double>(k)) * g.freq.log(n)) * in;
    outer.add(term);
    if (n > checkpoint / 2) block_max = std::max(block_max, std::abs(term) * std::pow(static_cast<double>(n), alpha));
    if (mode == RieszMode::Plain) continue;
    if (n == checkpoint || n == limit) {
      double tail = alpha > 1.05 ? block_max * std::pow(static_cast<double>(n), 1.0 - alpha) / (alpha - 1.0)
                                 : std::numeric_limits<double>::infinity();
      res.value = res.main_terms + outer.value();
      res.n_max = n;
      res.tail_estimate = tail;
      if (!o.n_max && tail <= o.tol * std::max(std::abs(res.value), 1e-300)) return res;
      checkpoint *= 2;
      block_max = 0.0;
    }
  }
  res.value = res.main_terms + outer.value();
  res.n_max = limit;
  if (mode == RieszMode::Plain) {
    res.tail_estimate = std::numeric_limits<double>::quiet_NaN();
  } else if (!o.n_max && !(res.tail_estimate <= o.tol * std::abs(res.value))) {
    fail(Errc::numeric, "outer sum tail estimate " + num(res.tail_estimate) + " exceeds tol " +
                            num(o.tol) + " relative at n = " + std::to_string(limit));
  }
  return res;
}

}  // namespace

RieszResult riesz_double_sum(const HeckePair& p, const RieszParams& r, const RieszOptions& o) {
  return double_sum(p, r, o);
}

RieszResult prime_double_sum(const HeckePair& p, cplx u, cplx v, const RieszOptions& o) {
  RieszParams r{u, v, 0, 1.0, 0.0, std::nullopt};
  return double_sum(p, r, o);
}

// ---------------------------------------------------------------------------
// Contour integrals

namespace {

using Integrand = std::function<cplx(cplx)>;

cplx perron_integrand(const HeckePair& p, const RieszParams& r, cplx z) {
  cplx a = z - r.u;
  cplx g = gamma_ratio(a, a + static_cast<double>(r.k + 1));
  return g * evaluate(p, Side::Phi, z) * evaluate(p, Side::Psi, r.v + r.u - z) *
         power(r.x, a + static_cast<double>(r.k));
}

double distance_to(const std::vector<cplx>& pts, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (cplx q : pts) d = std::min(d, std::abs(z - q));
  return d;
}

// int_a^b f(z) dz on a straight segment, panels shrunk next to singularities.
cplx segment(const Integrand& f, cplx a, cplx b, const std::vector<cplx>& sing, double max_panel, int* nodes) {
  const GaussRule& rule = gauss_rule(20);
  double len = std::abs(b - a);
  cplx dir = (b - a) / len;
  ComplexSum acc;
  double s = 0.0;
  while (s < len) {
    double w = std::min(max_panel, len - s);
    // Shrink until the panel is no longer than its distance to any singularity.
    while (w > 1e-4 && distance_to(sing, a + dir * (s + 0.5 * w)) < w) w *= 0.5;
    if (distance_to(sing, a + dir * (s + 0.5 * w)) < 1e-6)
      fail(Errc::pole, "integrand pole within node distance of the contour");
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      cplx z = a + dir * (s + 0.5 * w * (1.0 + rule.x[i]));
      acc.add(0.5 * w * rule.w[i] * f(z));
    }
    *nodes += static_cast<int>(rule.x.size());
    s += w;
  }
  return acc.value() * dir;
}

std::vector<cplx> singularities(const HeckePair& p, const RieszParams& r) {
  std::vector<cplx> s;
  for (int j = 0; j <= r.k; ++j) s.push_back(r.u - static_cast<double>(j));
  for (const Pole& q : p.phi.poles) s.push_back(q.location);
  for (const Pole& q : p.psi.poles) {
    s.push_back(p.delta - q.location);  // polar term of Lambda_phi
    s.push_back(r.u + r.v - q.location);
  }
  for (const Pole& q : p.phi.poles) s.push_back(r.u + r.v - (p.delta - q.location));
  return s;
}

struct Rect {
  double left, right, half;
  bool inside(cplx z) const { return z.real() > left && z.real() < right && std::fabs(z.imag()) < half; }
};

Rect rectangle(const HeckePair& p, const RieszParams& r, const RectangleOptions& o) {
  Rect q{p.delta - r.gamma, perron_abscissa(p, r), o.half_height};
  if (q.half <= 0.0) q.half = std::fabs(r.u.imag()) + 3.0;
  if (!(q.left < q.right)) fail(Errc::hypothesis, "contour needs δ − γ below the Perron line");
  return q;
}

ContourResult integrate_rectangle(const Integrand& f, const Rect& q, const std::vector<cplx>& sing,
                                  double max_panel) {
  ContourResult c;
  c.left_abscissa = q.left;
  c.right_abscissa = q.right;
  c.half_height = q.half;
  cplx ll(q.left, -q.half), lr(q.right, -q.half), ur(q.right, q.half), ul(q.left, q.half);
  const cplx two_pi_i(0.0, 2.0 * kPi);
  c.bottom = segment(f, ll, lr, sing, max_panel, &c.nodes) / two_pi_i;
  c.right = segment(f, lr, ur, sing, max_panel, &c.nodes) / two_pi_i;
  c.top = segment(f, ur, ul, sing, max_panel, &c.nodes) / two_pi_i;
  c.left = segment(f, ul, ll, sing, max_panel, &c.nodes) / two_pi_i;
  c.value = c.bottom + c.right + c.top + c.left;
  return c;
}

void require_simple(const std::vector<cplx>& inside) {
  for (std::size_t i = 0; i < inside.size(); ++i)
    for (std::size_t j = i + 1; j < inside.size(); ++j)
      if (std::abs(inside[i] - inside[j]) < 1e-9)
        fail(Errc::pole, "two integrand poles coincide at " + num(inside[i]));
}

}  // namespace

namespace {

// sum over lambda_m = mu_n x of g(n) mu_n^{-v} f(m) lambda_m^{-u}
cplx tie_constant(const HeckePair& p, const RieszParams& r) {
  ComplexSum acc;
  std::size_t limit = outer_limit(p, r.x);
  for (std::size_t n = 1; n <= limit; ++n) {
    std::size_t m = last_index_below(p.phi.freq, p.psi.freq, n, r.x);
    if (m == 0 || compare_scaled(p.phi.freq, m, p.psi.freq, n, r.x) != 0) continue;
    acc.add(p.psi.coeff(n) * p.phi.coeff(m) *
            std::exp(-r.v * p.psi.freq.log(n) - r.u * p.phi.freq.log(m)));
  }
  return acc.value();
}

// (1/2 pi) int_{|t| > T} Gamma(b+it)/Gamma(b+it+k+1) dt, via the partial
// fractions sum_j c_j / (b + j + it) whose coefficients sum to zero.
cplx ratio_tail(cplx b, int k, double big_t) {
  cplx acc = 0.0;
  for (int j = 0; j <= k; ++j) {
    double c = (j % 2 ? -1.0 : 1.0) / (factorial(j) * factorial(k - j));
    cplx bj = b + static_cast<double>(j);
    acc += c * (std::log(bj + cplx(0.0, big_t)) - std::log(bj - cplx(0.0, big_t)));
  }
  return cplx(0.0, 1.0) * acc / (2.0 * kPi);
}

}  // namespace

LineResult perron_line_integral(const HeckePair& p, const RieszParams& r, const LineOptions& o) {
  if (r.k < 1) fail(Errc::hypothesis, "the line integral needs k >= 1 to converge absolutely");
  LineResult res;
  res.abscissa = perron_abscissa(p, r);
  const double c = res.abscissa;
  bool real_params = r.u.imag() == 0.0 && r.v.imag() == 0.0;
  res.tie = tie_constant(p, r) * std::pow(r.x, r.k);
  auto f = [&](double t) { return perron_integrand(p, r, cplx(c, t)); };
  auto tie_part = [&](double t) {
    cplx a = cplx(c, t) - r.u;
    return res.tie * gamma_ratio(a, a + static_cast<double>(r.k + 1));
  };
  std::vector<cplx> sing = singularities(p, r);
  const GaussRule& rule = gauss_rule(20);

  ComplexSum acc;
  double envelope = 0.0;
  // Panels from t_from upward (and mirrored when the integrand is not
  // conjugate symmetric).
  auto run = [&](double t_from, double t_to, double env_from) {
    for (double sign : {1.0, -1.0}) {
      if (real_params && sign < 0.0) continue;
      double t = t_from;
      while (t < t_to) {
        double w = std::min(o.panel, t_to - t);
        while (w > 1e-3 && distance_to(sing, cplx(c, sign * (t + 0.5 * w))) < w) w *= 0.5;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          double ti = t + 0.5 * w * (1.0 + rule.x[i]);
          cplx fi = f(sign * ti);
          if (ti >= env_from)
            envelope = std::max(envelope, std::abs(fi - tie_part(sign * ti)) * std::pow(ti, r.k + 1));
          if (real_params) fi = cplx(2.0 * fi.real(), 0.0);
          acc.add(0.5 * w * rule.w[i] * fi);
        }
        res.nodes += static_cast<int>(rule.x.size());
        t += w;
      }
    }
  };

  // Both half-lines beyond T, integrand below envelope * t^{-k-1}, over 2 pi.
  double tail_factor = 1.0 / (r.k * kPi);
  if (o.half_height > 0.0) {
    run(0.0, o.half_height, 0.5 * o.half_height);
    res.half_height = o.half_height;
    res.tie_tail = ratio_tail(c - r.u, r.k, o.half_height) * res.tie;
    res.value = acc.value() / (2.0 * kPi) + res.tie_tail;
    res.tail_estimate = envelope * std::pow(o.half_height, -r.k) * tail_factor;
    return res;
  }
  double t_done = 0.0;
  for (double big_t = 16.0;; big_t *= 2.0) {
    envelope = 0.0;
    run(t_done, big_t, 0.5 * big_t);
    t_done = big_t;
    res.tie_tail = ratio_tail(c - r.u, r.k, big_t) * res.tie;
    res.value = acc.value() / (2.0 * kPi) + res.tie_tail;
    res.half_height = big_t;
    res.tail_estimate = envelope * std::pow(big_t, -r.k) * tail_factor;
    const double target = o.tol * std::abs(res.value);
    if (res.tail_estimate <= target) return res;
    if (2.0 * big_t > o.max_half_height)
      fail(Errc::numeric, "Perron line tail " + num(res.tail_estimate) + " above tol at T = " + num(big_t));
    // Once the envelope has settled, the tail falls like T^{-k}: stop now if
    // the height it would take is out of reach.
    double needed = big_t * std::pow(res.tail_estimate / target, 1.0 / r.k);
    if (big_t >= 64.0 && needed > 2.0 * o.max_half_height)
      fail(Errc::numeric, "Perron line tail " + num(res.tail_estimate) + " at T = " + num(big_t) +
                              " would need T near " + num(needed) + " (limit " + num(o.max_half_height) +
                              "); a larger k converges faster");
  }
}

ContourResult p_k_contour(const HeckePair& p, const RieszParams& r, const RectangleOptions& o) {
  Rect q = rectangle(p, r, o);
  auto f = [&](cplx z) { return perron_integrand(p, r, z); };
  return integrate_rectangle(f, q, singularities(p, r), o.max_panel);
}

namespace {

ResidueParts residue_parts(const HeckePair& p, const RieszParams& r, bool derivative) {
  Rect q = rectangle(p, r, {});
  const int k = r.k;
  std::vector<cplx> inside;
  ComplexSum poly, phi, psi;
  for (int j = 0; j <= k; ++j) {
    cplx z = r.u - static_cast<double>(j);
    if (!q.inside(z)) continue;
    inside.push_back(z);
    if (derivative && j > 0) continue;  // x^{k-j} has no k-th derivative
    double c = derivative ? 1.0 : (j % 2 ? -1.0 : 1.0) / (factorial(j) * factorial(k - j));
    double xp = derivative ? 1.0 : std::pow(r.x, k - j);
    poly.add(c * evaluate(p, Side::Phi, z) * evaluate(p, Side::Psi, r.v + static_cast<double>(j)) * xp);
  }
  // r Gamma(a)/Gamma(a+k+1) x^{a+k}, or after k derivatives r x^a / a
  auto weight = [&](cplx a) {
    return derivative ? power(r.x, a) / a : gamma_ratio(a, a + static_cast<double>(k + 1)) *
                                                power(r.x, a + static_cast<double>(k));
  };
  for (const Pole& pl : p.phi.poles) {
    if (pl.residue == 0.0 || !q.inside(pl.location)) continue;
    inside.push_back(pl.location);
    phi.add(pl.residue * weight(pl.location - r.u) * evaluate(p, Side::Psi, r.v + r.u - pl.location));
  }
  for (const Pole& pl : p.psi.poles) {
    cplx z = r.u + r.v - pl.location;
    if (pl.residue == 0.0 || !q.inside(z)) continue;
    inside.push_back(z);
    psi.add(-pl.residue * weight(r.v - pl.location) * evaluate(p, Side::Phi, z));
  }
  require_simple(inside);
  return {poly.value(), phi.value(), psi.value()};
}

}  // namespace

cplx p_k_residues(const HeckePair& p, const RieszParams& r) { return residue_parts(p, r, false).total(); }

ResidueParts p_k_residue_parts(const HeckePair& p, const RieszParams& r) { return residue_parts(p, r, false); }

ResidueParts p_k_residue_derivative(const HeckePair& p, const RieszParams& r) {
  return residue_parts(p, r, true);
}

ContourResult s2_contour(const HeckePair& p, const RieszParams& r, const RectangleOptions& o) {
  Rect q = rectangle(p, r, o);
  if (!q.inside(r.u)) fail(Errc::hypothesis, "the contour does not enclose z = u");
  auto f = [&](cplx z) {
    return evaluate(p, Side::Phi, z) * evaluate(p, Side::Psi, r.v + r.u - z) / (z - r.u);
  };
  RieszParams s = r;
  s.k = 0;
  return integrate_rectangle(f, q, singularities(p, s), o.max_panel);
}

cplx s2_residues(const HeckePair& p, const RieszParams& r) {
  Rect q = rectangle(p, r, {});
  if (!q.inside(r.u)) fail(Errc::hypothesis, "the contour does not enclose z = u");
  std::vector<cplx> inside{r.u};
  ComplexSum acc;
  acc.add(evaluate(p, Side::Phi, r.u) * evaluate(p, Side::Psi, r.v));
  for (const Pole& pl : p.phi.poles) {
    if (pl.residue == 0.0 || !q.inside(pl.location)) continue;
    inside.push_back(pl.location);
    acc.add(pl.residue / (pl.location - r.u) * evaluate(p, Side::Psi, r.v + r.u - pl.location));
  }
  for (const Pole& pl : p.psi.poles) {
    cplx z = r.u + r.v - pl.location;
    if (pl.residue == 0.0 || !q.inside(z)) continue;
    inside.push_back(z);
    acc.add(-pl.residue * evaluate(p, Side::Phi, z) / (z - r.u));
  }
  require_simple(inside);
  return acc.value();
}

}  // namespace hecke
