#include "gseries.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "special.hpp"

namespace hecke {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

cplx power(double base, cplx e) { return std::exp(e * std::log(base)); }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Integer q with q * q == x, if any.
std::optional<double> exact_root(double x) {
  double q = std::round(std::sqrt(x));
  if (q >= 1.0 && q * q == x) return q;
  return std::nullopt;
}

}  // namespace

HeckePair swapped(const HeckePair& p) {
  HeckePair q = p;
  std::swap(q.phi, q.psi);
  q.name = p.name + "*";
  return q;
}

Oriented orient(const HeckePair& p, const GSeriesParams& g) {
  if (g.side == GSide::G) return {p, {g.u, g.v, g.k, g.x, g.gamma, g.abscissa}};
  return {swapped(p), {g.v, g.u, g.k, g.x, g.gamma, g.abscissa}};
}

GSeriesResult g_series_direct(const HeckePair& p, const GSeriesParams& g, double tol) {
  if (!(g.x > 0.0)) fail(Errc::invalid_argument, "x must be positive");
  if (!p.has_fe) fail(Errc::invalid_argument, p.name + " has no functional equation");
  const Oriented o = orient(p, g);
  const HeckePair& q = o.pair;
  const RieszParams& r = o.params;
  require_hypotheses(q, r);

  const SeriesData& s = q.psi;
  const double delta = q.delta;
  const int k = r.k;
  const cplx d = delta - r.u, b = d + static_cast<double>(k + 1), c = delta, a = delta - r.u - r.v;
  const double z0 = 1.0 / (4.0 * kPi * kPi * r.x);

  std::size_t limit = g.n_max ? g.n_max : s.capacity();
  if (limit > s.capacity()) fail(Errc::capacity, "n_max exceeds the coefficient table");
  std::vector<cplx> ga = weighted_self_convolution_table(*s.table, s.freq, a, limit, s.twist);

  GSeriesResult res;
  res.route = GRoute::DirectMeijer;

  // The series uses the oscillatory part M_full = M_gamma + sum_{Re d + j > gamma} R_j;
  // summed over n, each R_j is a product of two psi values.
  ComplexSum crossed;
  for (int j = 0; j <= k; ++j) {
    double re = d.real() + j;
    if (std::abs(re - r.gamma) < 1e-12) fail(Errc::pole, "a Meijer pole lies on the line Re w = gamma");
    if (re < r.gamma) continue;
    cplx res_j = meijer_residue_right({b, c, d, z0}, j);
    crossed.add(res_j * evaluate(q, Side::Psi, d + static_cast<double>(j)) *
                evaluate(q, Side::Psi, r.v + static_cast<double>(j)));
  }
  res.crossed_residues = crossed.value();

  MeijerAsymptotic asym(b, c, d);
  const cplx nu = asym.nu();

  // With lambda_n = n^2/2 and x a square the phases e^{+-iw_n} are all 1, so the
  // expansion of M_full turns the tail into products of psi values.
  struct TailTerm {
    cplx coeff, s, full;
    ComplexSum partial;
  };
  std::vector<TailTerm> tail_terms;
  if (auto root = exact_root(r.x); root && s.freq.kind() == FreqKind::HalfSquares) {
    const std::vector<cplx>& fp = asym.coefficients(1);
    const std::vector<cplx>& fm = asym.coefficients(-1);
    const double base = 4.0 * kPi * *root;
    for (int j = 0; j < 12; ++j) {
      cplx e = nu - static_cast<double>(j);
      cplx sj = -e / 2.0;
      tail_terms.push_back({(fp[j] + fm[j]) * power(base, e), sj,
                            evaluate(q, Side::Psi, sj) * evaluate(q, Side::Psi, sj - a), {}});
    }
  }

  const cplx pre = power(2.0 * kPi, delta) * power(r.x, delta - r.u + static_cast<double>(k));
  ComplexSum sum;
  double meijer_err = 0.0;
  std::vector<cplx> history;
  history.reserve(limit);
  std::size_t checkpoint = 64;
  for (std::size_t n = 1; n <= limit; ++n) {
    double nu_n = s.freq.product(n);
    if (ga[n] != 0.0) {
      MeijerResult m = meijer_full({b, c, d, z0 / nu_n}, &asym, 1e-14);
      if (m.route == MeijerRoute::Asymptotic) ++res.asymptotic_terms;
      sum.add(ga[n] * m.value);
      meijer_err += std::abs(ga[n]) * m.error_estimate;
      double lg = std::log(nu_n);
      for (TailTerm& t : tail_terms) t.partial.add(ga[n] * std::exp(-t.s * lg));
    }
    cplx corr = 0.0;
    for (const TailTerm& t : tail_terms) corr += t.coeff * (t.full - t.partial.value());
    history.push_back(sum.value() + corr);

    if (n == checkpoint || n == limit) {
      cplx now = history.back();
      double spread = 0.0;
      for (std::size_t m = n / 2; m < n; ++m) spread = std::max(spread, std::abs(now - history[m - 1]));
      res.value = pre * (now - res.crossed_residues);
      res.tail_correction = pre * corr;
      res.n_max = n;
      res.tail_estimate = std::abs(pre) * (2.0 * spread + meijer_err);
      if (!g.n_max && res.tail_estimate <= tol * (g.scale > 0.0 ? g.scale : std::abs(res.value))) return res;
      checkpoint *= 2;
    }
  }
  if (!g.n_max && !(res.tail_estimate <= tol * (g.scale > 0.0 ? g.scale : std::abs(res.value))))
    fail(Errc::numeric, "G-series tail estimate " + num(res.tail_estimate) + " exceeds tol " + num(tol) +
                            " at n = " + std::to_string(limit));
  return res;
}

GSeriesResult g_series_via_riesz(const HeckePair& p, const GSeriesParams& g, double tol) {
  const Oriented o = orient(p, g);
  require_hypotheses(o.pair, o.params);
  GSeriesResult res;
  res.route = GRoute::RieszMinusContour;
  RieszResult rs = riesz_double_sum(o.pair, o.params, {RieszMode::Auto, g.n_max, tol});
  ContourResult pk = p_k_contour(o.pair, o.params);
  res.riesz = rs.value;
  res.contour = pk.value;
  res.value = rs.value - pk.value;
  res.n_max = rs.n_max;
  res.tail_estimate = rs.tail_estimate;
  return res;
}

GSeriesResult g_series(const HeckePair& p, const GSeriesParams& g, double tol) {
  return g.route == GRoute::DirectMeijer ? g_series_direct(p, g, tol) : g_series_via_riesz(p, g, tol);
}

// ---------------------------------------------------------------------------
// Derivatives

Derivative kth_derivative_at_1(const std::function<cplx(double)>& fn, int k, double h, double tol,
                               const std::function<bool(double)>& near_knot) {
  if (k < 0) fail(Errc::invalid_argument, "derivative order must be nonnegative");
  if (!(h > 0.0)) fail(Errc::invalid_argument, "step must be positive");
  auto points = [k](double step) {
    std::vector<double> xs;
    for (int i = 0; i <= k; ++i) xs.push_back(1.0 + (0.5 * k - i) * step);
    return xs;
  };
  // The centre (even k) cannot move; every other sample must clear the knots.
  auto clear = [&](double step) {
    if (!near_knot) return true;
    for (double s : {step, step / 2.0})
      for (double x : points(s))
        if (x != 1.0 && near_knot(x)) return false;
    return true;
  };
  double step = h;
  for (int attempt = 1; !clear(step); ++attempt) {
    if (attempt > 50) fail(Errc::numeric, "could not place the stencil away from knots");
    step = h * (1.0 + 1e-3 * attempt);
  }
  Derivative out;
  out.h = step;
  auto stencil = [&](double s) {
    ComplexSum acc;
    std::vector<double> xs = points(s);
    for (int i = 0; i <= k; ++i) {
      cplx f = fn(xs[i]);
      out.xs.push_back(xs[i]);
      out.fs.push_back(f);
      acc.add((i % 2 ? -1.0 : 1.0) * binomial(k, i) * f);
    }
    return acc.value() / std::pow(s, k);
  };
  cplx coarse = stencil(step);
  cplx fine = stencil(step / 2.0);
  out.value = (4.0 * fine - coarse) / 3.0;
  out.error_estimate = std::abs(out.value - fine);
  if (tol > 0.0 && !(out.error_estimate <= tol * std::max(std::abs(out.value), 1e-300)))
    fail(Errc::numeric, "finite-difference error estimate " + num(out.error_estimate) + " exceeds tol " +
                            num(tol) + " relative");
  return out;
}

bool near_knot(const HeckePair& p, double x, double eps) {
  for (std::size_t n = 1; n <= p.psi.capacity(); ++n) {
    std::size_t m = last_index_below(p.phi.freq, p.psi.freq, n, x * (1.0 + eps));
    if (m >= 1 && p.phi.freq(m) >= p.psi.freq(n) * x * (1.0 - eps)) return true;
  }
  return false;
}

Derivative g_series_derivative(const HeckePair& p, const GSeriesParams& g, double h, double tol) {
  GSeriesParams fixed = g;
  if (g.route == GRoute::DirectMeijer && !fixed.n_max) fixed.n_max = orient(p, g).pair.psi.capacity();
  auto fn = [&](double x) {
    GSeriesParams at = fixed;
    at.x = x;
    return g_series(p, at).value;
  };
  std::function<bool(double)> knots;
  if (g.route == GRoute::RieszMinusContour) knots = [&](double x) { return near_knot(p, x); };
  return kth_derivative_at_1(fn, g.k, h, tol, knots);
}

// ---------------------------------------------------------------------------
// Identities

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::Id1: return "id1";
    case Identity::Id2: return "id2";
    case Identity::Id3: return "id3";
    case Identity::Equality1: return "equality1";
    case Identity::Expresion1: return "expresion1";
    case Identity::Expression2: return "expression2";
    case Identity::S2: return "s2";
  }
  return "?";
}

std::vector<Identity> all_identities() {
  return {Identity::Id1,        Identity::Id2,         Identity::Id3, Identity::Equality1,
          Identity::Expresion1, Identity::Expression2, Identity::S2};
}

std::optional<Identity> identity_from_name(const std::string& s) {
  for (Identity id : all_identities())
    if (identity_name(id) == s) return id;
  return std::nullopt;
}

double default_tolerance(Identity id) {
  switch (id) {
    case Identity::Id1:
    case Identity::Expresion1:
    case Identity::Expression2: return 1e-3;
    default: return 1e-5;
  }
}

VerifyConfig default_config(const std::string& scenario) {
  VerifyConfig c;
  if (scenario == "zeta") {
    c.u = 1.2, c.v = 1.3, c.k = 1, c.gamma = 0.7, c.h = 0.1;
  } else if (scenario == "tau") {
    c.u = 7.0, c.v = 7.0, c.k = 3, c.gamma = 7.2, c.h = 0.05;
  } else if (scenario.rfind("sigma", 0) == 0) {
    HeckePair p = make_scenario(scenario);  // validates l
    double l = p.delta - 1.0;
    c.u = l + 1.6, c.v = l + 1.6, c.k = static_cast<int>(l) + 2, c.gamma = l + 1.2, c.h = 0.2;
  } else {
    fail(Errc::invalid_argument, "no default parameters for scenario '" + scenario + "'");
  }
  return c;
}

namespace {

GSeriesParams g_params(const VerifyConfig& c, GSide side, double x) {
  GSeriesParams g;
  g.side = side;
  g.u = c.u;
  g.v = c.v;
  g.k = c.k;
  g.x = x;
  g.gamma = c.gamma;
  g.abscissa = c.abscissa;
  return g;
}

struct Builder {
  VerificationReport& rep;
  void term(const std::string& n, cplx v) { rep.terms.push_back({n, v}); }
  void setting(const std::string& n, double v) { rep.settings.push_back({n, v}); }
};

// phi(u) psi(v) + enclosed pole terms + d^k G at x = 1 for one orientation.
cplx derivative_side(const Oriented& o, const VerifyConfig& c, const HeckePair& p, GSide side, Builder& b,
                     const std::string& tag) {
  RieszParams at1 = o.params;
  at1.x = 1.0;
  ResidueParts parts = p_k_residue_derivative(o.pair, at1);
  GSeriesParams g = g_params(c, side, 1.0);
  Derivative dg = g_series_derivative(p, g, c.h);
  b.term("phi(u)psi(v)" + tag, parts.polynomial);
  b.term("phi pole terms" + tag, parts.phi_poles);
  b.term("psi pole terms" + tag, parts.psi_poles);
  b.term("d^k G" + tag, dg.value);
  b.setting("h" + tag, dg.h);
  b.setting("fd error" + tag, dg.error_estimate);
  return parts.total() + dg.value;
}

}  // namespace

VerificationReport verify_identity(Identity id, const HeckePair& p, const VerifyConfig& c) {
  const RieszParams r{c.u, c.v, c.k, c.x, c.gamma, c.abscissa};
  require_hypotheses(p, r);
  if (!p.has_fe) fail(Errc::invalid_argument, p.name + " has no functional equation");
  auto t0 = std::chrono::steady_clock::now();

  VerificationReport rep;
  rep.identity = id;
  rep.scenario = p.name;
  rep.config = c;
  rep.tolerance = c.tol > 0.0 ? c.tol : default_tolerance(id);
  Builder b{rep};

  auto riesz_vs_series = [&](GSide side) {
    GSeriesParams g = g_params(c, side, c.x);
    Oriented o = orient(p, g);
    RieszResult rs = riesz_double_sum(o.pair, o.params, {RieszMode::Auto, 0, c.series_tol});
    ContourResult pk = p_k_contour(o.pair, o.params);
    g.scale = std::abs(rs.value);
    GSeriesResult gs = g_series_direct(p, g, 0.1 * rep.tolerance);
    rep.lhs = rs.value;
    rep.rhs = pk.value + gs.value;
    b.term("R_k", rs.value);
    b.term("P_k", pk.value);
    b.term(side == GSide::G ? "G_g" : "G_f", gs.value);
    b.setting("riesz n_max", static_cast<double>(rs.n_max));
    b.setting("G n_max", static_cast<double>(gs.n_max));
    b.setting("G tail estimate", gs.tail_estimate);
    b.setting("contour nodes", pk.nodes);
    b.setting("contour half height", pk.half_height);
  };

  switch (id) {
    case Identity::Id2: riesz_vs_series(GSide::G); break;
    case Identity::Id3: riesz_vs_series(GSide::F); break;
    case Identity::Equality1: {
      LineOptions lo;
      lo.tol = 0.1 * rep.tolerance;
      lo.max_half_height = 1024;  // beyond this a larger k is the cure
      LineResult line = perron_line_integral(p, r, lo);
      ContourResult pk = p_k_contour(p, r);
      GSeriesParams g = g_params(c, GSide::G, c.x);
      g.scale = std::abs(line.value);
      GSeriesResult gs = g_series_direct(p, g, 0.1 * rep.tolerance);
      rep.lhs = line.value;
      rep.rhs = pk.value + gs.value;
      b.term("line integral", line.value);
      b.term("P_k", pk.value);
      b.term("G_g", gs.value);
      b.setting("line abscissa", line.abscissa);
      b.setting("line half height", line.half_height);
      b.setting("line nodes", line.nodes);
      b.setting("line tail estimate", line.tail_estimate);
      b.setting("G n_max", static_cast<double>(gs.n_max));
      break;
    }
    case Identity::S2: {
      ContourResult s2 = s2_contour(p, r);
      rep.lhs = s2.value;
      rep.rhs = s2_residues(p, r);
      b.term("contour", s2.value);
      b.setting("contour nodes", s2.nodes);
      b.setting("left abscissa", s2.left_abscissa);
      b.setting("right abscissa", s2.right_abscissa);
      b.setting("half height", s2.half_height);
      break;
    }
    case Identity::Expresion1:
    case Identity::Expression2: {
      GSide side = id == Identity::Expresion1 ? GSide::G : GSide::F;
      Oriented o = orient(p, g_params(c, side, 1.0));
      // Two digits below the identity tolerance; tight enough, and reachable for tau.
      RieszResult pds = prime_double_sum(o.pair, o.params.u, o.params.v, {RieszMode::Auto, 0, 0.01 * rep.tolerance});
      rep.lhs = pds.value;
      b.term("prime double sum", pds.value);
      b.setting("prime sum n_max", static_cast<double>(pds.n_max));
      rep.rhs = derivative_side(o, c, p, side, b, "");
      break;
    }
    case Identity::Id1: {
      // Expresion1 + Expression2, with the two prime double sums adding up to phi(u) psi(v).
      Oriented og = orient(p, g_params(c, GSide::G, 1.0));
      Oriented of = orient(p, g_params(c, GSide::F, 1.0));
      cplx g_side = derivative_side(og, c, p, GSide::G, b, " [G]");
      cplx f_side = derivative_side(of, c, p, GSide::F, b, " [F]");
      cplx phipsi = evaluate(p, Side::Phi, c.u) * evaluate(p, Side::Psi, c.v);
      // g_side + f_side = 2 phi psi + (pole and derivative terms)
      rep.lhs = phipsi;
      rep.rhs = -(g_side + f_side - 2.0 * phipsi);
      break;
    }
  }
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  double scale = std::abs(rep.lhs) > 0.0 ? std::abs(rep.lhs) : std::abs(rep.rhs);
  rep.rel_residual = scale > 0.0 ? rep.abs_residual / scale : rep.abs_residual;
  rep.pass = std::isfinite(rep.rel_residual) && rep.rel_residual <= rep.tolerance;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace hecke
