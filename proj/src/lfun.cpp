#include "lfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "error.hpp"
#include "quad.hpp"
#include "special.hpp"

namespace hecke {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// B_2j / (2j)!, j = 1..12
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
};

double zeta_em(double s) {
  const int n = 24;
  NeumaierSum acc;
  for (int m = 1; m < n; ++m) acc.add(std::pow(static_cast<double>(m), -s));
  double big = static_cast<double>(n);
  acc.add(std::pow(big, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(big, -s));
  // rising factorial s (s+1) ... (s+2j-2) times N^{-s-2j+1}
  double rising = s, power = std::pow(big, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    acc.add(kBernoulliOverFactorial[j] * rising * power);
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= big * big;
  }
  return acc.value();
}

bool is_integer(double x) { return std::floor(x) == x; }

}  // namespace

double zeta_real(double s) {
  if (s == 1.0) fail(Errc::pole, "zeta has a pole at s = 1");
  if (s >= 0.5) return zeta_em(s);
  if (s == 0.0) return -0.5;
  if (is_integer(s) && std::fmod(-s, 2.0) == 0.0) return 0.0;
  double t = 1.0 - s;
  return 2.0 * std::pow(kTwoPi, -t) * std::cos(kPi * t / 2.0) * std::tgamma(t) * zeta_em(t);
}

void HeckePair::validate() const {
  if (!(delta > 0.0)) fail(Errc::invalid_argument, name + ": delta must be positive");
  for (const SeriesData* d : {&phi, &psi}) {
    if (!d->table) fail(Errc::invalid_argument, name + ": missing coefficient table");
    if (d->twist != 1.0 && d->twist != -1.0) fail(Errc::invalid_argument, name + ": twist must be +-1");
    if (!d->poles.empty() && d->sigma_a > delta)
      fail(Errc::hypothesis, name + ": poles present but sigma_a > delta");
  }
}

HeckePair make_tau_pair(std::size_t capacity) {
  HeckePair p;
  p.name = "tau";
  p.delta = 12.0;
  auto t = std::make_shared<const CoefficientTable>(CoefficientTable::ramanujan_tau(capacity));
  // |tau(n)| <= d(n) n^{11/2} <= 2 n^6
  p.phi = SeriesData{t, Frequency(FreqKind::Integers), 1.0, 6.5, {}, 2.0, 6.0};
  p.psi = p.phi;
  p.validate();
  return p;
}

HeckePair make_zeta_pair(std::size_t capacity) {
  HeckePair p;
  p.name = "zeta";
  p.delta = 0.5;
  auto t = std::make_shared<const CoefficientTable>(CoefficientTable::unit(capacity));
  // 2^s zeta(2s) = 2^{1/2} / (2 (s - 1/2)) + O(1)
  p.phi = SeriesData{t, Frequency(FreqKind::HalfSquares), 1.0, 0.5, {{0.5, std::sqrt(2.0) / 2.0}},
                     1.0, 0.0};
  p.psi = p.phi;
  p.validate();
  return p;
}

HeckePair make_sigma_pair(int l, std::size_t capacity) {
  if (l < 3 || l % 2 == 0) fail(Errc::invalid_argument, "sigma_l needs odd l >= 3");
  HeckePair p;
  p.name = "sigma" + std::to_string(l);
  p.delta = l + 1.0;
  auto t = std::make_shared<const CoefficientTable>(CoefficientTable::sigma(capacity, l));
  double twist = ((l + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  std::vector<Pole> poles = {{1.0, zeta_real(1.0 - l)}, {l + 1.0, zeta_real(l + 1.0)}};
  // sigma_l(n) <= zeta(l) n^l <= n^{l+1}
  p.phi = SeriesData{t, Frequency(FreqKind::Integers), 1.0, l + 1.0, poles, 1.0, l + 1.0};
  p.psi = p.phi;
  p.psi.twist = twist;
  for (Pole& q : p.psi.poles) q.residue *= twist;
  p.validate();
  return p;
}

HeckePair make_unit_fixture(std::size_t capacity) {
  HeckePair p;
  p.name = "unit";
  p.delta = 1.0;
  p.has_fe = false;
  auto t = std::make_shared<const CoefficientTable>(CoefficientTable::unit(capacity));
  p.phi = SeriesData{t, Frequency(FreqKind::Integers), 1.0, 1.0, {{1.0, 1.0}}, 1.0, 0.0};
  p.psi = p.phi;
  p.validate();
  return p;
}

std::vector<std::string> scenario_names() { return {"tau", "zeta", "sigma3", "sigma5", "sigma7"}; }

HeckePair make_scenario(const std::string& name) {
  if (name == "tau") return make_tau_pair();
  if (name == "zeta") return make_zeta_pair();
  if (name == "unit") return make_unit_fixture();
  if (name.rfind("sigma", 0) == 0 && name.size() > 5) {
    std::size_t used = 0;
    int l = 0;
    try {
      l = std::stoi(name.substr(5), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == name.size() - 5 && l >= 3 && l % 2 == 1) return make_sigma_pair(l);
  }
  fail(Errc::invalid_argument, "unknown scenario '" + name + "'");
}

// ---------------------------------------------------------------------------
// Direct summation

namespace {

double lambda_exponent(const Frequency& f) { return f.kind() == FreqKind::Integers ? 1.0 : 2.0; }

// Smallest N whose integral-comparison tail bound is below abs_tol, or 0 if
// the growth bound is too weak at this abscissa.
std::size_t terms_for_tail(const SeriesData& d, double sigma, double abs_tol, double* bound) {
  double pe = lambda_exponent(d.freq);
  double decay = pe * sigma - d.growth_e - 1.0;
  if (decay <= 0.0) return 0;
  // sum_{n > N} C n^e (n^pe / den)^{-sigma} <= C den^sigma N^{-decay} / decay
  double c = d.growth_c * std::pow(d.freq.den(), sigma) / decay;
  double n = std::pow(c / abs_tol, 1.0 / decay);
  if (!(n < 1e9)) return std::numeric_limits<std::size_t>::max();
  std::size_t big = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n)));
  *bound = c * std::pow(static_cast<double>(big), -decay);
  return big;
}

double first_term_scale(const SeriesData& d, double sigma) {
  return std::fabs(d.coeff(1)) * std::exp(-sigma * d.freq.log(1));
}

}  // namespace

AbsResult evaluate_abs(const HeckePair& p, Side side, cplx s, double tol, double margin) {
  const SeriesData& d = p.side(side);
  if (!(s.real() >= d.sigma_a + margin))
    fail(Errc::hypothesis, "direct sum needs Re s >= sigma_a + margin (Re s = " + num(s.real()) +
                               ", sigma_a = " + num(d.sigma_a) + ")");
  double abs_tol = tol * std::max(1e-300, first_term_scale(d, s.real()));
  double bound = 0.0;
  std::size_t n = terms_for_tail(d, s.real(), abs_tol, &bound);
  if (n == 0) fail(Errc::numeric, "growth bound too weak to certify the tail at Re s = " + num(s.real()));
  if (n > d.capacity())
    fail(Errc::capacity, "direct sum to tol " + num(tol) + " needs more than the " +
                             std::to_string(d.capacity()) + " stored coefficients");
  ComplexSum acc;
  for (std::size_t m = 1; m <= n; ++m) acc.add(d.coeff(m) * std::exp(-s * d.freq.log(m)));
  return {acc.value(), n, bound};
}

// ---------------------------------------------------------------------------
// Theta-splitting continuation
//
// With Theta(y) = sum c(n) exp(-2 pi lambda_n y) and y0 = A e^{i theta},
//   Lambda_self(s) = int_{y0}^{inf e^{i theta}} Theta_self(y) y^{s-1} dy
//                  + int_{1/y0}^{inf e^{-i theta}} Theta_partner(w) w^{delta-s-1} dw
//                  + sum_rho a_rho y0^{s-rho} / (s - rho).
// theta = 0 turns both integrals into incomplete gamma sums. For large |Im s|
// the rays are turned towards the imaginary axis so that the integrands are
// no longer exponentially larger than Lambda itself.

namespace {

constexpr double kRotation = 6.0;  // digits lost ~ kRotation * 1.25 / ln 10
constexpr double kSmallT = 4.0;    // above 2 kRotation / pi
constexpr double kBinRatio = 1.25;

struct Polar {
  double rho;
  double a;
};

std::vector<Polar> polar_terms(const HeckePair& p, Side side) {
  const SeriesData& self = p.side(side);
  const SeriesData& partner = p.side(other(side));
  std::vector<Polar> out;
  auto add = [&out](double rho, double a) {
    if (a == 0.0) return;
    for (Polar& q : out)
      if (std::fabs(q.rho - rho) < 1e-12) {
        if (std::fabs(q.a - a) > 1e-10 * std::fabs(a))
          fail(Errc::invalid_argument, "inconsistent residue data at " + num(rho));
        return;
      }
    out.push_back({rho, a});
  };
  for (const Pole& q : self.poles) {
    if (!(q.location > 0.0)) fail(Errc::invalid_argument, "pole locations must be positive");
    add(q.location, std::pow(kTwoPi, -q.location) * std::tgamma(q.location) * q.residue);
  }
  for (const Pole& q : partner.poles) {
    if (!(q.location > 0.0)) fail(Errc::invalid_argument, "pole locations must be positive");
    add(p.delta - q.location, -std::pow(kTwoPi, -q.location) * std::tgamma(q.location) * q.residue);
  }
  return out;
}

void check_exclusion(const std::vector<Polar>& polar, cplx s, double radius) {
  for (const Polar& q : polar)
    if (std::abs(s - q.rho) < radius)
      fail(Errc::pole, "s = " + num(s) + " is within the exclusion radius of the pole at " + num(q.rho));
}

// sum_n c(n) (2 pi lambda_n)^{-s} Gamma(s, 2 pi lambda_n a)
cplx incgamma_sum(const SeriesData& d, cplx s, double a) {
  ComplexSum acc;
  double scale = 0.0;
  double need = 2.0 * std::abs(s - 1.0) + 10.0;
  for (std::size_t n = 1;; ++n) {
    if (n > d.capacity()) fail(Errc::capacity, "coefficient table too short for the continuation");
    double lam = d.freq(n);
    double x = kTwoPi * lam * a;
    cplx term = d.coeff(n) * std::exp(-s * std::log(kTwoPi * lam)) * upper_incomplete_gamma(s, x);
    acc.add(term);
    scale = std::max(scale, std::abs(term));
    if (x >= need) {
      // |Gamma(s, x)| <= 2 x^{sigma-1} e^{-x} once x >= 2 |s - 1|
      double bound = 2.0 * d.growth_c * std::pow(static_cast<double>(n), d.growth_e) *
                     std::pow(a, s.real() - 1.0) * std::exp(-x) / (kTwoPi * lam);
      if (bound < 1e-18 * std::max(scale, std::abs(acc.value()))) break;
    }
  }
  return acc.value();
}

struct ThetaGrid {
  std::vector<cplx> log_z;
  std::vector<cplx> weight;
};

// Nodes along z = a e^{i theta} e^v, v >= 0, with weight w_i Theta(z_i), so
// that int Theta(z) z^{s} dv ~ sum weight_i exp(s log_z_i) for Re s <= cap.
ThetaGrid build_grid(const SeriesData& d, double theta, double a, double t_hi, double cap) {
  double cs = std::cos(theta), tn = std::tan(std::fabs(theta));
  double lam1 = d.freq(1);
  double kappa = kTwoPi * lam1 * a * cs;
  const double margin = 50.0;
  auto profile = [&](double v) { return -kappa * std::exp(v) + cap * v; };
  double v_peak = std::max(0.0, std::log(cap / kappa));
  double peak = profile(v_peak);
  double v_max = v_peak + 0.5;
  while (profile(v_max) > peak - margin) v_max += 0.05;

  // Largest index alive at v = 0 bounds the phase rate of Theta.
  double growth_at = std::log(d.growth_c);
  std::size_t n_cut = 1;
  while (kTwoPi * d.freq(n_cut) * a * cs < margin + growth_at + d.growth_e * std::log(n_cut)) ++n_cut;
  double g = growth_at + d.growth_e * std::log(static_cast<double>(n_cut));
  double omega = t_hi + (margin + g) * (tn + 1.0) + cap + 2.0;
  double h = std::min(0.25, 10.0 / omega);
  int panels = static_cast<int>(std::ceil(v_max / h));
  h = v_max / panels;

  const GaussRule& rule = gauss_rule(20);
  ThetaGrid grid;
  grid.log_z.reserve(panels * rule.x.size());
  grid.weight.reserve(panels * rule.x.size());
  cplx rot = std::exp(cplx(0.0, theta));
  double log_a = std::log(a);
  for (int pi = 0; pi < panels; ++pi) {
    double mid = (pi + 0.5) * h;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      double v = mid + 0.5 * h * rule.x[q];
      double r = a * std::exp(v);
      cplx z = r * rot;
      double rez = r * cs;
      ComplexSum th;
      for (std::size_t n = 1;; ++n) {
        if (n > d.capacity()) fail(Errc::capacity, "coefficient table too short for theta");
        double e = kTwoPi * d.freq(n);
        if (e * rez > margin + growth_at + d.growth_e * std::log(static_cast<double>(n))) break;
        th.add(d.coeff(n) * std::exp(-e * z));
      }
      grid.log_z.push_back(cplx(log_a + v, theta));
      grid.weight.push_back(0.5 * h * rule.w[q] * th.value());
    }
  }
  return grid;
}

struct GridKey {
  const CoefficientTable* table;
  double twist;
  int freq;
  double theta;
  double a;
  double cap;
  bool operator<(const GridKey& o) const {
    return std::tie(table, twist, freq, theta, a, cap) <
           std::tie(o.table, o.twist, o.freq, o.theta, o.a, o.cap);
  }
};

struct GridCache {
  std::mutex mu;
  std::map<GridKey, std::shared_ptr<const ThetaGrid>> grids;
  // Grids hold raw table pointers; keep the tables alive.
  std::vector<std::shared_ptr<const CoefficientTable>> owners;
};

GridCache& cache() {
  static GridCache c;
  return c;
}

std::shared_ptr<const ThetaGrid> grid_for(const SeriesData& d, double theta, double a, double t_hi,
                                          double cap) {
  // theta determines t_hi, so it need not be part of the key.
  GridKey key{d.table.get(), d.twist, static_cast<int>(d.freq.kind()), theta, a, cap};
  GridCache& c = cache();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.grids.find(key);
    if (it != c.grids.end()) return it->second;
  }
  auto g = std::make_shared<const ThetaGrid>(build_grid(d, theta, a, t_hi, cap));
  std::lock_guard<std::mutex> lock(c.mu);
  c.owners.push_back(d.table);
  return c.grids.emplace(key, g).first->second;
}

cplx grid_sum(const ThetaGrid& g, cplx s, double shift) {
  ComplexSum acc;
  for (std::size_t i = 0; i < g.log_z.size(); ++i) acc.add(g.weight[i] * std::exp(s * g.log_z[i] + shift));
  return acc.value();
}

// Lambda for Im s >= 0 on the rotated rays, scaled by exp(theta t).
Completed rotated(const HeckePair& p, Side side, cplx s, double a, const std::vector<Polar>& polar) {
  double t = s.imag();
  int bin = -1;
  double theta = 0.0, t_hi = kSmallT;
  if (t >= kSmallT) {
    bin = static_cast<int>(std::floor(std::log(t / kSmallT) / std::log(kBinRatio)));
    double t_lo = kSmallT * std::pow(kBinRatio, bin);
    t_hi = t_lo * kBinRatio;
    theta = kPi / 2.0 - kRotation / t_lo;
  }
  double need = std::max({s.real(), p.delta - s.real(), p.delta + 12.0});
  double cap = 8.0 * std::ceil(need / 8.0);
  const SeriesData& self = p.side(side);
  const SeriesData& partner = p.side(other(side));
  auto g1 = grid_for(self, theta, a, t_hi, cap);
  auto g2 = grid_for(partner, -theta, 1.0 / a, t_hi, cap);
  double shift = theta * t;
  cplx val = grid_sum(*g1, s, shift) + grid_sum(*g2, p.delta - s, shift);
  cplx log_y0(std::log(a), theta);
  for (const Polar& q : polar) val += q.a * std::exp((s - q.rho) * log_y0 + shift) / (s - q.rho);
  return {val, -shift};
}

}  // namespace

Completed completed(const HeckePair& p, Side side, cplx s, const ContinuationOptions& o) {
  if (!p.has_fe) fail(Errc::hypothesis, p.name + " has no functional equation to continue with");
  if (!(o.split > 0.0)) fail(Errc::invalid_argument, "split point must be positive");
  auto polar = polar_terms(p, side);
  check_exclusion(polar, s, o.exclusion);
  bool small = std::fabs(s.imag()) < kSmallT;
  bool use_incgamma = o.method == ContinuationMethod::IncompleteGamma ||
                      (o.method == ContinuationMethod::Auto && small);
  if (use_incgamma) {
    cplx val = incgamma_sum(p.side(side), s, o.split) +
               incgamma_sum(p.side(other(side)), p.delta - s, 1.0 / o.split);
    for (const Polar& q : polar) val += q.a * std::pow(o.split, s - q.rho) / (s - q.rho);
    return {val, 0.0};
  }
  // Real coefficients: Lambda(conj s) = conj Lambda(s).
  if (s.imag() < 0.0) {
    Completed c = rotated(p, side, std::conj(s), o.split, polar);
    return {std::conj(c.value), c.log_scale};
  }
  return rotated(p, side, s, o.split, polar);
}

cplx evaluate_continued(const HeckePair& p, Side side, cplx s, const ContinuationOptions& o) {
  Completed c = completed(p, side, s, o);
  if (std::fabs(s.imag()) < 300.0) return c.unscaled() * std::exp(s * std::log(kTwoPi)) * rgamma(s);
  return c.value * std::exp(c.log_scale + s * std::log(kTwoPi) - log_gamma(s));
}

cplx evaluate(const HeckePair& p, Side side, cplx s, double tol) {
  const SeriesData& d = p.side(side);
  if (!p.has_fe) return evaluate_abs(p, side, s, tol).value;
  if (s.real() >= d.sigma_a + 1e-3) {
    double bound = 0.0;
    std::size_t n = terms_for_tail(d, s.real(), tol * first_term_scale(d, s.real()), &bound);
    if (n > 0 && n <= std::min<std::size_t>(d.capacity(), 4000)) return evaluate_abs(p, side, s, tol).value;
  }
  return evaluate_continued(p, side, s);
}

double functional_equation_residual(const HeckePair& p, cplx s) {
  ContinuationOptions left, right;
  right.split = 1.25;
  cplx a = completed(p, Side::Phi, s, left).unscaled();
  cplx b = completed(p, Side::Psi, p.delta - s, right).unscaled();
  return std::abs(a - b) / (1.0 + std::abs(a));
}

ResidueTerms residue_correction_terms(const HeckePair& p, cplx u, cplx v, double tol) {
  ResidueTerms out{0.0, 0.0};
  for (const Pole& q : p.psi.poles) {
    if (q.residue == 0.0) continue;
    if (std::abs(q.location - v) < 1e-12) fail(Errc::pole, "v coincides with a pole of psi");
    out.psi_poles -= q.residue / (q.location - v) * evaluate(p, Side::Phi, u + v - q.location, tol);
  }
  for (const Pole& q : p.phi.poles) {
    if (q.residue == 0.0) continue;
    if (std::abs(q.location - u) < 1e-12) fail(Errc::pole, "u coincides with a pole of phi");
    out.phi_poles -= q.residue / (q.location - u) * evaluate(p, Side::Psi, u + v - q.location, tol);
  }
  return out;
}

}  // namespace hecke
