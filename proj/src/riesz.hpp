#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfun.hpp"

namespace hecke {

struct RieszParams {
  cplx u, v;
  int k = 0;
  double x = 1.0;
  double gamma = 0.0;
  // Perron line; defaults to gamma when that lies in the admissible window.
  std::optional<double> abscissa;
};

struct Violation {
  std::string inequality;  // e.g. "k > 2γ − δ"
  std::string detail;      // the numbers involved
};

// Every hypothesis of the product formula that (u, v, k, gamma) violate.
std::vector<Violation> check_hypotheses(const HeckePair& p, cplx u, cplx v, int k, double gamma);
// Throws Errc::hypothesis naming all violated inequalities.
void require_hypotheses(const HeckePair& p, const RieszParams& r);

// Absolute convergence of the double Dirichlet series on Re z = c needs
// Re u < c < Re(u + v) - sigma_a(psi).
double perron_abscissa(const HeckePair& p, const RieszParams& r);

enum class RieszMode { Auto, Accelerated, Plain };

struct RieszOptions {
  RieszMode mode = RieszMode::Auto;
  std::size_t n_max = 0;  // 0: grow until the tail estimate meets tol
  double tol = 1e-11;     // relative
};

struct RieszResult {
  cplx value;
  cplx main_terms;  // closed-form part (accelerated mode)
  std::size_t n_max = 0;
  double tail_estimate = 0.0;  // NaN when not estimated
  RieszMode mode = RieszMode::Accelerated;
};

// (1/k!) sum_n g(n) mu_n^{-v-k} sum'_{lambda_m <= mu_n x} f(m) lambda_m^{-u} (mu_n x - lambda_m)^k,
// the prime halving the tie term when k = 0.
RieszResult riesz_double_sum(const HeckePair& p, const RieszParams& r, const RieszOptions& o = {});

// sum_n g(n) mu_n^{-v} sum'_{lambda_m <= mu_n} f(m) lambda_m^{-u}
RieszResult prime_double_sum(const HeckePair& p, cplx u, cplx v, const RieszOptions& o = {});

struct LineOptions {
  double half_height = 0.0;  // 0: grow until the tail estimate meets tol
  double tol = 1e-10;        // relative
  double max_half_height = 5000.0;
  double panel = 1.0;
};

struct LineResult {
  cplx value;
  double abscissa = 0.0;
  double half_height = 0.0;
  int nodes = 0;
  double tail_estimate = 0.0;
  // Pairs with lambda_m = mu_n x give a non-oscillating part
  // tie * Gamma(z-u)/Gamma(z-u+k+1) x^k whose tail beyond T is added in closed form.
  cplx tie = 0.0;
  cplx tie_tail = 0.0;
};

// (1/2 pi i) int_{c - i inf}^{c + i inf} Gamma(z-u)/Gamma(z-u+k+1) phi(z) psi(v+u-z) x^{z-u+k} dz
LineResult perron_line_integral(const HeckePair& p, const RieszParams& r, const LineOptions& o = {});

struct RectangleOptions {
  double half_height = 0.0;  // 0: |Im u| + 3
  double max_panel = 0.5;
};

struct ContourResult {
  cplx value;  // counterclockwise total
  cplx right, left, top, bottom;  // (1/2 pi i) times the oriented side integrals
  double left_abscissa = 0.0, right_abscissa = 0.0, half_height = 0.0;
  int nodes = 0;
};

// P_k(x) on the rectangle from Re z = delta - gamma to the Perron line.
ContourResult p_k_contour(const HeckePair& p, const RieszParams& r, const RectangleOptions& o = {});
// Sum of the residues P_k encloses, in closed form.
cplx p_k_residues(const HeckePair& p, const RieszParams& r);

// The same residues split by origin: z = u - j, poles of phi, and the points
// z = u + v - q where psi(v + u - z) has a pole.
struct ResidueParts {
  cplx polynomial, phi_poles, psi_poles;
  cplx total() const { return polynomial + phi_poles + psi_poles; }
};
ResidueParts p_k_residue_parts(const HeckePair& p, const RieszParams& r);
// d^k/dx^k of those residues at x = r.x; the polynomial part reduces to phi(u) psi(v).
ResidueParts p_k_residue_derivative(const HeckePair& p, const RieszParams& r);

// (1/2 pi i) on the same rectangle of phi(z) psi(v+u-z) / (z-u); refuses to run
// unless u lies inside.
ContourResult s2_contour(const HeckePair& p, const RieszParams& r, const RectangleOptions& o = {});
// phi(u) psi(v) + sum r_phi / (p_phi - u) psi(v + u - p_phi) over enclosed poles.
cplx s2_residues(const HeckePair& p, const RieszParams& r);

}  // namespace hecke
