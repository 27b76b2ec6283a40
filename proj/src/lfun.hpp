#pragma once

#include <memory>
#include <string>
#include <vector>

#include "arith.hpp"

namespace hecke {

struct Pole {
  double location;
  double residue;
};

// One side of a pair: sum_n twist * c(n) / lambda_n^s.
struct SeriesData {
  std::shared_ptr<const CoefficientTable> table;
  Frequency freq{FreqKind::Integers};
  double twist = 1.0;
  double sigma_a = 1.0;
  std::vector<Pole> poles;
  // |c(n)| <= growth_c * n^growth_e, only used to size truncations.
  double growth_c = 1.0;
  double growth_e = 0.0;

  double coeff(std::size_t n) const { return twist * (*table)[n]; }
  std::size_t capacity() const { return table->capacity(); }
};

enum class Side { Phi, Psi };
inline Side other(Side s) { return s == Side::Phi ? Side::Psi : Side::Phi; }

struct HeckePair {
  std::string name;
  double delta = 1.0;
  SeriesData phi, psi;
  // Fixtures without a functional equation can only be summed directly.
  bool has_fe = true;

  const SeriesData& side(Side s) const { return s == Side::Phi ? phi : psi; }
  void validate() const;
};

HeckePair make_tau_pair(std::size_t capacity = 20000);
HeckePair make_zeta_pair(std::size_t capacity = 20000);
HeckePair make_sigma_pair(int l, std::size_t capacity = 20000);
// f = 1, lambda_n = n, no functional equation: a brute-force fixture.
HeckePair make_unit_fixture(std::size_t capacity = 20000);

std::vector<std::string> scenario_names();
// "tau", "zeta", "sigma3", "sigma5", ... ; throws invalid_argument otherwise.
HeckePair make_scenario(const std::string& name);

// Riemann zeta for real s != 1 by Euler-Maclaurin (reflected for s < 1/2).
double zeta_real(double s);

struct AbsResult {
  cplx value;
  std::size_t terms = 0;
  double tail_bound = 0.0;
};

// Truncated Dirichlet sum; needs Re s >= sigma_a + margin.
AbsResult evaluate_abs(const HeckePair& p, Side side, cplx s, double tol = 1e-15,
                       double margin = 1e-3);

enum class ContinuationMethod { Auto, IncompleteGamma, RotatedTheta };

struct ContinuationOptions {
  double split = 1.0;       // theta split point A
  double exclusion = 1e-3;  // pole exclusion radius
  ContinuationMethod method = ContinuationMethod::Auto;
};

// Completed function Lambda(s) = (2 pi)^{-s} Gamma(s) phi(s), returned as
// value * exp(log_scale) so that large |Im s| neither overflows nor underflows.
struct Completed {
  cplx value;
  double log_scale = 0.0;
  cplx unscaled() const { return value * std::exp(log_scale); }
};

Completed completed(const HeckePair& p, Side side, cplx s, const ContinuationOptions& o = {});

// phi(s) (or psi(s)) through the theta-splitting continuation.
cplx evaluate_continued(const HeckePair& p, Side side, cplx s, const ContinuationOptions& o = {});

// Direct sum when it is cheap and certifiable to tol, continuation otherwise.
cplx evaluate(const HeckePair& p, Side side, cplx s, double tol = 1e-14);

// |Lambda_phi(s) - Lambda_psi(delta - s)| / (1 + |Lambda_phi(s)|), the two
// sides computed with different split points.
double functional_equation_residual(const HeckePair& p, cplx s);

struct ResidueTerms {
  cplx psi_poles;  // -sum r_psi / (p_psi - v) phi(u + v - p_psi)
  cplx phi_poles;  // -sum r_phi / (p_phi - u) psi(u + v - p_phi)
  cplx total() const { return psi_poles + phi_poles; }
};

ResidueTerms residue_correction_terms(const HeckePair& p, cplx u, cplx v, double tol = 1e-14);

}  // namespace hecke
