#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riesz.hpp"

namespace hecke {

// G_{g,k}(u, v, x) belongs to the pair as given; G_{f,k}(v, u, x) is the same
// object for the pair with phi and psi exchanged and (u, v) swapped.
enum class GSide { F, G };
enum class GRoute { DirectMeijer, RieszMinusContour };

struct GSeriesParams {
  GSide side = GSide::G;
  cplx u, v;  // as in the theorem; side F swaps them internally
  int k = 1;
  double x = 1.0;
  double gamma = 0.0;
  std::size_t n_max = 0;  // 0: grow until the tail estimate meets tol
  double scale = 0.0;     // tol is relative to this when positive, else to |value|
  GRoute route = GRoute::DirectMeijer;
  std::optional<double> abscissa;  // Perron line for the Riesz route
};

struct GSeriesResult {
  cplx value;
  GRoute route = GRoute::DirectMeijer;
  // direct route
  std::size_t n_max = 0;
  double tail_estimate = 0.0;
  cplx tail_correction = 0.0;  // closed-form tail, when the phases are trivial
  cplx crossed_residues = 0.0;  // residues at d + j > gamma removed in closed form
  int asymptotic_terms = 0;     // Meijer values taken from the large-argument expansion
  // Riesz route
  cplx riesz = 0.0, contour = 0.0;
};

HeckePair swapped(const HeckePair& p);

// The pair and parameters a side-F request is really computed with.
struct Oriented {
  HeckePair pair;
  RieszParams params;
};
Oriented orient(const HeckePair& p, const GSeriesParams& g);

// (2 pi)^delta x^{delta-u+k} sum_n g_a(n) M_gamma(1 / (4 pi^2 nu_n x)), a = delta - u - v,
// with nu_n the frequency attached to the convolution index n.
GSeriesResult g_series_direct(const HeckePair& p, const GSeriesParams& g, double tol = 1e-11);
// R_k(x) - P_k(x).
GSeriesResult g_series_via_riesz(const HeckePair& p, const GSeriesParams& g, double tol = 1e-11);
GSeriesResult g_series(const HeckePair& p, const GSeriesParams& g, double tol = 1e-11);

struct Derivative {
  cplx value;
  double error_estimate = 0.0;  // |extrapolated - finer stencil|
  double h = 0.0;               // step actually used
  std::vector<double> xs;       // sample points, in evaluation order
  std::vector<cplx> fs;
};

// k-th derivative at x = 1 from central differences with steps h and h/2 and one
// Richardson step. `near_knot` lets the caller veto sample points; h is then
// perturbed. Throws Errc::numeric when the estimate exceeds tol (if tol > 0).
Derivative kth_derivative_at_1(const std::function<cplx(double)>& fn, int k, double h, double tol = 0.0,
                               const std::function<bool(double)>& near_knot = {});

// True when lambda_m = mu_n x within eps for some m, n of the pair's tables.
bool near_knot(const HeckePair& p, double x, double eps = 1e-12);

// d^k/dx^k G at x = 1, differentiating the assembled series (never termwise).
// The direct route keeps one truncation for every sample (n_max, or the whole
// table) so the stencil sees a single smooth function.
Derivative g_series_derivative(const HeckePair& p, const GSeriesParams& g, double h, double tol = 0.0);

// ---------------------------------------------------------------------------
// Identity checks

enum class Identity { Id1, Id2, Id3, Equality1, Expresion1, Expression2, S2 };
std::string identity_name(Identity id);
std::optional<Identity> identity_from_name(const std::string& s);
std::vector<Identity> all_identities();
// Id2, Id3, Equality1, S2: 1e-5; the derivative identities: 1e-3.
double default_tolerance(Identity id);

struct VerifyConfig {
  cplx u, v;
  int k = 1;
  double x = 1.0;
  double gamma = 0.0;
  std::optional<double> abscissa;
  double h = 0.01;  // finite-difference step
  double tol = 0.0;    // 0: default_tolerance
  double series_tol = 1e-11;  // Riesz double sums
};

struct Term {
  std::string name;
  cplx value;
};

struct Setting {
  std::string name;
  double value;
};

struct VerificationReport {
  Identity identity = Identity::Id2;
  std::string scenario;
  VerifyConfig config;
  cplx lhs, rhs;
  double abs_residual = 0.0, rel_residual = 0.0, tolerance = 0.0;
  std::vector<Term> terms;
  std::vector<Setting> settings;
  double seconds = 0.0;
  bool pass = false;
};

// Runs the hypothesis gate first; sub-evaluation failures propagate as Failure.
VerificationReport verify_identity(Identity id, const HeckePair& p, const VerifyConfig& c);

// Per-scenario defaults for (u, v, k, gamma, h).
VerifyConfig default_config(const std::string& scenario);

}  // namespace hecke
