#pragma once

#include <optional>
#include <vector>

#include "sum.hpp"

namespace hecke {

// Principal branch of log Gamma. Throws Errc::pole at 0, -1, -2, ...
cplx log_gamma(cplx s);
cplx cgamma(cplx s);
// 1/Gamma(s): entire, exactly zero at the poles of Gamma.
cplx rgamma(cplx s);
// Gamma(a)/Gamma(b) through log Gamma; b may sit on a pole (result 0).
cplx gamma_ratio(cplx a, cplx b);

// Gamma(s, x) for real x > 0.
cplx upper_incomplete_gamma(cplx s, double x);
// The two branches, exposed so the splice can be tested.
cplx upper_incomplete_gamma_series(cplx s, double x);
cplx upper_incomplete_gamma_cf(cplx s, double x);

struct HypResult {
  cplx value;
  double severity = 1.0;       // largest partial term over |result|
  double log2_severity = 0.0;  // same, in bits; finite even when severity overflows
  int terms = 0;
  long bits = 53;
};

// 1F2(d; b, c; w) in double precision with compensated summation.
HypResult hyp_1f2(cplx d, cplx b, cplx c, cplx w);
// Same series carried out in MPFR with the given working precision.
HypResult hyp_1f2_mp(cplx d, cplx b, cplx c, cplx w, long bits);

// G^{1,1}_{3,1}( 1, b, c ; d | z ).
struct MeijerParams {
  cplx b, c, d, z;
  void validate() const;
};

enum class MeijerRoute { SeriesDouble, SeriesMP, Contour, Asymptotic };

struct MeijerResult {
  cplx value;
  MeijerRoute route = MeijerRoute::SeriesDouble;
  double error_estimate = 0.0;
  long bits = 53;
  double abscissa = 0.0;
  double half_height = 0.0;
  int nodes = 0;
};

// Gamma(d)/(Gamma(b)Gamma(c)) 1F2(d; b, c; -1/z). Escalates to MPFR when the
// double-precision series cancels too much; rel_tol drives that decision.
MeijerResult meijer_g_1f2(const MeijerParams& p, double rel_tol = 1e-13);

struct QuadratureConfig {
  std::optional<double> abscissa;  // default: chosen from the decay exponent
  double half_height = 0.0;        // 0 = choose adaptively from the tail estimate
  int nodes_per_unit = 16;         // minimum Gauss order per unit-width panel
  double tol = 1e-12;              // relative tail target
  double max_half_height = 2.0e4;
};

// Mellin-Barnes quadrature on a vertical line, corrected by the residues of
// the poles that lie on the wrong side of it.
MeijerResult meijer_contour(const MeijerParams& p, const QuadratureConfig& q = {});

// Decay exponent rho of |integrand| ~ |t|^rho on Re s = sigma.
double meijer_decay_exponent(const MeijerParams& p, double sigma);

// Residue of the integrand at s = d + i (i >= 0) and at s = -j.
cplx meijer_residue_right(const MeijerParams& p, int i);
cplx meijer_residue_left(const MeijerParams& p, int j);

// Line integral (1/2 pi i) int_{Re s = gamma} of the same integrand: the
// standard-path value plus the residues of Gamma(d - s) left of the line.
// Needs gamma > 0 so that no pole of Gamma(s) lies right of the line.
cplx meijer_line_value(const MeijerParams& p, double gamma, const MeijerResult& standard);

// Every right pole crossed: the standard-path value plus all residues at d + i,
// i.e. the purely oscillatory part of the function for small z.
cplx meijer_full_from(const MeijerParams& p, const MeijerResult& standard);

// Large-argument expansion of that oscillatory part for real z > 0:
// sum over sign = +-1 of e^{sign i w} sum_j f_j w^{nu - j}, w = 2 / sqrt(z),
// nu = d - b - c + 1/2. Coefficients depend on (b, c, d) only.
class MeijerAsymptotic {
 public:
  MeijerAsymptotic(cplx b, cplx c, cplx d, int max_terms = 60);
  struct Value {
    cplx value;
    double error_estimate;  // first omitted term
    int terms;
  };
  Value operator()(double z) const;
  cplx nu() const { return nu_; }
  // f_j for sign = +1 (index 0) and -1 (index 1).
  const std::vector<cplx>& coefficients(int sign) const { return sign > 0 ? plus_ : minus_; }

 private:
  cplx nu_;
  std::vector<cplx> plus_, minus_;
};

// Oscillatory part through the expansion when it is accurate to rel_tol and
// through the 1F2 series otherwise.
MeijerResult meijer_full(const MeijerParams& p, const MeijerAsymptotic* asym = nullptr,
                         double rel_tol = 1e-13);

}  // namespace hecke
