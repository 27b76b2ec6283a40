#pragma once

#include <cmath>
#include <complex>

namespace hecke {

using cplx = std::complex<double>;

// Neumaier's variant of Kahan summation; the correction term also catches
// the case where the incoming term is larger than the running sum.
class NeumaierSum {
 public:
  void add(double x) {
    double t = s_ + x;
    if (std::fabs(s_) >= std::fabs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class ComplexSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_, im_;
};

}  // namespace hecke
