#pragma once

#include <vector>

namespace hecke {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Supported orders: 8, 12, 16, 20, 24, 32, 48, 64. Other requests round up.
const GaussRule& gauss_rule(int order);

}  // namespace hecke
