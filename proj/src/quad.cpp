#include "quad.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <array>

namespace hecke {

namespace {

template <int N>
GaussRule expand() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  GaussRule r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(w[i]);
      continue;
    }
    r.x.push_back(-a[i]);
    r.w.push_back(w[i]);
    r.x.push_back(a[i]);
    r.w.push_back(w[i]);
  }
  return r;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
  static const std::array<GaussRule, 8> rules = {expand<8>(),  expand<12>(), expand<16>(),
                                                 expand<20>(), expand<24>(), expand<32>(),
                                                 expand<48>(), expand<64>()};
  static const std::array<int, 8> orders = {8, 12, 16, 20, 24, 32, 48, 64};
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (order <= orders[i]) return rules[i];
  return rules.back();
}

}  // namespace hecke
