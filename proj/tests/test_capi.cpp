#include <doctest.h>

#include <cmath>
#include <string>

#include "hecke/hecke.h"

namespace {

struct Pair {
  hecke_pair* p = nullptr;
  explicit Pair(const char* name) { REQUIRE(hecke_pair_create(name, &p) == HECKE_OK); }
  ~Pair() { hecke_pair_destroy(p); }
};

hecke_config config(const char* scenario) {
  hecke_config c;
  REQUIRE(hecke_default_config(scenario, &c) == HECKE_OK);
  return c;
}

}  // namespace

TEST_CASE("library metadata") {
  CHECK(std::string(hecke_version()) == "1.0.0");
  CHECK(std::string(hecke_status_name(HECKE_EHYPOTHESIS)) == "hypothesis");
  CHECK(hecke_scenario_count() >= 3);
  CHECK(hecke_scenario_name(hecke_scenario_count()) == nullptr);
  CHECK(hecke_identity_count() == 7);
  double tol = 0.0;
  CHECK(hecke_identity_default_tolerance("id2", &tol) == HECKE_OK);
  CHECK(tol == 1e-5);
  CHECK(hecke_identity_default_tolerance("id9", &tol) == HECKE_EINVAL);
  CHECK(std::string(hecke_last_error()).find("id9") != std::string::npos);
}

TEST_CASE("pairs expose coefficients and values") {
  Pair tau("tau");
  CHECK(hecke_pair_delta(tau.p) == 12.0);
  CHECK(hecke_pair_capacity(tau.p) >= 24);
  double c = 0.0;
  REQUIRE(hecke_pair_coefficient(tau.p, 0, 2, &c) == HECKE_OK);
  CHECK(c == -24.0);
  CHECK(hecke_pair_coefficient(tau.p, 2, 2, &c) == HECKE_EINVAL);

  Pair zeta("zeta");
  hecke_complex v;
  // sum (n^2/2)^-2 = 4 zeta(4)
  REQUIRE(hecke_pair_evaluate(zeta.p, 0, {2.0, 0.0}, &v) == HECKE_OK);
  CHECK(v.re == doctest::Approx(4.0 * std::pow(M_PI, 4) / 90.0).epsilon(1e-13));
  CHECK(std::abs(v.im) < 1e-15);

  hecke_pair* bad = reinterpret_cast<hecke_pair*>(1);
  CHECK(hecke_pair_create("theta", &bad) == HECKE_EINVAL);
  CHECK(bad == nullptr);
  CHECK(hecke_pair_create(nullptr, &bad) == HECKE_EINVAL);
}

TEST_CASE("hypothesis check names the inequality") {
  Pair tau("tau");
  hecke_config c = config("tau");
  size_t n = 99;
  CHECK(hecke_check_hypotheses(tau.p, &c, &n) == HECKE_OK);
  CHECK(n == 0);
  c.k = 2;
  CHECK(hecke_check_hypotheses(tau.p, &c, &n) == HECKE_EHYPOTHESIS);
  CHECK(n == 1);
  CHECK(std::string(hecke_last_error()).find("k > 2γ − δ") != std::string::npos);
}

TEST_CASE("verify returns a full report") {
  Pair zeta("zeta");
  hecke_config c = config("zeta");
  hecke_report* r = nullptr;
  REQUIRE(hecke_verify(zeta.p, "id2", &c, &r) == HECKE_OK);
  CHECK(hecke_report_pass(r) == 1);
  CHECK(std::string(hecke_report_identity(r)) == "id2");
  CHECK(std::string(hecke_report_scenario(r)) == "zeta");
  CHECK(hecke_report_rel_residual(r) <= hecke_report_tolerance(r));
  hecke_complex l = hecke_report_lhs(r), h = hecke_report_rhs(r);
  CHECK(std::hypot(l.re - h.re, l.im - h.im) == doctest::Approx(hecke_report_abs_residual(r)));
  CHECK(hecke_report_term_count(r) > 0);
  CHECK(hecke_report_term_name(r, 0) != nullptr);
  CHECK(hecke_report_term_name(r, hecke_report_term_count(r)) == nullptr);
  CHECK(hecke_report_setting_count(r) > 0);
  CHECK(hecke_report_config(r).u.re == 1.2);
  hecke_report_destroy(r);

  c.k = 0;
  r = reinterpret_cast<hecke_report*>(1);
  CHECK(hecke_verify(zeta.p, "id2", &c, &r) == HECKE_EHYPOTHESIS);
  CHECK(r == nullptr);
}

TEST_CASE("G routes and the Riesz sum through the C API") {
  Pair tau("tau");
  hecke_config c = config("tau");
  c.x = 1.3;
  hecke_complex a, b;
  double tail = -1.0;
  REQUIRE(hecke_g_series(tau.p, &c, 0, 0, 1e-9, &a, &tail) == HECKE_OK);
  CHECK(tail >= 0.0);
  REQUIRE(hecke_g_series(tau.p, &c, 0, 1, 1e-11, &b, nullptr) == HECKE_OK);
  CHECK(std::hypot(a.re - b.re, a.im - b.im) <= 1e-8 * std::hypot(b.re, b.im) + 3e-11);
  CHECK(hecke_g_series(tau.p, &c, 2, 0, 1e-9, &a, nullptr) == HECKE_EINVAL);
  CHECK(hecke_g_series(tau.p, &c, 0, 0, 0.0, &a, nullptr) == HECKE_EINVAL);

  hecke_complex r;
  REQUIRE(hecke_riesz_sum(tau.p, &c, &r) == HECKE_OK);
  CHECK(std::isfinite(r.re));
  CHECK(std::string(hecke_last_error()).empty());
}
