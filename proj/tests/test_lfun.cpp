#include <doctest.h>

#include <random>

#include "error.hpp"
#include "lfun.hpp"
#include "oracles.hpp"

using namespace hecke;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

const HeckePair& zeta() {
  static const HeckePair p = make_zeta_pair();
  return p;
}
const HeckePair& tau() {
  static const HeckePair p = make_tau_pair();
  return p;
}
const HeckePair& sigma3() {
  static const HeckePair p = make_sigma_pair(3);
  return p;
}

cplx zeta_pair_oracle(cplx s) { return std::exp(s * std::log(2.0)) * oracle::zeta_em(2.0 * s); }
cplx sigma3_oracle(cplx s) { return oracle::zeta_em(s) * oracle::zeta_em(s - 3.0); }

}  // namespace

TEST_CASE("internal zeta against closed forms") {
  CHECK(zeta_real(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-15));
  CHECK(zeta_real(4.0) == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-15));
  CHECK(zeta_real(0.0) == -0.5);
  CHECK(zeta_real(-1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-14));
  CHECK(zeta_real(-2.0) == 0.0);
  CHECK(zeta_real(-3.0) == doctest::Approx(1.0 / 120.0).epsilon(1e-14));
  CHECK(zeta_real(-11.0) == doctest::Approx(691.0 / 32760.0).epsilon(1e-13));
  CHECK_THROWS_AS(zeta_real(1.0), Failure);
}

TEST_CASE("direct sums") {
  SUBCASE("2 zeta(2) with its tail bound") {
    AbsResult r = evaluate_abs(zeta(), Side::Phi, 1.0, 1e-4);
    double err = std::fabs(r.value.real() - kPi * kPi / 3.0);
    CHECK(err <= r.tail_bound);
    CHECK(r.tail_bound <= 2e-4);
  }
  SUBCASE("first term dominates far to the right") {
    CHECK(std::abs(evaluate_abs(tau(), Side::Phi, 80.0).value - 1.0) < 1e-15);
    cplx s(70.0, 3.0);
    cplx lead = std::exp(-s * std::log(0.5));
    CHECK(std::abs(evaluate_abs(zeta(), Side::Phi, s).value / lead - 1.0) < 1e-15);
  }
  SUBCASE("sigma_3 at 6 is zeta(6) zeta(3)") {
    AbsResult r = evaluate_abs(sigma3(), Side::Phi, 6.0, 1e-4);
    double want = oracle::zeta_em(6.0) * oracle::zeta_em(3.0);
    CHECK(std::fabs(r.value.real() - want) <= r.tail_bound);
  }
  SUBCASE("margin and capacity violations") {
    CHECK_THROWS_AS(evaluate_abs(zeta(), Side::Phi, 0.5), Failure);
    CHECK_THROWS_AS(evaluate_abs(zeta(), Side::Phi, 0.6, 1e-12), Failure);
    try {
      evaluate_abs(tau(), Side::Phi, 6.0);
    } catch (const Failure& f) {
      CHECK(f.code() == Errc::hypothesis);
    }
  }
}

TEST_CASE("continued values") {
  CHECK(std::abs(evaluate_continued(zeta(), Side::Phi, -0.5) + 1.0 / (12.0 * std::sqrt(2.0))) < 1e-14);
  cplx s(3.0, 2.0);
  cplx direct = evaluate_abs(zeta(), Side::Phi, s, 1e-12).value;
  CHECK(std::abs(evaluate_continued(zeta(), Side::Phi, s) - direct) <= 1e-9 * std::abs(direct));
  // L(Delta, 6) and the tau pair at the centre of its strip is real.
  cplx centre = evaluate_continued(tau(), Side::Phi, 6.0);
  CHECK(std::fabs(centre.imag()) < 1e-15);
  CHECK(std::abs(evaluate_continued(sigma3(), Side::Phi, 6.0) -
                 oracle::zeta_em(6.0) * oracle::zeta_em(3.0)) < 1e-13);
  // zeta(s) zeta(s - 3) at 2.5 passes through the region left of both series.
  double want = oracle::zeta_em(2.5) * -0.20788622497735457;
  CHECK(evaluate(sigma3(), Side::Phi, 2.5).real() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("continuation agrees with the series where both converge") {
  std::mt19937_64 rng(11);
  SUBCASE("zeta and sigma_3 against external zeta products") {
    for (const HeckePair* p : {&zeta(), &sigma3()}) {
      double sa = p->phi.sigma_a;
      std::uniform_real_distribution<double> re(sa + 0.2, sa + 3.0), im(-40.0, 40.0);
      for (int i = 0; i < 50; ++i) {
        cplx s(re(rng), im(rng));
        cplx want = p == &zeta() ? zeta_pair_oracle(s) : sigma3_oracle(s);
        cplx got = evaluate_continued(*p, Side::Phi, s);
        CHECK(std::abs(got - want) <= 1e-8 * (1.0 + std::abs(want)));
      }
    }
  }
  SUBCASE("all pairs against certified truncations") {
    // The crude growth bounds only certify a truncation at 1e-9 further
    // right, so this band starts where the direct sum is usable.
    for (const HeckePair* p : {&zeta(), &tau(), &sigma3()}) {
      double sa = p->phi.sigma_a;
      double lo = p == &zeta() ? sa + 1.5 : sa + 3.5;
      std::uniform_real_distribution<double> re(lo, lo + 3.0), im(-40.0, 40.0);
      for (int i = 0; i < 50; ++i) {
        cplx s(re(rng), im(rng));
        AbsResult d = evaluate_abs(*p, Side::Phi, s, 1e-9);
        cplx got = evaluate_continued(*p, Side::Phi, s);
        CHECK(std::abs(got - d.value) <= 1e-8 * (1.0 + std::abs(d.value)));
      }
    }
  }
}

TEST_CASE("incomplete gamma and rotated rays agree for small heights") {
  ContinuationOptions inc, rot;
  inc.method = ContinuationMethod::IncompleteGamma;
  rot.method = ContinuationMethod::RotatedTheta;
  for (const HeckePair* p : {&zeta(), &tau(), &sigma3()})
    for (double t : {-3.5, -1.0, 0.0, 0.7, 3.9}) {
      cplx s(p->delta / 2.0 + 0.13, t);
      cplx a = completed(*p, Side::Phi, s, inc).unscaled();
      cplx b = completed(*p, Side::Phi, s, rot).unscaled();
      CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
}

TEST_CASE("the split point does not matter") {
  for (const HeckePair* p : {&zeta(), &tau(), &sigma3()})
    for (double t : {0.5, 9.0, 33.0}) {
      cplx s(p->delta / 3.0, t);
      ContinuationOptions a, b;
      b.split = 0.8;
      cplx x = evaluate_continued(*p, Side::Psi, s, a), y = evaluate_continued(*p, Side::Psi, s, b);
      CHECK(std::abs(x - y) <= 1e-11 * (1.0 + std::abs(x)));
    }
}

TEST_CASE("functional equation on a 5x5 grid in each critical strip") {
  const double heights[] = {-15.0, -4.5, 1.0, 6.0, 25.0};
  for (const HeckePair* p : {&zeta(), &tau(), &sigma3()})
    for (int i = 0; i < 5; ++i)
      for (double t : heights) {
        cplx s(p->delta * (0.1 + 0.2 * i), t);
        CHECK(functional_equation_residual(*p, s) <= 1e-8);
      }
  CHECK(functional_equation_residual(tau(), cplx(6.0, 1.0)) <= 1e-8);
  CHECK(functional_equation_residual(zeta(), cplx(0.3, 2.0)) <= 1e-8);
  CHECK(functional_equation_residual(tau(), 6.0) <= 1e-15);
}

TEST_CASE("values near the real axis are real and conjugate symmetric") {
  cplx s(0.2, 17.0);
  cplx a = evaluate_continued(zeta(), Side::Phi, s), b = evaluate_continued(zeta(), Side::Phi, std::conj(s));
  CHECK(std::abs(a - std::conj(b)) < 1e-14 * std::abs(a));
  CHECK(std::fabs(evaluate_continued(sigma3(), Side::Psi, 1.7).imag()) < 1e-15);
}

TEST_CASE("pole bookkeeping") {
  SUBCASE("residue at 1/2 from a symmetric Laurent limit") {
    auto sym = [](double e) {
      return 0.5 * e * (evaluate_continued(zeta(), Side::Phi, 0.5 + e) -
                        evaluate_continued(zeta(), Side::Phi, 0.5 - e)).real();
    };
    double e = 0.02;
    double r = (4.0 * sym(e / 2.0) - sym(e)) / 3.0;
    CHECK(std::fabs(r - std::sqrt(2.0) / 2.0) < 1e-8);
    CHECK(zeta().phi.poles.at(0).residue == std::sqrt(2.0) / 2.0);
  }
  SUBCASE("exclusion radius") {
    CHECK_THROWS_AS(evaluate_continued(zeta(), Side::Phi, 0.5 + 1e-4), Failure);
    CHECK_THROWS_AS(evaluate_continued(sigma3(), Side::Phi, cplx(4.0, 5e-4)), Failure);
    CHECK_NOTHROW(evaluate_continued(zeta(), Side::Phi, 0.5 + 2e-3));
  }
  SUBCASE("sigma_l residues and twist") {
    for (int l : {3, 5, 7}) {
      HeckePair p = make_sigma_pair(l, 200);
      double tw = ((l + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
      CHECK(p.psi.twist == tw);
      CHECK(p.phi.poles.at(1).residue == doctest::Approx(oracle::zeta_em(l + 1.0)).epsilon(1e-14));
      CHECK(p.psi.poles.at(1).residue == tw * p.phi.poles.at(1).residue);
      CHECK(p.phi.poles.at(0).residue == 0.0);
    }
    CHECK_THROWS_AS(make_sigma_pair(4, 100), Failure);
    CHECK_THROWS_AS(make_scenario("sigma2"), Failure);
  }
}

TEST_CASE("residue correction terms") {
  SUBCASE("tau has none") {
    ResidueTerms r = residue_correction_terms(tau(), 7.0, 7.0);
    CHECK(r.total() == cplx(0.0));
  }
  SUBCASE("zeta") {
    cplx u(1.2, 0.3), v(1.3, -0.1);
    ResidueTerms r = residue_correction_terms(zeta(), u, v);
    double c = std::sqrt(2.0);
    cplx want_psi = -c / (1.0 - 2.0 * v) * zeta_pair_oracle(u + v - 0.5);
    cplx want_phi = -c / (1.0 - 2.0 * u) * zeta_pair_oracle(u + v - 0.5);
    CHECK(std::abs(r.psi_poles - want_psi) < 1e-12 * std::abs(want_psi));
    CHECK(std::abs(r.phi_poles - want_phi) < 1e-12 * std::abs(want_phi));
  }
  SUBCASE("sigma_3 four-term expression") {
    const double l = 3.0;
    cplx u = 4.6, v = 4.6;
    double z1 = zeta_real(1.0 - l), z2 = zeta_real(1.0 + l), tw = 1.0;
    auto phi = [](cplx s) { return sigma3_oracle(s); };
    cplx want = -z1 / (1.0 - v) * phi(u + v - 1.0) - z2 / (l + 1.0 - v) * phi(u + v - l - 1.0) -
                tw * z1 / (1.0 - u) * tw * phi(u + v - 1.0) -
                tw * z2 / (l + 1.0 - u) * tw * phi(u + v - l - 1.0);
    cplx got = residue_correction_terms(sigma3(), u, v).total();
    CHECK(std::abs(got - want) < 1e-11 * std::abs(want));
  }
  SUBCASE("u on a pole") {
    CHECK_THROWS_AS(residue_correction_terms(zeta(), 0.5, 1.3), Failure);
  }
}

TEST_CASE("fixture without functional equation") {
  HeckePair p = make_unit_fixture(5000);
  CHECK_THROWS_AS(evaluate_continued(p, Side::Phi, 2.0), Failure);
  CHECK(evaluate(p, Side::Phi, 4.0, 1e-10).real() == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-10));
}

TEST_CASE("scenario registry") {
  for (const std::string& n : scenario_names()) CHECK_NOTHROW(make_scenario(n));
  CHECK_THROWS_AS(make_scenario("nope"), Failure);
}
