#include <doctest.h>

#include <cmath>
#include <random>

#include "bllab/errors.hpp"
#include "bllab/specialfn.hpp"

using namespace bllab;

TEST_SUITE("specialfn") {

TEST_CASE("unit_phase is exact at quarter turns and periodic on dyadic inputs") {
  CHECK(unit_phase(0.0) == cplx(1.0, 0.0));
  CHECK(unit_phase(0.25) == cplx(0.0, 1.0));
  CHECK(unit_phase(-0.5) == cplx(-1.0, 0.0));
  CHECK(unit_phase(2.75) == cplx(0.0, -1.0));
  for (int j = 0; j < 64; ++j) {
    const double t = j / 64.0;
    CHECK(unit_phase(t + 3.0) == unit_phase(t));
    CHECK(std::abs(unit_phase(t) - std::polar(1.0, 2.0 * kPi * t)) < 1e-15);
  }
}

TEST_CASE("smoothstep matches closed form and reflection") {
  // e^{-4} / (e^{-4} + e^{-4/3}) at 30 digits
  CHECK(smoothstep(0.25) == doctest::Approx(0.064969169128664062).epsilon(1e-15));
  CHECK(smoothstep(0.5) == 0.5);
  CHECK(smoothstep(-1.0) == 0.0);
  CHECK(smoothstep(1.0) == 1.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    CHECK(std::abs(smoothstep(x) + smoothstep(1.0 - x) - 1.0) <= 1e-15);
  }
}

TEST_CASE("bump profile plateaus, symmetry and monotonicity") {
  CHECK_THROWS_AS(BumpProfile(0.25), ParameterError);
  CHECK_THROWS_AS(BumpProfile(0.0), ParameterError);
  const BumpProfile p(0.1);
  CHECK(bump_rho(0.0, p) == 1.0);
  CHECK(bump_rho(0.1, p) == 1.0);
  CHECK(bump_rho(-0.2, p) == 0.0);
  CHECK(bump_rho(0.35, p) == 0.0);
  CHECK(transition_nu(-0.2, p) == 1.0);
  CHECK(transition_nu(0.2, p) == 0.0);
  double prev = 2.0;
  for (int i = -180; i <= 180; ++i) {
    const double t = 0.1 * i / 100.0;
    CHECK(bump_rho(t, p) == doctest::Approx(bump_rho(-t, p)).epsilon(1e-15));
    CHECK(std::abs(transition_nu(t, p) + transition_nu(-t, p) - 1.0) <= 1e-15);
    const double nu = transition_nu(t, p);
    CHECK(nu < prev);
    prev = nu;
  }
}

TEST_CASE("f_ab values and singularity") {
  CHECK_THROWS_AS(f_ab(0.5, 0.5, 0.5, 1.8), SingularPointError);
  // At y = 0 the base is 2 - |x - 1/2|^alpha.
  CHECK(std::abs(f_ab(0.5, 0.0, 0.5, 1.8) - std::pow(2.0, -1.8)) < 1e-15);
  CHECK(std::abs(f_ab(0.25, 0.0, 0.5, 2.0) - 1.0 / std::pow(2.0 - 0.5, 2.0)) < 1e-14);
  // Translation moves the singular point.
  CHECK_THROWS_AS(h_ab(0.1, 0.3, 0.5, 1.8, 0.1, 0.3), SingularPointError);
  CHECK(std::abs(h_ab(0.2, 0.7, 0.5, 1.8, 0.1, 0.3) - f_ab(0.6, 0.9, 0.5, 1.8)) < 1e-14);
}

TEST_CASE("f_ab growth bound near the singularity") {
  // |1 + h e^{2 pi i y}|^2 = |x - 1/2|^{2 alpha} + 2 (1 - |x - 1/2|^alpha)(1 + cos 2 pi y)
  const double alpha = 0.5, beta = 1.8;
  double worst = 0.0;
  for (int i = 1; i < 200; ++i) {
    for (int j = 1; j < 200; ++j) {
      const double x = 0.5 + 0.2 * (i - 100) / 100.0 + 1e-9;
      const double y = 0.5 + 0.2 * (j - 100) / 100.0 + 1e-9;
      const double lhs = std::norm(f_ab(x, y, alpha, beta));
      const double scale = std::pow(std::pow(std::abs(x - 0.5), 2 * alpha) + (y - 0.5) * (y - 0.5), -beta);
      worst = std::max(worst, lhs / scale);
    }
  }
  CHECK(worst < 10.0);
}

TEST_CASE("f_abg derivatives against high-precision numerical differentiation") {
  // mpmath.diff at 30 digits of (x^{a/g} + |y|^{b/g})^g, a=1.2 b=2 g=0.3 at (0.3, 0.2)
  CHECK(f_abg_partial_x(0.3, 0.2, 1.2, 2.0, 0.3, 1) == doctest::Approx(0.94142369348228303).epsilon(1e-12));
  CHECK(f_abg_partial_x(0.3, 0.2, 1.2, 2.0, 0.3, 2) == doctest::Approx(0.65129487932816685).epsilon(1e-11));
  CHECK_THROWS_AS(f_abg_partial_x(0.0, 0.0, 1.2, 2.0, 0.3, 1), SingularPointError);
  CHECK_THROWS_AS(f_abg_partial_x(0.3, 0.2, 1.2, 2.0, 0.7, 2), ParameterError);
  CHECK_THROWS_AS(f_abg_partial_x(0.3, 0.2, 1.2, 2.0, 0.3, 0), ParameterError);
}

TEST_CASE("f_abg derivative matches central differences for negative x") {
  const double a = 0.8, b = 1.6, g = 0.2, an = 2.0;
  for (double x : {-0.4, -0.1, 0.05, 0.3}) {
    const double h = 1e-5;
    const double fd = (f_abg(x + h, 0.1, a, b, g, an) - f_abg(x - h, 0.1, a, b, g, an)) / (2 * h);
    CHECK(f_abg_partial_x(x, 0.1, a, b, g, 1, an) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("f_abg avoids underflow for tiny gamma") {
  const double v = f_abg(0.3, 0.2, 0.5, 0.5, 1e-3);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  CHECK(f_abg(0.0, 0.0, 0.5, 0.5, 0.1) == 0.0);
}

TEST_CASE("winding phase H") {
  CHECK(winding_step(0.0) == -1.0);
  CHECK(winding_step(1.0) == 0.0);
  CHECK(H_lambda(-0.1, 0.0, 0.5) == 0.0);
  CHECK(H_lambda(0.0, 0.0, 0.5) == 0.0);
  CHECK(H_lambda(0.04, 0.3, 0.5) == 0.0);  // above x^lambda = 0.2
  CHECK(H_lambda(0.04, 0.0, 0.5) == -1.0);
  CHECK(H_lambda(0.04, 0.1, 0.5) == doctest::Approx(smoothstep(0.5) - 1.0));
  const cplx F = F_abg(0.04, 0.1, 0.5, 1.0, 0.1);
  CHECK(std::abs(F) == doctest::Approx(f_abg(0.04, 0.1, 0.5, 1.0, 0.1)));
}

TEST_CASE("phi_rs regimes") {
  CHECK_THROWS_AS(PhiExponentCase::classify(2.0, 2.0), ParameterError);
  CHECK(PhiExponentCase::classify(4.0, 4.0).regime == PhiRegime::Critical);
  const auto sup = PhiExponentCase::classify(3.0, 3.0);
  CHECK(sup.regime == PhiRegime::Supercritical);
  CHECK(*sup.exponent == doctest::Approx(2.0 - 3.0 * (4.0 / 3.0 - 1.0)));
  CHECK(PhiExponentCase::classify(6.0, 6.0).regime == PhiRegime::Subcritical);
  CHECK(phi_rs(0.1, 6.0, 6.0) == doctest::Approx(0.01));
  CHECK(phi_rs(0.1, 4.0, 4.0) == doctest::Approx(0.01 * std::log(11.0)));
  CHECK(phi_rs(0.0, 4.0, 4.0) == 0.0);
  CHECK(phi_rs(-0.2, 3.0, 3.0) == doctest::Approx(std::pow(0.2, 1.0)));
}

TEST_CASE("taylor coefficients of (1 - z)^-beta") {
  // rising factorial (1.8)_5 / 5!
  CHECK(taylor_b(5, 1.8) == doctest::Approx(4.443264).epsilon(1e-14));
  CHECK(taylor_b(0, 2.5) == 1.0);
  CHECK_THROWS_AS(taylor_b(-1, 1.0), ParameterError);
  double sum = 0.0, z = 1.0;
  for (int n = 0; n < 200; ++n, z *= 0.3) sum += taylor_b(n, 2.25) * z;
  CHECK(sum == doctest::Approx(std::pow(0.7, -2.25)).epsilon(1e-13));
}

TEST_CASE("derivative coefficients reproduce the chain rule for k = 1") {
  // d/dx (x^p + c)^g = g p (x^p + c)^{g-1} x^{p-1}
  const auto c = derivative_coefficients(2.5, 0.3, 1);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(0.0));
  CHECK(c[1] == doctest::Approx(0.3 * 2.5));
}

}
