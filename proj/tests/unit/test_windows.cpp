#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "bllab/errors.hpp"
#include "bllab/tradeoff.hpp"
#include "bllab/windows.hpp"

using namespace bllab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Root of a decreasing function on [lo, hi] by bisection.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

WindowSpec case_a(double r, double s, double q, int N = 128, int K = 0) {
  return {CaseASpec{r, s, q, std::nullopt, 0.1}, N, K};
}

WindowSpec case_b(double r, double s, double q, int N = 128, int K = 0) {
  return {CaseBSpec{r, s, q, std::nullopt, 0.1}, N, K};
}

}  // namespace

TEST_SUITE("windows") {

TEST_CASE("Case-A parameters at q = 4, r = s = 2.5") {
  const DerivedParams p = derive_params(case_a(2.5, 2.5, 4.0));
  // largest shift keeping 1/(r+e) + 1/(s+e) above the flat level 2/3
  const double eps_max = bisect([](double e) { return 2.0 / (2.5 + e) - 2.0 / 3.0; }, 0.0, 5.0);
  CHECK(p.eps == doctest::Approx(eps_max / 2).epsilon(1e-12));
  CHECK(p.r_prime == doctest::Approx(2.5 + eps_max / 2));
  const double slack = 1.0 - 1.0 / p.r_prime - 1.0 / p.s_prime;
  CHECK(p.alpha == doctest::Approx(p.r_prime * slack / 2));
  CHECK(p.beta == doctest::Approx(p.s_prime * slack / 2));
  CHECK(p.alpha == doctest::Approx(0.375));
  CHECK(p.k == 2);
  CHECK(p.gamma == doctest::Approx(0.9 * 0.375 / 2));
  CHECK(p.k > std::max(p.r_prime, p.s_prime) / 2);
  CHECK(p.gamma < std::min(p.alpha, p.beta) / p.k);
  // eps -> 0 limit
  CHECK(1.25 * (1.0 - 0.8) == doctest::Approx(0.25));
}

TEST_CASE("Case-B parameters at q = 4, r = 1.5, s = 20") {
  const DerivedParams p = derive_params(case_b(1.5, 20.0, 4.0));
  const double c = steep_slope(4.0);
  const double eps_max = bisect([c](double e) { return c / (1.5 + e) + 1.0 / (20.0 + e) - 1.0; }, 0.0, 5.0);
  CHECK(p.eps == doctest::Approx(eps_max / 2).epsilon(1e-12));
  CHECK(p.a_neg == doctest::Approx(std::pow(2.0, p.gamma / p.alpha)));
  CHECK(1.0 / 1.5 + 3.0 / 20.0 <= 1.0);
  CHECK(c / 1.5 + 1.0 / 20.0 > 1.0);
  CHECK(p.alpha > 0.0);
  CHECK(p.beta > 0.0);
}

TEST_CASE("compact variant parameters") {
  const DerivedParams p = derive_params({CompactSpec{1.5, 4.0, std::nullopt, 0.1}, 64, 0});
  CHECK(std::isinf(p.s_prime));
  CHECK(p.r_prime == doctest::Approx(1.5 + (steep_slope(4.0) - 1.5) / 2));
  CHECK(p.alpha == doctest::Approx((p.r_prime - 1.0) / 2));
  CHECK_THROWS_AS(derive_params({CompactSpec{3.0, 10.0, std::nullopt, 0.1}, 64, 0}), ParameterRegionError);
}

TEST_CASE("region errors and pinned epsilon") {
  CHECK_THROWS_AS(derive_params(case_a(3.5, 3.5, 4.0)), ParameterRegionError);
  CHECK_THROWS_AS(construct(case_a(3.5, 3.5, 4.0, 64)), ParameterRegionError);
  CHECK_THROWS_AS(derive_params(case_a(1.5, 20.0, 4.0)), ParameterRegionError);
  CHECK_THROWS_AS(derive_params(case_b(2.5, 2.5, 4.0)), ParameterRegionError);
  CHECK_THROWS_AS(derive_params({GaussianSpec{}, 64, 0}), ParameterError);
  WindowSpec pinned{CaseASpec{2.5, 2.5, 4.0, 0.1, 0.1}, 64, 0};
  CHECK(derive_params(pinned).eps == 0.1);
  pinned.shape = CaseASpec{2.5, 2.5, 4.0, 0.6, 0.1};
  CHECK_THROWS_AS(derive_params(pinned), ParameterError);
}

TEST_CASE("derive_params succeeds exactly above the curve") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ur(1.05, 8.0), us(0.0, 1.0);
  int above = 0;
  for (int i = 0; i < 2000; ++i) {
    const double q = std::array{2.5, 4.0, 10.0, kInf}[static_cast<std::size_t>(i % 4)];
    const double r = ur(rng);
    const double s = r + 25.0 * us(rng);
    const Region region = classify(1.0 / r, 1.0 / s, q).classification;
    bool ok = false;
    for (const WindowSpec& spec : {case_a(r, s, q), case_b(r, s, q)}) {
      try {
        const DerivedParams p = derive_params(spec);
        CHECK(p.alpha > 0.0);
        CHECK(p.beta > 0.0);
        CHECK(p.gamma > 0.0);
        ok = true;
      } catch (const ParameterRegionError&) {
      }
    }
    CHECK(ok == (region == Region::Above));
    above += ok ? 1 : 0;
  }
  CHECK(above > 100);
}

TEST_CASE("derive_params is deterministic") {
  const auto a = derive_params(case_b(1.5, 20.0, 4.0));
  const auto b = derive_params(case_b(1.5, 20.0, 4.0));
  CHECK(a == b);
}

TEST_CASE("phase and modulus of the smooth construction") {
  const DerivedParams p = derive_params(case_a(2.5, 2.5, 4.0));
  const BumpProfile prof(0.1);
  CHECK(build_psi(-0.3, 0.7, p, prof) == 0.0);
  CHECK(build_psi(0.3, 0.7, p, prof) == doctest::Approx(0.2));
  CHECK(build_psi(0.3 + 2.0, 0.7, p, prof) == doctest::Approx(0.2 + 2 * 0.2));
  CHECK(build_psi(0.3, 1.7, p, prof) == doctest::Approx(0.2));
  CHECK(build_phi(0.0, 0.0, p, prof) == 0.0);
  CHECK(build_phi(-0.5, 0.3, p, prof) == doctest::Approx(1.0));
  CHECK(build_phi(0.5, 0.3, p, prof) == doctest::Approx(1.0));
  CHECK(build_phi(3.0, -2.0, p, prof) == 0.0);
  double off_min = kInf;
  const int N = 128;
  for (int j = 0; j < N; ++j) {
    for (int l = 0; l < N; ++l) {
      if (j == 0 && l == 0) continue;
      off_min = std::min(off_min, build_phi(static_cast<double>(j) / N, static_cast<double>(l) / N, p, prof));
    }
  }
  CHECK(off_min > 0.0);
}

TEST_CASE("Theta and Upsilon identities") {
  const DerivedParams p = derive_params(case_b(1.5, 20.0, 4.0));
  const BumpProfile prof(0.1);
  CHECK(build_theta(-0.45, 0.3, p, prof) == 1.0);
  CHECK(build_theta(0.45, 0.2, p, prof) == 0.0);
  CHECK(build_theta(0.0, 0.0, p, prof) == 1.0);
  CHECK(build_upsilon(0.0, 0.0, p, prof) == cplx(0.0, 0.0));
  for (double y : {0.25, 0.3, 0.45}) {
    for (double x : {-0.4, -0.05, 0.0, 0.2}) {
      CHECK(build_theta(x, -y, p, prof) == doctest::Approx(build_theta(x, y, p, prof)));
    }
  }
  for (double x : {-0.08, -0.01, 0.03, 0.09}) {
    for (double y : {-0.07, 0.0, 0.05}) {
      CHECK(build_theta(x, y, p, prof) ==
            doctest::Approx(f_abg(x, y, p.alpha, p.beta, p.gamma, p.a_neg) + 1.0).epsilon(1e-13));
    }
  }
  // Upsilon(x + 1, y) = -e^{2 pi i y} Upsilon(x, y)
  for (double y : {-0.3, 0.1, 0.4}) {
    const cplx lhs = build_upsilon(0.2 + 1.0, y, p, prof);
    const cplx rhs = -unit_phase(y) * build_upsilon(0.2, y, p, prof);
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("Case-A window reproduces its analytic Zak image") {
  const WindowSpec spec = case_a(2.5, 2.5, 4.0, 64);
  const SampledWindow w = construct(spec);
  CHECK(w.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  const ZakGrid G = zak_forward(w);
  const ZakGrid A = analytic_grid(spec);
  const int N = spec.N;
  // scale from a point far from the zero
  const cplx scale = G(0, 0) / A(0, 0);
  double worst = 0.0;
  for (int j = 0; j < N; ++j) {
    for (int l = 0; l < N; ++l) {
      if (std::hypot(j - N / 2, l - N / 2) <= 2.0) continue;
      worst = std::max(worst, std::abs(G(j, l) - scale * A(j, l)));
    }
  }
  CHECK(worst < 1e-10);
  CHECK(std::abs(G(N / 2, N / 2)) < 1e-12);
}

TEST_CASE("compact window is supported in [-2, 2]") {
  const WindowSpec spec{CompactSpec{1.5, 4.0, std::nullopt, 0.1}, 64, 8};
  const SampledWindow w = construct(spec);
  double outside = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    if (std::abs(w.t(m)) > 2.0) outside += std::norm(w[m]);
  }
  CHECK(outside / w.N() <= 1e-10 * w.norm_sq());
  const ZakGrid G = zak_forward(w);
  const ZakGrid A = analytic_grid(spec);
  const cplx scale = G(0, 0) / A(0, 0);
  double worst = 0.0;
  for (std::size_t i = 0; i < G.values().size(); ++i) {
    worst = std::max(worst, std::abs(G.values()[i] - scale * A.values()[i]));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("reference windows") {
  const SampledWindow box = box_window(32, 4);
  CHECK(box.norm_sq() == 1.0);
  const SampledWindow g = gaussian_window(1.0, 64, 6);
  CHECK(g[6 * 64].real() == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-10));
  CHECK(g.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  // mass of |g|^2 = sqrt(2) e^{-2 pi t^2} outside [-1, 1] is erfc(sqrt(2 pi))
  const SampledWindow wide = gaussian_window(1.0, 256, 4);
  double inside = 0.0;
  for (std::size_t m = 0; m < wide.size(); ++m) {
    const double t = wide.t(m);
    if (std::abs(t) < 1.0) inside += std::norm(wide[m]);
    if (std::abs(t) == 1.0) inside += 0.5 * std::norm(wide[m]);
  }
  CHECK(1.0 - inside / wide.N() == doctest::Approx(std::erfc(std::sqrt(2.0 * kPi))).epsilon(1e-6));
  CHECK_THROWS_AS(gaussian_window(1.0, 8, 5), NyquistError);
  CHECK_THROWS_AS(construct({BoxSpec{}, 8, 5}), NyquistError);
}

TEST_CASE("Case-B zero depth follows alpha") {
  const WindowSpec spec = case_b(1.5, 20.0, 4.0, 128, 8);
  const AnalyticZak Z(spec);
  const double alpha = Z.params()->alpha;
  // log-log slope of |G(1/2 + t, 1/2)|
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 16;
  for (int i = 0; i < n; ++i) {
    const double t = 0.05 * std::pow(2.0, -i);
    const double lx = std::log(t), ly = std::log(std::abs(Z(0.5 + t, 0.5)));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope - alpha) <= 0.1 * alpha);
}

}
