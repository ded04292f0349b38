#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bllab/errors.hpp"
#include "bllab/localization.hpp"
#include "bllab/windows.hpp"

using namespace bllab;

namespace {

// int |t|^s sqrt(2) exp(-2 pi t^2) dt
double gaussian_moment(double s) {
  return std::sqrt(2.0) * std::tgamma((s + 1.0) / 2.0) / std::pow(2.0 * kPi, (s + 1.0) / 2.0);
}

}  // namespace

TEST_SUITE("localization") {

TEST_CASE("trace verdicts") {
  CHECK(trace_verdict({1.0, 2.0, 4.0, 8.0}) == Verdict::Divergent);
  CHECK(trace_verdict({1.0, 1.01, 1.02, 1.025}) == Verdict::Convergent);
  CHECK(trace_verdict({1.0, 1.5, 1.6, 1.62}) == Verdict::Inconclusive);
  CHECK(trace_verdict({1.0, 1.4, 1.0, 1.4, 2.0}) == Verdict::Inconclusive);
  CHECK(trace_verdict({1.0, 1.0 / 0.0}) == Verdict::Divergent);
  CHECK(trace_verdict({3.0}) == Verdict::Inconclusive);
}

TEST_CASE("Gaussian moments in time and frequency") {
  const SampledWindow g = gaussian_window(1.0, 64, 6);
  for (double s : {2.0, 4.0}) CHECK(time_moment(g, s) == doctest::Approx(gaussian_moment(s)).epsilon(1e-10));
  for (double s : {2.0, 4.0}) CHECK(freq_moment(g, s) == doctest::Approx(gaussian_moment(s)).epsilon(1e-9));
  CHECK(time_moment(g, 2.0) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-10));
  CHECK_THROWS_AS(time_moment(g, -1.0), ParameterError);
}

TEST_CASE("non-smooth Gaussian moments converge at order 1 + s") {
  // |t|^s has a kink at 0, so halving the step cuts the error by 2^(1+s)
  const auto check_order = [](double s, const std::vector<double>& errs) {
    for (std::size_t i = 1; i < errs.size(); ++i) {
      CHECK(std::log2(errs[i - 1] / errs[i]) == doctest::Approx(1.0 + s).epsilon(0.05));
    }
  };
  for (double s : {0.5, 1.0, 3.0}) {
    const double exact = gaussian_moment(s);
    std::vector<double> time_errs, freq_errs;
    for (int N : {32, 64, 128}) time_errs.push_back(std::abs(time_moment(gaussian_window(1.0, N, 6), s) - exact));
    for (int K : {6, 12, 24}) freq_errs.push_back(std::abs(freq_moment(gaussian_window(1.0, 64, K), s) - exact));
    check_order(s, time_errs);
    check_order(s, freq_errs);
  }
}

TEST_CASE("Gaussian spectrum is a Gaussian") {
  const SampledWindow g = gaussian_window(1.0, 32, 4);
  const Spectrum sp = spectrum(g);
  CHECK(sp.dxi == doctest::Approx(1.0 / 8.0));
  double worst = 0.0;
  for (std::size_t p = 0; p < sp.xi.size(); ++p) {
    const double expect = std::pow(2.0, 0.25) * std::exp(-kPi * sp.xi[p] * sp.xi[p]);
    worst = std::max(worst, std::abs(sp.values[p] - expect));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Stein constant against the closed form") {
  // pi / (Gamma(1+r) sin(pi r/2)) sum_j 2 (-1)^{j+1} C(2k, k-j) (2 pi j)^r, 30-digit evaluation
  CHECK(stein_constant(1, 0.5) == doctest::Approx(25.132741228718346).epsilon(1e-10));
  CHECK(stein_constant(1, 1.0) == doctest::Approx(39.478417604357434).epsilon(1e-10));
  CHECK(stein_constant(2, 1.5) == doctest::Approx(123.33824859522044).epsilon(1e-10));
  CHECK(stein_constant(2, 3.0) == doctest::Approx(1039.0303043626927).epsilon(1e-10));
  CHECK(stein_constant(3, 2.5) == doctest::Approx(887.07207441484552).epsilon(1e-10));
  CHECK_THROWS_AS(stein_constant(1, 2.0), ParameterError);
  CHECK_THROWS_AS(stein_constant(1, 0.0), ParameterError);
  CHECK(std::isfinite(stein_integrand(2, 3.0, 1e-8)));
  CHECK(stein_integrand(1, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("time differences") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d;
  SampledWindow w(16, 4);
  for (auto& v : w.samples()) v = cplx(d(rng), d(rng));
  const SampledWindow diff = apply_difference(w, {1, 3.0 / 16, DiffAxis::Time});
  CHECK(diff[10] == w[13] - w[10]);
  CHECK(diff[w.size() - 1] == -w[w.size() - 1]);
  const SampledWindow diff2 = apply_difference(w, {2, 1.0 / 16, DiffAxis::Time});
  CHECK(std::abs(diff2[20] - (w[22] - 2.0 * w[21] + w[20])) < 1e-14);
  CHECK_THROWS_AS(apply_difference(w, {2, 2.0, DiffAxis::Time}), TruncationLossError);
  CHECK_THROWS_AS(apply_difference(w, {1, 0.3 / 16, DiffAxis::Time}), GridAlignmentError);
}

TEST_CASE("Zak of a translate is the x-difference of the Zak grid") {
  // support in [-2, 2] keeps the translate inside the truncation
  SampledWindow w = gaussian_window(0.3, 32, 8);
  const DifferenceKernel k{1, 5.0 / 32, DiffAxis::Time};
  const ZakGrid lhs = zak_forward(apply_difference(w, k));
  const ZakGrid rhs = apply_difference(zak_forward(w), {1, 5.0 / 32, DiffAxis::ZakX});
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.values().size(); ++i) {
    worst = std::max(worst, std::abs(lhs.values()[i] - rhs.values()[i]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Sobolev functionals and the Stein identity") {
  const SampledWindow g = gaussian_window(1.0, 256, 16);
  const double C = stein_constant(1, 1.0);
  const double ratio = sobolev_functional(g, 1, 1.0, 8.0) / freq_moment(g, 1.0);
  CHECK(std::abs(ratio - C) / C <= 0.03);
  const double zak_ratio = zak_sobolev(zak_forward(g), 1, 1.0, DiffAxis::ZakX, 8.0) / freq_moment(g, 1.0);
  CHECK(std::abs(zak_ratio - C) / C <= 0.05);
}

TEST_CASE("shell sums are comparable with the time moment") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> d;
  SampledWindow w(16, 8);
  for (std::size_t m = 0; m < w.size(); ++m) {
    if (std::abs(w.t(m)) > 2.0) w[m] = cplx(d(rng), d(rng));
  }
  for (double s : {0.5, 1.0, 2.0}) {
    const double shell = weighted_shell_sum(w, s);
    const double moment = time_moment(w, s);
    CHECK(shell <= std::pow(2.0, s) * moment);
    CHECK(moment <= std::pow(2.0, s) * shell);
  }
}

TEST_CASE("moment report traces for the box window") {
  const MomentReport rep = moment_report({BoxSpec{}, 32, 4}, 2.0, 2.0, {32, 64, 128, 256});
  CHECK(rep.freq_verdict == Verdict::Divergent);
  CHECK(rep.time_verdict == Verdict::Convergent);
  CHECK(rep.freq_trace.size() == 4);
  CHECK(rep.freq_trace.back().K == 4);
}

}
