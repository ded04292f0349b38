#include "bllab/localization.hpp"

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <string>

#include "bllab/errors.hpp"
#include "bllab/parallel.hpp"
#include "fft.hpp"

namespace bllab {

namespace {

double binom(int n, int k) { return boost::math::binomial_coefficient<double>(n, k); }

void check_order(int k, double r) {
  if (k < 1) throw ParameterError("difference order must be >= 1");
  if (!(r > 0.0 && r < 2.0 * k)) {
    throw ParameterError("exponent must lie in (0, 2k) = (0, " + std::to_string(2 * k) + ")");
  }
}

long lattice_steps(double h, int N) {
  const double d = h * N;
  const double rd = std::nearbyint(d);
  if (!std::isfinite(d) || std::abs(d - rd) > 1e-9 * std::max(1.0, std::abs(rd))) {
    throw GridAlignmentError("difference step is not a multiple of 1/N");
  }
  if (rd == 0.0) throw ParameterError("difference step must be nonzero");
  return static_cast<long>(rd);
}

// Signed binomial weights of the k-th forward difference: sum_j w_j f(t + j h).
std::vector<double> difference_weights(int k) {
  std::vector<double> w(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) w[j] = ((k - j) % 2 == 0 ? 1.0 : -1.0) * binom(k, j);
  return w;
}

double mass(const std::vector<cplx>& v) {
  std::vector<double> m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = std::norm(v[i]);
  return pairwise_sum(m);
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Divergent: return "Divergent";
    case Verdict::Convergent: return "Convergent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict trace_verdict(const std::vector<double>& values) {
  if (values.size() < 2) return Verdict::Inconclusive;
  int run = 0;
  bool steady = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double prev = values[i - 1];
    const double cur = values[i];
    if (!std::isfinite(cur) || !std::isfinite(prev)) return Verdict::Divergent;
    run = (prev > 0.0 && cur >= 1.3 * prev) ? run + 1 : 0;
    if (run >= 3) return Verdict::Divergent;
    const double scale = std::max(std::abs(prev), std::abs(cur));
    if (scale > 0.0 && std::abs(cur - prev) > 0.05 * scale) steady = false;
  }
  return steady ? Verdict::Convergent : Verdict::Inconclusive;
}

double time_moment(const SampledWindow& w, double s) {
  if (!(s >= 0.0)) throw ParameterError("time_moment: s must be >= 0");
  std::vector<double> terms(w.size());
  for (std::size_t m = 0; m < w.size(); ++m) {
    terms[m] = std::pow(std::abs(w.t(m)), s) * std::norm(w[m]);
  }
  return pairwise_sum(terms) / w.N();
}

Spectrum spectrum(const SampledWindow& w) {
  const std::size_t L = w.size();
  const long half = static_cast<long>(L / 2);
  std::vector<cplx> raw(L);
  detail::dft(w.samples(), raw, detail::FftSign::Forward);
  Spectrum out;
  out.dxi = 1.0 / (2.0 * w.K());
  out.xi.resize(L);
  out.values.resize(L);
  const double scale = 1.0 / w.N();
  for (long p = -half; p < half; ++p) {
    const std::size_t slot = static_cast<std::size_t>(p + half);
    const std::size_t bin = static_cast<std::size_t>(p < 0 ? p + static_cast<long>(L) : p);
    // t_0 = -K contributes exp(2 pi i K xi_p) = (-1)^p.
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    out.xi[slot] = static_cast<double>(p) * out.dxi;
    out.values[slot] = sign * scale * raw[bin];
  }
  return out;
}

double freq_moment(const SampledWindow& w, double r) {
  if (!(r >= 0.0)) throw ParameterError("freq_moment: r must be >= 0");
  const Spectrum sp = spectrum(w);
  std::vector<double> terms(sp.xi.size());
  for (std::size_t p = 0; p < terms.size(); ++p) {
    terms[p] = std::pow(std::abs(sp.xi[p]), r) * std::norm(sp.values[p]);
  }
  return pairwise_sum(terms) * sp.dxi;
}

SampledWindow apply_difference(const SampledWindow& w, const DifferenceKernel& kernel) {
  if (kernel.axis != DiffAxis::Time) throw ParameterError("window differences need the Time axis");
  if (kernel.order < 1) throw ParameterError("difference order must be >= 1");
  const long d = lattice_steps(kernel.h, w.N());
  if (std::abs(kernel.h) * kernel.order >= w.K()) {
    throw TruncationLossError("difference stencil |h| k reaches beyond [-K, K)");
  }
  const auto weights = difference_weights(kernel.order);
  const long len = static_cast<long>(w.size());
  SampledWindow out(w.N(), w.K());
  for (long m = 0; m < len; ++m) {
    cplx acc{};
    for (int j = 0; j <= kernel.order; ++j) {
      const long src = m + j * d;
      if (src >= 0 && src < len) acc += weights[j] * w[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

ZakGrid apply_difference(const ZakGrid& G, const DifferenceKernel& kernel) {
  if (kernel.axis == DiffAxis::Time) throw ParameterError("Zak differences need ZakX or ZakY");
  if (kernel.order < 1) throw ParameterError("difference order must be >= 1");
  const int N = G.N();
  const long d = lattice_steps(kernel.h, N);
  const auto weights = difference_weights(kernel.order);
  const bool along_x = kernel.axis == DiffAxis::ZakX;
  ZakGrid out(N);
  for (int j = 0; j < N; ++j) {
    for (int l = 0; l < N; ++l) {
      cplx acc{};
      for (int i = 0; i <= kernel.order; ++i) {
        acc += weights[i] * (along_x ? G.lattice(j + i * d, l) : G.lattice(j, l + i * d));
      }
      out(j, l) = acc;
    }
  }
  return out;
}

double stein_integrand(int k, double r, double h) {
  if (h == 0.0) return 0.0;
  const double a = std::abs(h);
  // (2 sin(pi h) / h)^{2k} |h|^{2k-1-r} stays finite for tiny h.
  const double ratio = 2.0 * std::sin(kPi * a) / a;
  return std::pow(ratio, 2 * k) * std::pow(a, 2.0 * k - 1.0 - r);
}

double stein_constant(int k, double r) {
  check_order(k, r);
  boost::math::quadrature::tanh_sinh<double> near;
  const double head = near.integrate([&](double h) { return stein_integrand(k, r, h); }, 0.0, 1.0);

  // On [1, inf): (2 - 2 cos 2 pi h)^k = C(2k,k) + 2 sum_j (-1)^j C(2k,k-j) cos(2 pi j h).
  double tail = binom(2 * k, k) / r;
  boost::math::quadrature::ooura_fourier_cos<double> osc(1e-12);
  for (int j = 1; j <= k; ++j) {
    const auto f = [r](double u) { return std::pow(u + 1.0, -1.0 - r); };
    const double part = osc.integrate(f, 2.0 * kPi * j).first;
    tail += 2.0 * ((j % 2 == 0) ? 1.0 : -1.0) * binom(2 * k, k - j) * part;
  }
  return 2.0 * (head + tail);
}

double sobolev_functional(const SampledWindow& w, int k, double r, double h_max) {
  check_order(k, r);
  if (!(h_max > 0.0)) throw ParameterError("h_max must be positive");
  const int N = w.N();
  const long dmax = static_cast<long>(std::floor(h_max * N + 1e-9));
  if (dmax < 1) throw ParameterError("h_max is below the grid step");
  if (static_cast<double>(dmax) / N * k >= w.K()) {
    throw TruncationLossError("sobolev_functional: h_max k must stay below K");
  }
  std::vector<double> terms(static_cast<std::size_t>(2 * dmax));
  parallel_for(0, terms.size(), [&](std::size_t i) {
    const long d = static_cast<long>(i) < dmax ? static_cast<long>(i) - dmax : static_cast<long>(i) - dmax + 1;
    const double h = static_cast<double>(d) / N;
    const SampledWindow diff = apply_difference(w, {k, h, DiffAxis::Time});
    terms[i] = diff.norm_sq() / std::pow(std::abs(h), 1.0 + r);
  });
  const double hm = static_cast<double>(dmax) / N;
  const double tail = 2.0 * binom(2 * k, k) * w.norm_sq() * std::pow(hm, -r) / r;
  return pairwise_sum(terms) / N + tail;
}

double zak_sobolev(const ZakGrid& G, int k, double exponent, DiffAxis axis, double h_max) {
  check_order(k, exponent);
  if (axis == DiffAxis::Time) throw ParameterError("zak_sobolev needs ZakX or ZakY");
  if (!(h_max > 0.0)) throw ParameterError("h_max must be positive");
  const int N = G.N();
  const long dmax = static_cast<long>(std::floor(h_max * N + 1e-9));
  if (dmax < 1) throw ParameterError("h_max is below the grid step");
  const double cells = static_cast<double>(N) * N;
  std::vector<double> terms(static_cast<std::size_t>(2 * dmax));
  parallel_for(0, terms.size(), [&](std::size_t i) {
    const long d = static_cast<long>(i) < dmax ? static_cast<long>(i) - dmax : static_cast<long>(i) - dmax + 1;
    const double h = static_cast<double>(d) / N;
    const ZakGrid diff = apply_difference(G, {k, h, axis});
    terms[i] = mass(diff.values()) / cells / std::pow(std::abs(h), 1.0 + exponent);
  });
  const double hm = static_cast<double>(dmax) / N;
  double level = mass(G.values()) / cells;
  if (axis == DiffAxis::ZakY) {
    // The k = 0 Fourier mode in y is annihilated by Gamma_h.
    std::vector<double> rows(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
      cplx avg{};
      for (int l = 0; l < N; ++l) avg += G(j, l);
      rows[j] = std::norm(avg / static_cast<double>(N));
    }
    level -= pairwise_sum(rows) / N;
  }
  const double tail = 2.0 * binom(2 * k, k) * level * std::pow(hm, -exponent) / exponent;
  return pairwise_sum(terms) / N + tail;
}

double weighted_shell_sum(const SampledWindow& w, double s) {
  if (!(s >= 0.0)) throw ParameterError("weighted_shell_sum: s must be >= 0");
  const int N = w.N();
  const int K = w.K();
  std::vector<double> shells(static_cast<std::size_t>(2 * K));
  for (int shell = 0; shell < 2 * K; ++shell) {
    const long n = shell - K;
    if (n == 0) continue;
    std::vector<double> m(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) m[i] = std::norm(w[static_cast<std::size_t>(shell) * N + i]);
    shells[shell] = std::pow(std::abs(static_cast<double>(n)), s) * pairwise_sum(m) / N;
  }
  return pairwise_sum(shells);
}

MomentReport moment_report(const WindowSpec& spec, double r, double s, const std::vector<int>& N_list) {
  if (N_list.empty()) throw ParameterError("moment_report: empty N list");
  MomentReport rep{r, s, 0.0, 0.0, {}, {}, Verdict::Inconclusive, Verdict::Inconclusive};
  std::vector<double> tv, fv;
  for (int N : N_list) {
    WindowSpec at = spec;
    at.N = N;
    const SampledWindow w = construct(at);
    const double t = time_moment(w, s);
    const double f = freq_moment(w, r);
    rep.time_trace.push_back({N, w.K(), t});
    rep.freq_trace.push_back({N, w.K(), f});
    tv.push_back(t);
    fv.push_back(f);
  }
  rep.time_moment = tv.back();
  rep.freq_moment = fv.back();
  rep.time_verdict = trace_verdict(tv);
  rep.freq_verdict = trace_verdict(fv);
  return rep;
}

}  // namespace bllab
