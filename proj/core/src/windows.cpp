#include "bllab/windows.hpp"

#include <cmath>
#include <limits>

#include "bllab/errors.hpp"
#include "bllab/parallel.hpp"
#include "bllab/tradeoff.hpp"

namespace bllab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reduces v into [-1/2, 1/2), returning the integer shift.
double centre(double v, long& shift) {
  const double p = std::floor(v + 0.5);
  shift = static_cast<long>(p);
  return v - p;
}

double centre(double v) {
  long unused = 0;
  return centre(v, unused);
}

// Positive root of a e^2 + b e + c = 0 with c < 0 < a.
double positive_root(double a, double b, double c) {
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  // Stable form: avoid cancellation when b > 0.
  return b > 0.0 ? (-2.0 * c) / (b + disc) : (-b + disc) / (2.0 * a);
}

double pick_eps(const std::optional<double>& pinned, double eps_max) {
  if (!(eps_max > 0.0)) throw ParameterRegionError("no admissible epsilon margin");
  if (!pinned) return 0.5 * eps_max;
  if (!(*pinned > 0.0 && *pinned < eps_max)) {
    throw ParameterError("eps must lie in (0, " + std::to_string(eps_max) + ")");
  }
  return *pinned;
}

void finish_smooth(DerivedParams& p) {
  const double slack = 1.0 - 1.0 / p.r_prime - 1.0 / p.s_prime;
  p.alpha = 0.5 * p.r_prime * slack;
  p.beta = 0.5 * p.s_prime * slack;
  if (!(p.alpha > 0.0 && p.beta > 0.0)) throw ParameterRegionError("alpha and beta must be positive");
  p.k = static_cast<int>(std::floor(0.5 * std::max(p.r_prime, p.s_prime))) + 1;
  p.gamma = 0.9 * std::min(p.alpha, p.beta) / p.k;
}

void check_pair(double r, double s) {
  if (!(r > 0.0 && s > 0.0) || !std::isfinite(r) || !std::isfinite(s)) {
    throw ParameterError("r and s must be positive and finite");
  }
  if (r > s) throw ParameterError("expected r <= s");
}

DerivedParams derive_case_a(const CaseASpec& a) {
  check_pair(a.r, a.s);
  double u = 1.0 / a.r;
  double v = 1.0 / a.s;
  const auto point = classify(u, v, a.q);
  if (point.classification != Region::Above) {
    throw ParameterRegionError("(1/r, 1/s) is not above Gamma_q");
  }
  if (u + 3.0 * v <= 1.0) throw ParameterRegionError("point needs the CaseB construction");
  const double h = flat_level(a.q);
  if (h >= 1.0) throw ParameterRegionError("no CaseA margin for q <= 2");
  if (u + v >= 1.0) {
    // Finite integrals of higher order imply the requested ones.
    const double scale = 0.5 * (1.0 + h) / (u + v);
    u *= scale;
    v *= scale;
  }
  const double r = 1.0 / u;
  const double s = 1.0 / v;
  DerivedParams p;
  p.eps = pick_eps(a.eps, positive_root(h, h * (r + s) - 2.0, h * r * s - r - s));
  p.r_prime = r + p.eps;
  p.s_prime = s + p.eps;
  finish_smooth(p);
  return p;
}

DerivedParams derive_case_b(const CaseBSpec& b) {
  check_pair(b.r, b.s);
  const double u = 1.0 / b.r;
  const double v = 1.0 / b.s;
  const auto point = classify(u, v, b.q);
  if (point.classification != Region::Above) {
    throw ParameterRegionError("(1/r, 1/s) is not above Gamma_q");
  }
  if (u + 3.0 * v > 1.0) throw ParameterRegionError("point needs the CaseA construction");
  const double c = steep_slope(b.q);
  DerivedParams p;
  p.eps = pick_eps(b.eps, positive_root(1.0, b.r + b.s - c - 1.0, b.r * b.s - c * b.s - b.r));
  p.r_prime = b.r + p.eps;
  p.s_prime = b.s + p.eps;
  finish_smooth(p);
  p.a_neg = std::pow(2.0, p.gamma / p.alpha);
  return p;
}

DerivedParams derive_compact(const CompactSpec& c) {
  if (!(c.r >= 1.0) || !std::isfinite(c.r)) throw ParameterError("compact variant needs r >= 1");
  const double top = steep_slope(c.q);
  if (!(c.r < top)) throw ParameterRegionError("compact variant needs r < (3q-2)/(q+2)");
  DerivedParams p;
  p.eps = pick_eps(c.eps, top - c.r);
  p.r_prime = c.r + p.eps;
  p.s_prime = kInf;
  p.alpha = 0.5 * (p.r_prime - 1.0);
  if (!(p.alpha > 0.0)) throw ParameterRegionError("compact variant needs r' > 1");
  p.a_neg = std::pow(2.0, 1.0 / p.alpha);
  return p;
}

double eta_of(const WindowShape& shape) {
  if (auto* a = std::get_if<CaseASpec>(&shape)) return a->eta;
  if (auto* b = std::get_if<CaseBSpec>(&shape)) return b->eta;
  if (auto* c = std::get_if<CompactSpec>(&shape)) return c->eta;
  return 0.1;
}

// Zak transform of a window given pointwise, by direct summation.
template <class F>
cplx zak_sum(F&& g, double x, double y, int reach) {
  cplx acc{};
  for (int k = -reach; k <= reach; ++k) acc += g(x - k) * unit_phase(k * (y - std::floor(y)));
  return acc;
}

double gaussian_value(double t, double sigma) {
  return std::pow(2.0, 0.25) * std::exp(-kPi * t * t / (sigma * sigma)) / std::sqrt(sigma);
}

SampledWindow normalized(SampledWindow w) {
  const double n = std::sqrt(w.norm_sq());
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericError("window has zero or non-finite norm");
  for (auto& v : w.samples()) v /= n;
  return w;
}

}  // namespace

std::string shape_name(const WindowShape& shape) {
  static const char* names[] = {"Gaussian", "Box", "CaseA", "CaseB", "CompactSupport", "TestFA"};
  return names[shape.index()];
}

DerivedParams derive_params(const WindowSpec& spec) {
  if (auto* a = std::get_if<CaseASpec>(&spec.shape)) return derive_case_a(*a);
  if (auto* b = std::get_if<CaseBSpec>(&spec.shape)) return derive_case_b(*b);
  if (auto* c = std::get_if<CompactSpec>(&spec.shape)) return derive_compact(*c);
  throw ParameterError("derive_params: " + shape_name(spec.shape) + " has no derived parameters");
}

double build_psi(double x, double y, const DerivedParams& params, const BumpProfile& profile) {
  long p = 0;
  const double x0 = centre(x, p);
  const double y0 = y - std::floor(y);
  double base = 0.0;
  if (x0 > 0.0) {
    const double rho = bump_rho(x0, profile);
    base = rho * H_lambda(x0, y0, params.alpha / params.beta) + (1.0 - rho) * (y0 - 0.5);
  }
  return base + static_cast<double>(p) * (y0 - 0.5);
}

double build_phi(double x, double y, const DerivedParams& params, const BumpProfile& profile) {
  const double x0 = centre(x);
  const double y0 = centre(y);
  const double rx = bump_rho(x0, profile);
  const double ry = bump_rho(y0, profile);
  const double core = f_abg(std::abs(x0), y0, params.alpha, params.beta, params.gamma);
  return ry * (rx * core + 1.0 - rx) + 1.0 - ry;
}

double build_theta(double x, double y, const DerivedParams& params, const BumpProfile& profile) {
  const double rx = bump_rho(x, profile);
  if (std::isinf(params.s_prime)) {
    if (x < 0.0) return rx * (2.0 * std::pow(-x, params.alpha) + 1.0) + 1.0 - rx;
    return rx * (std::pow(x, params.alpha) + 1.0);
  }
  const double modulus = f_abg(x, y, params.alpha, params.beta, params.gamma, params.a_neg);
  const double theta0 = x < 0.0 ? rx * (modulus + 1.0) + 1.0 - rx : rx * (modulus + 1.0);
  const double ry = bump_rho(y, profile);
  return ry * theta0 + (1.0 - ry) * transition_nu(x, profile);
}

cplx build_upsilon(double x, double y, const DerivedParams& params, const BumpProfile& profile) {
  long p = 0;
  const double x0 = centre(x, p);
  const double y0 = centre(y);
  const cplx base = build_theta(x0, y0, params, profile) -
                    build_theta(-x0, y0, params, profile) * unit_phase(y0);
  if (p == 0) return base;
  // (-e^{2 pi i y})^p = e^{2 pi i p (y + 1/2)}
  const double turns = static_cast<double>(p) * (y0 - std::floor(y0) + 0.5);
  return unit_phase(turns) * base;
}

AnalyticZak::AnalyticZak(const WindowSpec& spec) : spec_(spec), profile_(eta_of(spec.shape)) {
  if (std::holds_alternative<CaseASpec>(spec.shape) ||
      std::holds_alternative<CaseBSpec>(spec.shape) ||
      std::holds_alternative<CompactSpec>(spec.shape)) {
    params_ = derive_params(spec);
  }
  if (auto* g = std::get_if<GaussianSpec>(&spec.shape); g && !(g->sigma > 0.0)) {
    throw ParameterError("sigma must be positive");
  }
  if (auto* t = std::get_if<TestFASpec>(&spec.shape); t && !(t->alpha > 0.0 && t->beta > 0.0)) {
    throw ParameterError("alpha and beta must be positive");
  }
}

cplx AnalyticZak::operator()(double x, double y) const {
  switch (spec_.shape.index()) {
    case 0: {
      const double sigma = std::get<GaussianSpec>(spec_.shape).sigma;
      const int reach = static_cast<int>(std::ceil(7.0 * sigma)) + 2;
      return zak_sum([sigma](double t) { return cplx(gaussian_value(t, sigma), 0.0); }, x, y, reach);
    }
    case 1: return unit_phase(std::floor(x) * (y - std::floor(y)));
    case 2:
      return build_phi(x - 0.5, y - 0.5, *params_, profile_) *
             unit_phase(build_psi(x - 0.5, y - 0.5, *params_, profile_));
    case 3:
    case 4: return build_upsilon(x - 0.5, y - 0.5, *params_, profile_);
    case 5: {
      const auto& t = std::get<TestFASpec>(spec_.shape);
      const double p = std::floor(x);
      const double x0 = x - p;
      const double y0 = y - std::floor(y);
      const cplx base = 1.0 + (1.0 - std::pow(std::abs(x0 - 0.5), t.alpha)) * unit_phase(y0);
      const cplx value = base == cplx(0.0, 0.0) ? cplx{} : std::exp(t.beta * std::log(base));
      return unit_phase(p * y0) * value;
    }
    default: break;
  }
  throw ParameterError("unknown window shape");
}

ZakGrid analytic_grid(const WindowSpec& spec) {
  if (spec.N <= 0) throw ParameterError("N must be positive");
  const AnalyticZak G(spec);
  const int N = spec.N;
  ZakGrid grid(N);
  parallel_for(0, static_cast<std::size_t>(N), [&](std::size_t j) {
    const double x = static_cast<double>(j) / N;
    for (int l = 0; l < N; ++l) grid(static_cast<int>(j), l) = G(x, static_cast<double>(l) / N);
  });
  for (const auto& v : grid.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericError("analytic Zak grid contains non-finite values");
    }
  }
  return grid;
}

SampledWindow synthesize(const ZakGrid& G, int K) { return normalized(zak_inverse(G, K)); }

namespace {

template <class Shape>
SampledWindow construct_as(const WindowSpec& spec, const char* what) {
  if (!std::holds_alternative<Shape>(spec.shape)) {
    throw ParameterError(std::string(what) + ": spec has shape " + shape_name(spec.shape));
  }
  const int K = spec.resolved_K();
  if (2 * K > spec.N) throw NyquistError(std::string(what) + ": need N >= 2K");
  return synthesize(analytic_grid(spec), K);
}

}  // namespace

SampledWindow construct_case_a(const WindowSpec& spec) {
  return construct_as<CaseASpec>(spec, "construct_case_a");
}

SampledWindow construct_case_b(const WindowSpec& spec) {
  return construct_as<CaseBSpec>(spec, "construct_case_b");
}

SampledWindow construct_compact(const WindowSpec& spec) {
  return construct_as<CompactSpec>(spec, "construct_compact");
}

SampledWindow gaussian_window(double sigma, int N, int K) {
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  if (N <= 0 || K <= 0) throw ParameterError("N and K must be positive");
  if (2 * K > N) throw NyquistError("gaussian_window: need N >= 2K");
  SampledWindow w(N, K);
  for (std::size_t m = 0; m < w.size(); ++m) w[m] = gaussian_value(w.t(m), sigma);
  return normalized(std::move(w));
}

SampledWindow box_window(int N, int K) {
  if (N <= 0 || K <= 0) throw ParameterError("N and K must be positive");
  if (2 * K > N) throw NyquistError("box_window: need N >= 2K");
  SampledWindow w(N, K);
  const std::size_t start = static_cast<std::size_t>(K) * N;
  for (int m = 0; m < N; ++m) w[start + m] = 1.0;
  return w;
}

SampledWindow construct(const WindowSpec& spec) {
  switch (spec.shape.index()) {
    case 0: return gaussian_window(std::get<GaussianSpec>(spec.shape).sigma, spec.N, spec.resolved_K());
    case 1: return box_window(spec.N, spec.resolved_K());
    case 2: return construct_case_a(spec);
    case 3: return construct_case_b(spec);
    case 4: return construct_compact(spec);
    default: return construct_as<TestFASpec>(spec, "construct");
  }
}

}  // namespace bllab
