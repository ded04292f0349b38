#include "bllab/specialfn.hpp"

#include <cmath>
#include <limits>

#include "bllab/errors.hpp"

namespace bllab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(name) + " must be a positive finite number");
  }
}

}  // namespace

cplx unit_phase(double t) {
  const double frac = t - std::floor(t);
  const double quarter = 4.0 * frac;
  if (quarter == std::floor(quarter)) {
    switch (static_cast<int>(quarter)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  const double centred = frac > 0.5 ? frac - 1.0 : frac;
  const double angle = 2.0 * kPi * centred;
  return {std::cos(angle), std::sin(angle)};
}

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

BumpProfile::BumpProfile(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta < 0.25)) throw ParameterError("eta must lie in (0, 1/4)");
}

double bump_rho(double t, const BumpProfile& profile) {
  const double eta = profile.eta();
  return smoothstep((2.0 * eta - std::abs(t)) / eta);
}

double transition_nu(double t, const BumpProfile& profile) {
  const double eta = profile.eta();
  if (t <= -2.0 * eta) return 1.0;
  if (t >= 2.0 * eta) return 0.0;
  return smoothstep((2.0 * eta - t) / (4.0 * eta));
}

cplx f_ab(double x, double y, double alpha, double beta) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  const cplx base = 1.0 + (1.0 - std::pow(std::abs(x - 0.5), alpha)) * unit_phase(y);
  if (base == cplx(0.0, 0.0)) {
    throw SingularPointError("f_ab: base vanishes at (1/2, 1/2)");
  }
  return std::exp(-beta * std::log(base));
}

cplx h_ab(double x, double y, double alpha, double beta, double a, double b) {
  const auto wrap = [](double v) { return v - std::floor(v); };
  return f_ab(wrap(x - a + 0.5), wrap(y - b + 0.5), alpha, beta);
}

double f_abg(double x, double y, double alpha, double beta, double gamma, double a_neg) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(gamma, "gamma");
  require_positive(a_neg, "a_neg");
  const double ax = x >= 0.0 ? x : -a_neg * x;
  const double log_p =
      log_add_exp((alpha / gamma) * safe_log(ax), (beta / gamma) * safe_log(std::abs(y)));
  if (log_p == kNegInf) return 0.0;
  return std::exp(gamma * log_p);
}

std::vector<double> derivative_coefficients(double p, double gamma, int k) {
  if (k < 0) throw ParameterError("derivative order must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c[0] = 1.0;
  for (int order = 1; order <= k; ++order) {
    std::vector<double> next(c.size(), 0.0);
    for (int m = 0; m <= order; ++m) {
      double v = 0.0;
      // d/dx [P^{g-m} x^{mp-(order-1)}] feeds (m+1, order) and (m, order).
      if (m >= 1) v += c[m - 1] * (gamma - (m - 1)) * p;
      if (m <= order - 1) v += c[m] * (m * p - (order - 1));
      next[m] = v;
    }
    c = std::move(next);
  }
  return c;
}

double f_abg_partial_x(double x, double y, double alpha, double beta, double gamma, int k,
                       double a_neg) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(gamma, "gamma");
  require_positive(a_neg, "a_neg");
  if (k < 1) throw ParameterError("derivative order k must be >= 1");
  if (!(gamma < std::min({alpha / k, beta / k, 1.0}))) {
    throw ParameterError("gamma must be below min(alpha/k, beta/k, 1)");
  }
  if (x == 0.0 && y == 0.0) throw SingularPointError("f_abg_partial_x: origin");

  const double p = alpha / gamma;
  const double u = x >= 0.0 ? x : -a_neg * x;
  const double log_u = safe_log(u);
  const double log_p = log_add_exp(p * log_u, (beta / gamma) * safe_log(std::abs(y)));
  const auto coeffs = derivative_coefficients(p, gamma, k);

  double sum = 0.0;
  for (int m = 1; m <= k; ++m) {
    if (coeffs[m] == 0.0) continue;
    const double power = m * p - k;  // > 0 under the gamma constraint
    if (u == 0.0) continue;
    sum += coeffs[m] * std::exp((gamma - m) * log_p + power * log_u);
  }
  if (x < 0.0) sum *= std::pow(-a_neg, k);
  return sum;
}

double winding_step(double u) { return smoothstep(u) - 1.0; }

double H_lambda(double x, double y, double lambda) {
  require_positive(lambda, "lambda");
  if (!(x > 0.0) || y < 0.0) return 0.0;
  const double top = std::pow(x, lambda);
  if (y > top) return 0.0;
  return winding_step(y / top);
}

cplx F_abg(double x, double y, double alpha, double beta, double gamma, double a_neg) {
  const double modulus = f_abg(x, y, alpha, beta, gamma, a_neg);
  return modulus * unit_phase(H_lambda(x, y, alpha / beta));
}

PhiExponentCase PhiExponentCase::classify(double r, double s) {
  require_positive(r, "r");
  require_positive(s, "s");
  if (!(1.0 / r + 1.0 / s < 1.0)) throw ParameterError("phi_rs requires 1/r + 1/s < 1");
  const double lead = 3.0 / r + 1.0 / s;
  PhiExponentCase out{r, s, PhiRegime::Critical, std::nullopt};
  if (std::abs(lead - 1.0) <= 1e-12) return out;
  if (lead > 1.0) {
    out.regime = PhiRegime::Supercritical;
    out.exponent = 2.0 - r * (lead - 1.0);
  } else {
    out.regime = PhiRegime::Subcritical;
  }
  return out;
}

double phi_rs(double x, double r, double s) {
  const auto regime = PhiExponentCase::classify(r, s);
  const double ax = std::abs(x);
  switch (regime.regime) {
    case PhiRegime::Supercritical: return std::pow(ax, *regime.exponent);
    case PhiRegime::Critical: return ax == 0.0 ? 0.0 : ax * ax * std::log1p(1.0 / ax);
    case PhiRegime::Subcritical: return ax * ax;
  }
  return 0.0;
}

double taylor_b(int n, double beta) {
  if (n < 0) throw ParameterError("taylor_b: n must be non-negative");
  require_positive(beta, "beta");
  double b = 1.0;
  for (int j = 0; j < n; ++j) b = b * (beta + j) / (j + 1);
  return b;
}

}  // namespace bllab
