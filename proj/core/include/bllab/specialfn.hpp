#pragma once

// Closed-form special functions used by the window constructions: smooth
// cutoffs, the singular test family f_{alpha,beta}, the anisotropic moduli
// f_{alpha,beta,gamma} with their x-derivatives, the winding phase H_lambda,
// and the Lipschitz gauge phi_{r,s}. Everything here is pure.

#include <complex>
#include <optional>
#include <vector>

namespace bllab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// exp(2 pi i t), exact at multiples of 1/4.
cplx unit_phase(double t);

/// C-infinity step: 0 for u <= 0, 1 for u >= 1, exp(-1/u) / (exp(-1/u) + exp(-1/(1-u)))
/// in between. Satisfies S(u) + S(1-u) = 1.
double smoothstep(double u);

/// Transition half-width eta of the cutoff rho, 0 < eta < 1/4.
class BumpProfile {
 public:
  explicit BumpProfile(double eta = 0.1);
  double eta() const noexcept { return eta_; }

 private:
  double eta_;
};

/// Even cutoff: 1 on |t| <= eta, 0 on |t| >= 2 eta, rho(t) = S((2 eta - |t|) / eta).
double bump_rho(double t, const BumpProfile& profile);

/// Decreasing interpolant: 1 for t <= -2 eta, 0 for t >= 2 eta, and
/// nu(t) + nu(-t) = 1 on the band.
double transition_nu(double t, const BumpProfile& profile);

/// [1 + (1 - |x - 1/2|^alpha) e^{2 pi i y}]^{-beta}, principal branch.
/// Throws SingularPointError at (1/2, 1/2).
cplx f_ab(double x, double y, double alpha, double beta);

/// f_ab translated so that its singularity sits at (a, b) modulo 1.
cplx h_ab(double x, double y, double alpha, double beta, double a, double b);

/// (x^{alpha/gamma} + |y|^{beta/gamma})^gamma for x >= 0, with x replaced by
/// -a_neg * x for x < 0. Evaluated in log space so tiny powers do not underflow.
double f_abg(double x, double y, double alpha, double beta, double gamma, double a_neg = 1.0);

/// Coefficients C_{m,k}, m = 0..k, of the k-th x-derivative of P^gamma with
/// P = x^p + c: d^k/dx^k P^gamma = sum_m C_{m,k} P^{gamma-m} x^{m p - k}.
/// Built by differentiating the (k-1)-term expansion.
std::vector<double> derivative_coefficients(double p, double gamma, int k);

/// k-th partial derivative of f_abg in x. Requires (x, y) != (0, 0) and
/// gamma < min(alpha/k, beta/k, 1).
double f_abg_partial_x(double x, double y, double alpha, double beta, double gamma, int k,
                       double a_neg = 1.0);

/// Step used inside H: -1 on (-inf, 0], 0 on [1, inf), smooth and monotone between.
double winding_step(double u);

/// phi(y / x^lambda) for x > 0, 0 <= y <= x^lambda; 0 otherwise (origin included).
double H_lambda(double x, double y, double lambda);

/// f_abg(x, y) * exp(2 pi i H_{alpha/beta}(x, y)).
cplx F_abg(double x, double y, double alpha, double beta, double gamma, double a_neg = 1.0);

enum class PhiRegime { Supercritical, Critical, Subcritical };

/// Regime of phi_{r,s} from the sign of 3/r + 1/s - 1.
struct PhiExponentCase {
  double r;
  double s;
  PhiRegime regime;
  std::optional<double> exponent;  // set only when Supercritical

  static PhiExponentCase classify(double r, double s);
};

/// Lipschitz gauge phi_{r,s}(x); requires 1/r + 1/s < 1.
double phi_rs(double x, double r, double s);

/// Taylor coefficient of (1 - z)^{-beta}: beta (beta+1) ... (beta+n-1) / n!.
double taylor_b(int n, double beta);

}  // namespace bllab
