#pragma once

#include <optional>
#include <string>
#include <variant>

#include "bllab/specialfn.hpp"
#include "bllab/zak.hpp"

namespace bllab {

struct GaussianSpec {
  double sigma = 1.0;
  bool operator==(const GaussianSpec&) const = default;
};

struct BoxSpec {
  bool operator==(const BoxSpec&) const = default;
};

/// Smooth construction for points above the flat branch (1/r + 3/s > 1).
struct CaseASpec {
  double r = 2.5;
  double s = 2.5;
  double q = 4.0;
  std::optional<double> eps;
  double eta = 0.1;
  bool operator==(const CaseASpec&) const = default;
};

/// Construction for points above the steep branch (1/r + 3/s <= 1).
struct CaseBSpec {
  double r = 1.5;
  double s = 20.0;
  double q = 4.0;
  std::optional<double> eps;
  double eta = 0.1;
  bool operator==(const CaseBSpec&) const = default;
};

/// s = infinity: the resulting window is supported in [-1, 1).
struct CompactSpec {
  double r = 1.5;
  double q = 4.0;
  std::optional<double> eps;
  double eta = 0.1;
  bool operator==(const CompactSpec&) const = default;
};

/// Window whose Zak transform is 1 / f_{alpha,beta}.
struct TestFASpec {
  double alpha = 0.5;
  double beta = 1.0;
  bool operator==(const TestFASpec&) const = default;
};

using WindowShape = std::variant<GaussianSpec, BoxSpec, CaseASpec, CaseBSpec, CompactSpec, TestFASpec>;

struct WindowSpec {
  WindowShape shape;
  int N = 128;
  int K = 0;  // 0 selects N/2

  int resolved_K() const { return K > 0 ? K : N / 2; }
  bool operator==(const WindowSpec&) const = default;
};

std::string shape_name(const WindowShape& shape);

struct DerivedParams {
  double eps = 0.0;
  double r_prime = 0.0;
  double s_prime = 0.0;  // +inf for the compact variant
  double alpha = 0.0;
  double beta = 0.0;     // 0 for the compact variant
  int k = 0;
  double gamma = 0.0;
  double a_neg = 1.0;
  bool operator==(const DerivedParams&) const = default;
};

/// Deterministic parameter choice for CaseA, CaseB and CompactSupport specs.
/// Throws ParameterRegionError when (1/r, 1/s) is not strictly above Gamma_q
/// or lies in the other construction's region; ParameterError for shapes
/// without derived parameters.
DerivedParams derive_params(const WindowSpec& spec);

/// Phase of the smooth construction. Defined on [-1/2, 1/2) x [0, 1) and
/// extended by Psi(x + 1, y) = Psi(x, y) + y - 1/2, Psi(x, y + 1) = Psi(x, y).
double build_psi(double x, double y, const DerivedParams& params, const BumpProfile& profile);

/// Modulus of the smooth construction, 1-periodic in both variables.
double build_phi(double x, double y, const DerivedParams& params, const BumpProfile& profile);

/// Theta on [-1/2, 1/2)^2. With params.s_prime infinite this is the
/// y-independent compact-support variant.
double build_theta(double x, double y, const DerivedParams& params, const BumpProfile& profile);

/// Upsilon(x, y) = Theta(x, y) - Theta(-x, y) e^{2 pi i y} on the square, extended by
/// Upsilon(x, y + 1) = Upsilon(x, y), Upsilon(x + 1, y) = -e^{2 pi i y} Upsilon(x, y).
cplx build_upsilon(double x, double y, const DerivedParams& params, const BumpProfile& profile);

/// Closed-form Zak image G(x, y) of a spec, valid on all of R^2.
class AnalyticZak {
 public:
  explicit AnalyticZak(const WindowSpec& spec);
  cplx operator()(double x, double y) const;
  const std::optional<DerivedParams>& params() const noexcept { return params_; }

 private:
  WindowSpec spec_;
  std::optional<DerivedParams> params_;
  BumpProfile profile_;
};

/// G sampled at (j/N, l/N).
ZakGrid analytic_grid(const WindowSpec& spec);

/// zak_inverse followed by scaling to unit norm.
SampledWindow synthesize(const ZakGrid& G, int K);

SampledWindow construct_case_a(const WindowSpec& spec);
SampledWindow construct_case_b(const WindowSpec& spec);
SampledWindow construct_compact(const WindowSpec& spec);

/// 2^{1/4} sigma^{-1/2} exp(-pi t^2 / sigma^2), normalized on the grid.
SampledWindow gaussian_window(double sigma, int N, int K);

/// Indicator of [0, 1).
SampledWindow box_window(int N, int K);

/// Dispatches on the spec's shape.
SampledWindow construct(const WindowSpec& spec);

}  // namespace bllab
