#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bllab/localization.hpp"
#include "bllab/tradeoff.hpp"
#include "bllab/windows.hpp"
#include "bllab/zak.hpp"

namespace bllab {

/// (min |G|, max |G|) over the grid.
std::pair<double, double> zak_min_max(const ZakGrid& G);

inline constexpr double kZeroCellTol = 1e-12;  // relative to max |G|
inline constexpr int kMaxZeroCells = 4;

/// Q-average of |G|^{-2q/(q-2)}; cells with |G| <= 1e-12 max|G| are skipped and
/// counted in `excluded`. Throws NumericError past four such cells.
double cq_mean(const ZakGrid& G, double q, int* excluded = nullptr);

struct CqTraceEntry {
  int N;
  double value;
  int excluded;
};

struct GramTraceEntry {
  int M;
  double ratio;    // random-probe constant, nondecreasing in M
  double q2_exact; // 1 / sqrt(lambda_min)
  bool not_cq;
};

struct CqReport {
  double q;
  std::vector<CqTraceEntry> integral_trace;
  std::vector<GramTraceEntry> gram_ratio_trace;
  Verdict verdict;
};

CqReport cq_integral_trace(const WindowSpec& spec, double q, const std::vector<int>& N_list);
CqReport cq_integral_trace(const SampledWindow& w, double q);

struct ZeroInfo {
  double x;
  double y;
  double magnitude;
  bool has_zero;  // false when min |G| >= 0.1 * rms |G|
  int j;
  int l;
};

/// Grid argmin of |G| with a parabolic sub-cell correction in each direction.
ZeroInfo find_zero(const ZakGrid& G);

/// max over lattice points outside the 2/N disc around (a, b) of
/// |G(x, y) - G(a, b)|^2 / (phi_{r,s}(x - a) + phi_{s,r}(y - b)), offsets in [-1/2, 1/2)^2.
double lipschitz_bound_check(const ZakGrid& G, double r, double s, double a, double b);

/// Least-squares slope of log|G(x0 + t, y0)| against log t for t = 0.1 * 2^{-i}, i < samples.
double zero_depth_slope(const std::function<cplx(double, double)>& G, double x0, double y0,
                        int samples = 16);

/// Same slope from grid values at offsets d = 1, 2, 4, ... with d/N <= 1/16
/// to the right of lattice point (j, l).
double zero_depth_slope_grid(const ZakGrid& G, int j, int l);

struct CoeffGrid {
  double alpha;
  double beta;
  int M;
  int fine_N;
  std::vector<cplx> coeffs;  // (m + M) * (2M + 1) + (n + M)
  double max_error_estimate;  // relative, over coefficients above 1e-12 max

  cplx at(int m, int n) const {
    return coeffs[static_cast<std::size_t>(m + M) * (2 * M + 1) + static_cast<std::size_t>(n + M)];
  }
};

/// Fourier coefficients of f_{alpha,beta} for |m|, |n| <= M. Expands the
/// power in e^{2 pi i y} and integrates the x-profile with composite
/// Gauss-Legendre on fine_N panels (after t = u^{1/alpha}); the error estimate
/// compares against 2 fine_N panels. Requires beta < 1 + 1/alpha, fine_N >= 8M.
CoeffGrid fourier_coeffs_fab(double alpha, double beta, int M, int fine_N);

struct LqTrace {
  double q;
  std::vector<int> Ms;
  std::vector<double> sums;
  double increment_slope;  // log-log slope of S(M_i) - S(M_{i-1})
  Verdict verdict;
};

/// S(M) = sum_{|m|,|n| <= M} |f^(m,n)|^q (max for q = inf). Verdict: Divergent
/// when the increments decay slower than M^{-1/2}, Convergent when faster and
/// the last relative increment is <= 5%.
LqTrace lq_partial_sums(const CoeffGrid& coeffs, double q, const std::vector<int>& M_list);

struct LowerBoundFit {
  // free fit: log|f^(2k,n)| = c0 + n_power log n + k_power log k - c2 n / k^alpha
  double c0;
  double n_power;
  double k_power;
  double c2;
  // fixed exponents (beta + 1, -(2 alpha + 1)): C1 from the lowest envelope.
  double fixed_C1;
  double fixed_C2;
  double fixed_shift;
  int points;
};

/// Fits over k in [k_lo, k_hi], n in [n_lo, n_hi]; needs 2 k_hi, n_hi <= M.
LowerBoundFit fit_coeff_lower_bound(const CoeffGrid& coeffs, int k_lo, int k_hi, int n_lo, int n_hi);

/// Gram matrix of {e^{2 pi i m t} g(t - n)}, |m|, |n| <= M, from the Zak side:
/// entry (m, n; m', n') is the Q-average of |Zg|^2 e^{2 pi i ((m - m') x - (n - n') y)}.
/// Index (m + M)(2M + 1) + (n + M). Throws TruncationLossError unless M < K/2.
Eigen::MatrixXcd gram_matrix(const SampledWindow& w, int M);

struct ProbeResult {
  double ratio;
  double q2_exact;
  bool not_cq;
};

inline constexpr int kDefaultTrials = 256;

/// max over nested index blocks |m|, |n| <= M' (M' = 0..M) and `trials`
/// complex Gaussian vectors a of ||a||_q / sqrt(a* Gram a).
ProbeResult cq_constant_probe(const Eigen::MatrixXcd& gram, double q, int trials = kDefaultTrials,
                              std::uint64_t seed = 0);

/// Per-vector ratio used by the probe.
double probe_ratio(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& a, double q);

/// Lower-bound ratio min |Upsilon|^2 / (|x|^alpha + |y|)^2 over the centred grid minus the origin.
double upsilon_lower_ratio(const WindowSpec& spec, int N);

/// Largest jump of the analytic Zak image across the fundamental-domain seams,
/// probed at `points` positions per seam with a one-sided offset delta.
double seam_jump(const WindowSpec& spec, int points = 20, double delta = 1e-13);

struct AnalyzeOptions {
  double r = 2.0;
  double s = 2.0;
  double q = 4.0;
  std::optional<double> q_test;  // defaults to q + 1
  std::vector<int> N_list{64, 128, 256};
  std::vector<int> M_list{2, 4, 8};
  std::uint64_t seed = 0;
  int trials = kDefaultTrials;
};

struct ZakTraceEntry {
  int N;
  double min;
  double max;
};

struct LipschitzEntry {
  int N;
  double value;
};

inline constexpr int kReportSchemaVersion = 1;

struct DiagnosticsReport {
  int schema_version = kReportSchemaVersion;
  AnalyzeOptions options;
  double q_test = 0.0;
  std::optional<WindowSpec> spec;
  std::optional<DerivedParams> params;
  std::optional<TradeoffPoint> point;
  MomentReport moments;
  std::vector<ZakTraceEntry> zak_trace;
  ZeroInfo zero;
  std::optional<double> zero_slope_grid;
  std::optional<double> zero_slope_analytic;
  std::vector<LipschitzEntry> lipschitz_trace;
  CqReport cq;
};

/// Builds the window at each N of the options and aggregates every diagnostic.
DiagnosticsReport analyze(const WindowSpec& spec, const AnalyzeOptions& options);

/// Single-resolution analysis of an existing window (traces have one entry).
DiagnosticsReport analyze(const SampledWindow& w, const AnalyzeOptions& options);

}  // namespace bllab
