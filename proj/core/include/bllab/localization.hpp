#pragma once

#include <vector>

#include "bllab/windows.hpp"
#include "bllab/zak.hpp"

namespace bllab {

enum class Verdict { Divergent, Convergent, Inconclusive };

const char* verdict_name(Verdict v);

/// Three-outcome rule on a refinement trace recorded at successive doublings:
/// Divergent if three consecutive steps each grow by >= 1.3, Convergent if
/// every relative change is <= 5%, Inconclusive otherwise.
Verdict trace_verdict(const std::vector<double>& values);

struct TraceEntry {
  int N;
  int K;
  double value;
};

struct MomentReport {
  double r;
  double s;
  double time_moment;  // at the finest resolution
  double freq_moment;
  std::vector<TraceEntry> time_trace;
  std::vector<TraceEntry> freq_trace;
  Verdict time_verdict;
  Verdict freq_verdict;
};

/// (1/N) sum |t_m|^s |g_m|^2
double time_moment(const SampledWindow& w, double s);

/// g^ on the dual grid xi_p = p / (2K), p = -NK .. NK - 1, with
/// g^(xi) ~ (1/N) sum_m g_m exp(-2 pi i t_m xi).
struct Spectrum {
  double dxi;
  std::vector<double> xi;
  std::vector<cplx> values;
};

Spectrum spectrum(const SampledWindow& w);

/// sum |xi_p|^r |g^(xi_p)|^2 dxi
double freq_moment(const SampledWindow& w, double r);

enum class DiffAxis { Time, ZakX, ZakY };

struct DifferenceKernel {
  int order;
  double h;  // nonzero multiple of 1/N
  DiffAxis axis;
};

/// k-fold forward difference g(t + h) - g(t) along time; samples beyond the
/// truncation count as zero. Throws TruncationLossError if |h| k >= K.
SampledWindow apply_difference(const SampledWindow& w, const DifferenceKernel& kernel);

/// k-fold forward difference along x (ZakX) or y (ZakY) using the
/// quasi-periodic extension of the grid.
ZakGrid apply_difference(const ZakGrid& G, const DifferenceKernel& kernel);

/// Integrand |e^{2 pi i h} - 1|^{2k} / |h|^{1+r}.
double stein_integrand(int k, double r, double h);

/// C(k, r) = int_R |e^{2 pi i h} - 1|^{2k} / |h|^{1+r} dh for 0 < r < 2k.
double stein_constant(int k, double r);

/// Riemann sum over h in (1/N)Z, 0 < |h| <= h_max, of ||tau_h^k g||^2 / |h|^{1+r},
/// plus the mean-value tail 2 C(2k, k) ||g||^2 h_max^{-r} / r.
double sobolev_functional(const SampledWindow& w, int k, double r, double h_max);

/// Same functional on the Zak side, along x (Delta_h) or y (Gamma_h).
/// ZakY uses the tail 2 C(2k, k) (||G||^2 - m0) h_max^{-s} / s with m0 the
/// mass of the y-mean of G.
double zak_sobolev(const ZakGrid& G, int k, double exponent, DiffAxis axis, double h_max);

/// sum_n |n|^s (1/N) sum_{t_m in [n, n+1)} |g_m|^2
double weighted_shell_sum(const SampledWindow& w, double s);

/// Moments of the windows built from spec at each N (K from the spec).
MomentReport moment_report(const WindowSpec& spec, double r, double s, const std::vector<int>& N_list);

}  // namespace bllab
