#include "bllab/zak.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bllab/errors.hpp"
#include "bllab/parallel.hpp"
#include "bllab/specialfn.hpp"
#include "fft.hpp"

namespace bllab {

namespace {

long floor_mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

long floor_div(long a, long n) { return (a - floor_mod(a, n)) / n; }

// exp(2 pi i p / N) with p reduced first so the argument stays small.
cplx lattice_phase(long p, long N) {
  return unit_phase(static_cast<double>(floor_mod(p, N)) / static_cast<double>(N));
}

double sum_abs_sq(const std::vector<cplx>& v) {
  std::vector<double> mags(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::norm(v[i]);
  return pairwise_sum(mags);
}

}  // namespace

SampledWindow::SampledWindow(int N, int K, std::vector<cplx> samples)
    : N_(N), K_(K), samples_(std::move(samples)) {
  if (N <= 0 || K <= 0) throw ParameterError("SampledWindow: N and K must be positive");
  if (2 * K > N) throw NyquistError("SampledWindow: need N >= 2K");
  if (samples_.size() != static_cast<std::size_t>(2) * K * N) {
    throw ParameterError("SampledWindow: expected " + std::to_string(2L * K * N) + " samples");
  }
}

SampledWindow::SampledWindow(int N, int K)
    : SampledWindow(N, K, std::vector<cplx>(static_cast<std::size_t>(2) * std::max(K, 0) * std::max(N, 0))) {}

double SampledWindow::norm_sq() const { return sum_abs_sq(samples_) / N_; }

ZakGrid::ZakGrid(int N) : ZakGrid(N, std::vector<cplx>(static_cast<std::size_t>(std::max(N, 0)) * std::max(N, 0))) {}

ZakGrid::ZakGrid(int N, std::vector<cplx> values) : N_(N), values_(std::move(values)) {
  if (N <= 0) throw ParameterError("ZakGrid: N must be positive");
  if (values_.size() != static_cast<std::size_t>(N) * N) {
    throw ParameterError("ZakGrid: expected N*N values");
  }
}

cplx ZakGrid::lattice(long i, long j) const {
  const long n = N_;
  const long p = floor_div(i, n);
  const long j0 = floor_mod(i, n);
  const long l0 = floor_mod(j, n);
  const cplx base = values_[static_cast<std::size_t>(j0 * n + l0)];
  if (p == 0) return base;
  return lattice_phase(floor_mod(p, n) * l0, n) * base;
}

ZakGrid zak_forward(const SampledWindow& w) {
  const int N = w.N();
  const int K = w.K();
  std::vector<cplx> rows(static_cast<std::size_t>(N) * N, cplx{});
  // Row j collects g(j/N - k) at position k mod N; 2K <= N means no aliasing.
  for (int j = 0; j < N; ++j) {
    for (int k = -K + 1; k <= K; ++k) {
      const std::size_t m = static_cast<std::size_t>(j) + static_cast<std::size_t>(K - k) * N;
      rows[static_cast<std::size_t>(j) * N + floor_mod(k, N)] = w[m];
    }
  }
  ZakGrid G(N);
  detail::dft_rows(rows, G.values(), N, N, detail::FftSign::Backward);
  return G;
}

SampledWindow zak_inverse(const ZakGrid& G, int K) {
  const int N = G.N();
  if (K <= 0) throw ParameterError("zak_inverse: K must be positive");
  if (2 * K > N) {
    throw NyquistError("zak_inverse: 2K = " + std::to_string(2 * K) + " exceeds N = " +
                       std::to_string(N));
  }
  std::vector<cplx> rows(G.values().size());
  detail::dft_rows(G.values(), rows, N, N, detail::FftSign::Forward);
  SampledWindow w(N, K);
  const double scale = 1.0 / N;
  for (int j = 0; j < N; ++j) {
    for (int k = -K + 1; k <= K; ++k) {
      const std::size_t m = static_cast<std::size_t>(j) + static_cast<std::size_t>(K - k) * N;
      w[m] = rows[static_cast<std::size_t>(j) * N + floor_mod(k, N)] * scale;
    }
  }
  return w;
}

cplx quasi_extend(const ZakGrid& G, double x, double y) {
  const double N = G.N();
  const double xi = x * N;
  const double yi = y * N;
  const double ri = std::nearbyint(xi);
  const double rj = std::nearbyint(yi);
  const auto off = [](double v, double r) { return std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(r)); };
  if (!std::isfinite(xi) || !std::isfinite(yi) || off(xi, ri) || off(yi, rj)) {
    throw GridAlignmentError("quasi_extend: point is not on the 1/N lattice");
  }
  return G.lattice(static_cast<long>(ri), static_cast<long>(rj));
}

SampledWindow gabor_atom(const SampledWindow& w, int m, int n) {
  const long N = w.N();
  const long len = static_cast<long>(w.size());
  const long shift = static_cast<long>(n) * N;
  std::vector<double> lost;
  SampledWindow out(w.N(), w.K());
  for (long i = 0; i < len; ++i) {
    const long dest = i + shift;
    if (dest < 0 || dest >= len) {
      lost.push_back(std::norm(w[static_cast<std::size_t>(i)]));
      continue;
    }
    // t_dest = -K + dest/N, so m t_dest = integer + m dest / N.
    out[static_cast<std::size_t>(dest)] =
        lattice_phase(static_cast<long>(m) * dest, N) * w[static_cast<std::size_t>(i)];
  }
  const double lost_norm = std::sqrt(pairwise_sum(lost) / N);
  const double norm = std::sqrt(w.norm_sq());
  if (lost_norm > 1e-12 * norm) {
    throw TruncationLossError("gabor_atom: translation by " + std::to_string(n) +
                              " moves mass outside [-K, K)");
  }
  return out;
}

double unitarity_defect(const SampledWindow& w) {
  const ZakGrid G = zak_forward(w);
  const double N = w.N();
  return std::abs(sum_abs_sq(G.values()) / (N * N) - w.norm_sq());
}

}  // namespace bllab
