#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bllab {

using cplx = std::complex<double>;

/// A window g sampled on [-K, K) with N samples per unit: sample m holds
/// g(-K + m/N). Requires N >= 2K so the Zak transform inverts exactly.
class SampledWindow {
 public:
  SampledWindow(int N, int K, std::vector<cplx> samples);
  /// All-zero window.
  SampledWindow(int N, int K);

  int N() const noexcept { return N_; }
  int K() const noexcept { return K_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double t(std::size_t m) const noexcept { return -K_ + static_cast<double>(m) / N_; }

  const std::vector<cplx>& samples() const noexcept { return samples_; }
  std::vector<cplx>& samples() noexcept { return samples_; }
  cplx operator[](std::size_t m) const { return samples_[m]; }
  cplx& operator[](std::size_t m) { return samples_[m]; }

  /// (1/N) sum |g_m|^2
  double norm_sq() const;

 private:
  int N_;
  int K_;
  std::vector<cplx> samples_;
};

/// Zak values on the N x N lattice of the unit square: (j, l) ~ Zg(j/N, l/N).
class ZakGrid {
 public:
  explicit ZakGrid(int N);
  ZakGrid(int N, std::vector<cplx> values);

  int N() const noexcept { return N_; }
  cplx operator()(int j, int l) const { return values_[index(j, l)]; }
  cplx& operator()(int j, int l) { return values_[index(j, l)]; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  std::vector<cplx>& values() noexcept { return values_; }

  /// Value at lattice point (i/N, j/N) for arbitrary integers i, j, using
  /// Z(x, y + 1) = Z(x, y) and Z(x + 1, y) = exp(2 pi i y) Z(x, y).
  cplx lattice(long i, long j) const;

 private:
  std::size_t index(int j, int l) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(N_) + static_cast<std::size_t>(l);
  }
  int N_;
  std::vector<cplx> values_;
};

/// Z(j, l) = sum_k g(j/N - k) exp(2 pi i k l / N), summed over every k that
/// keeps j/N - k inside [-K, K), i.e. k = -K+1 .. K.
ZakGrid zak_forward(const SampledWindow& w);

/// g(j/N - k) = (1/N) sum_l G(j, l) exp(-2 pi i k l / N), k = -K+1 .. K.
/// Throws NyquistError when 2K > N.
SampledWindow zak_inverse(const ZakGrid& G, int K);

/// Quasi-periodic extension at a lattice point (x, y) in (1/N)Z^2.
/// Throws GridAlignmentError off the lattice.
cplx quasi_extend(const ZakGrid& G, double x, double y);

/// Samples of exp(2 pi i m t) g(t - n) on the same grid. Throws
/// TruncationLossError if the shift pushes more than 1e-12 ||g|| out of [-K, K).
SampledWindow gabor_atom(const SampledWindow& w, int m, int n);

/// |(1/N^2) sum |Zg|^2 - (1/N) sum |g|^2|
double unitarity_defect(const SampledWindow& w);

}  // namespace bllab
