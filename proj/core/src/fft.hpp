#pragma once

#include <complex>
#include <span>

namespace bllab::detail {

enum class FftSign : int { Forward = -1, Backward = +1 };

/// Unnormalised 1-D DFT: out[p] = sum_m in[m] exp(sign * 2 pi i p m / n).
void dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
         FftSign sign);

/// Unnormalised 1-D DFT of each row of a row-major rows x cols array.
void dft_rows(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
              int rows, int cols, FftSign sign);

/// Unnormalised 2-D DFT of a row-major rows x cols array.
void dft2d(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
           int rows, int cols, FftSign sign);

}  // namespace bllab::detail
