#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "bllab/errors.hpp"

namespace bllab::detail {

namespace {

// The FFTW planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(int rank, const int* dims, int howmany, fftw_complex* in, fftw_complex* out, int sign) {
    std::lock_guard lock(planner_mutex());
    int dist = 1;
    for (int i = 0; i < rank; ++i) dist *= dims[i];
    plan_ = fftw_plan_many_dft(rank, dims, howmany, in, nullptr, 1, dist, out, nullptr, 1, dist,
                               sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    if (plan_) fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute(fftw_complex* in, fftw_complex* out) const {
    if (!plan_) throw NumericError("fftw: plan creation failed");
    fftw_execute_dft(plan_, in, out);
  }

 private:
  fftw_plan plan_ = nullptr;
};

void run(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
         int rank, const int* dims, int howmany, FftSign sign) {
  if (in.size() != out.size()) throw ParameterError("dft: size mismatch");
  if (in.empty()) return;
  // FFTW may overwrite its input for some plans; work on a copy.
  std::vector<std::complex<double>> buffer(in.begin(), in.end());
  auto* src = reinterpret_cast<fftw_complex*>(buffer.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  Plan plan(rank, dims, howmany, src, dst, static_cast<int>(sign));
  plan.execute(src, dst);
}

}  // namespace

void dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
         FftSign sign) {
  const int n = static_cast<int>(in.size());
  run(in, out, 1, &n, 1, sign);
}

void dft_rows(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
              int rows, int cols, FftSign sign) {
  if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != in.size()) {
    throw ParameterError("dft_rows: shape does not match buffer");
  }
  run(in, out, 1, &cols, rows, sign);
}

void dft2d(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
           int rows, int cols, FftSign sign) {
  if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != in.size()) {
    throw ParameterError("dft2d: shape does not match buffer");
  }
  const int dims[2] = {rows, cols};
  run(in, out, 2, dims, 1, sign);
}

}  // namespace bllab::detail
