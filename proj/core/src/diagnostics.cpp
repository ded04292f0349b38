#include "bllab/diagnostics.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "bllab/errors.hpp"
#include "bllab/parallel.hpp"
#include "bllab/specialfn.hpp"
#include "fft.hpp"

namespace bllab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) throw NumericError("slope fit needs at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericError(std::string(what) + " is not finite");
}

}  // namespace

std::pair<double, double> zak_min_max(const ZakGrid& G) {
  double lo = kInf, hi = 0.0;
  for (const auto& v : G.values()) {
    const double a = std::abs(v);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return {lo, hi};
}

double cq_mean(const ZakGrid& G, double q, int* excluded) {
  if (!(q > 2.0)) throw ParameterError("cq integral needs q > 2");
  const double power = std::isinf(q) ? -2.0 : -2.0 * q / (q - 2.0);
  const double floor_mag = kZeroCellTol * zak_min_max(G).second;
  std::vector<double> terms(G.values().size(), 0.0);
  int skipped = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double a = std::abs(G.values()[i]);
    if (a <= floor_mag) {
      ++skipped;
      continue;
    }
    terms[i] = std::pow(a, power);
  }
  if (skipped > kMaxZeroCells) {
    throw NumericError("cq integral: " + std::to_string(skipped) + " grid cells vanish");
  }
  if (excluded) *excluded = skipped;
  const double mean = pairwise_sum(terms) / static_cast<double>(terms.size());
  check_finite(mean, "cq integral");
  return mean;
}

CqReport cq_integral_trace(const WindowSpec& spec, double q, const std::vector<int>& N_list) {
  if (N_list.empty()) throw ParameterError("cq_integral_trace: empty N list");
  CqReport rep{q, {}, {}, Verdict::Inconclusive};
  std::vector<double> values;
  for (int N : N_list) {
    WindowSpec at = spec;
    at.N = N;
    int excluded = 0;
    const double v = cq_mean(zak_forward(construct(at)), q, &excluded);
    rep.integral_trace.push_back({N, v, excluded});
    values.push_back(v);
  }
  rep.verdict = trace_verdict(values);
  return rep;
}

CqReport cq_integral_trace(const SampledWindow& w, double q) {
  int excluded = 0;
  const double v = cq_mean(zak_forward(w), q, &excluded);
  return {q, {{w.N(), v, excluded}}, {}, trace_verdict({v})};
}

ZeroInfo find_zero(const ZakGrid& G) {
  const int N = G.N();
  int bj = 0, bl = 0;
  double best = kInf;
  std::vector<double> sq(G.values().size());
  for (int j = 0; j < N; ++j) {
    for (int l = 0; l < N; ++l) {
      const double a = std::abs(G(j, l));
      sq[static_cast<std::size_t>(j) * N + l] = a * a;
      if (a < best) {
        best = a;
        bj = j;
        bl = l;
      }
    }
  }
  const double rms = std::sqrt(pairwise_sum(sq) / static_cast<double>(sq.size()));
  // |G| is 1-periodic on the lattice, so neighbours wrap.
  const auto mag2 = [&](long j, long l) { return std::norm(G.lattice(j, l)); };
  const auto vertex = [](double fm, double f0, double fp) {
    const double curv = fm - 2.0 * f0 + fp;
    if (!(curv > 0.0)) return 0.0;
    return std::clamp(0.5 * (fm - fp) / curv, -0.5, 0.5);
  };
  const double f0 = best * best;
  const double dx = vertex(mag2(bj - 1, bl), f0, mag2(bj + 1, bl));
  const double dy = vertex(mag2(bj, bl - 1), f0, mag2(bj, bl + 1));
  return {(bj + dx) / N, (bl + dy) / N, best, best < 0.1 * rms, bj, bl};
}

double lipschitz_bound_check(const ZakGrid& G, double r, double s, double a, double b) {
  // Validates 1/r + 1/s < 1 up front.
  PhiExponentCase::classify(r, s);
  const int N = G.N();
  const cplx centre = quasi_extend(G, a, b);
  const long ai = std::lround(a * N);
  const long bi = std::lround(b * N);
  std::vector<double> row_max(static_cast<std::size_t>(N), 0.0);
  parallel_for(0, static_cast<std::size_t>(N), [&](std::size_t idx) {
    const long di = static_cast<long>(idx) - N / 2;
    double m = 0.0;
    for (long dj = -N / 2; dj < N - N / 2; ++dj) {
      if (std::hypot(static_cast<double>(di), static_cast<double>(dj)) <= 2.0) continue;
      const double num = std::norm(G.lattice(ai + di, bi + dj) - centre);
      const double den = phi_rs(static_cast<double>(di) / N, r, s) + phi_rs(static_cast<double>(dj) / N, s, r);
      m = std::max(m, num / den);
    }
    row_max[idx] = m;
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

double zero_depth_slope(const std::function<cplx(double, double)>& G, double x0, double y0, int samples) {
  std::vector<double> xs, ys;
  for (int i = 0; i < samples; ++i) {
    const double t = 0.1 * std::ldexp(1.0, -i);
    const double mag = std::abs(G(x0 + t, y0));
    if (!(mag > 0.0)) continue;
    xs.push_back(std::log(t));
    ys.push_back(std::log(mag));
  }
  return slope_fit(xs, ys);
}

double zero_depth_slope_grid(const ZakGrid& G, int j, int l) {
  const int N = G.N();
  std::vector<double> xs, ys;
  for (int d = 1; 16 * d <= N; d *= 2) {
    const double mag = std::abs(G.lattice(static_cast<long>(j) + d, l));
    if (!(mag > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(d) / N));
    ys.push_back(std::log(mag));
  }
  return slope_fit(xs, ys);
}

namespace {

// 2 int_0^{1/2} (1 - t^alpha)^n cos(2 pi m t) dt for all 0 <= m, n <= M.
std::vector<double> profile_integrals(double alpha, int M, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const bool substitute = alpha < 1.0;  // t = u^{1/alpha} smooths the endpoint
  const double top = substitute ? std::pow(0.5, alpha) : 0.5;
  const std::size_t P = static_cast<std::size_t>(panels) * Rule::abscissa().size() * 2;
  std::vector<double> base(P), wt(P), tt(P);
  std::size_t idx = 0;
  const double width = top / panels;
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      // rule stores non-negative abscissae; x = 0 appears only for odd orders
      for (int sgn : {-1, 1}) {
        if (xs[i] == 0.0 && sgn < 0) {
          base[idx] = 0.0; wt[idx] = 0.0; tt[idx] = 0.0;
          ++idx;
          continue;
        }
        const double v = mid + sgn * half * xs[i];
        double jac = half * ws[i];
        double t = v;
        double one_minus = 0.0;
        if (substitute) {
          t = std::pow(v, 1.0 / alpha);
          jac *= std::pow(v, 1.0 / alpha - 1.0) / alpha;
          one_minus = 1.0 - v;
        } else {
          one_minus = 1.0 - std::pow(v, alpha);
        }
        base[idx] = one_minus;
        wt[idx] = 2.0 * jac;
        tt[idx] = t;
        ++idx;
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(M + 1) * (M + 1));
  parallel_for(0, static_cast<std::size_t>(M) + 1, [&](std::size_t m) {
    std::vector<double> cw(P), pw(P, 1.0);
    for (std::size_t i = 0; i < P; ++i) cw[i] = wt[i] * std::cos(2.0 * kPi * m * tt[i]);
    std::vector<double> terms(P);
    for (int n = 0; n <= M; ++n) {
      for (std::size_t i = 0; i < P; ++i) terms[i] = cw[i] * pw[i];
      out[m * (M + 1) + n] = pairwise_sum(terms);
      for (std::size_t i = 0; i < P; ++i) pw[i] *= base[i];
    }
  });
  return out;
}

}  // namespace

CoeffGrid fourier_coeffs_fab(double alpha, double beta, int M, int fine_N) {
  if (!(alpha > 0.0 && beta > 0.0)) throw ParameterError("alpha and beta must be positive");
  if (!(beta < 1.0 + 1.0 / alpha)) throw ParameterError("f_ab is not integrable: need beta < 1 + 1/alpha");
  if (M < 0) throw ParameterError("M must be non-negative");
  if (fine_N < 8 * M || fine_N < 1) throw ParameterError("fine_N must be at least 8M");
  const auto coarse = profile_integrals(alpha, M, fine_N);
  const auto fine = profile_integrals(alpha, M, 2 * fine_N);

  CoeffGrid grid{alpha, beta, M, fine_N, {}, 0.0};
  const int W = 2 * M + 1;
  grid.coeffs.assign(static_cast<std::size_t>(W) * W, cplx{});
  std::vector<double> b(static_cast<std::size_t>(M) + 1);
  for (int n = 0; n <= M; ++n) b[n] = taylor_b(n, beta);
  double peak = 0.0;
  std::vector<double> err(grid.coeffs.size(), 0.0);
  for (int m = -M; m <= M; ++m) {
    const std::size_t am = static_cast<std::size_t>(std::abs(m));
    for (int n = 0; n <= M; ++n) {
      const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
      double value = 0.0;
      if (n == 0) {
        value = m == 0 ? 1.0 : 0.0;
      } else {
        value = sign * b[n] * fine[am * (M + 1) + n];
        const double other = sign * b[n] * coarse[am * (M + 1) + n];
        err[static_cast<std::size_t>(m + M) * W + (n + M)] = std::abs(value - other);
      }
      grid.coeffs[static_cast<std::size_t>(m + M) * W + (n + M)] = value;
      peak = std::max(peak, std::abs(value));
    }
  }
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double mag = std::abs(grid.coeffs[i]);
    if (mag > 1e-12 * peak) grid.max_error_estimate = std::max(grid.max_error_estimate, err[i] / mag);
  }
  return grid;
}

LqTrace lq_partial_sums(const CoeffGrid& coeffs, double q, const std::vector<int>& M_list) {
  if (!(q > 2.0)) throw ParameterError("lq_partial_sums needs q > 2");
  if (M_list.empty()) throw ParameterError("lq_partial_sums: empty M list");
  LqTrace tr{q, M_list, {}, 0.0, Verdict::Inconclusive};
  for (int Mi : M_list) {
    if (Mi < 0 || Mi > coeffs.M) throw ParameterError("M exceeds the coefficient grid");
    std::vector<double> terms;
    double peak = 0.0;
    for (int m = -Mi; m <= Mi; ++m) {
      for (int n = -Mi; n <= Mi; ++n) {
        const double a = std::abs(coeffs.at(m, n));
        if (std::isinf(q)) {
          peak = std::max(peak, a);
        } else {
          terms.push_back(std::pow(a, q));
        }
      }
    }
    tr.sums.push_back(std::isinf(q) ? peak : pairwise_sum(terms));
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 1; i < tr.sums.size(); ++i) {
    const double inc = tr.sums[i] - tr.sums[i - 1];
    if (inc > 0.0) {
      xs.push_back(std::log(static_cast<double>(M_list[i])));
      ys.push_back(std::log(inc));
    }
  }
  if (tr.sums.size() < 2) return tr;
  const double last = tr.sums.back();
  const double last_rel = last > 0.0 ? (last - tr.sums[tr.sums.size() - 2]) / last : 0.0;
  if (xs.size() < 2) {
    // No growth at all between refinements.
    tr.increment_slope = -kInf;
    tr.verdict = last_rel <= 0.05 ? Verdict::Convergent : Verdict::Inconclusive;
    return tr;
  }
  tr.increment_slope = slope_fit(xs, ys);
  if (tr.increment_slope > -0.5) {
    tr.verdict = Verdict::Divergent;
  } else if (last_rel <= 0.05) {
    tr.verdict = Verdict::Convergent;
  }
  return tr;
}

LowerBoundFit fit_coeff_lower_bound(const CoeffGrid& coeffs, int k_lo, int k_hi, int n_lo, int n_hi) {
  if (k_lo < 1 || k_hi < k_lo || n_lo < 1 || n_hi < n_lo) throw ParameterError("bad fit window");
  if (2 * k_hi > coeffs.M || n_hi > coeffs.M) throw ParameterError("fit window exceeds coefficient grid");
  const double alpha = coeffs.alpha;
  std::vector<double> ln, lk, decay, y;
  for (int k = k_lo; k <= k_hi; ++k) {
    for (int n = n_lo; n <= n_hi; ++n) {
      const double mag = std::abs(coeffs.at(2 * k, n));
      if (!(mag > 0.0)) continue;
      ln.push_back(std::log(static_cast<double>(n)));
      lk.push_back(std::log(static_cast<double>(k)));
      decay.push_back(-static_cast<double>(n) / std::pow(static_cast<double>(k), alpha));
      y.push_back(std::log(mag));
    }
  }
  const Eigen::Index P = static_cast<Eigen::Index>(y.size());
  if (P < 5) throw NumericError("too few nonzero coefficients to fit");
  Eigen::MatrixXd A(P, 4);
  Eigen::VectorXd b(P);
  for (Eigen::Index i = 0; i < P; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = ln[i];
    A(i, 2) = lk[i];
    A(i, 3) = decay[i];
    b(i) = y[i];
  }
  const Eigen::VectorXd free = A.colPivHouseholderQr().solve(b);

  const double np = coeffs.beta + 1.0;
  const double kp = -(2.0 * alpha + 1.0);
  Eigen::MatrixXd F(P, 2);
  Eigen::VectorXd fb(P);
  for (Eigen::Index i = 0; i < P; ++i) {
    F(i, 0) = 1.0;
    F(i, 1) = decay[i];
    fb(i) = y[i] - np * ln[i] - kp * lk[i];
  }
  const Eigen::VectorXd fixed = F.colPivHouseholderQr().solve(fb);
  double shift = 0.0;
  for (Eigen::Index i = 0; i < P; ++i) {
    shift = std::min(shift, fb(i) - (fixed(0) + fixed(1) * decay[i]));
  }
  return {free(0), free(1), free(2), free(3), std::exp(fixed(0) + shift), fixed(1), shift,
          static_cast<int>(P)};
}

Eigen::MatrixXcd gram_matrix(const SampledWindow& w, int M) {
  if (M < 0) throw ParameterError("M must be non-negative");
  if (!(2 * M < w.K())) throw TruncationLossError("gram_matrix needs M < K/2");
  const ZakGrid G = zak_forward(w);
  const int N = G.N();
  std::vector<cplx> weight(G.values().size());
  for (std::size_t i = 0; i < weight.size(); ++i) weight[i] = std::norm(G.values()[i]);
  std::vector<cplx> moments(weight.size());
  detail::dft2d(weight, moments, N, N, detail::FftSign::Backward);
  const double cells = static_cast<double>(N) * N;
  // moment(p, q) = mean |Z|^2 e^{2 pi i (p x + q y)}
  const auto moment = [&](long p, long q) {
    const long pp = ((p % N) + N) % N;
    const long qq = ((q % N) + N) % N;
    return moments[static_cast<std::size_t>(pp * N + qq)] / cells;
  };
  const int W = 2 * M + 1;
  Eigen::MatrixXcd gram(W * W, W * W);
  for (int m = -M; m <= M; ++m) {
    for (int n = -M; n <= M; ++n) {
      const int row = (m + M) * W + (n + M);
      for (int m2 = -M; m2 <= M; ++m2) {
        for (int n2 = -M; n2 <= M; ++n2) {
          const int col = (m2 + M) * W + (n2 + M);
          gram(row, col) = moment(m - m2, -(n - n2));
        }
      }
    }
  }
  return gram;
}

double probe_ratio(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& a, double q) {
  const double quad = (a.adjoint() * gram * a)(0, 0).real();
  if (!(quad > 0.0)) return kInf;
  double num = 0.0;
  if (std::isinf(q)) {
    for (Eigen::Index i = 0; i < a.size(); ++i) num = std::max(num, std::abs(a(i)));
  } else {
    for (Eigen::Index i = 0; i < a.size(); ++i) num += std::pow(std::abs(a(i)), q);
    num = std::pow(num, 1.0 / q);
  }
  return num / std::sqrt(quad);
}

ProbeResult cq_constant_probe(const Eigen::MatrixXcd& gram, double q, int trials, std::uint64_t seed) {
  if (!(q >= 2.0)) throw ParameterError("cq_constant_probe needs q >= 2");
  if (trials < 1) throw ParameterError("trials must be positive");
  const Eigen::Index dim = gram.rows();
  const int W = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  if (gram.cols() != dim || static_cast<Eigen::Index>(W) * W != dim || W % 2 == 0) {
    throw ParameterError("gram must be square of size (2M+1)^2");
  }
  const int M = (W - 1) / 2;
  ProbeResult res{0.0, 0.0, false};
  for (int sub = 0; sub <= M; ++sub) {
    std::vector<Eigen::Index> idx;
    for (int m = -sub; m <= sub; ++m) {
      for (int n = -sub; n <= sub; ++n) idx.push_back((m + M) * W + (n + M));
    }
    const Eigen::Index d = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd block(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) block(i, j) = gram(idx[i], idx[j]);
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sub)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::VectorXcd a(d);
    for (int t = 0; t < trials; ++t) {
      for (Eigen::Index i = 0; i < d; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        a(i) = cplx(re, im);
      }
      const double ratio = probe_ratio(block, a, q);
      if (std::isinf(ratio)) res.not_cq = true;
      res.ratio = std::max(res.ratio, ratio);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  res.q2_exact = lmin > 0.0 ? 1.0 / std::sqrt(lmin) : kInf;
  if (!(lmin > 0.0)) res.not_cq = true;
  return res;
}

double upsilon_lower_ratio(const WindowSpec& spec, int N) {
  if (!std::holds_alternative<CaseBSpec>(spec.shape) && !std::holds_alternative<CompactSpec>(spec.shape)) {
    throw ParameterError("upsilon_lower_ratio needs a CaseB or CompactSupport spec");
  }
  const DerivedParams p = derive_params(spec);
  const double eta = std::visit(
      [](const auto& s) -> double {
        if constexpr (requires { s.eta; }) return s.eta; else return 0.1;
      },
      spec.shape);
  const BumpProfile profile(eta);
  std::vector<double> rows(static_cast<std::size_t>(N), kInf);
  parallel_for(0, static_cast<std::size_t>(N), [&](std::size_t j) {
    const double x = -0.5 + static_cast<double>(j) / N;
    double m = kInf;
    for (int l = 0; l < N; ++l) {
      const double y = -0.5 + static_cast<double>(l) / N;
      if (x == 0.0 && y == 0.0) continue;
      const double den = std::pow(std::abs(x), p.alpha) + std::abs(y);
      m = std::min(m, std::norm(build_upsilon(x, y, p, profile)) / (den * den));
    }
    rows[j] = m;
  });
  return *std::min_element(rows.begin(), rows.end());
}

double seam_jump(const WindowSpec& spec, int points, double delta) {
  if (points < 1 || !(delta > 0.0)) throw ParameterError("seam_jump: bad sampling");
  const AnalyticZak G(spec);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double c = (i + 0.5) / points;
    // x seams at 0 and 1, y seams at 0, 1/2 (phase domain) and 1.
    worst = std::max(worst, std::abs(G(1.0 - delta, c) - G(1.0, c)));
    worst = std::max(worst, std::abs(G(-delta, c) - G(0.0, c)));
    worst = std::max(worst, std::abs(G(c, 1.0 - delta) - G(c, 1.0)));
    worst = std::max(worst, std::abs(G(c, -delta) - G(c, 0.0)));
    worst = std::max(worst, std::abs(G(c, 0.5 - delta) - G(c, 0.5)));
  }
  return worst;
}

namespace {

void fill_window_section(DiagnosticsReport& rep, const SampledWindow& w, bool finest) {
  const ZakGrid G = zak_forward(w);
  const auto [lo, hi] = zak_min_max(G);
  rep.zak_trace.push_back({w.N(), lo, hi});
  const auto& o = rep.options;
  if (1.0 / o.r + 1.0 / o.s < 1.0) {
    const ZeroInfo z = find_zero(G);
    rep.lipschitz_trace.push_back(
        {w.N(), lipschitz_bound_check(G, o.r, o.s, static_cast<double>(z.j) / w.N(),
                                      static_cast<double>(z.l) / w.N())});
  }
  if (!finest) return;
  rep.zero = find_zero(G);
  if (rep.zero.has_zero) rep.zero_slope_grid = zero_depth_slope_grid(G, rep.zero.j, rep.zero.l);
  for (int M : o.M_list) {
    const ProbeResult pr = cq_constant_probe(gram_matrix(w, M), rep.q_test, o.trials, o.seed);
    rep.cq.gram_ratio_trace.push_back({M, pr.ratio, pr.q2_exact, pr.not_cq});
  }
}

DiagnosticsReport start_report(const AnalyzeOptions& options) {
  if (options.N_list.empty()) throw ParameterError("analyze: empty N list");
  DiagnosticsReport rep;
  rep.options = options;
  rep.q_test = options.q_test ? *options.q_test : options.q + 1.0;
  if (!(rep.q_test > 2.0)) throw ParameterError("analyze: q_test must exceed 2");
  const double u = 1.0 / std::min(options.r, options.s);
  const double v = 1.0 / std::max(options.r, options.s);
  if (v >= 0.0 && v <= u && u <= 1.0) rep.point = classify(u, v, options.q);
  rep.cq.q = rep.q_test;
  return rep;
}

void finish_report(DiagnosticsReport& rep) {
  std::vector<double> tv, fv, cv;
  for (const auto& e : rep.moments.time_trace) tv.push_back(e.value);
  for (const auto& e : rep.moments.freq_trace) fv.push_back(e.value);
  for (const auto& e : rep.cq.integral_trace) cv.push_back(e.value);
  rep.moments.time_moment = tv.back();
  rep.moments.freq_moment = fv.back();
  rep.moments.time_verdict = trace_verdict(tv);
  rep.moments.freq_verdict = trace_verdict(fv);
  rep.cq.verdict = trace_verdict(cv);
}

void add_moments(DiagnosticsReport& rep, const SampledWindow& w) {
  const auto& o = rep.options;
  rep.moments.time_trace.push_back({w.N(), w.K(), time_moment(w, o.s)});
  rep.moments.freq_trace.push_back({w.N(), w.K(), freq_moment(w, o.r)});
  int excluded = 0;
  const double v = cq_mean(zak_forward(w), rep.q_test, &excluded);
  rep.cq.integral_trace.push_back({w.N(), v, excluded});
}

}  // namespace

DiagnosticsReport analyze(const WindowSpec& spec, const AnalyzeOptions& options) {
  DiagnosticsReport rep = start_report(options);
  rep.spec = spec;
  rep.moments.r = options.r;
  rep.moments.s = options.s;
  const AnalyticZak analytic(spec);
  rep.params = analytic.params();
  for (std::size_t i = 0; i < options.N_list.size(); ++i) {
    WindowSpec at = spec;
    at.N = options.N_list[i];
    const SampledWindow w = construct(at);
    add_moments(rep, w);
    fill_window_section(rep, w, i + 1 == options.N_list.size());
  }
  if (rep.zero.has_zero) {
    const int N = options.N_list.back();
    rep.zero_slope_analytic = zero_depth_slope([&](double x, double y) { return analytic(x, y); },
                                               static_cast<double>(rep.zero.j) / N,
                                               static_cast<double>(rep.zero.l) / N);
  }
  finish_report(rep);
  return rep;
}

DiagnosticsReport analyze(const SampledWindow& w, const AnalyzeOptions& options) {
  AnalyzeOptions single = options;
  single.N_list = {w.N()};
  DiagnosticsReport rep = start_report(single);
  rep.moments.r = options.r;
  rep.moments.s = options.s;
  add_moments(rep, w);
  fill_window_section(rep, w, true);
  finish_report(rep);
  return rep;
}

}  // namespace bllab
