#include "bllab/acceptance.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <random>

#include <json.hpp>

#include "bllab/diagnostics.hpp"
#include "bllab/errors.hpp"
#include "bllab/io.hpp"
#include "bllab/localization.hpp"
#include "bllab/specialfn.hpp"
#include "bllab/tradeoff.hpp"
#include "bllab/windows.hpp"
#include "bllab/zak.hpp"

namespace bllab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SampledWindow random_window(std::mt19937_64& rng, int N, int K) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SampledWindow w(N, K);
  for (auto& v : w.samples()) {
    const double re = normal(rng);
    v = cplx(re, normal(rng));
  }
  return w;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CriterionResult zak_exactness() {
  CriterionResult res{1, "Zak exactness suite (50 random windows, N=64, K=8)", true, {}, ""};
  const int N = 64, K = 8;
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> pick_m(-N / 2, N / 2), pick_n(-3, 3), pick_pt(-3 * N, 3 * N);
  double rt = 0.0, unit = 0.0, cov = 0.0;
  bool quasi_exact = true;
  double x_rule = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const SampledWindow w = random_window(rng, N, K);
    const ZakGrid G = zak_forward(w);
    rt = std::max(rt, max_diff(zak_inverse(G, K).samples(), w.samples()));
    unit = std::max(unit, unitarity_defect(w));

    // Support in [-4, 4) leaves room for translations |n| <= 3.
    SampledWindow inner = w;
    for (std::size_t m = 0; m < inner.size(); ++m) {
      if (inner.t(m) < -4.0 || inner.t(m) >= 4.0) inner[m] = 0.0;
    }
    const ZakGrid Gi = zak_forward(inner);
    const int mm = pick_m(rng), nn = pick_n(rng);
    const ZakGrid Ga = zak_forward(gabor_atom(inner, mm, nn));
    for (int j = 0; j < N; ++j) {
      for (int l = 0; l < N; ++l) {
        const long p = ((static_cast<long>(mm) * j - static_cast<long>(nn) * l) % N + N) % N;
        const cplx expect = unit_phase(static_cast<double>(p) / N) * Gi(j, l);
        cov = std::max(cov, std::abs(Ga(j, l) - expect));
      }
    }

    for (int k = 0; k < 16; ++k) {
      const long i = pick_pt(rng), jj = pick_pt(rng);
      const double x = static_cast<double>(i) / N, y = static_cast<double>(jj) / N;
      const cplx base = quasi_extend(G, x, y);
      // (+1, 0) then (0, +1) against (0, +1) then (+1, 0), each step by its rule.
      const cplx x_then_y = unit_phase(y) * base;
      const cplx y_then_x = unit_phase(y + 1.0) * quasi_extend(G, x, y + 1.0);
      if (!(x_then_y == y_then_x && quasi_extend(G, x, y + 1.0) == base)) quasi_exact = false;
      x_rule = std::max(x_rule, std::abs(quasi_extend(G, x + 1.0, y) - x_then_y));
    }
  }
  res.metrics = {{"roundtrip_max", rt}, {"unitarity_max", unit}, {"covariance_max", cov},
                 {"quasi_exact", quasi_exact ? 1.0 : 0.0}, {"x_rule_max", x_rule}};
  res.pass = rt <= 1e-12 && unit <= 1e-12 && cov <= 1e-12 && quasi_exact && x_rule <= 1e-12;
  return res;
}

CriterionResult stein_identity() {
  CriterionResult res{2, "Stein identity, Gaussian k=1 r=1", true, {}, ""};
  const double C = stein_constant(1, 1.0);
  const double closed = 4.0 * kPi * kPi;
  const int K = 16;
  std::vector<double> errs;
  for (int N : {64, 128, 256}) {
    const SampledWindow w = gaussian_window(1.0, N, K);
    const double ratio = sobolev_functional(w, 1, 1.0, K / 2.0) / freq_moment(w, 1.0);
    const double err = std::abs(ratio - C) / C;
    errs.push_back(err);
    res.metrics.push_back({"ratio_N" + std::to_string(N), ratio});
    res.metrics.push_back({"rel_err_N" + std::to_string(N), err});
  }
  const double c_err = std::abs(C - closed) / closed;
  res.metrics.push_back({"stein_constant", C});
  res.metrics.push_back({"stein_constant_rel_err", c_err});
  res.pass = errs.back() <= 0.03 && errs[0] > errs[1] && errs[1] > errs[2] && c_err <= 1e-8;
  return res;
}

CriterionResult curve_anchors() {
  CriterionResult res{3, "Gamma_q anchors", true, {}, ""};
  const bool c_on = classify(0.5, 0.5, 2.0).classification == Region::On;
  const bool d_on = classify(0.25, 0.25, kInf).classification == Region::On;
  double worst = 0.0;
  for (double q : {2.0, 3.0, 4.0, 10.0, kInf}) {
    const double u = symmetric_point(q);
    const double r_expect = std::isinf(q) ? 4.0 : 4.0 * (q - 1.0) / q;
    worst = std::max(worst, std::abs(1.0 / u - r_expect));
    if (classify(u, u, q).classification != Region::On) worst = kInf;
  }
  res.metrics = {{"C_on", c_on ? 1.0 : 0.0}, {"D_on", d_on ? 1.0 : 0.0}, {"intercept_max_err", worst}};
  res.pass = c_on && d_on && worst <= 1e-12;
  return res;
}

WindowSpec case_a_spec(int N) { return {CaseASpec{2.5, 2.5, 4.0, std::nullopt, 0.1}, N, 0}; }

CriterionResult case_a() {
  CriterionResult res{4, "Case-A construction (q=4, r=s=2.5)", true, {}, ""};
  AnalyzeOptions o;
  o.r = 2.5;
  o.s = 2.5;
  o.q = 4.0;
  o.q_test = 5.0;
  o.N_list = {64, 128, 256};
  o.M_list = {};
  const DiagnosticsReport rep = analyze(case_a_spec(256), o);
  const double alpha = rep.params->alpha;
  for (const auto& e : rep.moments.time_trace) res.metrics.push_back({"time_moment_N" + std::to_string(e.N), e.value});
  for (const auto& e : rep.moments.freq_trace) res.metrics.push_back({"freq_moment_N" + std::to_string(e.N), e.value});
  for (const auto& e : rep.cq.integral_trace) res.metrics.push_back({"cq_mean_N" + std::to_string(e.N), e.value});
  const int N = o.N_list.back();
  const bool zero_ok = rep.zero.has_zero && std::abs(rep.zero.x - 0.5) <= 1.0 / N &&
                       std::abs(rep.zero.y - 0.5) <= 1.0 / N;
  const double slope = rep.zero_slope_grid.value_or(0.0);
  const bool slope_ok = std::abs(slope - alpha) <= 0.1 * alpha;
  const bool time_ok = rep.moments.time_verdict == Verdict::Convergent;
  const bool freq_ok = rep.moments.freq_verdict == Verdict::Convergent;
  const bool cq_ok = rep.cq.verdict == Verdict::Convergent;
  res.metrics.push_back({"alpha", alpha});
  res.metrics.push_back({"zero_x", rep.zero.x});
  res.metrics.push_back({"zero_y", rep.zero.y});
  res.metrics.push_back({"zero_slope", slope});
  res.metrics.push_back({"time_convergent", time_ok ? 1.0 : 0.0});
  res.metrics.push_back({"freq_convergent", freq_ok ? 1.0 : 0.0});
  res.metrics.push_back({"cq_convergent", cq_ok ? 1.0 : 0.0});
  res.pass = time_ok && freq_ok && cq_ok && zero_ok && slope_ok;
  if (!time_ok) res.note = std::string("time moment trace ") + verdict_name(rep.moments.time_verdict);
  return res;
}

CriterionResult case_b() {
  CriterionResult res{5, "Case-B construction (q=4, r=1.5, s=20)", true, {}, ""};
  const WindowSpec spec{CaseBSpec{1.5, 20.0, 4.0, std::nullopt, 0.1}, 128, 0};
  const SampledWindow w = construct(spec);
  const bool exists = std::isfinite(w.norm_sq()) && std::abs(w.norm_sq() - 1.0) <= 1e-10;
  const double r128 = upsilon_lower_ratio(spec, 128);
  const double r256 = upsilon_lower_ratio(spec, 256);
  const double drift = std::abs(r256 / r128 - 1.0);
  const double seam = seam_jump(spec);
  res.metrics = {{"ratio_N128", r128}, {"ratio_N256", r256}, {"ratio_drift", drift}, {"seam_jump", seam}};
  res.pass = exists && r128 > 0.0 && r256 > 0.0 && drift <= 0.2 && seam <= 1e-10;
  return res;
}

CriterionResult compact_case() {
  CriterionResult res{6, "Compact-support case (q=4, r=1.5)", true, {}, ""};
  const WindowSpec spec{CompactSpec{1.5, 4.0, std::nullopt, 0.1}, 128, 0};
  const SampledWindow w = construct(spec);
  std::vector<double> outside;
  for (std::size_t m = 0; m < w.size(); ++m) {
    if (std::abs(w.t(m)) > 2.0) outside.push_back(std::norm(w[m]));
  }
  double mass = 0.0;
  for (double v : outside) mass += v;
  mass /= w.N();
  const double rel = mass / w.norm_sq();
  res.metrics = {{"mass_outside_rel", rel}};
  res.pass = rel <= 1e-10;
  return res;
}

CriterionResult coefficient_dichotomy() {
  CriterionResult res{7, "Coefficient l^q dichotomy (alpha=1/2, q=4)", true, {}, ""};
  const double alpha = 0.5, q = 4.0;
  const std::vector<int> Ms{4, 8, 16, 32, 64};
  const CoeffGrid above = fourier_coeffs_fab(alpha, 2.25, 64, 512);
  const CoeffGrid below = fourier_coeffs_fab(alpha, 1.8, 64, 512);
  const LqTrace ta = lq_partial_sums(above, q, Ms);
  const LqTrace tb = lq_partial_sums(below, q, Ms);
  for (std::size_t i = 0; i < Ms.size(); ++i) res.metrics.push_back({"S_beta2.25_M" + std::to_string(Ms[i]), ta.sums[i]});
  for (std::size_t i = 0; i < Ms.size(); ++i) res.metrics.push_back({"S_beta1.8_M" + std::to_string(Ms[i]), tb.sums[i]});
  res.metrics.push_back({"slope_beta2.25", ta.increment_slope});
  res.metrics.push_back({"slope_beta1.8", tb.increment_slope});
  res.metrics.push_back({"coeff_err_estimate", std::max(above.max_error_estimate, below.max_error_estimate)});
  const LowerBoundFit fit = fit_coeff_lower_bound(above, 2, 16, 2, 64);
  const double n_target = 2.25 + 1.0;
  const double k_target = -(2.0 * alpha + 1.0);
  const bool n_ok = std::abs(fit.n_power - n_target) <= 0.15 * std::abs(n_target);
  const bool k_ok = std::abs(fit.k_power - k_target) <= 0.15 * std::abs(k_target);
  res.metrics.push_back({"fit_n_power", fit.n_power});
  res.metrics.push_back({"fit_k_power", fit.k_power});
  res.metrics.push_back({"fixed_C1", fit.fixed_C1});
  res.metrics.push_back({"fixed_C2", fit.fixed_C2});
  const bool dich = ta.verdict == Verdict::Divergent && tb.verdict == Verdict::Convergent;
  res.pass = dich && n_ok && k_ok;
  if (dich && !(n_ok && k_ok)) res.note = "dichotomy holds; fitted exponents outside 15%";
  return res;
}

CriterionResult cq_probe_trend() {
  CriterionResult res{8, "C_q probe trend (Case-A, q0=4)", true, {}, ""};
  const SampledWindow w = construct(case_a_spec(128));
  const std::vector<int> Ms{2, 4, 8};
  std::vector<double> p6, p25;
  for (int M : Ms) {
    const auto gram = gram_matrix(w, M);
    p6.push_back(cq_constant_probe(gram, 6.0, kDefaultTrials, 0).ratio);
    p25.push_back(cq_constant_probe(gram, 2.5, kDefaultTrials, 0).ratio);
    res.metrics.push_back({"q6_M" + std::to_string(M), p6.back()});
    res.metrics.push_back({"q2.5_M" + std::to_string(M), p25.back()});
  }
  bool bounded = true, growing = true;
  for (std::size_t i = 1; i < Ms.size(); ++i) {
    const double g6 = p6[i] / p6[i - 1] - 1.0;
    const double g25 = p25[i] / p25[i - 1] - 1.0;
    res.metrics.push_back({"q6_growth_" + std::to_string(i), g6});
    res.metrics.push_back({"q2.5_growth_" + std::to_string(i), g25});
    bounded = bounded && g6 <= 0.10;
    growing = growing && g25 >= 0.30;
  }
  res.pass = bounded && growing;
  if (bounded && !growing) res.note = "q=6 bounded; q=2.5 growth below 30% per doubling";
  return res;
}

CriterionResult negative_controls() {
  CriterionResult res{9, "Negative controls", true, {}, ""};
  std::vector<double> fm;
  for (int N : {32, 64, 128, 256}) {
    fm.push_back(freq_moment(box_window(N, 4), 2.0));
    res.metrics.push_back({"box_freq_r2_N" + std::to_string(N), fm.back()});
  }
  bool ratios_ok = true;
  for (std::size_t i = 1; i < fm.size(); ++i) {
    const double ratio = fm[i] / fm[i - 1];
    ratios_ok = ratios_ok && ratio >= 1.7 && ratio <= 2.3;
  }
  const bool divergent = trace_verdict(fm) == Verdict::Divergent;
  bool region_error = false;
  try {
    construct(WindowSpec{CaseASpec{3.5, 3.5, 4.0, std::nullopt, 0.1}, 64, 0});
  } catch (const ParameterRegionError&) {
    region_error = true;
  }
  res.metrics.push_back({"box_divergent", divergent ? 1.0 : 0.0});
  res.metrics.push_back({"below_point_rejected", region_error ? 1.0 : 0.0});
  res.pass = ratios_ok && divergent && region_error;
  return res;
}

template <class F>
void timed(std::vector<CriterionResult>& out, const AcceptanceOptions& o, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  out.push_back(f());
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  if (o.on_progress) o.on_progress(out.back(), dt.count());
}

nlohmann::ordered_json criterion_json(const CriterionResult& c) {
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.metrics) {
    if (std::isfinite(v)) {
      m[k] = v;
    } else {
      m[k] = format_number(v);
    }
  }
  return {{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"metrics", m}, {"note", c.note}};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  using Runner = CriterionResult (*)();
  static constexpr std::array<std::pair<const char*, Runner>, 9> kCriteria{{
      {"Zak exactness suite", zak_exactness},
      {"Stein identity", stein_identity},
      {"Gamma_q anchors", curve_anchors},
      {"Case-A construction", case_a},
      {"Case-B construction", case_b},
      {"Compact-support case", compact_case},
      {"Coefficient dichotomy", coefficient_dichotomy},
      {"C_q probe trend", cq_probe_trend},
      {"Negative controls", negative_controls},
  }};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    if (options.only && *options.only != id) continue;
    const auto& [name, fn] = kCriteria[static_cast<std::size_t>(id - 1)];
    timed(out, options, [&]() -> CriterionResult {
      try {
        return fn();
      } catch (const std::exception& e) {
        return {id, name, false, {}, std::string("error: ") + e.what()};
      }
    });
  }
  const bool determinism = options.only ? *options.only == 10 : options.include_determinism;
  if (determinism) {
    timed(out, options, [&]() -> CriterionResult {
      AcceptanceOptions inner;
      inner.include_determinism = false;
      const std::string first = acceptance_json(options.only ? run_acceptance(inner) : out);
      const std::string second = acceptance_json(run_acceptance(inner));
      const bool same = first == second;
      return {10, "Determinism (suite rerun byte-identical)", same,
              {{"bytes", static_cast<double>(first.size())}}, same ? "" : "reports differ"};
    });
  }
  return out;
}

std::string acceptance_json(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  int passed = 0;
  for (const auto& c : results) {
    arr.push_back(criterion_json(c));
    passed += c.pass ? 1 : 0;
  }
  nlohmann::ordered_json j{{"schema_version", 1},
                           {"passed", passed},
                           {"total", static_cast<int>(results.size())},
                           {"criteria", arr}};
  return j.dump(2) + "\n";
}

std::string acceptance_table(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& c : results) {
    out += c.pass ? "[PASS] " : "[FAIL] ";
    out += std::to_string(c.id) + " " + c.name;
    if (!c.note.empty()) out += " (" + c.note + ")";
    out += "\n";
  }
  return out;
}

}  // namespace bllab
