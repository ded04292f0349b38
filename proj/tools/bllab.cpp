#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bllab/acceptance.hpp"
#include "bllab/diagnostics.hpp"
#include "bllab/errors.hpp"
#include "bllab/io.hpp"
#include "bllab/tradeoff.hpp"
#include "bllab/windows.hpp"

namespace {

using bllab::WindowSpec;
using json = nlohmann::ordered_json;

constexpr int kAcceptanceFailExit = 4;

struct ShapeFlags {
  std::string shape = "casea";
  std::optional<double> q, r, s, eps, eta, sigma, alpha, beta;
  std::vector<int> N{128};
  int K = 0;
};

void add_shape_flags(CLI::App* app, ShapeFlags& f) {
  app->add_option("--shape", f.shape, "gaussian | box | casea | caseb | compact | testfa")
      ->check(CLI::IsMember({"gaussian", "box", "casea", "caseb", "compact", "testfa"}, CLI::ignore_case))
      ->capture_default_str();
  app->add_option("--q", f.q, "Design exponent q (\"inf\" allowed)");
  app->add_option("--r", f.r, "Time exponent r");
  app->add_option("--s", f.s, "Frequency exponent s");
  app->add_option("--eps", f.eps, "Pinned epsilon");
  app->add_option("--eta", f.eta, "Bump width eta");
  app->add_option("--sigma", f.sigma, "Gaussian width");
  app->add_option("--alpha", f.alpha, "TestFA alpha");
  app->add_option("--beta", f.beta, "TestFA beta");
  app->add_option("--N", f.N, "Samples per unit (comma list for traces)")->delimiter(',')->capture_default_str();
  app->add_option("--K", f.K, "Half-width of the time interval (0 = N/2)")->capture_default_str();
}

template <class S>
void apply_common(S& s, const ShapeFlags& f) {
  if (f.q) s.q = *f.q;
  if (f.r) s.r = *f.r;
  if (f.eps) s.eps = f.eps;
  if (f.eta) s.eta = *f.eta;
}

WindowSpec spec_from_flags(const ShapeFlags& f) {
  WindowSpec spec;
  spec.N = f.N.front();
  spec.K = f.K;
  const std::string shape = CLI::detail::to_lower(f.shape);
  if (shape == "gaussian") {
    bllab::GaussianSpec g;
    if (f.sigma) g.sigma = *f.sigma;
    spec.shape = g;
  } else if (shape == "box") {
    spec.shape = bllab::BoxSpec{};
  } else if (shape == "casea") {
    bllab::CaseASpec a;
    apply_common(a, f);
    if (f.s) a.s = *f.s;
    spec.shape = a;
  } else if (shape == "caseb") {
    bllab::CaseBSpec b;
    apply_common(b, f);
    if (f.s) b.s = *f.s;
    spec.shape = b;
  } else if (shape == "compact") {
    bllab::CompactSpec c;
    apply_common(c, f);
    spec.shape = c;
  } else {
    bllab::TestFASpec t;
    if (f.alpha) t.alpha = *f.alpha;
    if (f.beta) t.beta = *f.beta;
    spec.shape = t;
  }
  return spec;
}

std::string load_text_or_inline(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  return bllab::read_text_file(arg);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    bllab::write_text_file(out, text);
  }
}

std::string samples_csv(const bllab::SampledWindow& w) {
  std::string s = "t,re,im\n";
  for (std::size_t m = 0; m < w.size(); ++m) {
    s += bllab::format_number(w.t(m)) + "," + bllab::format_number(w[m].real()) + "," +
         bllab::format_number(w[m].imag()) + "\n";
  }
  return s;
}

// Moment exponents default to the design exponents of the spec.
bllab::AnalyzeOptions analyze_options(const WindowSpec& spec, const ShapeFlags& f) {
  bllab::AnalyzeOptions o;
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, bllab::CaseASpec> || std::is_same_v<T, bllab::CaseBSpec>) {
          o.r = sh.r;
          o.s = sh.s;
          o.q = sh.q;
        } else if constexpr (std::is_same_v<T, bllab::CompactSpec>) {
          o.r = sh.r;
          o.q = sh.q;
        }
      },
      spec.shape);
  if (f.r) o.r = *f.r;
  if (f.s) o.s = *f.s;
  if (f.q) o.q = *f.q;
  return o;
}

std::string sweep_csv(double q, double r_min, double r_max, double s_min, double s_max, int steps,
                      bool deep, int N) {
  std::string out = "r,s,u,v,region,construction,eps";
  if (deep) out += ",time_moment,freq_moment,cq_mean";
  out += "\n";
  const auto at = [&](double lo, double hi, int i) {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  };
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const double r = at(r_min, r_max, i), s = at(s_min, s_max, j);
      const double u = 1.0 / r, v = 1.0 / s;
      std::string region = "out_of_sector";
      if (u <= 1.0 && v <= 1.0) {
        switch (bllab::classify(std::max(u, v), std::min(u, v), q).classification) {
          case bllab::Region::Below: region = "below"; break;
          case bllab::Region::On: region = "on"; break;
          case bllab::Region::Above: region = "above"; break;
        }
      }
      std::string construction = "none";
      std::optional<WindowSpec> spec;
      double eps = std::numeric_limits<double>::quiet_NaN();
      for (int pick = 0; pick < 2 && !spec; ++pick) {
        WindowSpec candidate;
        candidate.N = N;
        if (pick == 0) {
          candidate.shape = bllab::CaseASpec{r, s, q, std::nullopt, 0.1};
        } else {
          candidate.shape = bllab::CaseBSpec{r, s, q, std::nullopt, 0.1};
        }
        try {
          eps = bllab::derive_params(candidate).eps;
          spec = candidate;
          construction = pick == 0 ? "CaseA" : "CaseB";
        } catch (const bllab::Error&) {
        }
      }
      out += bllab::format_number(r) + "," + bllab::format_number(s) + "," + bllab::format_number(u) + "," +
             bllab::format_number(v) + "," + region + "," + construction + "," + bllab::format_number(eps);
      if (deep) {
        double tm = std::numeric_limits<double>::quiet_NaN(), fm = tm, cq = tm;
        if (spec) {
          bllab::AnalyzeOptions o;
          o.r = r;
          o.s = s;
          o.q = q;
          o.N_list = {N};
          o.M_list = {};
          try {
            const auto rep = bllab::analyze(*spec, o);
            tm = rep.moments.time_moment;
            fm = rep.moments.freq_moment;
            cq = rep.cq.integral_trace.back().value;
          } catch (const bllab::Error&) {
          }
        }
        out += "," + bllab::format_number(tm) + "," + bllab::format_number(fm) + "," + bllab::format_number(cq);
      }
      out += "\n";
    }
  }
  return out;
}

std::string coeffs_output(double alpha, double beta, int M, int fine_N, double q, const std::string& format) {
  const bllab::CoeffGrid g = bllab::fourier_coeffs_fab(alpha, beta, M, fine_N);
  if (format == "csv") {
    std::string s = "m,n,re,im\n";
    for (int m = -M; m <= M; ++m) {
      for (int n = -M; n <= M; ++n) {
        const auto c = g.at(m, n);
        s += std::to_string(m) + "," + std::to_string(n) + "," + bllab::format_number(c.real()) + "," +
             bllab::format_number(c.imag()) + "\n";
      }
    }
    return s;
  }
  std::vector<int> Ms;
  for (int m = 2; m <= M; m *= 2) Ms.push_back(m);
  if (Ms.empty() || Ms.back() != M) Ms.push_back(M);
  const bllab::LqTrace t = bllab::lq_partial_sums(g, q, Ms);
  json coeffs = json::array();
  for (const auto& c : g.coeffs) coeffs.push_back({c.real(), c.imag()});
  json j{{"alpha", alpha},
         {"beta", beta},
         {"M", M},
         {"fine_N", fine_N},
         {"max_error_estimate", g.max_error_estimate},
         {"coeffs", coeffs},
         {"lq_trace",
          {{"q", t.q},
           {"M", t.Ms},
           {"sums", t.sums},
           {"increment_slope", t.increment_slope},
           {"verdict", std::string(bllab::verdict_name(t.verdict))}}}};
  return j.dump(2) + "\n";
}

void print_error(const std::string& kind, const std::string& message, int code) {
  const json j{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zak-transform window construction and localization diagnostics"};
  app.require_subcommand(1);
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  const auto add_io = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output file (default stdout)");
    sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };

  ShapeFlags construct_flags;
  auto* construct = app.add_subcommand("construct", "Synthesize a window from a spec");
  add_shape_flags(construct, construct_flags);
  std::string construct_spec;
  construct->add_option("--spec", construct_spec, "Spec JSON file or inline JSON");
  add_io(construct);

  ShapeFlags analyze_flags;
  auto* analyze = app.add_subcommand("analyze", "Run every diagnostic and print the report");
  add_shape_flags(analyze, analyze_flags);
  std::string analyze_spec, analyze_window;
  std::optional<double> q_test;
  std::vector<int> M_list{2, 4, 8};
  int trials = bllab::kDefaultTrials;
  analyze->add_option("--spec", analyze_spec, "Spec JSON file or inline JSON");
  analyze->add_option("--window", analyze_window, "Window JSON file");
  analyze->add_option("--q-test", q_test, "Exponent for the C_q diagnostics (default q + 1)");
  analyze->add_option("--M", M_list, "Gram block sizes")->delimiter(',')->capture_default_str();
  analyze->add_option("--trials", trials, "Random probe vectors per block")->capture_default_str();
  analyze->add_option("--seed", seed, "Probe seed")->capture_default_str();
  add_io(analyze);

  double curve_q = 4.0;
  int curve_samples = 200;
  auto* curve = app.add_subcommand("curve", "Export the tradeoff curve as CSV");
  curve->add_option("--q", curve_q, "Exponent q (\"inf\" allowed)")->required();
  curve->add_option("--samples", curve_samples, "Curve samples")->capture_default_str();
  curve->add_option("--out", out, "Output file (default stdout)");

  double c_alpha = 0.5, c_beta = 1.8, c_q = 4.0;
  int c_M = 32, c_fine = 512;
  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients of f_{alpha,beta} and l^q partial sums");
  coeffs->add_option("--alpha", c_alpha)->capture_default_str();
  coeffs->add_option("--beta", c_beta)->capture_default_str();
  coeffs->add_option("--M", c_M, "Coefficient range |m|, |n| <= M")->capture_default_str();
  coeffs->add_option("--fine-N", c_fine, "Quadrature panels")->capture_default_str();
  coeffs->add_option("--q", c_q, "Partial-sum exponent")->capture_default_str();
  add_io(coeffs);

  double s_q = 4.0, r_min = 1.05, r_max = 8.0, s_min = 1.05, s_max = 8.0;
  int steps = 24, sweep_N = 64;
  bool deep = false;
  auto* sweep = app.add_subcommand("sweep", "Classify an (r, s) rectangle and derive construction parameters");
  sweep->add_option("--q", s_q)->capture_default_str();
  sweep->add_option("--r-min", r_min)->capture_default_str();
  sweep->add_option("--r-max", r_max)->capture_default_str();
  sweep->add_option("--s-min", s_min)->capture_default_str();
  sweep->add_option("--s-max", s_max)->capture_default_str();
  sweep->add_option("--steps", steps)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--N", sweep_N, "Resolution for --deep")->capture_default_str();
  sweep->add_flag("--deep", deep, "Construct and measure every admissible point");
  sweep->add_option("--out", out, "Output file (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--out", out, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("Usage", e.what(), 2);
    return 2;
  }

  try {
    if (construct->parsed()) {
      const WindowSpec spec = construct_spec.empty() ? spec_from_flags(construct_flags)
                                                     : bllab::spec_from_json(load_text_or_inline(construct_spec));
      const bllab::SampledWindow w = bllab::construct(spec);
      emit(out, format == "csv" ? samples_csv(w) : bllab::window_to_json(w));
    } else if (analyze->parsed()) {
      bllab::DiagnosticsReport rep;
      if (!analyze_window.empty()) {
        const bllab::SampledWindow w = bllab::window_from_json(bllab::read_text_file(analyze_window));
        bllab::AnalyzeOptions o = analyze_options(WindowSpec{}, analyze_flags);
        o.N_list = {w.N()};
        o.M_list = M_list;
        o.q_test = q_test;
        o.seed = seed;
        o.trials = trials;
        rep = bllab::analyze(w, o);
      } else {
        WindowSpec spec = analyze_spec.empty() ? spec_from_flags(analyze_flags)
                                               : bllab::spec_from_json(load_text_or_inline(analyze_spec));
        bllab::AnalyzeOptions o = analyze_options(spec, analyze_flags);
        o.N_list = analyze_spec.empty() ? analyze_flags.N : std::vector<int>{spec.N};
        o.M_list = M_list;
        o.q_test = q_test;
        o.seed = seed;
        o.trials = trials;
        rep = bllab::analyze(spec, o);
      }
      emit(out, bllab::report_to_json(rep));
    } else if (curve->parsed()) {
      emit(out, bllab::gamma_curve_csv(curve_q, curve_samples));
    } else if (coeffs->parsed()) {
      emit(out, coeffs_output(c_alpha, c_beta, c_M, c_fine, c_q, format));
    } else if (sweep->parsed()) {
      emit(out, sweep_csv(s_q, r_min, r_max, s_min, s_max, steps, deep, sweep_N));
    } else if (selftest->parsed()) {
      bllab::AcceptanceOptions opts;
      opts.on_progress = [](const bllab::CriterionResult& c, double seconds) {
        std::fprintf(stderr, "criterion %d %s in %.1f s\n", c.id, c.pass ? "passed" : "failed", seconds);
      };
      const auto results = bllab::run_acceptance(opts);
      std::cout << bllab::acceptance_table(results);
      if (!out.empty()) bllab::write_text_file(out, bllab::acceptance_json(results));
      for (const auto& c : results) {
        if (!c.pass) return kAcceptanceFailExit;
      }
    }
  } catch (const bllab::Error& e) {
    const int code = bllab::exit_code_for(e.kind());
    print_error(std::string(bllab::error_kind_name(e.kind())), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what(), 3);
    return 3;
  }
  return 0;
}
