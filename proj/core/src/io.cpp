#include "bllab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bllab/errors.hpp"

namespace bllab {

using json = nlohmann::ordered_json;

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double to_double(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw IoError(std::string("expected a number for ") + what);
}

json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

std::optional<double> opt_from(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return to_double(obj.at(key), key);
}

double need(const json& obj, const char* key) {
  if (!obj.contains(key)) throw IoError(std::string("missing field ") + key);
  return to_double(obj.at(key), key);
}

json spec_json(const WindowSpec& spec) {
  json params = json::object();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianSpec>) {
          params["sigma"] = num(s.sigma);
        } else if constexpr (std::is_same_v<T, CaseASpec> || std::is_same_v<T, CaseBSpec>) {
          params["r"] = num(s.r);
          params["s"] = num(s.s);
          params["q"] = num(s.q);
          params["eps"] = opt_num(s.eps);
          params["eta"] = num(s.eta);
        } else if constexpr (std::is_same_v<T, CompactSpec>) {
          params["r"] = num(s.r);
          params["q"] = num(s.q);
          params["eps"] = opt_num(s.eps);
          params["eta"] = num(s.eta);
        } else if constexpr (std::is_same_v<T, TestFASpec>) {
          params["alpha"] = num(s.alpha);
          params["beta"] = num(s.beta);
        }
      },
      spec.shape);
  return json{{"shape", shape_name(spec.shape)}, {"params", params}, {"N", spec.N}, {"K", spec.K}};
}

json params_json(const DerivedParams& p) {
  return json{{"eps", num(p.eps)},     {"r_prime", num(p.r_prime)}, {"s_prime", num(p.s_prime)},
              {"alpha", num(p.alpha)}, {"beta", num(p.beta)},       {"k", p.k},
              {"gamma", num(p.gamma)}, {"a_neg", num(p.a_neg)}};
}

json moments_json(const MomentReport& rep) {
  const auto trace = [](const std::vector<TraceEntry>& t) {
    json arr = json::array();
    for (const auto& e : t) arr.push_back({{"N", e.N}, {"K", e.K}, {"value", num(e.value)}});
    return arr;
  };
  return json{{"r", num(rep.r)},
              {"s", num(rep.s)},
              {"time_moment", num(rep.time_moment)},
              {"freq_moment", num(rep.freq_moment)},
              {"time_trace", trace(rep.time_trace)},
              {"freq_trace", trace(rep.freq_trace)},
              {"time_verdict", verdict_name(rep.time_verdict)},
              {"freq_verdict", verdict_name(rep.freq_verdict)}};
}

const char* region_name(Region r) {
  switch (r) {
    case Region::Below: return "Below";
    case Region::On: return "On";
    case Region::Above: return "Above";
  }
  return "Below";
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string window_to_json(const SampledWindow& w) {
  json samples = json::array();
  for (const auto& v : w.samples()) samples.push_back(json::array({v.real(), v.imag()}));
  return json{{"N", w.N()}, {"K", w.K()}, {"samples", samples}}.dump() + "\n";
}

SampledWindow window_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    const int N = j.at("N").get<int>();
    const int K = j.at("K").get<int>();
    std::vector<cplx> samples;
    samples.reserve(j.at("samples").size());
    for (const auto& pair : j.at("samples")) {
      if (!pair.is_array() || pair.size() != 2) throw IoError("sample must be [re, im]");
      samples.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return SampledWindow(N, K, std::move(samples));
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed window file: ") + e.what());
  }
}

std::string zak_grid_to_csv(const ZakGrid& G) {
  std::string out;
  for (int j = 0; j < G.N(); ++j) {
    for (int l = 0; l < G.N(); ++l) {
      const cplx v = G(j, l);
      if (l) out += ',';
      out += format_number(v.real());
      const bool neg = std::signbit(v.imag());
      out += neg ? '-' : '+';
      out += format_number(std::abs(v.imag()));
      out += "*i";
    }
    out += '\n';
  }
  return out;
}

std::string spec_to_json(const WindowSpec& spec) { return spec_json(spec).dump(2) + "\n"; }

WindowSpec spec_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    WindowSpec spec;
    spec.N = j.value("N", 128);
    spec.K = j.value("K", 0);
    const std::string shape = j.at("shape").get<std::string>();
    const json p = j.value("params", json::object());
    if (shape == "Gaussian") {
      spec.shape = GaussianSpec{p.contains("sigma") ? need(p, "sigma") : 1.0};
    } else if (shape == "Box") {
      spec.shape = BoxSpec{};
    } else if (shape == "CaseA") {
      spec.shape = CaseASpec{need(p, "r"), need(p, "s"), need(p, "q"), opt_from(p, "eps"),
                             p.contains("eta") ? need(p, "eta") : 0.1};
    } else if (shape == "CaseB") {
      spec.shape = CaseBSpec{need(p, "r"), need(p, "s"), need(p, "q"), opt_from(p, "eps"),
                             p.contains("eta") ? need(p, "eta") : 0.1};
    } else if (shape == "CompactSupport") {
      spec.shape = CompactSpec{need(p, "r"), need(p, "q"), opt_from(p, "eps"),
                               p.contains("eta") ? need(p, "eta") : 0.1};
    } else if (shape == "TestFA") {
      spec.shape = TestFASpec{need(p, "alpha"), need(p, "beta")};
    } else {
      throw IoError("unknown window shape '" + shape + "'");
    }
    return spec;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed spec: ") + e.what());
  }
}

std::string params_to_json(const DerivedParams& p) { return params_json(p).dump(2) + "\n"; }

std::string moment_report_to_json(const MomentReport& rep) { return moments_json(rep).dump(2) + "\n"; }

std::string report_to_json(const DiagnosticsReport& rep) {
  json j;
  j["schema_version"] = rep.schema_version;
  const auto& o = rep.options;
  json nlist = json::array(), mlist = json::array();
  for (int n : o.N_list) nlist.push_back(n);
  for (int m : o.M_list) mlist.push_back(m);
  j["options"] = {{"r", num(o.r)},          {"s", num(o.s)},         {"q", num(o.q)},
                  {"q_test", num(rep.q_test)}, {"N_list", nlist},    {"M_list", mlist},
                  {"seed", o.seed},         {"trials", o.trials}};
  j["spec"] = rep.spec ? spec_json(*rep.spec) : json(nullptr);
  j["params"] = rep.params ? params_json(*rep.params) : json(nullptr);
  if (rep.point) {
    j["point"] = {{"u", num(rep.point->u)},
                  {"v", num(rep.point->v)},
                  {"q", num(rep.point->q)},
                  {"classification", region_name(rep.point->classification)}};
  } else {
    j["point"] = nullptr;
  }
  j["moments"] = moments_json(rep.moments);
  json zt = json::array();
  for (const auto& e : rep.zak_trace) zt.push_back({{"N", e.N}, {"min", num(e.min)}, {"max", num(e.max)}});
  j["zak_trace"] = zt;
  j["zero"] = {{"x", num(rep.zero.x)},
               {"y", num(rep.zero.y)},
               {"magnitude", num(rep.zero.magnitude)},
               {"has_zero", rep.zero.has_zero},
               {"j", rep.zero.j},
               {"l", rep.zero.l}};
  j["zero_slope_grid"] = opt_num(rep.zero_slope_grid);
  j["zero_slope_analytic"] = opt_num(rep.zero_slope_analytic);
  json lt = json::array();
  for (const auto& e : rep.lipschitz_trace) lt.push_back({{"N", e.N}, {"value", num(e.value)}});
  j["lipschitz_trace"] = lt;
  json it = json::array(), gt = json::array();
  for (const auto& e : rep.cq.integral_trace) {
    it.push_back({{"N", e.N}, {"value", num(e.value)}, {"excluded", e.excluded}});
  }
  for (const auto& e : rep.cq.gram_ratio_trace) {
    gt.push_back({{"M", e.M}, {"ratio", num(e.ratio)}, {"q2_exact", num(e.q2_exact)}, {"not_cq", e.not_cq}});
  }
  j["cq"] = {{"q", num(rep.cq.q)},
             {"integral_trace", it},
             {"gram_ratio_trace", gt},
             {"verdict", verdict_name(rep.cq.verdict)}};
  return j.dump(2) + "\n";
}

std::string gamma_curve_csv(double q, int samples) {
  if (samples < 2) throw ParameterError("curve needs at least two samples");
  const double lo = sector_u_min(q);
  const double hi = sector_u_max(q);
  std::string out = "u,v_curve,branch\n";
  const auto row = [&](double u, const char* label) {
    out += format_number(u) + "," + format_number(gamma_q(u, q)) + "," + label + "\n";
  };
  for (int i = 0; i < samples; ++i) {
    const double u = i + 1 == samples ? hi : lo + (hi - lo) * i / (samples - 1);
    row(u, gamma_q_branch(u, q) == CurveBranch::Steep ? "steep" : "flat");
  }
  row(symmetric_point(q), "anchor_E");
  row(std::min(branch_switch_u(q), hi), "anchor_F");
  row(hi, "anchor_G");
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace bllab
