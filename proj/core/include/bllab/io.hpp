#pragma once

// Text formats: window JSON, Zak grid CSV, spec JSON, report JSON, curve CSV.
// Numbers are written with 17 significant digits independent of locale.

#include <filesystem>
#include <string>

#include "bllab/diagnostics.hpp"
#include "bllab/localization.hpp"
#include "bllab/windows.hpp"
#include "bllab/zak.hpp"

namespace bllab {

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

/// {"N": int, "K": int, "samples": [[re, im], ...]}
std::string window_to_json(const SampledWindow& w);
SampledWindow window_from_json(const std::string& text);

/// N rows of N cells "re+im*i" (or "re-im*i").
std::string zak_grid_to_csv(const ZakGrid& G);

std::string spec_to_json(const WindowSpec& spec);
WindowSpec spec_from_json(const std::string& text);

std::string params_to_json(const DerivedParams& p);

std::string moment_report_to_json(const MomentReport& rep);

std::string report_to_json(const DiagnosticsReport& rep);

/// Header u,v_curve,branch; `samples` evenly spaced u over the sector range
/// followed by the anchor rows E (diagonal), F (branch switch), G (u-axis).
std::string gamma_curve_csv(double q, int samples);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bllab
