#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bllab {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;
};

struct AcceptanceOptions {
  // Called after each criterion with its wall time in seconds; never part of the report.
  std::function<void(const CriterionResult&, double)> on_progress;
  // Criterion 10 reruns 1-9 and compares serialized output; off for the inner rerun.
  bool include_determinism = true;
  // Run a single criterion (1-10) instead of the whole suite.
  std::optional<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// Deterministic JSON (no timings).
std::string acceptance_json(const std::vector<CriterionResult>& results);

/// One line per criterion: "[PASS] 1 name" / "[FAIL] ...".
std::string acceptance_table(const std::vector<CriterionResult>& results);

}  // namespace bllab
