#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "bllab/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::optional<int> only;
  bool verbose = false;
  app.add_option("--only", only, "Run one criterion")->check(CLI::Range(1, 10));
  app.add_flag("-v,--verbose", verbose, "Print metrics");
  CLI11_PARSE(app, argc, argv);

  bllab::AcceptanceOptions opts;
  opts.only = only;
  opts.on_progress = [verbose](const bllab::CriterionResult& c, double seconds) {
    std::printf("[%s] %d %s (%.2f s)%s%s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                c.note.empty() ? "" : ": ", c.note.c_str());
    if (verbose || !c.pass) {
      for (const auto& [key, value] : c.metrics) std::printf("    %s = %.10g\n", key.c_str(), value);
    }
    std::fflush(stdout);
  };
  const auto results = bllab::run_acceptance(opts);
  int failed = 0;
  for (const auto& c : results) failed += c.pass ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
