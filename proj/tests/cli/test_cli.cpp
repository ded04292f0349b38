#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

#include "bllab/io.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "bllab_cli_tests";
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(BLLAB_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, bllab::read_text_file(out), bllab::read_text_file(err)};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Every number present in both documents agrees to tol; returns the count compared.
int compare_numbers(const json& a, const json& b, double tol, const std::string& path = "") {
  int n = 0;
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    INFO(path);
    CHECK(std::abs(x - y) <= tol * std::max(1.0, std::abs(x)));
    return 1;
  }
  if (a.is_object() && b.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (b.contains(it.key())) n += compare_numbers(it.value(), b[it.key()], tol, path + "/" + it.key());
    }
  } else if (a.is_array() && b.is_array() && a.size() == b.size()) {
    for (std::size_t i = 0; i < a.size(); ++i) n += compare_numbers(a[i], b[i], tol, path + "/" + std::to_string(i));
  }
  return n;
}

}  // namespace

TEST_CASE("curve at q = 2 is the line u + v = 1") {
  const Run r = run("curve --q 2 --samples 64");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  CHECK(rows.size() == 67);
  for (const auto& row : rows) CHECK(std::abs(std::stod(row[0]) + std::stod(row[1]) - 1.0) <= 1e-12);
  CHECK(rows.back()[2] == "anchor_G");
}

TEST_CASE("curve accepts q = inf") {
  const Run r = run("curve --q inf --samples 4");
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out)[4][0] == "0.25");
}

TEST_CASE("analyze below the curve fails with a region error") {
  const Run r = run("analyze --shape casea --q 4 --r 3.5 --s 3.5 --N 64");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  const json e = json::parse(r.err);
  CHECK(e["error"] == "ParameterRegionError");
  CHECK(e["exit_code"] == 2);
}

TEST_CASE("usage errors are structured") {
  const Run r = run("construct --N notanumber");
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"] == "Usage");
  CHECK(run("analyze --window /nonexistent/window.json").code == 1);
}

TEST_CASE("construct then analyze the window file matches analyze of the spec") {
  const fs::path dir = fs::temp_directory_path() / "bllab_cli_tests";
  fs::create_directories(dir);
  const std::string spec = (dir / "spec.json").string();
  const std::string window = (dir / "window.json").string();
  bllab::write_text_file(spec, R"({"shape":"CaseA","params":{"r":2.5,"s":2.5,"q":4,"eta":0.1},"N":64,"K":0})");
  REQUIRE(run("construct --spec " + spec + " --out " + window).code == 0);
  const Run from_window = run("analyze --window " + window + " --r 2.5 --s 2.5 --q 4 --M 2,4 --trials 32");
  const Run from_spec = run("analyze --spec " + spec + " --M 2,4 --trials 32");
  REQUIRE(from_window.code == 0);
  REQUIRE(from_spec.code == 0);
  const json a = json::parse(from_window.out), b = json::parse(from_spec.out);
  CHECK(a["moments"]["time_trace"].size() == 1);
  const int compared = compare_numbers(a["moments"], b["moments"], 1e-12) + compare_numbers(a["cq"], b["cq"], 1e-12) +
                       compare_numbers(a["zero"], b["zero"], 1e-12) +
                       compare_numbers(a["zak_trace"], b["zak_trace"], 1e-12) +
                       compare_numbers(a["lipschitz_trace"], b["lipschitz_trace"], 1e-12);
  CHECK(compared > 20);
}

TEST_CASE("identical runs give identical bytes") {
  const std::string args = "analyze --shape caseb --q 4 --r 1.5 --s 20 --N 32,64 --M 2 --trials 16 --seed 7";
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Run c = run("construct --shape compact --q 4 --r 1.5 --N 32 --K 4 --format csv");
  REQUIRE(c.code == 0);
  CHECK(c.out == run("construct --shape compact --q 4 --r 1.5 --N 32 --K 4 --format csv").out);
  CHECK(c.out.rfind("t,re,im\n", 0) == 0);
}

TEST_CASE("sweep reproduces the q = 2 and q = inf boundary lines") {
  for (const auto& [q, a, b] : {std::tuple{"2", 1.0, 1.0}, std::tuple{"inf", 3.0, 1.0}, std::tuple{"4", 0.0, 0.0}}) {
    const int steps = 30;
    const Run r = run(std::string("sweep --q ") + q + " --r-min 1.05 --r-max 6 --s-min 1.05 --s-max 12 --steps 30");
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == static_cast<std::size_t>(steps * steps));
    const double dr = (6.0 - 1.05) / (steps - 1), ds = (12.0 - 1.05) / (steps - 1);
    for (const auto& row : rows) {
      const double rr = std::stod(row[0]), ss = std::stod(row[1]);
      if (rr > ss) continue;
      const double u = 1.0 / rr, v = 1.0 / ss;
      // boundary line a u + b v = 1 through the figure vertices
      const bool above_line = a * u + b * v > 1.0;
      // one grid cell in (r, s) maps to this band in (u, v)
      const double band = a * dr / (rr * rr) + b * ds / (ss * ss);
      if (a > 0.0 && std::abs(a * u + b * v - 1.0) > band) {
        CHECK((row[4] == "above") == above_line);
      }
      // at q = 2 the flat level is 1 and no construction has room
      if (std::string(q) == "2") {
        CHECK(row[5] == "none");
      } else {
        CHECK((row[5] != "none") == (row[4] == "above"));
      }
    }
  }
}

TEST_CASE("coefficients with partial sums") {
  const Run r = run("coeffs --alpha 0.5 --beta 1.8 --M 8 --fine-N 64 --q 4");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["coeffs"].size() == 17 * 17);
  CHECK(j["lq_trace"]["M"] == json::array({2, 4, 8}));
  const Run c = run("coeffs --alpha 0.5 --beta 1.8 --M 2 --fine-N 64 --format csv");
  CHECK(csv_rows(c.out).size() == 25);
  CHECK(run("coeffs --alpha 0.5 --beta 4 --M 2 --fine-N 64").code == 2);
}
