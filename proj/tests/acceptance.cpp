// Acceptance criteria c1..c10: one pass/fail line per criterion.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shrinker/suite.hpp"

namespace fs = std::filesystem;
using namespace shrinker;

namespace {

struct Criterion {
  std::string id;
  std::string check;      // suite check id; empty for c10
  double time_limit = 0;  // seconds
  std::string title;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"c1", "soliton", 1.0, "soliton identities, perturbed sphere detected"},
      {"c2", "conformal-ricci", 10.0, "conformal Ricci cross-check < 1e-6 and |Rc_bar| < D^2"},
      {"c3", "conformal-comparison", 60.0, "ball sandwich, distance distortion, GH bound < 2 D rho^2"},
      {"c4", "erfc", 1.0, "inverse erfc identities < 1e-6 and limits within 2% at x = 1e-6"},
      {"c5", "antipodal-gap", 120.0, "L_geo > 2 eps on the eps grid, graph oracle within 2 units"},
      {"c6", "entropy", 60.0, "mu values, tau curve, scaling and W gradient"},
      {"c7", "volume", 10.0, "growth bounds, weighted ratio, volume-entropy bracket"},
      {"c8", "gh-oracles", 30.0, "GH lower <= exact <= upper, two-point formula"},
      {"c9", "radii", 120.0, "radii degeneracies, Harnack, equivalence, density exponent"},
      {"c10", "", 300.0, "verify-all twice: byte-identical CSV/JSON"},
  };
  return list;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << v;
  return os.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string detail(const CheckReport& r) {
  if (r.values.contains("error")) return "error: " + r.values["error"].get<std::string>();
  if (r.id == "erfc") {
    const auto& v = r.values;
    std::ostringstream os;
    os << "identities_ok=" << v["identities_ok"] << " limits_ok=" << v["limits_ok"]
       << " ratio_A=" << v["limit"]["ratio_A"] << " ratio_B=" << v["limit"]["ratio_B"];
    return os.str();
  }
  return "";
}

bool run_c10(const std::string& cli, double limit) {
  const fs::path root = fs::temp_directory_path() / ("shrinker-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::vector<fs::path> dirs = {root / "a", root / "b"};
  for (const auto& d : dirs) {
    const std::string cmd = "\"" + cli + "\" --seed 42 verify-all --m 4 --out \"" + d.string() + "\" > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0 && code != 1) {
      std::cout << "  verify-all exited with " << code << "\n";
      ok = false;
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int compared = 0, differing = 0;
  if (ok) {
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const auto ext = entry.path().extension();
      if (ext != ".csv" && ext != ".json") continue;
      ++compared;
      const fs::path other = dirs[1] / entry.path().filename();
      if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
        ++differing;
        std::cout << "  differs: " << entry.path().filename().string() << "\n";
      }
    }
  }
  fs::remove_all(root);
  const bool pass = ok && compared >= 4 && differing == 0 && elapsed < limit;
  std::cout << "c10 " << (pass ? "PASS" : "FAIL") << "  verify-all twice: " << compared << " CSV/JSON files, "
            << differing << " differ (" << fmt(elapsed) << " s for both runs, limit " << fmt(limit) << " s)\n";
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> only;
  std::string cli;
  app.add_option("--criterion", only, "Criteria to run (default all)")->delimiter(',');
  app.add_option("--cli", cli, "Path of the shrinker-lab executable (needed by c10)");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    if (c.check.empty()) {
      if (cli.empty()) {
        std::cout << c.id << " FAIL  --cli not given\n";
        all = false;
        continue;
      }
      all = run_c10(cli, c.time_limit) && all;
      continue;
    }
    const auto& registry = check_registry();
    const auto spec = std::find_if(registry.begin(), registry.end(), [&](const CheckSpec& s) { return s.id == c.check; });
    const auto result = run_check(*spec, SuiteContext{});
    const auto& r = result.report;
    const bool in_time = r.wall_time < c.time_limit;
    const bool pass = r.status != Status::Fail && in_time;
    std::cout << c.id << ' ' << (pass ? "PASS" : "FAIL") << "  " << c.title << " [" << to_string(r.status) << ", "
              << fmt(r.wall_time) << " s, limit " << fmt(c.time_limit) << " s]";
    const std::string d = detail(r);
    if (!d.empty()) std::cout << "  " << d;
    std::cout << "\n";
    if (!pass) std::cout << "  " << to_json(r)["values"].dump() << "\n";
    all = all && pass;
  }
  return all ? 0 : 1;
}
