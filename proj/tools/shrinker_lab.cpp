#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shrinker/conformal.hpp"
#include "shrinker/entropy.hpp"
#include "shrinker/errors.hpp"
#include "shrinker/gaussian_experiment.hpp"
#include "shrinker/gh.hpp"
#include "shrinker/model.hpp"
#include "shrinker/output.hpp"
#include "shrinker/radii.hpp"
#include "shrinker/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shrinker;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Invalid input detected after parsing (bad model name, parameter out of range).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ShrinkerModel load_model(const std::string& spec, int m) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return make_model(spec, m);
  if (spec.ends_with(".json") && fs::is_regular_file(spec)) {
    std::ifstream in(spec);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("cannot parse model file " + spec + ": " + e.what());
    }
    auto model = model_from_json(j);
    if (model.dimension() != m) {
      throw UsageError("model file has m = " + std::to_string(model.dimension()) + ", --m asks for " +
                       std::to_string(m));
    }
    return model;
  }
  std::string known;
  for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown model '" + spec + "' (catalog: " + known + ", or a model .json file)");
}

FiniteMetricSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return FiniteMetricSpace::from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw UsageError("cannot parse " + path + ": " + e.what());
  }
}

void print_report(const CheckReport& r) {
  std::cout << r.id << ": " << to_string(r.status) << "\n";
  std::cerr << "  [" << r.id << "] wall time " << format_number(std::round(r.wall_time * 1000) / 1000) << " s\n";
}

int exit_for(const std::vector<CheckReport>& reports) {
  const bool fail = std::any_of(reports.begin(), reports.end(),
                                [](const CheckReport& r) { return r.status == Status::Fail; });
  return fail ? kExitFail : kExitPass;
}

void write_reports(const std::vector<CheckReport>& reports, const std::string& path) {
  if (path.empty()) return;
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  write_text(path, arr.dump(2) + "\n");
}

template <class F>
CheckReport timed(const std::string& id, const std::string& anchor, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = id;
  r.anchor = anchor;
  body(r);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Status status_of(bool pass) { return pass ? Status::Pass : Status::Fail; }

std::vector<double> parse_axis_points(const std::string& spec) {
  const std::string prefix = "axis:";
  if (!spec.starts_with(prefix)) throw UsageError("--points must look like axis:0,0.5,1");
  std::vector<double> out;
  std::stringstream ss(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad axis offset '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--points lists no offsets");
  return out;
}

std::vector<double> tau_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) throw UsageError("need 0 < tau-min < tau-max and points >= 2");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(lo * std::pow(hi / lo, i / static_cast<double>(points - 1)));
  // tau = 1 is where the minimum is expected, so it always sits on the grid when in range
  if (lo <= 1.0 && hi >= 1.0) {
    const bool has_one = std::any_of(grid.begin(), grid.end(), [](double t) { return std::abs(t - 1.0) < 1e-12; });
    if (!has_one) grid.push_back(1.0);
    std::sort(grid.begin(), grid.end());
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for rotationally symmetric Ricci shrinkers"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
  app.require_subcommand(1);
  unsigned seed = 42;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Model catalog");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "List catalog models");
  auto* cat_verify = catalog->add_subcommand("verify", "Soliton and normalization residuals");
  std::string model_name;
  int m = 4;
  double tol = 1e-10;
  std::string json_out;
  cat_verify->add_option("--model", model_name, "Catalog name or model .json")->required();
  cat_verify->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(3, 12));
  cat_verify->add_option("--tol", tol, "Residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  cat_verify->add_option("--json", json_out, "Write the report here");
  auto* cat_export = catalog->add_subcommand("export", "Write a model as JSON");
  cat_export->add_option("--model", model_name, "Catalog name")->required();
  cat_export->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(3, 12));
  cat_export->add_option("--json", json_out, "Output path")->required();

  // conformal
  auto* conformal = app.add_subcommand("conformal", "Conformal chart checks");
  conformal->require_subcommand(1);
  auto* conf_check = conformal->add_subcommand("check", "Ricci bound, ball sandwich, distortion and GH bound");
  std::optional<double> q, D;
  double r = 0.5, rho = 0.05;
  std::optional<double> eps_net;
  std::string report_out;
  conf_check->add_option("--model", model_name, "Catalog name or model .json")->required();
  conf_check->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(3, 12));
  conf_check->add_option("--q", q, "Axis coordinate of the base point (default: minimum of f)");
  conf_check->add_option("--D", D, "Scale constant (default d(p,q) + 10m)");
  conf_check->add_option("--r", r, "Ball radius")->capture_default_str()->check(CLI::Range(1e-6, 1.0));
  conf_check->add_option("--rho", rho, "GH ball radius")->capture_default_str()->check(CLI::PositiveNumber);
  conf_check->add_option("--eps-net", eps_net, "Net resolution (default rho/2)")->check(CLI::PositiveNumber);
  conf_check->add_option("--report", report_out, "Write the reports here");

  // gaussian-geodesic
  auto* gauss = app.add_subcommand("gaussian-geodesic", "Antipodal gap of the conformally changed Gaussian");
  double eps = 0.1;
  int grid_n = 10;
  std::string csv_out, plot_out;
  gauss->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(3, 12));
  gauss->add_option("--eps", eps, "Distance of the two points from the added point")->capture_default_str();
  gauss->add_option("--grid", grid_n, "Additional eps grid points in (0, s0/4)")->capture_default_str()->check(CLI::Range(0, 100));
  gauss->add_option("--csv", csv_out, "CSV of eps, L_geo, 2 eps");
  gauss->add_option("--plot", plot_out, "SVG of the geodesic family at --eps");
  gauss->add_option("--json", json_out, "Write the report here");

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Entropy functional");
  entropy->require_subcommand(1);
  auto* ent_mu = entropy->add_subcommand("mu", "mu(g, tau)");
  double tau = 1.0;
  int cells = 1024;
  ent_mu->add_option("--model", model_name, "Catalog name or model .json")->required();
  ent_mu->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(3, 12));
  ent_mu->add_option("--tau", tau, "Scale")->capture_default_str()->check(CLI::PositiveNumber);
  ent_mu->add_option("--cells", cells, "Finite-volume cells")->capture_default_str()->check(CLI::Range(64, 1 << 16));
  ent_mu->add_option("--json", json_out, "Write the report here");
  auto* ent_curve = entropy->add_subcommand("curve", "mu(g, tau) over a geometric tau grid");
  double tau_min = 0.25, tau_max = 4.0;
  int points = 9;
  std::string mu_csv = "mu.csv";
  ent_curve->add_option("--model", model_name, "Catalog name or model .json")->required();
  ent_curve->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(3, 12));
  ent_curve->add_option("--tau-min", tau_min, "Smallest tau")->capture_default_str();
  ent_curve->add_option("--tau-max", tau_max, "Largest tau")->capture_default_str();
  ent_curve->add_option("--points", points, "Grid points (tau = 1 is added when missing)")->capture_default_str();
  ent_curve->add_option("--cells", cells, "Finite-volume cells")->capture_default_str()->check(CLI::Range(64, 1 << 16));
  ent_curve->add_option("--csv", mu_csv, "CSV output")->capture_default_str();
  ent_curve->add_option("--plot", plot_out, "SVG output");
  ent_curve->add_option("--json", json_out, "Write the report here");

  // gh
  auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff bounds");
  gh->require_subcommand(1);
  auto* gh_compare = gh->add_subcommand("compare", "Lower, upper and (small spaces) exact GH distance");
  std::string space_a, space_b;
  gh_compare->add_option("--space-a", space_a, "Finite metric space JSON")->required()->check(CLI::ExistingFile);
  gh_compare->add_option("--space-b", space_b, "Finite metric space JSON")->required()->check(CLI::ExistingFile);
  gh_compare->add_option("--json", json_out, "Write the report here");

  // radii
  auto* radii = app.add_subcommand("radii", "Regularity radii at axis points");
  std::string points_spec = "axis:0";
  double delta = kDefaultDelta, gh_eps = kDefaultEps;
  radii->add_option("--model", model_name, "Catalog name or model .json")->required();
  radii->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(3, 12));
  radii->add_option("--points", points_spec, "Offsets from the minimum of f along the axis")->capture_default_str();
  radii->add_option("--delta", delta, "Volume radius threshold")->capture_default_str()->check(CLI::Range(1e-6, 0.5));
  radii->add_option("--eps", gh_eps, "GH radius threshold")->capture_default_str()->check(CLI::Range(1e-6, 0.5));
  radii->add_option("--json", json_out, "Write the table here");

  // verify-all
  auto* verify_all = app.add_subcommand("verify-all", "Run every check and write reports and artifacts");
  std::string out_dir = "shrinker-lab-out";
  std::vector<std::string> only;
  verify_all->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::Range(4, 12));
  verify_all->add_option("--out", out_dir, "Output directory")->capture_default_str();
  verify_all->add_option("--only", only, "Subset of check ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*cat_list) {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
      return kExitPass;
    }
    if (*cat_export) {
      const auto model = load_model(model_name, m);
      write_text(json_out, model_to_json(model).dump(2) + "\n");
      return kExitPass;
    }
    if (*cat_verify) {
      const auto model = load_model(model_name, m);
      const auto rep = timed("catalog-verify", "soliton.identities", [&](CheckReport& c) {
        const auto res = verify_model(model, tol);
        c.values = {{"model", model.name}, {"m", m}, {"soliton", res.soliton}, {"normalization", res.normalization}};
        c.tolerances = {{"residual", tol}};
        c.status = status_of(res.pass);
      });
      print_report(rep);
      std::cout << "  soliton residual " << format_number(rep.values["soliton"].get<double>())
                << ", normalization residual " << format_number(rep.values["normalization"].get<double>()) << "\n";
      write_reports({rep}, json_out);
      return exit_for({rep});
    }
    if (*conf_check) {
      const auto model = load_model(model_name, m);
      const double s_q = q.value_or(model.base_point());
      if (!model.profile.contains(s_q)) throw UsageError("--q lies outside the model domain");
      const auto chart = build_chart(model, s_q, D);
      const double net = eps_net.value_or(0.5 * rho);
      std::vector<CheckReport> reps;
      reps.push_back(timed("ricci-bound", "conformal.ricci_bound", [&](CheckReport& c) {
        const auto b = ricci_bound_check(chart, r);
        const double cross = ricci_crosscheck(chart, chart.s_lo(), chart.s_hi(), 512);
        c.values = {{"max_norm", b.max_norm}, {"D2", b.bound_d2}, {"pointwise_excess", b.max_excess_pointwise},
                    {"radius", b.radius}, {"crosscheck", cross}};
        c.tolerances = {{"crosscheck", 1e-6}};
        c.status = status_of(b.pass && cross < 1e-6);
      }));
      reps.push_back(timed("sandwich", "conformal.sandwich", [&](CheckReport& c) {
        const auto s = ball_sandwich_check(chart, r);
        c.values = {{"r", r}, {"lambda", s.lambda}, {"min_dbar", s.min_dbar}, {"max_dbar", s.max_dbar},
                    {"inner_margin", s.inner_margin}, {"outer_margin", s.outer_margin}, {"contained", s.contained}};
        c.status = status_of(s.pass);
      }));
      reps.push_back(timed("distortion", "conformal.distortion", [&](CheckReport& c) {
        const auto d = distance_distortion_check(chart, r, 64, seed);
        c.values = {{"r", r}, {"lambda", d.lambda}, {"min_ratio", d.min_ratio}, {"max_ratio", d.max_ratio},
                    {"pairs", d.pairs}};
        c.status = status_of(d.pass);
      }));
      reps.push_back(timed("gh-bound", "conformal.gh_bound", [&](CheckReport& c) {
        const auto g = gh_bound_check(chart, rho, net, r);
        c.values = {{"rho", rho}, {"eps_net", net}, {"net_size", g.net_size}, {"distortion", g.distortion},
                    {"net_slack", g.net_slack}, {"set_mismatch", g.set_mismatch}, {"upper", g.upper},
                    {"budget", g.budget}, {"hypothesis_rho_lt_r_over_D", g.hypothesis_ok}};
        c.tolerances = {{"slack_fraction", 0.2}};
        c.status = status_of(g.pass);
      }));
      for (const auto& c : reps) print_report(c);
      write_reports(reps, report_out);
      return exit_for(reps);
    }
    if (*gauss) {
      const auto cg = build_conformal_gaussian(m);
      if (!(eps > 0.0 && eps < cg.s0 / 4.0)) {
        throw UsageError("--eps must lie in (0, s0/4) = (0, " + format_number(cg.s0 / 4.0) + ")");
      }
      std::vector<double> grid = grid_n > 0 ? eps_grid(cg, grid_n) : std::vector<double>{};
      if (std::find(grid.begin(), grid.end(), eps) == grid.end()) grid.push_back(eps);
      std::sort(grid.begin(), grid.end());
      std::vector<AntipodalGap> gaps;
      const auto rep = timed("antipodal-gap", "gaussian.antipodal_gap", [&](CheckReport& c) {
        bool pass = true;
        for (double e : grid) {
          gaps.push_back(antipodal_gap(cg, e));
          const auto& g = gaps.back();
          pass = pass && g.gap > 0.0 && g.graph_agrees;
          c.values["rows"].push_back({{"eps", e}, {"L_geo", g.L_geo}, {"two_eps", g.through_tip}, {"gap", g.gap},
                                      {"graph_agrees", g.graph_agrees}, {"connecting_found", g.connecting_found}});
        }
        c.values["m"] = m;
        c.values["s0"] = cg.s0;
        c.values["threshold_L"] = threshold_L(cg);
        c.status = status_of(pass);
      });
      print_report(rep);
      for (const auto& g : gaps) {
        std::cout << "  eps " << format_number(g.eps) << "  L_geo " << format_number(g.L_geo) << "  2eps "
                  << format_number(g.through_tip) << "  gap " << format_number(g.gap) << "\n";
      }
      if (!csv_out.empty()) write_text(csv_out, gap_table(gaps).str());
      if (!plot_out.empty()) {
        const auto it = std::find_if(gaps.begin(), gaps.end(), [&](const AntipodalGap& g) { return g.eps == eps; });
        write_text(plot_out, gap_plot(cg, *it).str());
      }
      write_reports({rep}, json_out);
      return exit_for({rep});
    }
    if (*ent_mu) {
      const auto model = load_model(model_name, m);
      const auto rep = timed("entropy-mu", "entropy.mu", [&](CheckReport& c) {
        c.values = {{"model", model.name}, {"m", m}, {"tau", tau}};
        const bool closed = model.profile.lo_kind() == EndKind::SmoothCap && model.profile.hi_kind() == EndKind::SmoothCap;
        if (closed) {
          const auto res = minimize_mu(make_entropy_problem(model, tau, cells));
          c.values["mu"] = res.mu;
          c.values["upper_bound"] = res.upper_bound;
          c.values["residual"] = res.residual;
          c.status = status_of(res.converged);
        } else if (tau == 1.0) {
          c.values["mu"] = mu_from_potential(model);
          c.values["method"] = "potential";
          c.status = Status::Pass;
        } else {
          throw UsageError("mu at tau != 1 needs a closed model; noncompact models only support tau = 1");
        }
        if (model.mu_exact) {
          c.values["exact"] = *model.mu_exact;
          c.values["exact_tag"] = model.mu_tag;
        }
      });
      print_report(rep);
      std::cout << "  mu " << format_number(rep.values["mu"].get<double>()) << "\n";
      write_reports({rep}, json_out);
      return exit_for({rep});
    }
    if (*ent_curve) {
      const auto model = load_model(model_name, m);
      const auto grid = tau_grid(tau_min, tau_max, points);
      const bool closed = model.profile.lo_kind() == EndKind::SmoothCap && model.profile.hi_kind() == EndKind::SmoothCap;
      if (!closed) throw UsageError("entropy curve needs a closed model (both ends smooth caps)");
      NuReport nu;
      const auto rep = timed("entropy-curve", "entropy.tau_curve", [&](CheckReport& c) {
        nu = nu_check(make_entropy_problem(model, 1.0, cells), grid);
        c.values = {{"model", model.name}, {"m", m}, {"nu", nu.nu}, {"argmin_tau", nu.argmin_tau},
                    {"argmin_at_one", nu.argmin_at_one}, {"pattern_ok", nu.pattern_ok}};
        c.status = status_of(nu.argmin_at_one && nu.pattern_ok);
      });
      print_report(rep);
      for (const auto& row : nu.rows) {
        std::cout << "  tau " << format_number(row.tau) << "  mu " << format_number(row.mu) << "\n";
      }
      write_text(mu_csv, mu_table(nu).str());
      if (!plot_out.empty()) write_text(plot_out, mu_plot(nu, "mu(g, tau), " + model.name).str());
      write_reports({rep}, json_out);
      return exit_for({rep});
    }
    if (*gh_compare) {
      const auto X = load_space(space_a);
      const auto Y = load_space(space_b);
      const auto rep = timed("gh-compare", "gh.compare", [&](CheckReport& c) {
        const double lo = gh_lower(X, Y);
        const double up = gh_upper(X, Y, radial_correspondence(X, Y));
        c.values = {{"size_a", X.size()}, {"size_b", Y.size()}, {"lower", lo}, {"upper", up}};
        bool ok = lo <= up + 1e-12;
        if (X.size() <= kExactLimit && Y.size() <= kExactLimit) {
          const double ex = gh_exact_small(X, Y);
          c.values["exact"] = ex;
          ok = ok && lo <= ex + 1e-12 && ex <= up + 1e-12;
        }
        c.status = status_of(ok);
      });
      print_report(rep);
      std::cout << "  " << rep.values.dump() << "\n";
      write_reports({rep}, json_out);
      return exit_for({rep});
    }
    if (*radii) {
      const auto model = load_model(model_name, m);
      const auto offsets = parse_axis_points(points_spec);
      for (double o : offsets) {
        if (!model.profile.contains(model.base_point() + o)) {
          throw UsageError("axis offset " + format_number(o) + " lies outside the model domain");
        }
      }
      json table = json::array();
      const auto rep = timed("radii", "radii.table", [&](CheckReport& c) {
        bool finite = true;
        for (double o : offsets) {
          const auto rr = radii_report(model, model.base_point() + o, delta, gh_eps);
          table.push_back(to_json(rr));
          finite = finite && std::isfinite(rr.vr.value) && std::isfinite(rr.gr.value);
        }
        c.values = {{"model", model.name}, {"m", m}, {"points", offsets.size()}};
        c.tolerances = {{"delta", delta}, {"eps", gh_eps}};
        c.status = status_of(finite);
      });
      print_report(rep);
      for (const auto& row : table) std::cout << "  " << row.dump() << "\n";
      if (!json_out.empty()) write_text(json_out, table.dump(2) + "\n");
      return exit_for({rep});
    }
    if (*verify_all) {
      const int threads = thread_cap();
      SuiteContext ctx;
      ctx.m = m;
      ctx.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const auto result = run_suite(ctx, only, threads);
      write_suite(result, out_dir);
      std::vector<CheckReport> reps;
      for (const auto& c : result.checks) {
        print_report(c.report);
        reps.push_back(c.report);
      }
      std::cerr << "total wall time "
                << format_number(std::round(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() * 1000) / 1000)
                << " s (threads " << threads << ")\n";
      return exit_for(reps);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
