#include "shrinker/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>
#include <random>
#include <thread>

#include "shrinker/conformal.hpp"
#include "shrinker/errors.hpp"
#include "shrinker/gh.hpp"
#include "shrinker/model.hpp"
#include "shrinker/radii.hpp"

namespace shrinker {

using nlohmann::json;

std::string to_string(Status status) {
  switch (status) {
    case Status::Pass: return "pass";
    case Status::Marginal: return "marginal";
    case Status::Fail: return "fail";
  }
  return "fail";
}

json to_json(const CheckReport& report) {
  return {{"id", report.id},
          {"anchor", report.anchor},
          {"status", to_string(report.status)},
          {"values", report.values},
          {"tolerances", report.tolerances}};
}

const std::map<std::string, std::string>& anchor_index() {
  static const std::map<std::string, std::string> index = {
      {"soliton.identities", "Soliton equation and potential normalization on the catalog models"},
      {"conformal.ricci", "Ricci curvature of the conformal metric: closed formula against direct curvature, and the D^2 bound"},
      {"conformal.ricci_bound", "Ricci bound |Rc_bar| < D^2 on the small conformal ball"},
      {"conformal.comparison", "Ball inclusions, distance distortion and GH closeness of the conformal metric"},
      {"conformal.sandwich", "Ball inclusions with factors exp(+-Dr/(m-2))"},
      {"conformal.distortion", "Pairwise distance distortion with factors exp(+-Dr/(m-2))"},
      {"conformal.gh_bound", "GH distance between conformal and original balls below 2 D rho^2"},
      {"erfc.identities", "Derivative identities and small-x asymptotics of the inverse complementary error function"},
      {"gaussian.antipodal_gap", "Conformally changed Gaussian: antipodal points near the added point are not joined by a cap-avoiding minimizer"},
      {"entropy.mu", "Entropy of the catalog models and its tau profile, scaling and gradient"},
      {"entropy.tau_curve", "mu(g, tau) over a tau grid"},
      {"volume.comparison", "Potential growth bounds, weighted volume ratio and volume-entropy bracket"},
      {"gh.oracles", "GH lower bound, exact value and correspondence upper bound on small spaces"},
      {"gh.compare", "GH bounds between two finite metric spaces"},
      {"radii.regularity", "Regularity radii: flat degeneracies, local comparability, equivalence and density"},
      {"radii.table", "Volume, GH and strongly convex radii with their bold variants"},
  };
  return index;
}

namespace {

Status verdict(bool pass, bool marginal = false) {
  if (!pass) return Status::Fail;
  return marginal ? Status::Marginal : Status::Pass;
}

std::vector<int> dims_with(int m, std::vector<int> base) {
  if (std::find(base.begin(), base.end(), m) == base.end()) base.push_back(m);
  return base;
}

// ---------------------------------------------------------------------------

CheckResult soliton_identities(const SuiteContext& ctx) {
  constexpr double kTol = 1e-10;
  constexpr double kPerturbedMin = 1e-3;
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"residual", kTol}, {"perturbed_min", kPerturbedMin}};
  bool pass = true;
  for (int m : dims_with(ctx.m, {4, 5})) {
    for (const auto& name : catalog_names()) {
      const auto r = verify_model(make_model(name, m), kTol);
      rep.values["models"].push_back(
          {{"model", name}, {"m", m}, {"soliton", r.soliton}, {"normalization", r.normalization}, {"pass", r.pass}});
      pass = pass && r.pass;
    }
    const auto bad = verify_model(make_sphere_with_radius(m, std::sqrt(2.0 * (m - 1)) * 1.01), kTol);
    const bool detected = bad.soliton > kPerturbedMin;
    rep.values["perturbed_sphere"].push_back({{"m", m}, {"soliton", bad.soliton}, {"detected", detected}});
    pass = pass && detected;
  }
  rep.status = verdict(pass);
  return out;
}

CheckResult conformal_ricci(const SuiteContext& ctx) {
  constexpr double kCross = 1e-6;
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"crosscheck", kCross}, {"grid", 512}};
  bool pass = true;
  for (const auto& name : catalog_names()) {
    const auto model = make_model(name, ctx.m);
    const auto chart = build_chart(model, model.base_point());
    const double cross = ricci_crosscheck(chart, chart.s_lo(), chart.s_hi(), 512);
    json row = {{"model", name}, {"D", chart.D()}, {"crosscheck", cross}};
    pass = pass && cross < kCross;
    for (double r : {0.1, 0.5, 1.0}) {
      const auto b = ricci_bound_check(chart, r);
      row["bound"].push_back({{"r", r},
                              {"max_norm", b.max_norm},
                              {"D2", b.bound_d2},
                              {"pointwise_excess", b.max_excess_pointwise},
                              {"samples", b.samples},
                              {"pass", b.pass}});
      pass = pass && b.pass;
    }
    rep.values["charts"].push_back(row);
  }
  rep.status = verdict(pass);
  return out;
}

CheckResult conformal_comparison(const SuiteContext& ctx) {
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"gh_slack_fraction", 0.2}, {"eps_net_over_rho", 0.5}};
  bool pass = true;
  bool marginal = false;
  for (const std::string name : {"gaussian", "cylinder"}) {
    const auto model = make_model(name, ctx.m);
    const auto chart = build_chart(model, model.base_point());
    json row = {{"model", name}, {"D", chart.D()}};
    for (double r : {0.1, 0.5}) {
      const auto s = ball_sandwich_check(chart, r);
      const auto d = distance_distortion_check(chart, r, 64, ctx.seed);
      row["sandwich"].push_back({{"r", r},
                                 {"lambda", s.lambda},
                                 {"min_dbar", s.min_dbar},
                                 {"max_dbar", s.max_dbar},
                                 {"inner_margin", s.inner_margin},
                                 {"outer_margin", s.outer_margin},
                                 {"pass", s.pass}});
      row["distortion"].push_back({{"r", r},
                                   {"lambda", d.lambda},
                                   {"min_ratio", d.min_ratio},
                                   {"max_ratio", d.max_ratio},
                                   {"pairs", d.pairs},
                                   {"pass", d.pass}});
      pass = pass && s.pass && d.pass;
    }
    for (double rho : {0.02, 0.05}) {
      const auto g = gh_bound_check(chart, rho, 0.5 * rho, 0.5);
      row["gh"].push_back({{"rho", rho},
                           {"net_size", g.net_size},
                           {"distortion", g.distortion},
                           {"net_slack", g.net_slack},
                           {"set_mismatch", g.set_mismatch},
                           {"upper", g.upper},
                           {"budget", g.budget},
                           {"hypothesis_rho_lt_r_over_D", g.hypothesis_ok},
                           {"pass", g.pass}});
      pass = pass && g.pass;
      marginal = marginal || g.upper > 0.5 * g.budget;
    }
    rep.values["charts"].push_back(row);
  }
  rep.status = verdict(pass, marginal);
  return out;
}

CheckResult erfc_identities(const SuiteContext&) {
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"identity", 1e-6}, {"dphi", 1e-8}, {"limit_relative", 0.02}, {"x_limit", 1e-6}};
  const auto r = erfc_suite(erfc_grid());
  rep.values = {{"dA", r.dA},
                {"d2A", r.d2A},
                {"dB", r.dB},
                {"d2B", r.d2B},
                {"dphi", r.dphi},
                {"limit", {{"x", r.limit.x}, {"ratio_A", r.limit.ratio_A}, {"ratio_B", r.limit.ratio_B}}},
                {"identities_ok", r.identities_ok},
                {"limits_ok", r.limits_ok}};
  for (const auto& t : r.tail) rep.values["tail"].push_back({{"x", t.x}, {"ratio_A", t.ratio_A}, {"ratio_B", t.ratio_B}});
  rep.status = verdict(r.identities_ok && r.limits_ok);
  return out;
}

CheckResult antipodal_gap_check(const SuiteContext&) {
  constexpr double kMarginFactor = 1e-3;
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"margin_factor", kMarginFactor}, {"graph_units", 2}};
  const auto cg = build_conformal_gaussian(4);
  std::vector<AntipodalGap> gaps;
  bool pass = true;
  for (double eps : eps_grid(cg, 10)) {
    gaps.push_back(antipodal_gap(cg, eps));
    const auto& g = gaps.back();
    pass = pass && g.L_geo > 2.0 * eps && g.graph_agrees;
    rep.values["rows"].push_back({{"eps", eps},
                                  {"L_geo", g.L_geo},
                                  {"two_eps", g.through_tip},
                                  {"gap", g.gap},
                                  {"kind", to_string(g.kind)},
                                  {"graph_length", g.graph_length},
                                  {"graph_resolution", g.graph_resolution},
                                  {"graph_agrees", g.graph_agrees},
                                  {"connecting_found", g.connecting_found}});
  }
  const auto& first = gaps.front();
  const bool margin_ok = first.gap > kMarginFactor * first.through_tip;
  rep.values["smallest_eps_margin_ok"] = margin_ok;
  rep.values["s0"] = cg.s0;
  rep.values["threshold_L"] = threshold_L(cg);
  rep.status = verdict(pass && margin_ok);
  out.artifacts.push_back({"gap.csv", gap_table(gaps).str()});
  out.artifacts.push_back({"gap.svg", gap_plot(cg, gaps[gaps.size() / 2]).str()});
  return out;
}

double gradient_error(const EntropyProblem& problem, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(0.5, 1.5);
  std::vector<double> u(problem.nodes.size());
  for (auto& x : u) x = U(rng);
  const auto g = w_gradient(problem, u);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> d(u.size());
    for (auto& x : d) x = U(rng) - 1.0;
    const double h = 1e-5;
    auto up = u, um = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] += h * d[i];
      um[i] -= h * d[i];
    }
    const double fd = (w_raw(problem, up) - w_raw(problem, um)) / (2.0 * h);
    double an = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) an += g[i] * d[i];
    worst = std::max(worst, std::abs(fd - an) / std::abs(an));
  }
  return worst;
}

CheckResult entropy_mu(const SuiteContext& ctx) {
  constexpr double kMuTol = 1e-3;
  constexpr double kGaussianTol = 1e-9;
  constexpr double kScaleTol = 1e-6;
  constexpr double kGradTol = 1e-6;
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"mu", kMuTol}, {"gaussian_mu", kGaussianTol}, {"scaling", kScaleTol}, {"gradient", kGradTol}};

  const auto sphere = make_sphere(ctx.m);
  const auto problem = make_entropy_problem(sphere, 1.0);
  const auto mu = minimize_mu(problem);
  const double from_potential = mu_from_potential(sphere);
  const double exact = *sphere.mu_exact;
  const bool mu_ok = std::abs(mu.mu - exact) < kMuTol && std::abs(mu.mu - from_potential) < kMuTol;
  rep.values["sphere"] = {{"mu", mu.mu},
                          {"exact", exact},
                          {"from_potential", from_potential},
                          {"residual", mu.residual},
                          {"pass", mu_ok}};

  const double mu_gauss = mu_from_potential(make_gaussian(ctx.m));
  const bool gauss_ok = std::abs(mu_gauss) < kGaussianTol;
  rep.values["gaussian_mu"] = mu_gauss;

  const auto nu = nu_check(problem, default_tau_grid());
  rep.values["tau_curve"] = {{"argmin_tau", nu.argmin_tau},
                             {"nu", nu.nu},
                             {"argmin_at_one", nu.argmin_at_one},
                             {"pattern_ok", nu.pattern_ok}};

  bool scale_ok = true;
  for (double c : {0.5, 2.0}) {
    const double d = scaling_check(problem, c);
    rep.values["scaling"].push_back({{"c", c}, {"difference", d}});
    scale_ok = scale_ok && d < kScaleTol;
  }
  const double grad = gradient_error(with_tau(problem, 1.3), ctx.seed);
  rep.values["gradient_relative_error"] = grad;

  rep.status = verdict(mu_ok && gauss_ok && nu.argmin_at_one && nu.pattern_ok && scale_ok && grad < kGradTol);
  out.artifacts.push_back({"mu.csv", mu_table(nu).str()});
  out.artifacts.push_back({"mu.svg", mu_plot(nu, "mu(g, tau) on the round sphere").str()});
  return out;
}

CheckResult volume_comparison(const SuiteContext& ctx) {
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"distances", 20}, {"rho", 0.5}, {"ratios", {2, 4}}};
  bool pass = true;
  for (const auto& name : catalog_names()) {
    const auto model = make_model(name, ctx.m);
    const double p = model.base_point();
    const double reach = std::min(model.profile.hi() - p, 30.0);
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(reach * k / 20.0);
    const auto rows = f_growth_check(model, grid);
    double worst_lower = -INFINITY, worst_upper = -INFINITY;
    bool ok = true;
    for (const auto& r : rows) {
      ok = ok && r.ok;
      worst_lower = std::max(worst_lower, r.lower - r.f);
      worst_upper = std::max(worst_upper, r.f - r.upper);
    }
    const auto vm = volume_mu_check(model);
    json row = {{"model", name},
                {"growth_ok", ok},
                {"growth_max_lower_excess", worst_lower},
                {"growth_max_upper_excess", worst_upper},
                {"volume_mu", {{"volume", vm.volume}, {"mu", vm.mu}, {"log_ratio", vm.log_ratio},
                               {"log_lower", vm.log_lower}, {"log_upper", vm.log_upper}, {"pass", vm.pass}}}};
    pass = pass && ok && vm.pass;
    if (name != "sphere") {
      for (double q : {2.0, 4.0}) {
        const auto w = weighted_ratio_check(model, 0.5 * q, 0.5);
        row["weighted_ratio"].push_back({{"r", w.r}, {"rho", w.rho}, {"ratio", w.ratio}, {"bound", w.bound}, {"ok", w.ok}});
        pass = pass && w.ok;
      }
    }
    rep.values["models"].push_back(row);
  }
  rep.status = verdict(pass);
  return out;
}

FiniteMetricSpace random_space(std::mt19937& rng, int n, const std::string& tag) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) p = {U(rng), U(rng)};
  std::vector<double> d(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i * n + j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  }
  return FiniteMetricSpace(n, std::move(d), 0, tag);
}

CheckResult gh_oracles(const SuiteContext& ctx) {
  constexpr double kSlack = 1e-12;
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"ordering_slack", kSlack}, {"pairs", 50}, {"max_points", 6}};
  std::mt19937 rng(ctx.seed);
  std::uniform_int_distribution<int> size(1, 6);
  int ordered = 0;
  double worst_lower_gap = INFINITY, worst_upper_gap = INFINITY;
  for (int k = 0; k < 50; ++k) {
    const int nx = size(rng), ny = size(rng);
    const auto X = random_space(rng, nx, "X");
    const auto Y = random_space(rng, ny, "Y");
    const double lo = gh_lower(X, Y);
    const double ex = gh_exact_small(X, Y);
    const double up = gh_upper(X, Y, radial_correspondence(X, Y));
    if (lo <= ex + kSlack && ex <= up + kSlack) ++ordered;
    worst_lower_gap = std::min(worst_lower_gap, ex - lo);
    worst_upper_gap = std::min(worst_upper_gap, up - ex);
  }
  std::uniform_real_distribution<double> U(0.01, 2.0);
  int exact_two_point = 0;
  for (int k = 0; k < 20; ++k) {
    const double a = U(rng), b = U(rng);
    const FiniteMetricSpace X(2, {0.0, a, a, 0.0}), Y(2, {0.0, b, b, 0.0});
    if (gh_exact_small(X, Y) == std::abs(a - b) / 2.0) ++exact_two_point;
  }
  rep.values = {{"pairs", 50},
                {"ordered", ordered},
                {"min_exact_minus_lower", worst_lower_gap},
                {"min_upper_minus_exact", worst_upper_gap},
                {"two_point_trials", 20},
                {"two_point_exact", exact_two_point}};
  rep.status = verdict(ordered == 50 && exact_two_point == 20);
  return out;
}

CheckResult radii_regularity(const SuiteContext& ctx) {
  constexpr double kStability = 2.0;
  constexpr double kHarnackC = 0.5;
  constexpr double kTheta = 0.5;
  CheckResult out;
  auto& rep = out.report;
  rep.tolerances = {{"equivalence_stability", kStability},
                    {"harnack_c", kHarnackC},
                    {"density_theta", kTheta},
                    {"density_exponent", 0.1}};
  json artifact;

  // flat point: every radius is a sentinel and the convexity expression vanishes
  const auto gauss = make_gaussian(ctx.m);
  const auto flat = radii_report(gauss, gauss.base_point());
  bool convex_zero = true;
  for (double r : {0.01, 0.1, 1.0}) {
    const auto c = convex_radius_check(gauss.profile, gauss.base_point(), r);
    convex_zero = convex_zero && c.expression == 0.0;
  }
  const bool flat_ok = flat.vr.sentinel && flat.gr.sentinel && flat.sr.sentinel && convex_zero;
  rep.values["flat"] = {{"vr_sentinel", flat.vr.sentinel},
                        {"gr_sentinel", flat.gr.sentinel},
                        {"sr_sentinel", flat.sr.sentinel},
                        {"convex_expression_zero", convex_zero}};
  artifact["flat"] = to_json(flat);

  bool harnack_ok = true, equiv_ok = true, density_ok = true;
  double c_min = INFINITY, c_max = 0.0;
  for (const auto& name : catalog_names()) {
    const auto model = make_model(name, ctx.m);
    const double p = model.base_point();
    const auto D = [&](double s) { return axis_D(model, s); };
    const auto h = harnack_check(model.profile, p + 0.5, D, kHarnackC);
    harnack_ok = harnack_ok && h.pass;

    std::vector<double> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(p + 0.5 * k);
    const auto eq = equivalence_report(model, pts);
    equiv_ok = equiv_ok && eq.finite && eq.c_emp > 0.0;
    c_min = std::min(c_min, eq.c_emp);
    c_max = std::max(c_max, eq.c_emp);

    const auto d = density_integral(model, 1.0, kTheta);
    density_ok = density_ok && d.finite && d.exponent_ok;

    rep.values["models"].push_back({{"model", name},
                                    {"harnack_c_emp", h.c_emp},
                                    {"harnack_pass", h.pass},
                                    {"equivalence_c_emp", eq.c_emp},
                                    {"equivalence_finite", eq.finite},
                                    {"density_exponent", d.exponent},
                                    {"density_expected", d.expected_exponent},
                                    {"density_finite", d.finite}});
    json harnack = {{"s", h.s}, {"c", h.c}, {"r", h.r}, {"neighbor_s", h.neighbor_s},
                    {"ratios", h.ratios}, {"c_emp", h.c_emp}, {"pass", h.pass}};
    json density = {{"theta", d.theta}, {"r", d.r}, {"value", d.value}, {"value_half", d.value_half},
                    {"exponent", d.exponent}, {"expected_exponent", d.expected_exponent},
                    {"proxy", d.proxy}};
    artifact["models"].push_back(
        {{"model", name}, {"harnack", harnack}, {"equivalence", to_json(eq)}, {"density", density}});
  }
  const bool stable = c_min > 0.0 && c_max / c_min <= kStability;
  rep.values["equivalence_spread"] = c_max / c_min;
  rep.status = verdict(flat_ok && harnack_ok && equiv_ok && stable && density_ok);
  out.artifacts.push_back({"radii.json", artifact.dump(2) + "\n"});
  return out;
}

}  // namespace

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry = {
      {"soliton", "soliton.identities", "soliton identities on the catalog models", soliton_identities},
      {"conformal-ricci", "conformal.ricci", "conformal Ricci cross-check and D^2 bound", conformal_ricci},
      {"conformal-comparison", "conformal.comparison", "ball sandwich, distortion and GH bound", conformal_comparison},
      {"erfc", "erfc.identities", "inverse erfc identities and limits", erfc_identities},
      {"antipodal-gap", "gaussian.antipodal_gap", "antipodal gap of the conformal Gaussian", antipodal_gap_check},
      {"entropy", "entropy.mu", "entropy values, tau curve, scaling and gradient", entropy_mu},
      {"volume", "volume.comparison", "growth, weighted ratio and volume-entropy bracket", volume_comparison},
      {"gh-oracles", "gh.oracles", "GH lower/exact/upper ordering", gh_oracles},
      {"radii", "radii.regularity", "regularity radii degeneracies and comparability", radii_regularity},
  };
  return registry;
}

CheckResult run_check(const CheckSpec& spec, const SuiteContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult out;
  try {
    out = spec.run(ctx);
  } catch (const Error& e) {
    out = {};
    out.report.status = Status::Fail;
    out.report.values = {{"error", e.what()}};
  }
  out.report.id = spec.id;
  out.report.anchor = spec.anchor;
  out.report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

SuiteResult run_suite(const SuiteContext& ctx, const std::vector<std::string>& ids, int threads) {
  std::vector<const CheckSpec*> selected;
  for (const auto& spec : check_registry()) {
    if (ids.empty() || std::find(ids.begin(), ids.end(), spec.id) != ids.end()) selected.push_back(&spec);
  }
  for (const auto& id : ids) {
    const bool known = std::any_of(check_registry().begin(), check_registry().end(),
                                   [&](const CheckSpec& s) { return s.id == id; });
    if (!known) throw ContractError("unknown check id: " + id);
  }
  SuiteResult result;
  result.checks.resize(selected.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, threads));
  for (std::size_t start = 0; start < selected.size(); start += width) {
    const std::size_t stop = std::min(selected.size(), start + width);
    if (width == 1) {
      result.checks[start] = run_check(*selected[start], ctx);
      continue;
    }
    std::vector<std::future<CheckResult>> batch;
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, [&, i] { return run_check(*selected[i], ctx); }));
    }
    for (std::size_t i = start; i < stop; ++i) result.checks[i] = batch[i - start].get();
  }
  result.pass = std::none_of(result.checks.begin(), result.checks.end(),
                             [](const CheckResult& c) { return c.report.status == Status::Fail; });
  return result;
}

void write_suite(const SuiteResult& result, const std::filesystem::path& dir) {
  json reports = json::array();
  for (const auto& c : result.checks) reports.push_back(to_json(c.report));
  write_text(dir / "reports.json", reports.dump(2) + "\n");
  for (const auto& c : result.checks) {
    for (const auto& a : c.artifacts) write_text(dir / a.name, a.content);
  }
}

int thread_cap() {
  if (const char* env = std::getenv("SHRINKER_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

CsvTable gap_table(const std::vector<AntipodalGap>& gaps) {
  CsvTable t;
  t.header = {"eps", "L_geo", "two_eps", "gap", "graph_length", "graph_resolution"};
  for (const auto& g : gaps) {
    t.add_row({g.eps, g.L_geo, g.through_tip, g.gap, g.graph_length, g.graph_resolution});
  }
  return t;
}

SvgPlot gap_plot(const ConformalGaussian& cg, const AntipodalGap& gap) {
  // polar picture of the slice: the added point s = 0 sits at the origin
  SvgPlot plot;
  plot.title = "Geodesics from (eps, 0) toward (eps, pi), eps = " + format_number(gap.eps);
  plot.x_label = "s cos(theta)";
  plot.y_label = "s sin(theta)";
  plot.equal_aspect = true;
  const double clip = 2.5 * gap.eps;
  auto add = [&](const std::vector<SlicePoint>& states, const std::string& label, const std::string& color,
                 bool dashed) {
    SvgPlot::Series s;
    s.label = label;
    s.color = color;
    s.dashed = dashed;
    for (const auto& p : states) {
      if (p.s > clip) break;
      s.x.push_back(p.s * std::cos(p.theta));
      s.y.push_back(p.s * std::sin(p.theta));
    }
    plot.series.push_back(std::move(s));
  };
  for (int k = 1; k <= 7; ++k) {
    const double alpha = std::numbers::pi * (0.5 + 0.45 * k / 8.0);
    GeodesicPath path;
    GeodesicOptions opt;
    opt.exclude_caps = true;
    opt.cap_margin = kTipCollar;
    shoot(cg.profile, gap.eps, alpha, std::numbers::pi, 4.0 * gap.eps, opt, &path);
    add(path.states, k == 1 ? "Clairaut shots" : "", "#9e9e9e", false);
  }
  add({{gap.eps, 0.0}, {0.0, 0.0}, {gap.eps, std::numbers::pi}}, "through the added point", "#1f77b4", true);
  add(gap.path.states, "shortest cap-avoiding path", "#d62728", false);
  SvgPlot::Series circle;
  circle.color = "#2ca02c";
  circle.label = "s = eps";
  for (int i = 0; i <= 128; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 128;
    circle.x.push_back(gap.eps * std::cos(t));
    circle.y.push_back(gap.eps * std::sin(t));
  }
  plot.series.push_back(std::move(circle));
  return plot;
}

CsvTable mu_table(const NuReport& report) {
  CsvTable t;
  t.header = {"tau", "mu", "upper_bound"};
  for (const auto& r : report.rows) t.add_row({r.tau, r.mu, r.upper_bound ? 1.0 : 0.0});
  return t;
}

SvgPlot mu_plot(const NuReport& report, const std::string& title) {
  SvgPlot plot;
  plot.title = title;
  plot.x_label = "log tau";
  plot.y_label = "mu";
  SvgPlot::Series s;
  s.label = "mu(g, tau)";
  for (const auto& r : report.rows) {
    s.x.push_back(std::log(r.tau));
    s.y.push_back(r.mu);
  }
  plot.series.push_back(std::move(s));
  return plot;
}

}  // namespace shrinker
