#include "shrinker/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shrinker/errors.hpp"
#include "shrinker/volume.hpp"

namespace shrinker {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dimension(int m) {
  if (m < 3) throw DimensionError("catalog models need m >= 3");
}

double parse_tail(const std::string& id, const std::string& prefix) {
  if (id.rfind(prefix, 0) != 0) throw ContractError("expression id '" + id + "' lacks prefix " + prefix);
  return std::stod(id.substr(prefix.size()));
}

}  // namespace

ShrinkerModel make_gaussian(int m) {
  require_dimension(m);
  // mu = log of (4 pi)^{-m/2} times the Gaussian integral, which is exactly 1
  return {"gaussian", flat_profile(m, kGaussianSMax), quadratic_potential(0.0), 0.0, "gaussian-integral"};
}

ShrinkerModel make_sphere_with_radius(int m, double radius) {
  require_dimension(m);
  const double vol = unit_sphere_area(m) * std::pow(radius, m);
  const double mu = std::log(vol) - 0.5 * m - 0.5 * m * std::log(4.0 * kPi);
  return {"sphere", round_profile(m, radius), constant_potential(0.5 * m, 0.0), mu, "constant-potential"};
}

ShrinkerModel make_sphere(int m) {
  require_dimension(m);
  return make_sphere_with_radius(m, std::sqrt(2.0 * (m - 1)));
}

ShrinkerModel make_cylinder(int m) {
  require_dimension(m);
  const double rho = std::sqrt(2.0 * (m - 2));
  const double c = 0.5 * (m - 1);
  // integral of e^{-f}: sqrt(4 pi) along the line times the sphere volume, times e^{-c}
  const double mass = 2.0 * std::sqrt(kPi) * unit_sphere_area(m - 1) * std::pow(rho, m - 1) * std::exp(-c);
  const double mu = std::log(mass) - 0.5 * m * std::log(4.0 * kPi);
  return {"cylinder", cylinder_profile(m, rho, -kCylinderHalfLength, kCylinderHalfLength),
          quadratic_potential(c), mu, "product-integral"};
}

std::vector<std::string> catalog_names() { return {"gaussian", "sphere", "cylinder"}; }

ShrinkerModel make_model(const std::string& name, int m) {
  if (name == "gaussian") return make_gaussian(m);
  if (name == "sphere") return make_sphere(m);
  if (name == "cylinder") return make_cylinder(m);
  throw ContractError("unknown model '" + name + "'");
}

ShrinkerModel scaled_model(const ShrinkerModel& model, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("scaled_model: lambda must be positive");
  const WarpedProfile& base = model.profile;
  WarpedProfile prof(base.name() + "-scaled", base.dimension(), lambda * base.lo(), lambda * base.hi(),
                     base.lo_kind(), base.hi_kind(),
                     [base, lambda](double s) {
                       return base.jet(s / lambda).compose(Jet::variable(s) / lambda) * lambda;
                     },
                     base.derivative_order(), base.homogeneity());
  const Potential pot = model.potential;
  Potential scaled_pot([pot, lambda](double s) { return pot.jet(s / lambda).compose(Jet::variable(s) / lambda); },
                       lambda * pot.min_location());
  return {model.name + "-scaled", prof, scaled_pot, std::nullopt, ""};
}

ResidualReport verify_model(const ShrinkerModel& model, double tol, int grid) {
  ResidualReport rep;
  rep.tolerance = tol;
  const auto& prof = model.profile;
  for (int i = 0; i <= grid; ++i) {
    const double s = prof.lo() + prof.length() * i / grid;
    const CurvatureData c = curvature_at(prof, s);
    const HessianData h = potential_hessian(prof, model.potential, s);
    rep.soliton = std::max({rep.soliton, std::abs(c.ric_rad + h.hess_rad - 0.5),
                            std::abs(c.ric_sph + h.hess_sph - 0.5)});
    rep.normalization =
        std::max(rep.normalization, std::abs(c.scalar + h.grad_sq - model.potential.value(s)));
  }
  rep.pass = rep.soliton <= tol && rep.normalization <= tol;
  return rep;
}

std::vector<GrowthRow> f_growth_check(const ShrinkerModel& model, const std::vector<double>& d_grid) {
  const auto& prof = model.profile;
  const double p = model.base_point();
  const double m = prof.dimension();
  std::vector<GrowthRow> rows;
  for (double d : d_grid) {
    // walk along the axis away from p, toward whichever side has room
    double s = p + d;
    if (!prof.contains(s)) s = p - d;
    if (!prof.contains(s)) throw RangeError("f_growth_check: distance exceeds the model domain");
    GrowthRow r;
    r.d = d;
    r.f = model.potential.value(s);
    const double low = std::max(0.0, d - 5.0 * m);
    r.lower = 0.25 * low * low;
    r.upper = 0.25 * (d + std::sqrt(2.0 * m)) * (d + std::sqrt(2.0 * m));
    r.ok = r.lower <= r.f && r.f <= r.upper;
    rows.push_back(r);
  }
  return rows;
}

namespace {

// psi_t along the axis: dS/dsigma = f'(S), sigma = -log(1 - tau), together with S_x.
void flow_map(const Potential& pot, double x, double t, double& S, double& Sx) {
  const double sig_end = -std::log(1.0 - t);
  const int n = 400;
  const double h = sig_end / n;
  S = x;
  Sx = 1.0;
  auto rhs = [&](double s, double sx, double& ds, double& dsx) {
    const Jet j = pot.jet(s);
    ds = j[1];
    dsx = j.derivative(2) * sx;
  };
  for (int i = 0; i < n; ++i) {
    double k1, l1, k2, l2, k3, l3, k4, l4;
    rhs(S, Sx, k1, l1);
    rhs(S + 0.5 * h * k1, Sx + 0.5 * h * l1, k2, l2);
    rhs(S + 0.5 * h * k2, Sx + 0.5 * h * l2, k3, l3);
    rhs(S + h * k3, Sx + h * l3, k4, l4);
    S += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    Sx += h / 6.0 * (l1 + 2 * l2 + 2 * l3 + l4);
  }
}

}  // namespace

FlowState flow_identity_check(const ShrinkerModel& model, double t, int grid) {
  if (!(t < 1.0)) throw RangeError("flow_identity_check: t must be < 1");
  if (t < -2.0 || t > 0.95) throw RangeError("flow_identity_check: t outside [-2, 0.95]");
  const auto& prof = model.profile;
  const auto& pot = model.potential;
  const int m = prof.dimension();
  const double scale = 1.0 - t;
  const double root = std::sqrt(scale);
  const double h = 1e-3;
  FlowState st;
  st.t = t;
  const double a = prof.lo() + 0.02 * prof.length();
  const double b = prof.hi() - 0.02 * prof.length();
  for (int i = 0; i <= grid; ++i) {
    const double x = a + (b - a) * i / grid;
    double S[5], Sx[5], A[5], B[5], F[5];
    bool inside = true;
    for (int k = 0; k < 5; ++k) {
      flow_map(pot, x + (k - 2) * h, t, S[k], Sx[k]);
      if (!prof.contains(S[k])) {
        inside = false;
        break;
      }
      A[k] = root * Sx[k];
      B[k] = root * prof.phi(S[k]);
      F[k] = pot.value(S[k]);
    }
    if (!inside) continue;
    auto d1 = [&](const double* v) { return (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h); };
    auto d2 = [&](const double* v) {
      return (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h);
    };
    const double Ap = d1(A);
    const double Bp = d1(B);
    const double Bpp = d2(B);
    const double q = Bp / A[2];
    const double dq = Bpp / A[2] - Bp * Ap / (A[2] * A[2]);
    const double k_rad = -dq / (A[2] * B[2]);
    const double k_sph = (1.0 - q * q) / (B[2] * B[2]);
    const CurvatureData c = curvature_from_sectional(m, S[2], k_rad, k_sph);
    const double fx = d1(F);
    const double grad_sq = fx * fx / (A[2] * A[2]);

    st.x.push_back(x);
    st.S.push_back(S[2]);
    st.S_x.push_back(Sx[2]);
    st.f.push_back(F[2]);
    st.scalar.push_back(c.scalar);
    st.grad_sq.push_back(grad_sq);
    st.identity_residual = std::max(st.identity_residual, std::abs(c.scalar + grad_sq - F[2] / scale));
    st.metric_residual = std::max(st.metric_residual, std::abs(root * d1(S) - A[2]));
    const double fp = pot.jet(S[2])[1];
    const double dtf = fp * fp / scale;
    st.dtf_excess = std::max(st.dtf_excess, dtf - pot.value(x));
  }
  if (st.x.size() < 16) throw RangeError("flow_identity_check: flow leaves the truncated domain");
  return st;
}

nlohmann::json model_to_json(const ShrinkerModel& model) {
  const auto& p = model.profile;
  nlohmann::json j;
  j["name"] = model.name;
  j["m"] = p.dimension();
  j["domain"] = {p.lo(), p.hi()};
  if (p.sampled()) {
    j["profile"] = {{"kind", "sampled"}, {"samples", p.samples()}};
  } else {
    j["profile"] = {{"kind", "analytic"}, {"expr-id", p.expression().text}};
  }
  j["potential"] = {{"expr-id", model.potential.expression().text}, {"min", model.base_point()}};
  j["caps"] = {p.lo_kind() == EndKind::SmoothCap, p.hi_kind() == EndKind::SmoothCap};
  if (model.mu_exact) j["mu_exact"] = {{"value", *model.mu_exact}, {"tag", model.mu_tag}};
  return j;
}

ShrinkerModel model_from_json(const nlohmann::json& j) {
  try {
    const std::string name = j.at("name").get<std::string>();
    const int m = j.at("m").get<int>();
    require_dimension(m);
    const double lo = j.at("domain").at(0).get<double>();
    const double hi = j.at("domain").at(1).get<double>();
    const auto caps = j.at("caps");
    const EndKind lo_kind = caps.at(0).get<bool>() ? EndKind::SmoothCap : EndKind::Open;
    const EndKind hi_kind = caps.at(1).get<bool>() ? EndKind::SmoothCap : EndKind::Open;
    const auto& pj = j.at("profile");
    const std::string kind = pj.at("kind").get<std::string>();
    std::optional<WarpedProfile> prof;
    if (kind == "sampled") {
      prof = sampled_profile(name, m, lo, hi, lo_kind, hi_kind, pj.at("samples").get<std::vector<double>>());
    } else if (kind == "analytic") {
      const std::string id = pj.at("expr-id").get<std::string>();
      if (id == "flat") {
        prof = flat_profile(m, hi);
      } else if (id.rfind("round:", 0) == 0) {
        prof = round_profile(m, parse_tail(id, "round:"));
      } else if (id.rfind("cylinder:", 0) == 0) {
        prof = cylinder_profile(m, parse_tail(id, "cylinder:"), lo, hi);
      } else {
        throw ContractError("unknown profile expression id '" + id + "'");
      }
    } else {
      throw ContractError("profile kind must be 'analytic' or 'sampled'");
    }
    const auto& potj = j.at("potential");
    const std::string pid = potj.at("expr-id").get<std::string>();
    const double pmin = potj.value("min", 0.0);
    std::optional<Potential> pot;
    if (pid.rfind("quadratic:", 0) == 0) {
      pot = quadratic_potential(parse_tail(pid, "quadratic:"));
    } else if (pid.rfind("constant:", 0) == 0) {
      pot = constant_potential(parse_tail(pid, "constant:"), pmin);
    } else {
      throw ContractError("unknown potential expression id '" + pid + "'");
    }
    ShrinkerModel model{name, *prof, *pot, std::nullopt, ""};
    if (j.contains("mu_exact")) {
      model.mu_exact = j["mu_exact"].at("value").get<double>();
      model.mu_tag = j["mu_exact"].value("tag", "");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed model JSON: ") + e.what());
  }
}

WeightedRatioRow weighted_ratio_check(const ShrinkerModel& model, double r, double rho) {
  if (!(r >= rho && rho > 0.0)) throw DomainError("weighted_ratio_check: need r >= rho > 0");
  const double p = model.base_point();
  WeightedRatioRow row;
  row.r = r;
  row.rho = rho;
  row.ratio = ball_volume(model.profile, &model.potential, p, r, true) /
              ball_volume(model.profile, &model.potential, p, rho, true);
  row.bound = std::pow(r / rho, model.dimension());
  row.ok = row.ratio <= row.bound;
  return row;
}

}  // namespace shrinker
