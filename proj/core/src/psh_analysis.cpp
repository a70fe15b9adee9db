#include "quantlab/psh_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "quantlab/analytic.hpp"
#include "quantlab/sampling.hpp"

namespace quantlab::psh {

namespace {

const cd kI(0.0, 1.0);

nlohmann::json base_meta(const LieModel& m) {
  return {{"model", m.name()}, {"normalization", m.normalization()}};
}

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

double hess_min(const Mat& h) {
  if (h.size() == 0) return INFINITY;
  return Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (h + h.transpose())).eigenvalues()(0);
}

}  // namespace

InvariantPotential InvariantPotential::square(const LieModel& m, double scale) {
  const int r = m.rank();
  InvariantPotential k;
  k.name = scale == 1.0 ? "square" : (scale == -1.0 ? "neg_square" : "square*" + std::to_string(scale));
  k.value = [scale](const Vec& t) { return scale * t.squaredNorm(); };
  k.gradient = [scale](const Vec& t) -> Vec { return 2.0 * scale * t; };
  k.hessian = [scale, r](const Vec&) -> Mat { return 2.0 * scale * Mat::Identity(r, r); };
  return k;
}

InvariantPotential InvariantPotential::log_eta(const LieModel& m) {
  const auto roots = m.positive_roots();
  const int r = m.rank();
  InvariantPotential k;
  k.name = "logeta";
  k.value = [roots](const Vec& t) {
    double s = 0.0;
    for (const auto& a : roots) s += analytic::log_sinhc(a(t));
    return s;
  };
  k.gradient = [roots, r](const Vec& t) -> Vec {
    Vec g = Vec::Zero(r);
    for (const auto& a : roots) g += analytic::coth_minus_inv(a(t)) * a.covector;
    return g;
  };
  k.hessian = [roots, r](const Vec& t) -> Mat {
    Mat h = Mat::Zero(r, r);
    for (const auto& a : roots) h += analytic::log_sinhc_dd(a(t)) * a.covector * a.covector.transpose();
    return h;
  };
  return k;
}

InvariantPotential InvariantPotential::combined(const LieModel& m, double a, double b) {
  const auto sq = square(m);
  const auto le = log_eta(m);
  InvariantPotential k;
  std::ostringstream ss;
  ss << "combined:" << a << "," << b;
  k.name = ss.str();
  k.value = [=](const Vec& t) { return a * sq.value(t) + b * le.value(t); };
  k.gradient = [=](const Vec& t) -> Vec { return a * sq.gradient(t) + b * le.gradient(t); };
  k.hessian = [=](const Vec& t) -> Mat { return a * sq.hessian(t) + b * le.hessian(t); };
  return k;
}

InvariantPotential InvariantPotential::cosine(const LieModel& m) {
  const int r = m.rank();
  InvariantPotential k;
  k.name = "cos";
  k.value = [](const Vec& t) { return t.array().cos().sum(); };
  k.gradient = [](const Vec& t) -> Vec { return -t.array().sin().matrix(); };
  k.hessian = [r](const Vec& t) -> Mat {
    Mat h = Mat::Zero(r, r);
    h.diagonal() = -t.array().cos().matrix();
    return h;
  };
  return k;
}

InvariantPotential InvariantPotential::tabulated(const LieModel& m, double x0, double h, std::vector<double> values) {
  if (m.rank() != 1) throw UsageError("tabulated potentials need a rank-1 model");
  if (values.size() < 4 || h <= 0.0) throw UsageError("tabulated potential needs >= 4 equispaced samples");
  const double x1 = x0 + h * static_cast<double>(values.size() - 1);
  auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(values.begin(),
                                                                                              values.end(), x0, h);
  auto check = [x0, x1](double x) {
    if (x < x0 - 1e-12 || x > x1 + 1e-12) throw UsageError("tabulated potential evaluated outside its table");
  };
  InvariantPotential k;
  k.name = "table";
  k.value = [spline, check](const Vec& t) {
    check(t(0));
    return (*spline)(t(0));
  };
  k.gradient = [spline, check](const Vec& t) -> Vec {
    check(t(0));
    return Vec::Constant(1, spline->prime(t(0)));
  };
  k.hessian = [spline, check](const Vec& t) -> Mat {
    check(t(0));
    return Mat::Constant(1, 1, spline->double_prime(t(0)));
  };
  return k;
}

InvariantPotential InvariantPotential::from_table_file(const LieModel& m, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open potential table " + path.string());
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double x, v;
    if (ss >> x >> v) {
      xs.push_back(x);
      vs.push_back(v);
    }
  }
  if (xs.size() < 4) throw UsageError(path.string() + ": need at least 4 rows");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - (xs.front() + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(h)))
      throw UsageError(path.string() + ": abscissae must be equispaced");
  auto k = tabulated(m, xs.front(), h, std::move(vs));
  k.name = "table:" + path.filename().string();
  return k;
}

InvariantPotential InvariantPotential::by_name(const LieModel& m, const std::string& spec) {
  if (spec == "square") return square(m);
  if (spec == "neg_square") return square(m, -1.0);
  if (spec == "logeta") return log_eta(m);
  if (spec == "cos") return cosine(m);
  if (spec.rfind("combined:", 0) == 0) {
    double a = 0.0, b = 0.0;
    char comma = 0;
    std::istringstream ss(spec.substr(9));
    if (!(ss >> a >> comma >> b) || comma != ',') throw UsageError("expected combined:a,b");
    return combined(m, a, b);
  }
  if (spec.rfind("table:", 0) == 0) return from_table_file(m, spec.substr(6));
  throw UsageError("unknown potential '" + spec + "' (square, neg_square, logeta, cos, combined:a,b, table:<path>)");
}

double weyl_invariance_defect(const LieModel& m, const InvariantPotential& k, std::uint64_t seed, int samples) {
  sampling::Rng rng(seed);
  const auto w = m.weyl_group();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec t = sampling::in_ball(rng, m.rank(), 4.0);
    for (const auto& el : w) worst = std::max(worst, std::abs(k.value(el.matrix * t) - k.value(t)));
  }
  return worst;
}

AlgebraVec mu_gradient(const LieModel& m, const InvariantPotential& k, const kahler::BasePoint& p) {
  const auto c = m.conjugate_to_torus(p.y);
  const AlgebraVec at_e = m.adjoint_action(c.h, m.embed_torus(k.gradient(c.torus_part)));
  return m.adjoint_action(p.x, at_e);
}

std::vector<double> SpectrumReport::all() const {
  std::vector<double> out = hessian_eigenvalues;
  for (const auto& r : root_eigenvalues) out.push_back(r.value);
  std::sort(out.begin(), out.end());
  return out;
}

double root_value_limit_form(const LieModel&, const InvariantPotential& k, const Vec& t, const RealRoot& a) {
  const Vec& c = a.covector;
  const double x = a(t);
  double ratio;
  if (std::abs(x) < kRootGuard) {
    // (1/y1) dK/dy1 -> d^2K/dy1^2 along the unit normal of ker alpha
    ratio = c.dot(k.hessian(t) * c) / c.squaredNorm();
  } else {
    ratio = a(k.gradient(t)) / x;
  }
  return ratio * analytic::x_coth_plus_x(x);
}

SpectrumReport theta_spectrum(const LieModel& m, const InvariantPotential& k, const Vec& t) {
  SpectrumReport s;
  s.point = t;
  const Mat h = k.hessian(t);
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (h + h.transpose())).eigenvalues();
  s.hessian_eigenvalues = to_std(ev);
  const Vec mu = k.gradient(t);
  for (const auto& a : m.roots()) {
    const double x = a(t);
    RootValue rv{a.covector, 0.0, std::abs(x) < kRootGuard};
    if (rv.limit_used) rv.value = root_value_limit_form(m, k, t, a);
    else rv.value = a(mu) * (1.0 / std::tanh(x) + 1.0);
    s.root_eigenvalues.push_back(rv);
  }
  const auto all = s.all();
  s.min_eigenvalue = all.empty() ? INFINITY : all.front();
  return s;
}

CMat theta_matrix_oracle(const LieModel& m, const InvariantPotential& k, const Vec& t, double h) {
  const int n = m.dim();
  const AlgebraVec y = m.embed_torus(t);
  const Mat j = kahler::complex_structure_J(m, y);
  const Mat one_minus_cos_over = analytic::antisymmetric_function(m.ad(y), analytic::one_minus_cos_over);
  const AlgebraVec mu = mu_gradient(m, k, {m.identity(), y});
  auto mu_along = [&](const Vec& u1, const Vec& u2, double s) {
    return mu_gradient(m, k, {m.exp_alg(s * u1), y + s * u2});
  };
  CMat out(n, n);
  for (int c = 0; c < n; ++c) {
    Vec xstar = Vec::Zero(2 * n);
    xstar(c) = 1.0;
    const Vec jx = j * xstar;
    const Vec u1 = jx.head(n), u2 = jx.tail(n);
    auto central = [&](double step) { return Vec((mu_along(u1, u2, step) - mu_along(u1, u2, -step)) / (2.0 * step)); };
    const Vec dmu = (4.0 * central(h / 2.0) - central(h)) / 3.0;
    const Vec conn = u1 - one_minus_cos_over * u2;
    const Vec theta_col = dmu - m.bracket(conn, mu);
    out.col(c) = theta_col.cast<cd>() - kI * m.bracket(mu, m.basis_vector(c)).cast<cd>();
  }
  return out;
}

double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<double> x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double scale = std::max({std::abs(x[i]), std::abs(y[i]), 1e-8});
    worst = std::max(worst, std::abs(x[i] - y[i]) / scale);
  }
  return worst;
}

std::vector<Vec> torus_grid(const LieModel& m, double radius, int per_axis) {
  const int r = m.rank();
  std::vector<Vec> out;
  Eigen::Index count = 1;
  for (int i = 0; i < r; ++i) count *= per_axis;
  for (Eigen::Index c = 0; c < count; ++c) {
    Vec t(r);
    Eigen::Index rest = c;
    for (int i = 0; i < r; ++i) {
      t(i) = per_axis == 1 ? 0.0 : -radius + 2.0 * radius * static_cast<double>(rest % per_axis) / (per_axis - 1);
      rest /= per_axis;
    }
    out.push_back(t);
  }
  return out;
}

namespace {

int grid_per_axis(const LieModel& m, const PshConfig& cfg) {
  return m.rank() == 1 ? cfg.per_axis : std::max(5, static_cast<int>(std::sqrt(static_cast<double>(cfg.per_axis))) * 2 + 1);
}

struct GridScan {
  double min_spectrum = INFINITY;
  double min_hessian = INFINITY;
  double min_sign_ratio = INFINITY;
  Vec spectrum_witness;
  Vec hessian_witness;
  std::vector<std::pair<double, double>> series;  // (first coordinate, min eigenvalue) for plotting
};

GridScan scan(const LieModel& m, const InvariantPotential& k, const PshConfig& cfg) {
  GridScan g;
  for (const Vec& t : torus_grid(m, cfg.radius, grid_per_axis(m, cfg))) {
    const auto s = theta_spectrum(m, k, t);
    const double hm = hess_min(k.hessian(t));
    if (s.min_eigenvalue < g.min_spectrum) {
      g.min_spectrum = s.min_eigenvalue;
      g.spectrum_witness = t;
    }
    if (hm < g.min_hessian) {
      g.min_hessian = hm;
      g.hessian_witness = t;
    }
    for (const auto& a : m.positive_roots()) {
      const double x = a(t);
      if (std::abs(x) >= kRootGuard) g.min_sign_ratio = std::min(g.min_sign_ratio, a(k.gradient(t)) / x);
    }
    g.series.emplace_back(t(0), s.min_eigenvalue);
  }
  return g;
}

nlohmann::json series_json(const GridScan& g) {
  nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
  for (const auto& [x, y] : g.series) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return {{"x", xs}, {"min_eigenvalue", ys}};
}

}  // namespace

CheckReport psh_verdict(const LieModel& m, const InvariantPotential& k, const PshConfig& cfg) {
  const double defect = weyl_invariance_defect(m, k, cfg.seed);
  const GridScan g = scan(m, k, cfg);
  const bool psh = g.min_spectrum >= -cfg.psh_tol;
  const bool convex = g.min_hessian >= -cfg.psh_tol;
  auto meta = base_meta(m);
  meta["potential"] = k.name;
  meta["weyl_invariance_defect"] = defect;
  meta["grid_radius"] = cfg.radius;
  meta["grid_per_axis"] = grid_per_axis(m, cfg);
  meta["min_spectrum"] = g.min_spectrum;
  meta["min_hessian_eigenvalue"] = g.min_hessian;
  meta["verdict"] = psh ? "PSH" : "NOT_PSH";
  meta["convex_on_grid"] = convex;
  if (!psh) meta["spectrum_witness"] = to_std(g.spectrum_witness);
  if (!convex) meta["hessian_witness"] = to_std(g.hessian_witness);
  if (std::isfinite(g.min_sign_ratio)) meta["min_sign_ratio"] = g.min_sign_ratio;
  meta["series"] = series_json(g);
  // convex on the grid <=> PSH on the grid; a non-convex K~ must come with a negative Hessian witness
  const bool consistent = (psh == convex) && defect < 1e-10;
  return CheckReport::make("psh.verdict." + k.name, "bijective correspondence between smooth convex and PSH functions",
                           1e-10, consistent ? defect : INFINITY, meta);
}

CheckReport canonical_semi_negativity_certificate(const LieModel& m, const PshConfig& cfg) {
  const auto k = InvariantPotential::log_eta(m);
  const GridScan g = scan(m, k, cfg);
  auto meta = base_meta(m);
  meta["potential"] = k.name;
  meta["min_spectrum"] = g.min_spectrum;
  meta["hessian_at_0"] = k.hessian(Vec::Zero(m.rank()))(0, 0);
  meta["grid_radius"] = cfg.radius;
  meta["grid_per_axis"] = grid_per_axis(m, cfg);
  meta["series"] = series_json(g);
  return CheckReport::make("psh.canonical_semi_negative", "the canonical bundle K is semi-negative", 1e-8,
                           std::max(0.0, -g.min_spectrum), meta);
}

CheckReport twist_positivity_certificate(const LieModel& m, double a, double b, const PshConfig& cfg) {
  if (a <= 0.0) throw UsageError("twist positivity needs a > 0");
  const auto k = InvariantPotential::combined(m, a, b);
  const GridScan g = scan(m, k, cfg);
  auto meta = base_meta(m);
  meta["a"] = a;
  meta["b"] = b;
  meta["margin"] = cfg.twist_margin;
  meta["min_spectrum"] = g.min_spectrum;
  meta["argmin"] = to_std(g.spectrum_witness);
  meta["grid_radius"] = cfg.radius;
  meta["series"] = series_json(g);
  std::ostringstream id;
  id << "psh.twist_positive[" << a << "," << b << "]";
  // error is the shortfall below the required strict margin
  return CheckReport::make(id.str(), "we see that K* (x) L is positive", 1e-12,
                           std::max(0.0, cfg.twist_margin - g.min_spectrum), meta);
}

CheckReport oracle_equivalence_certificate(const LieModel& m, const PshConfig& cfg) {
  std::vector<InvariantPotential> ks = {InvariantPotential::square(m), InvariantPotential::log_eta(m)};
  for (const auto& [a, b] : cfg.twist_presets) ks.push_back(InvariantPotential::combined(m, a, b));
  const int per_axis = m.rank() == 1 ? cfg.oracle_points : std::max(3, static_cast<int>(std::sqrt(cfg.oracle_points)) + 1);
  double worst = 0.0, herm = 0.0;
  int points = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& k : ks) {
    double kworst = 0.0;
    for (const Vec& t0 : torus_grid(m, cfg.radius, per_axis)) {
      // shift off the exact root hyperplanes the oracle's finite differences straddle
      const Vec t = t0 + Vec::Constant(m.rank(), 0.5 * cfg.radius / per_axis);
      const CMat mat = theta_matrix_oracle(m, k, t);
      herm = std::max(herm, (mat - mat.adjoint()).cwiseAbs().maxCoeff());
      const Vec ev = Eigen::SelfAdjointEigenSolver<CMat>(0.5 * (mat + mat.adjoint())).eigenvalues();
      const double d = spectrum_distance(theta_spectrum(m, k, t).all(), to_std(ev));
      kworst = std::max(kworst, d);
      ++points;
    }
    rows.push_back({{"potential", k.name}, {"max_rel_distance", kworst}});
    worst = std::max(worst, kworst);
  }
  auto meta = base_meta(m);
  meta["points"] = points;
  meta["per_potential"] = rows;
  meta["hermiticity_defect"] = herm;
  meta["fd_step"] = 1e-5;
  meta["richardson"] = 1;
  const double err = herm < 1e-8 ? worst : INFINITY;
  return CheckReport::make("psh.oracle_equivalence", "the hermitian map Theta - i ad mu", 1e-4, err, meta);
}

CheckReport limit_consistency_certificate(const LieModel& m, const PshConfig& cfg) {
  std::vector<InvariantPotential> ks = {InvariantPotential::square(m), InvariantPotential::log_eta(m)};
  for (const auto& [a, b] : cfg.twist_presets) ks.push_back(InvariantPotential::combined(m, a, b));
  double worst = 0.0;
  int evaluated = 0;
  for (const auto& k : ks)
    for (const auto& a : m.roots()) {
      // point with |alpha(Y)| = 1e-3 along the root's own direction
      const Vec t = 1e-3 * a.covector / a.covector.squaredNorm();
      const double closed = a(k.gradient(t)) * (1.0 / std::tanh(a(t)) + 1.0);
      // footnote extrapolation: the limit ratio at the hyperplane, times the smooth second factor
      const Vec foot = t - a(t) * a.covector / a.covector.squaredNorm();
      const double ratio = a.covector.dot(k.hessian(foot) * a.covector) / a.covector.squaredNorm();
      worst = std::max(worst, std::abs(closed - ratio * analytic::x_coth_plus_x(a(t))));
      ++evaluated;
    }
  auto meta = base_meta(m);
  meta["alpha_of_Y"] = 1e-3;
  meta["evaluations"] = evaluated;
  meta["guard_band"] = kRootGuard;
  return CheckReport::make("psh.footnote_limit", "this expression should be interpreted as a limit", 1e-5, worst, meta);
}

CheckReport mu_equivariance_certificate(const LieModel& m, const PshConfig& cfg) {
  sampling::Rng rng(cfg.seed + 7);
  const auto k = InvariantPotential::combined(m, 1.0, 1.0);
  double worst = 0.0, in_torus = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const GroupPoint h = sampling::group_point(m, rng), g = sampling::group_point(m, rng);
    const AlgebraVec y = sampling::in_ball(rng, m.dim(), 4.0);
    const AlgebraVec lhs = mu_gradient(m, k, {GroupPoint{h.matrix * g.matrix * h.matrix.adjoint()}, m.adjoint_action(h, y)});
    const AlgebraVec rhs = m.adjoint_action(h, mu_gradient(m, k, {g, y}));
    worst = std::max(worst, (lhs - rhs).norm());
    const Vec t = sampling::in_ball(rng, m.rank(), 4.0);
    in_torus = std::max(in_torus, m.off_torus_norm(mu_gradient(m, k, {m.identity(), m.embed_torus(t)})));
  }
  auto meta = base_meta(m);
  meta["samples"] = 1000;
  meta["potential"] = k.name;
  meta["mu_off_torus"] = in_torus;
  return CheckReport::make("psh.mu_equivariance", "we call this map mu", 1e-8, std::max(worst, in_torus), meta);
}

}  // namespace quantlab::psh
