#include "quantlab/density_weights.hpp"

#include <algorithm>
#include <cmath>

#include "quantlab/analytic.hpp"
#include "quantlab/irrep.hpp"
#include "quantlab/kahler_geom.hpp"
#include "quantlab/quadrature.hpp"
#include "quantlab/sampling.hpp"

namespace quantlab::density {

namespace {

nlohmann::json base_meta(const LieModel& m) {
  return {{"model", m.name()}, {"normalization", m.normalization()}};
}

// |chi(e^{iY})|^2 for every irrep in the list, at one Y.
std::vector<double> chi_sq_at(const LieModel& m, const std::vector<Irrep>& irreps, const AlgebraVec& y) {
  const CMat t = m.exp_alg(AlgebraVec::Zero(m.dim()), y).matrix;
  std::vector<double> out;
  for (const auto& p : irreps) out.push_back(std::norm(p.character(t)));
  return out;
}

}  // namespace

double eta_torus(const LieModel& m, const Vec& t) { return std::exp(log_eta_torus(m, t)); }

double log_eta_torus(const LieModel& m, const Vec& t) {
  double s = 0.0;
  for (const auto& a : m.positive_roots()) s += analytic::log_sinhc(a(t));
  return s;
}

double eta(const LieModel& m, const AlgebraVec& y) {
  return eta_torus(m, m.conjugate_to_torus(y).torus_part);
}

double weyl_denominator_sq(const LieModel& m, const Vec& angles) {
  const Vec theta = m.lattice().fullPivLu().solve(angles);
  double p = 1.0;
  for (const auto& a : m.positive_roots()) {
    const double s = std::sin(a(theta) / 2.0);
    p *= 4.0 * s * s;
  }
  return p;
}

double log_convexity_closed_form(double t) {
  const double t2 = t * t;
  if (std::abs(t) < 1e-2) return 1.0 / 3.0 + t2 * (2.0 / 45.0 + t2 * (1.0 / 315.0 + t2 * 2.0 / 14175.0));
  const double s = std::sinh(t);
  return (s * s - t2) / (t2 * t2);
}

cd haar_integral(const LieModel& m, const ClassFunction& f, double level) {
  if (m.name() == "su2") {
    const QuadratureRule r = quad::su2_haar_rule(level);
    cd s = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      s += r.weights(i) * f(quad::su2_euler(r.nodes(0, i), r.nodes(1, i), r.nodes(2, i)));
    return s;
  }
  if (!m.is_abelian()) throw UsageError(m.name() + ": Haar quadrature is available for su2 and tori");
  const QuadratureRule r = quad::torus_rule(m.rank(), static_cast<int>(std::ceil(level)));
  cd s = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) s += r.weights(i) * f(m.torus_point(r.nodes.col(i)).matrix);
  return s;
}

cd weyl_integral(const LieModel& m, const ClassFunction& f, int modes) {
  const QuadratureRule r = quad::torus_rule(m.rank(), modes);
  const double w_order = static_cast<double>(m.weyl_group().size());
  cd s = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const Vec phi = r.nodes.col(i);
    s += r.weights(i) * weyl_denominator_sq(m, phi) * f(m.torus_point(phi).matrix);
  }
  return s / w_order;
}

CheckReport eta_log_convexity_certificate(const DensityConfig& cfg) {
  const int n = cfg.grid;
  double min_closed = INFINITY, worst_abs = 0.0, worst_rel = 0.0;
  const double h = cfg.fd_step;
  for (int i = 0; i < n; ++i) {
    const double t = -cfg.t_max + (i + 0.5) * 2.0 * cfg.t_max / n;
    const double closed = log_convexity_closed_form(t);
    const double dd = (analytic::log_sinhc(t + h) - 2.0 * analytic::log_sinhc(t) + analytic::log_sinhc(t - h)) / (h * h);
    const double e = analytic::sinhc(t);
    const double fd = e * e * dd;
    min_closed = std::min(min_closed, closed);
    worst_abs = std::max(worst_abs, std::abs(closed - fd));
    worst_rel = std::max(worst_rel, std::abs(closed - fd) / std::abs(closed));
  }
  nlohmann::json meta;
  meta["grid_points"] = n;
  meta["t_range"] = {-cfg.t_max, cfg.t_max};
  meta["fd_step"] = h;
  meta["min_closed_form"] = min_closed;
  meta["max_abs_difference"] = worst_abs;
  meta["max_rel_difference"] = worst_rel;
  meta["value_at_t1"] = log_convexity_closed_form(1.0);
  meta["limit_at_0"] = log_convexity_closed_form(0.0);
  const double err = min_closed > 0.0 ? worst_abs : INFINITY;
  return CheckReport::make("density.log_convexity", "(sinh^2 t - t^2) / t^4 > 0 for all t != 0", 1e-5, err, meta);
}

CheckReport log_eta_hessian_certificate(const LieModel& m, const DensityConfig& cfg) {
  const int r = m.rank();
  const int per_axis = r == 1 ? cfg.hessian_grid : std::max(3, static_cast<int>(std::sqrt(cfg.hessian_grid)) * 2 + 1);
  const double h = cfg.fd_step;
  double min_eig = INFINITY, analytic_gap = 0.0;
  Vec worst_point = Vec::Zero(r);
  Eigen::Index count = 1;
  for (int i = 0; i < r; ++i) count *= per_axis;
  for (Eigen::Index c = 0; c < count; ++c) {
    Vec t(r);
    Eigen::Index rest = c;
    for (int i = 0; i < r; ++i) {
      t(i) = -cfg.hessian_radius + 2.0 * cfg.hessian_radius * static_cast<double>(rest % per_axis) / (per_axis - 1);
      rest /= per_axis;
    }
    Mat hess(r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        Vec ea = Vec::Zero(r), eb = Vec::Zero(r);
        ea(a) = h;
        eb(b) = h;
        hess(a, b) = (log_eta_torus(m, t + ea + eb) - log_eta_torus(m, t + ea - eb) - log_eta_torus(m, t - ea + eb) +
                      log_eta_torus(m, t - ea - eb)) /
                     (4.0 * h * h);
      }
    const double e = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (hess + hess.transpose())).eigenvalues()(0);
    if (e < min_eig) {
      min_eig = e;
      worst_point = t;
    }
    // closed form: sum over positive roots of alpha alpha^T (1/x^2 - 1/sinh^2 x)
    Mat exact = Mat::Zero(r, r);
    for (const auto& a : m.positive_roots())
      exact += a.covector * a.covector.transpose() * analytic::log_sinhc_dd(a(t));
    analytic_gap = std::max(analytic_gap, (exact - hess).cwiseAbs().maxCoeff());
  }
  auto meta = base_meta(m);
  meta["grid_points"] = count;
  meta["radius"] = cfg.hessian_radius;
  meta["fd_step"] = h;
  meta["min_hessian_eigenvalue"] = min_eig;
  meta["argmin"] = std::vector<double>(worst_point.data(), worst_point.data() + r);
  meta["max_gap_to_closed_form"] = analytic_gap;
  return CheckReport::make("density.log_eta_convex", "Hence log eta~ is convex", 1e-8, std::max(0.0, -min_eig), meta);
}

CheckReport haar_liouville_certificate(const LieModel& m, const DensityConfig& cfg) {
  const std::vector<Irrep> irreps = Irrep::up_to(m, m.name() == "su2" ? 1.0 : 1.0);
  const std::size_t k = irreps.size();
  // side A: Cartesian Gauss-Hermite with the numerical Jacobian det T Phi
  auto side_a = [&](int level) {
    const QuadratureRule r = quad::gaussian_rule(m.dim(), level);
    Vec acc = Vec::Zero(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const AlgebraVec y = r.nodes.col(i);
      const double jac = std::abs(kahler::dphi_matrix(m, y).determinant());
      const auto c = chi_sq_at(m, irreps, y);
      for (std::size_t q = 0; q < k; ++q) acc(static_cast<Eigen::Index>(q)) += r.weights(i) * jac * c[q];
    }
    return acc;
  };
  // side B: closed-form eta^2, radial for su2
  auto side_b = [&](int level) {
    Vec acc = Vec::Zero(static_cast<Eigen::Index>(k));
    if (m.name() == "su2") {
      const double radius = quad::gaussian_cutoff_radius(2.0 * 1.0 + 2.0);
      const QuadratureRule r = quad::radial_rule(level, radius, [](double s) {
        return 4.0 * kPi * s * s * std::exp(-2.0 * kPi * s * s);
      });
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double s = r.nodes(0, i);
        const double e = density::eta_torus(m, Vec::Constant(1, s));
        const auto c = chi_sq_at(m, irreps, s * m.basis_vector(2));
        for (std::size_t q = 0; q < k; ++q) acc(static_cast<Eigen::Index>(q)) += r.weights(i) * e * e * c[q];
      }
      return acc;
    }
    const QuadratureRule r = quad::gaussian_rule(m.dim(), level);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const AlgebraVec y = r.nodes.col(i);
      const double e = eta(m, y);
      const auto c = chi_sq_at(m, irreps, y);
      for (std::size_t q = 0; q < k; ++q) acc(static_cast<Eigen::Index>(q)) += r.weights(i) * e * e * c[q];
    }
    return acc;
  };
  const Vec a1 = side_a(cfg.gh_level), a2 = side_a(2 * cfg.gh_level);
  const Vec b1 = side_b(cfg.radial_level), b2 = side_b(2 * cfg.radial_level);
  const double rel = ((a2 - b2).array().abs() / b2.array().abs()).maxCoeff();
  const double conv = std::max(((a1 - a2).array().abs() / a2.array().abs()).maxCoeff(),
                               ((b1 - b2).array().abs() / b2.array().abs()).maxCoeff());
  auto meta = base_meta(m);
  meta["f"] = "|chi(e^{iY})|^2 exp(-2 pi |Y|^2)";
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t q = 0; q < k; ++q)
    rows.push_back({{"irrep", irreps[q].label_string()},
                    {"haar_side", a2(static_cast<Eigen::Index>(q))},
                    {"eta2_side", b2(static_cast<Eigen::Index>(q))}});
  meta["integrals"] = rows;
  meta["gauss_hermite_nodes_per_axis"] = 2 * cfg.gh_level;
  meta["radial_nodes"] = 2 * cfg.radial_level;
  meta["doubling_change_rel"] = conv;
  meta["max_rel_difference"] = rel;
  return CheckReport::make("density.haar_liouville", "d mu = eta^2 epsilon", 1e-6, std::max(rel, conv), meta);
}

CheckReport weyl_integration_certificate(const LieModel& m, const DensityConfig& cfg) {
  const std::vector<Irrep> irreps = [&] {
    if (m.name() == "su2") return Irrep::up_to(m, cfg.weyl_cutoff);
    return Irrep::up_to(m, std::min(cfg.weyl_cutoff, 3.0));
  }();
  const std::size_t k = irreps.size();
  const double w_order = static_cast<double>(m.weyl_group().size());
  const double level = 2.0 * cfg.weyl_cutoff + 1.0;
  const int modes = static_cast<int>(std::ceil(4.0 * cfg.weyl_cutoff)) + 4;

  // class-function precondition on samples
  sampling::Rng rng(cfg.seed);
  double class_defect = 0.0;
  for (int s = 0; s < 20; ++s) {
    const CMat g = sampling::group_point(m, rng).matrix, x = sampling::group_point(m, rng).matrix;
    for (const auto& p : irreps) class_defect = std::max(class_defect, std::abs(p.character(g * x * g.adjoint()) - p.character(x)));
  }

  CMat gram_g(k, k), gram_t(k, k);
  double mass_g = 0.0, mass_t = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const ClassFunction f = [&](const CMat& g) { return irreps[a].character(g) * std::conj(irreps[b].character(g)); };
      gram_g(a, b) = haar_integral(m, f, level);
      gram_t(a, b) = weyl_integral(m, f, modes);
    }
  mass_g = haar_integral(m, [](const CMat&) { return cd(1.0); }, 1.0).real();
  mass_t = weyl_integral(m, [](const CMat&) { return cd(1.0); }, modes).real();
  // restriction map f -> c |delta| f|_T is an isometry iff |W| int_T ... = int_T |delta|^2 ... / c^2
  const double fitted_c_sq = gram_g.diagonal().real().sum() / (w_order * gram_t.diagonal().real().sum());
  const double fitted_c = std::sqrt(fitted_c_sq);
  const double gram_gap = (gram_g - gram_t).cwiseAbs().maxCoeff();
  const double identity_gap = (gram_g - CMat::Identity(k, k)).cwiseAbs().maxCoeff();
  auto meta = base_meta(m);
  meta["irreps"] = static_cast<int>(k);
  meta["weyl_group_order"] = w_order;
  meta["fitted_c"] = fitted_c;
  meta["expected_c"] = 1.0 / std::sqrt(w_order);
  meta["total_mass_G"] = mass_g;
  meta["total_mass_weyl_side"] = mass_t;
  meta["class_function_defect"] = class_defect;
  meta["max_gram_gap"] = gram_gap;
  meta["gram_identity_gap"] = identity_gap;
  meta["haar_level"] = level;
  meta["torus_modes"] = modes;
  const double err = std::max({gram_gap, identity_gap, std::abs(fitted_c - 1.0 / std::sqrt(w_order)),
                               std::abs(mass_g - mass_t), class_defect});
  return CheckReport::make("density.weyl_integration", "Weyl denominator function; f -> c |delta| f|_T is unitary",
                           1e-6, err, meta);
}

}  // namespace quantlab::density
