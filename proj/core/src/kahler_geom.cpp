#include "quantlab/kahler_geom.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "quantlab/analytic.hpp"
#include "quantlab/sampling.hpp"

namespace quantlab::kahler {

namespace {

const cd kI(0.0, 1.0);

// One eigendecomposition of i ad(Y), reused for several analytic functions.
class AdSpectrum {
 public:
  explicit AdSpectrum(const Mat& a) : es_(cd(0.0, 1.0) * a.cast<cd>()) {}

  Mat apply(cd (*f)(cd)) const {
    const auto& l = es_.eigenvalues();
    CVec fd(l.size());
    for (Eigen::Index k = 0; k < l.size(); ++k) fd(k) = f(cd(0.0, -l(k)));
    const CMat& v = es_.eigenvectors();
    return (v * fd.asDiagonal() * v.adjoint()).real();
  }

 private:
  Eigen::SelfAdjointEigenSolver<CMat> es_;
};

cd cos_fn(cd z) { return std::cos(z); }
cd minus_sin_fn(cd z) { return -std::sin(z); }

Mat blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  const Eigen::Index n = a.rows();
  Mat out(2 * n, 2 * n);
  out << a, b, c, d;
  return out;
}

GroupPoint flow(const LieModel& m, const BasePoint& p, const TangentPair& u, double s, AlgebraVec& y_out) {
  y_out = p.y + s * u.x2;
  return {p.x.matrix * m.exp_alg(s * u.x1).matrix};
}

// Derivative of F along the flow of the left-invariant / constant field u.
double along(const LieModel& m, const BasePoint& p, const TangentPair& u,
             const std::function<double(const BasePoint&)>& F, double h) {
  AlgebraVec yp, ym;
  const GroupPoint xp = flow(m, p, u, h, yp);
  const GroupPoint xm = flow(m, p, u, -h, ym);
  return (F({xp, yp}) - F({xm, ym})) / (2.0 * h);
}

TangentPair lie_bracket(const LieModel& m, const TangentPair& u, const TangentPair& v) {
  return {m.bracket(u.x1, v.x1), AlgebraVec::Zero(m.dim())};
}

TangentPair random_pair(const LieModel& m, sampling::Rng& rng) {
  return {sampling::gaussian_vector(rng, m.dim()), sampling::gaussian_vector(rng, m.dim())};
}

nlohmann::json base_meta(const LieModel& m) {
  return {{"model", m.name()}, {"normalization", m.normalization()}};
}

}  // namespace

Vec TangentPair::stacked() const {
  Vec v(x1.size() + x2.size());
  v << x1, x2;
  return v;
}

TangentPair TangentPair::unstack(const Vec& v) {
  const Eigen::Index n = v.size() / 2;
  return {v.head(n), v.tail(n)};
}

CVec CovectorPair::stacked() const {
  CVec v(a.size() + b.size());
  v << a, b;
  return v;
}

cd CovectorPair::operator()(const TangentPair& v) const {
  return (a.array() * v.x1.cast<cd>().array()).sum() + (b.array() * v.x2.cast<cd>().array()).sum();
}

double theta_form(const LieModel& m, const BasePoint& p, const TangentPair& v) { return m.inner(p.y, v.x1); }

double omega_form(const LieModel& m, const BasePoint& p, const TangentPair& v, const TangentPair& w) {
  return m.inner(v.x2, w.x1) - m.inner(v.x1, w.x2) - m.inner(p.y, m.bracket(v.x1, w.x1));
}

Mat omega_matrix(const LieModel& m, const AlgebraVec& y) {
  const int n = m.dim();
  Mat b11 = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b11(i, j) = -m.inner(y, m.bracket(m.basis_vector(i), m.basis_vector(j)));
  return blocks(b11, -m.inner(), m.inner(), Mat::Zero(n, n));
}

Mat dphi_matrix(const LieModel& m, const AlgebraVec& y) {
  const AdSpectrum s(m.ad(y));
  return blocks(s.apply(cos_fn), s.apply(analytic::one_minus_cos_over), s.apply(minus_sin_fn),
                s.apply(analytic::sinc));
}

double dphi_min_singular_value(const LieModel& m, const AlgebraVec& y) {
  return Eigen::JacobiSVD<Mat>(dphi_matrix(m, y)).singularValues().minCoeff();
}

Mat dphi_finite_difference(const LieModel& m, const BasePoint& p, double h) {
  const int n = m.dim();
  const CMat tinv = (p.x.matrix * m.exp_alg(AlgebraVec::Zero(n), p.y).matrix).inverse();
  Mat out(2 * n, 2 * n);
  for (int c = 0; c < 2 * n; ++c) {
    const AlgebraVec e = m.basis_vector(c % n);
    auto phi = [&](double s) -> CMat {
      if (c < n) return p.x.matrix * m.exp_alg(s * e).matrix * m.exp_alg(AlgebraVec::Zero(n), p.y).matrix;
      return p.x.matrix * m.exp_alg(AlgebraVec::Zero(n), p.y + s * e).matrix;
    };
    const CMat d = tinv * (phi(h) - phi(-h)) / (2.0 * h);
    const CMat re = (d - d.adjoint()) / 2.0;
    const CMat im = -kI * (d + d.adjoint()) / 2.0;
    out.col(c) << m.from_matrix(re).first, m.from_matrix(im).first;
  }
  return out;
}

Mat complex_structure_J(const LieModel& m, const AlgebraVec& y) {
  const AdSpectrum s(m.ad(y));
  const Mat a = s.apply(analytic::half_tan);
  return blocks(a, -s.apply(analytic::tan_half_over), s.apply(analytic::inv_sinc), -a);
}

Mat complex_structure_J_conjugated(const LieModel& m, const AlgebraVec& y) {
  const int n = m.dim();
  const Mat t = dphi_matrix(m, y);
  const Mat je = blocks(Mat::Zero(n, n), -Mat::Identity(n, n), Mat::Identity(n, n), Mat::Zero(n, n));
  return t.partialPivLu().solve(je * t);
}

Mat metric_matrix(const LieModel& m, const AlgebraVec& y) {
  return complex_structure_J(m, y).transpose() * omega_matrix(m, y);
}

double metric_g(const LieModel& m, const BasePoint& p, const TangentPair& v, const TangentPair& w) {
  return v.stacked().dot(metric_matrix(m, p.y) * w.stacked());
}

Vec differential(const LieModel& m, const ScalarField& f, const BasePoint& p, double h) {
  const int n = m.dim();
  Vec df(2 * n);
  for (int k = 0; k < n; ++k) {
    const AlgebraVec e = m.basis_vector(k);
    const GroupPoint xp{p.x.matrix * m.exp_alg(h * e).matrix};
    const GroupPoint xm{p.x.matrix * m.exp_alg(-h * e).matrix};
    df(k) = (f(xp, p.y) - f(xm, p.y)) / (2.0 * h);
    df(n + k) = (f(p.x, p.y + h * e) - f(p.x, p.y - h * e)) / (2.0 * h);
  }
  return df;
}

CovectorPair dbar_from_differential(const LieModel& m, const AlgebraVec& y, const Vec& df) {
  const int n = m.dim();
  const Mat jt = complex_structure_J(m, y).transpose();
  const CVec v = 0.5 * (df.cast<cd>() + kI * (jt * df).cast<cd>());
  return {v.head(n), v.tail(n)};
}

CovectorPair dbar_function(const LieModel& m, const ScalarField& f, const BasePoint& p, double h) {
  return dbar_from_differential(m, p.y, differential(m, f, p, h));
}

CovectorPair theta_01(const LieModel& m, const AlgebraVec& y) {
  Vec theta = Vec::Zero(2 * m.dim());
  theta.head(m.dim()) = m.inner() * y;
  return dbar_from_differential(m, y, theta);
}

double potential_at(const LieModel& m, const CMat& point) {
  Eigen::SelfAdjointEigenSolver<CMat> es(point.adjoint() * point);
  const Vec l = es.eigenvalues().array().log() * 0.5;
  const CMat iy = es.eigenvectors() * l.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
  return m.norm2(m.from_matrix(-kI * iy).first);
}

double kahler_potential_residual(const LieModel& m, const AlgebraVec& y, double h) {
  const int n = m.dim();
  const CMat t0 = m.exp_alg(AlgebraVec::Zero(n), y).matrix;
  auto K = [&](const Vec& uv) {
    CMat z = CMat::Zero(m.defining_rep_dim(), m.defining_rep_dim());
    for (int k = 0; k < n; ++k) z += cd(uv(k), uv(n + k)) * m.basis_matrices()[k];
    return potential_at(m, t0 * z.exp());
  };
  const Eigen::Index d = 2 * n;
  auto second_differences = [&](double step) {
    Mat out(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = a; b < d; ++b) {
        Vec ea = Vec::Zero(d), eb = Vec::Zero(d);
        ea(a) = step;
        eb(b) = step;
        out(a, b) = out(b, a) = (K(ea + eb) - K(ea - eb) - K(eb - ea) + K(-ea - eb)) / (4.0 * step * step);
      }
    return out;
  };
  // Richardson step h -> h / 2
  const Mat hess = (4.0 * second_differences(0.5 * h) - second_differences(h)) / 3.0;
  CMat H(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      H(j, k) = 0.25 * cd(hess(j, k) + hess(n + j, n + k), hess(j, n + k) - hess(n + j, k));
  // -i d dbar K (xi, zeta) = 2 Im sum H_jk xi_j conj(zeta_k), with xi_j = u_j + i v_j
  Mat pot(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      CVec xi = CVec::Zero(n), ze = CVec::Zero(n);
      xi(a % n) = a < n ? cd(1, 0) : kI;
      ze(b % n) = b < n ? cd(1, 0) : kI;
      pot(a, b) = 2.0 * (xi.transpose() * H * ze.conjugate())(0).imag();
    }
  const Mat tinv = dphi_matrix(m, y).inverse();
  const Mat chart_omega = tinv.transpose() * omega_matrix(m, y) * tinv;
  return (chart_omega - pot).cwiseAbs().maxCoeff();
}

ClosednessResidual closedness_residual(const LieModel& m, const BasePoint& p, const TangentPair& u,
                                       const TangentPair& v, const TangentPair& w, double h) {
  auto theta_of = [&](const TangentPair& a) {
    return [&m, a](const BasePoint& q) { return theta_form(m, q, a); };
  };
  auto omega_of = [&](const TangentPair& a, const TangentPair& b) {
    return [&m, a, b](const BasePoint& q) { return omega_form(m, q, a, b); };
  };
  const double dtheta =
      along(m, p, u, theta_of(v), h) - along(m, p, v, theta_of(u), h) - theta_form(m, p, lie_bracket(m, u, v));
  const double domega = along(m, p, u, omega_of(v, w), h) - along(m, p, v, omega_of(u, w), h) +
                        along(m, p, w, omega_of(u, v), h) - omega_form(m, p, lie_bracket(m, u, v), w) +
                        omega_form(m, p, lie_bracket(m, u, w), v) - omega_form(m, p, lie_bracket(m, v, w), u);
  return {std::abs(dtheta - omega_form(m, p, u, v)), std::abs(domega)};
}

std::pair<double, double> completeness_pair(const LieModel& m, const AlgebraVec& y) {
  const int n = m.dim();
  const ScalarField f = [&m](const GroupPoint&, const AlgebraVec& z) { return std::log1p(m.norm2(z)); };
  const BasePoint p{m.identity(), y};
  const Vec df = differential(m, f, p);
  // G = J^T Omega and J^{-1} = -J, so G^{-1} = -Omega^{-1} J^T with Omega^{-1} = [[0, I], [-I, B]]
  const Mat om = omega_matrix(m, y);
  Mat om_inv = Mat::Zero(2 * n, 2 * n);
  om_inv.topRightCorner(n, n) = m.inner().inverse();
  om_inv.bottomLeftCorner(n, n) = -m.inner().inverse();
  om_inv.bottomRightCorner(n, n) = m.inner().inverse() * om.topLeftCorner(n, n) * m.inner().inverse();
  const Mat jt = complex_structure_J(m, y).transpose();
  const Vec sharp = -om_inv * (jt * df);
  const TangentPair s = TangentPair::unstack(sharp);
  const double via_metric = metric_g(m, p, s, s);
  const double r2 = m.norm2(y);
  return {via_metric, 4.0 * r2 / ((1.0 + r2) * (1.0 + r2))};
}

CheckReport completeness_certificate(const LieModel& m, const KahlerConfig& cfg) {
  sampling::Rng rng(cfg.seed);
  double sup_metric = 0.0, sup_closed = 0.0, agree = 0.0, at_unit = 0.0;
  for (int s = 0; s < cfg.completeness_samples; ++s) {
    AlgebraVec y;
    if (s == 0) y = AlgebraVec::Zero(m.dim());
    else if (s == 1) y = m.basis_vector(0);
    else y = sampling::uniform(rng, 0.0, cfg.max_radius) * sampling::unit_vector(rng, m.dim());
    const auto [a, b] = completeness_pair(m, y);
    if (s == 1) at_unit = a;
    sup_metric = std::max(sup_metric, a);
    sup_closed = std::max(sup_closed, b);
    agree = std::max(agree, std::abs(a - b));
  }
  const double bound_excess = std::max(0.0, std::max(sup_metric, sup_closed) - 4.0);
  auto meta = base_meta(m);
  meta["samples"] = cfg.completeness_samples;
  meta["max_radius"] = cfg.max_radius;
  meta["sup_norm2_metric"] = sup_metric;
  meta["sup_norm2_closed_form"] = sup_closed;
  meta["norm2_at_unit_Y"] = at_unit;
  meta["closed_form_agreement"] = agree;
  meta["bound"] = 4.0;
  meta["bound_excess"] = bound_excess;
  meta["fd_step"] = kFdStep;
  meta["f"] = "log(1 + |Y|^2)";
  // both requirements folded into one error: excess over 4 (tol 1e-9) and agreement (tol 1e-6)
  const double err = std::max(agree, bound_excess * 1e3);
  return CheckReport::make("kahler.completeness", "Hence ||df||^2_g <= 4; T*G is geodesically complete", 1e-6,
                           err, meta);
}

CheckReport j_squared_certificate(const LieModel& m, const KahlerConfig& cfg) {
  sampling::Rng rng(cfg.seed + 1);
  const int n = m.dim();
  double worst = 0.0, spectrum = 0.0;
  for (int s = 0; s < cfg.j_samples; ++s) {
    const AlgebraVec y = sampling::in_ball(rng, n, cfg.max_radius);
    const Mat j = complex_structure_J(m, y);
    worst = std::max(worst, (j * j + Mat::Identity(2 * n, 2 * n)).norm());
    if (s < 100) {
      // eigenvalues +-i with equal multiplicity
      const Eigen::VectorXcd ev = j.eigenvalues();
      int plus = 0;
      for (Eigen::Index k = 0; k < ev.size(); ++k) {
        spectrum = std::max(spectrum, std::abs(std::abs(ev(k).imag()) - 1.0) + std::abs(ev(k).real()));
        if (ev(k).imag() > 0) ++plus;
      }
      if (plus != n) spectrum = INFINITY;
    }
  }
  auto meta = base_meta(m);
  meta["samples"] = cfg.j_samples;
  meta["max_radius"] = cfg.max_radius;
  meta["max_residual_J2_plus_I"] = worst;
  meta["eigenvalue_deviation_from_pm_i"] = spectrum;
  return CheckReport::make("kahler.j_squared", "the familiar expression J_e, transported by T Phi", 1e-10,
                           std::max(worst, spectrum * 1e-2), meta);
}

CheckReport dphi_oracle_certificate(const LieModel& m, const KahlerConfig& cfg) {
  sampling::Rng rng(cfg.seed + 2);
  double worst = 0.0, min_sv = INFINITY;
  for (int s = 0; s < cfg.oracle_samples; ++s) {
    const BasePoint p{sampling::group_point(m, rng), sampling::in_ball(rng, m.dim(), 3.0)};
    const Mat fd = dphi_finite_difference(m, p);
    worst = std::max(worst, (fd - dphi_matrix(m, p.y)).cwiseAbs().maxCoeff());
    min_sv = std::min(min_sv, dphi_min_singular_value(m, p.y));
  }
  auto meta = base_meta(m);
  meta["samples"] = cfg.oracle_samples;
  meta["fd_step"] = kFdStep;
  meta["Y_radius"] = 3.0;
  meta["min_singular_value"] = min_sv;
  return CheckReport::make("kahler.dphi_oracle", "the differential T Phi_(x,Y) of the polar map x e^{iY}", 1e-6,
                           worst, meta);
}

CheckReport potential_certificate(const LieModel& m, const KahlerConfig& cfg) {
  sampling::Rng rng(cfg.seed + 3);
  double worst = 0.0;
  for (int s = 0; s < cfg.potential_samples; ++s) {
    const AlgebraVec y = s == 0 ? AlgebraVec::Zero(m.dim()) : sampling::in_ball(rng, m.dim(), 2.0);
    worst = std::max(worst, kahler_potential_residual(m, y));
  }
  auto meta = base_meta(m);
  meta["samples"] = cfg.potential_samples;
  meta["fd_step"] = 2e-3;
  meta["richardson"] = true;
  meta["chart"] = "z -> e^{iY} exp(sum z_k e_k)";
  return CheckReport::make("kahler.potential", "global Kahler potential given by |Y|^2", 1e-5, worst, meta);
}

CheckReport closedness_certificate(const LieModel& m, const KahlerConfig& cfg) {
  sampling::Rng rng(cfg.seed + 4);
  double dth = 0.0, dom = 0.0;
  for (int s = 0; s < 200; ++s) {
    const BasePoint p{sampling::group_point(m, rng), sampling::in_ball(rng, m.dim(), 3.0)};
    const auto r = closedness_residual(m, p, random_pair(m, rng), random_pair(m, rng), random_pair(m, rng));
    dth = std::max(dth, r.dtheta_minus_omega);
    dom = std::max(dom, r.domega);
  }
  auto meta = base_meta(m);
  meta["samples"] = 200;
  meta["fd_step"] = kFdStep;
  meta["dtheta_minus_omega"] = dth;
  meta["domega"] = dom;
  return CheckReport::make("kahler.closedness", "omega = d theta", 1e-6, std::max(dth, dom * 0.1), meta);
}

CheckReport compatibility_certificate(const LieModel& m, const KahlerConfig& cfg) {
  sampling::Rng rng(cfg.seed + 5);
  const int n = m.dim();
  double inv = 0.0, sym = 0.0, min_eig = INFINITY;
  for (int s = 0; s < 1000; ++s) {
    const AlgebraVec y = sampling::in_ball(rng, n, 5.0);
    const Mat j = complex_structure_J(m, y);
    const Mat om = omega_matrix(m, y);
    inv = std::max(inv, (j.transpose() * om * j - om).cwiseAbs().maxCoeff());
    const Mat g = j.transpose() * om;
    sym = std::max(sym, (g - g.transpose()).cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (g + g.transpose())).eigenvalues()(0));
  }
  auto meta = base_meta(m);
  meta["samples"] = 1000;
  meta["omega_J_invariance"] = inv;
  meta["metric_asymmetry"] = sym;
  meta["min_metric_eigenvalue"] = min_eig;
  const double err = min_eig > 0.0 ? std::max(inv, sym) : INFINITY;
  return CheckReport::make("kahler.compatibility", "omega(JX, Y) =: g(X, Y)", 1e-9, err, meta);
}

CheckReport dbar_certificate(const LieModel& m, const KahlerConfig& cfg) {
  sampling::Rng rng(cfg.seed + 6);
  const ScalarField phi = [&m](const GroupPoint&, const AlgebraVec& z) { return kPi * m.norm2(z); };
  double worst = 0.0;
  for (int s = 0; s < 500; ++s) {
    const BasePoint p{sampling::group_point(m, rng), sampling::in_ball(rng, m.dim(), 4.0)};
    const CVec lhs = dbar_function(m, phi, p).stacked();
    const CVec rhs = 2.0 * kPi * kI * theta_01(m, p.y).stacked();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  auto meta = base_meta(m);
  meta["samples"] = 500;
  meta["fd_step"] = kFdStep;
  meta["phi"] = "pi |Y|^2";
  return CheckReport::make("kahler.dbar_phi", "dbar phi = 2 pi i (pi^{(0,1)} theta)", 1e-7, worst, meta);
}

}  // namespace quantlab::kahler
