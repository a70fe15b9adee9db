#include "quantlab/reduction.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "quantlab/density_weights.hpp"
#include "quantlab/sampling.hpp"

namespace quantlab::reduction {

namespace {

const cd kI(0.0, 1.0);

nlohmann::json base_meta(const LieModel& m) {
  return {{"model", m.name()}, {"normalization", m.normalization()}};
}

void require_builtin(const LieModel& m) {
  if (m.name() != "su2" && !(m.is_abelian() && m.has_torus_lattice()))
    throw UsageError(m.name() + ": reduction suites are available for the built-in models only");
}

double wrap_angle(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi - 1e-15) r = 0.0;
  return r;
}

double circle_distance(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, 2.0 * kPi - d);
}

double off_diagonal(const CMat& a) {
  return (a - CMat(a.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
}

/// unitary eigenbasis of a normal matrix with det 1
CMat special_unitary_eigenbasis(const CMat& a) {
  Eigen::ComplexEigenSolver<CMat> es(a);
  Eigen::HouseholderQR<CMat> qr(es.eigenvectors());
  CMat q = qr.householderQ();
  const cd det = q.determinant();
  q.col(0) *= std::conj(det) / std::abs(det);
  return q;
}

ReducedRepresentative from_conjugator(const LieModel& m, const ZeroSetPoint& z, const CMat& h) {
  ReducedRepresentative r;
  r.conjugator = {h};
  r.t = {h * z.p.x.matrix * h.adjoint()};
  const AlgebraVec y = m.adjoint_action(r.conjugator, z.p.y);
  r.y0 = m.torus_coords(y);
  r.residual = std::max(off_diagonal(r.t.matrix), m.off_torus_norm(y));
  return r;
}

double dbl(int v) { return static_cast<double>(v); }

double resolved_cutoff(const LieModel& m, double c) { return c < 0.0 ? transform::default_cutoff(m) : c; }

}  // namespace

AlgebraVec momentum_map(const LieModel& m, const kahler::BasePoint& p) {
  return m.adjoint_action(p.x, p.y) - p.y;
}

ZeroSetPoint ZeroSetPoint::make(const LieModel& m, const kahler::BasePoint& p) {
  ZeroSetPoint z{p, momentum_map(m, p).norm()};
  if (!(z.residual < kZeroSetTol))
    throw UsageError("point is not on the zero set: |j| = " + std::to_string(z.residual));
  return z;
}

Vec ReducedRepresentative::angles() const {
  const Eigen::Index r = y0.size();
  Vec a(r);
  for (Eigen::Index j = 0; j < r; ++j) a(j) = wrap_angle(std::arg(t.matrix(j, j)));
  return a;
}

ReducedRepresentative torus_representative(const LieModel& m, const ZeroSetPoint& z) {
  require_builtin(m);
  if (m.is_abelian()) return from_conjugator(m, z, m.identity().matrix);
  // joint eigenbasis of g + lambda e^{iY}, which is normal when g and Y commute
  const cd lambda(0.7390851332151607, 0.3183098861837907);
  const CMat eiy = m.exp_alg(AlgebraVec::Zero(m.dim()), z.p.y).matrix;
  ReducedRepresentative best = from_conjugator(m, z, special_unitary_eigenbasis(z.p.x.matrix + lambda * eiy).adjoint());
  if (best.residual > kZeroSetTol) {
    // eigenvector matching fallback: each factor alone
    for (const CMat& a : {z.p.x.matrix, CMat(kI * m.to_matrix(z.p.y))}) {
      const auto r = from_conjugator(m, z, special_unitary_eigenbasis(a).adjoint());
      if (r.residual < best.residual) best = r;
    }
  }
  if (best.residual > 1e-7) throw UsageError("simultaneous diagonalization is numerically defective");
  return best;
}

ReducedRepresentative weyl_canonicalize(const LieModel& m, const ReducedRepresentative& r) {
  require_builtin(m);
  ReducedRepresentative out = r;
  out.weyl_canonical = true;
  if (m.is_abelian()) {
    out.t = m.torus_point(r.angles());
    return out;
  }
  const double tol = 1e-12;
  const double y = r.y0(0);
  const double phi = r.angles()(0);
  bool flip = false;
  if (y < -tol) flip = true;
  else if (std::abs(y) <= tol && phi > kPi) flip = true;
  if (flip) {
    const auto w = m.weyl_group();
    const auto it = std::find_if(w.begin(), w.end(), [](const WeylElement& e) { return e.word != "e"; });
    const CMat n = m.weyl_lift(*it).matrix;
    out.conjugator = {n * r.conjugator.matrix};
    out.y0 = -r.y0;
  }
  if (std::abs(out.y0(0)) <= tol) out.y0(0) = 0.0;
  const double a = flip ? wrap_angle(2.0 * kPi - phi) : phi;
  out.t = m.torus_point(Vec::Constant(1, a));
  return out;
}

double representative_distance(const ReducedRepresentative& a, const ReducedRepresentative& b) {
  double d = (a.y0 - b.y0).cwiseAbs().maxCoeff();
  const Vec pa = a.angles(), pb = b.angles();
  for (Eigen::Index j = 0; j < pa.size(); ++j) d = std::max(d, circle_distance(pa(j), pb(j)));
  return d;
}

StratumTag stratum_classify(const LieModel& m, const ReducedRepresentative& r) {
  const int n = m.dim();
  Mat stack(2 * n, n);
  stack.topRows(n) = m.adjoint_matrix(r.t) - Mat::Identity(n, n);
  stack.bottomRows(n) = m.ad(m.embed_torus(r.y0));
  const Vec sv = Eigen::JacobiSVD<Mat>(stack).singularValues();  // descending
  StratumTag tag;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= kStratumThreshold) ++tag.isotropy_dim;
    if (sv(i) > kStratumThreshold / 10.0 && sv(i) < kStratumThreshold * 10.0) tag.ambiguous = true;
  }
  tag.principal = tag.isotropy_dim == m.rank();
  const Eigen::Index k = n - m.rank() - 1;
  tag.distance_to_singular = k >= 0 ? sv(k) : INFINITY;
  return tag;
}

TorusSamples reduction_unitary(const LieModel& m, const transform::PeterWeylVector& f, int modes) {
  require_builtin(m);
  if (f.class_defect() > 1e-12) throw UsageError("reduction_unitary needs a class function");
  TorusSamples s;
  s.rule = quad::torus_rule(m.rank(), modes);
  s.values.resize(s.rule.size());
  const double c = 1.0 / std::sqrt(dbl(static_cast<int>(m.weyl_group().size())));
  for (Eigen::Index q = 0; q < s.rule.size(); ++q) {
    const Vec phi = s.rule.nodes.col(q);
    s.values(q) = c * std::sqrt(density::weyl_denominator_sq(m, phi)) * f(m.torus_point(phi).matrix);
  }
  return s;
}

CMat torus_gram(const std::vector<TorusSamples>& fs) {
  const Eigen::Index k = static_cast<Eigen::Index>(fs.size());
  CMat g(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) {
      const auto& fa = fs[static_cast<std::size_t>(a)];
      const auto& fb = fs[static_cast<std::size_t>(b)];
      g(a, b) = (fa.rule.weights.cast<cd>().array() * fa.values.conjugate().array() * fb.values.array()).sum();
    }
  return g;
}

CheckReport momentum_equivariance_certificate(const LieModel& m, const ReductionConfig& cfg) {
  sampling::Rng rng(cfg.seed + 11);
  double worst = 0.0, trivial = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    const GroupPoint h = sampling::group_point(m, rng), g = sampling::group_point(m, rng);
    const AlgebraVec y = sampling::in_ball(rng, m.dim(), 5.0);
    const AlgebraVec lhs = momentum_map(m, {GroupPoint{h.matrix * g.matrix * h.matrix.adjoint()}, m.adjoint_action(h, y)});
    const AlgebraVec rhs = m.adjoint_action(h, momentum_map(m, {g, y}));
    worst = std::max(worst, (lhs - rhs).norm());
    if (s < 100) {
      trivial = std::max(trivial, momentum_map(m, {m.identity(), y}).norm());
      trivial = std::max(trivial, momentum_map(m, {g, AlgebraVec::Zero(m.dim())}).norm());
    }
  }
  auto meta = base_meta(m);
  meta["samples"] = cfg.samples;
  meta["trivial_cases"] = trivial;
  return CheckReport::make("reduction.momentum_equivariance", "j(g,Y) = Ad_gY - Y", 1e-10, std::max(worst, trivial), meta);
}

CheckReport round_trip_certificate(const LieModel& m, const ReductionConfig& cfg) {
  require_builtin(m);
  sampling::Rng rng(cfg.seed + 12);
  double worst = 0.0, invariant = 0.0, idempotent = 0.0;
  int wall = 0;
  const int count = std::max(10, cfg.samples / 10);
  for (int s = 0; s < count; ++s) {
    Vec angles(m.rank());
    for (int j = 0; j < m.rank(); ++j) angles(j) = sampling::uniform(rng, 0.0, 2.0 * kPi);
    Vec y = sampling::in_ball(rng, m.rank(), 4.0);
    if (s % 7 == 0) {
      // the wall y = 0, including the central elements
      y.setZero();
      ++wall;
      if (s % 14 == 0) angles.setConstant(s % 28 == 0 ? 0.0 : kPi);
    }
    ReducedRepresentative start;
    start.t = m.torus_point(angles);
    start.y0 = y;
    start.conjugator = m.identity();
    const ReducedRepresentative canon = weyl_canonicalize(m, start);
    const GroupPoint k = sampling::group_point(m, rng);
    const kahler::BasePoint moved{GroupPoint{k.matrix * canon.t.matrix * k.matrix.adjoint()},
                                  m.adjoint_action(k, m.embed_torus(canon.y0))};
    const auto z = ZeroSetPoint::make(m, moved);
    const auto rep = weyl_canonicalize(m, torus_representative(m, z));
    worst = std::max(worst, representative_distance(rep, canon));
    // (h g h^{-1}, Ad_h Y) = (t, Y0)
    const CMat h = rep.conjugator.matrix;
    invariant = std::max(invariant, (h * moved.x.matrix * h.adjoint() - rep.t.matrix).cwiseAbs().maxCoeff());
    invariant = std::max(invariant, (m.adjoint_action(rep.conjugator, moved.y) - m.embed_torus(rep.y0)).norm());
    idempotent = std::max(idempotent, representative_distance(weyl_canonicalize(m, rep), rep));
  }
  auto meta = base_meta(m);
  meta["samples"] = count;
  meta["wall_samples"] = wall;
  meta["conjugation_invariant"] = invariant;
  meta["idempotence"] = idempotent;
  meta["fundamental_domain"] = m.is_abelian() ? "T x t" : "y >= 0, angle in [0, pi] on y = 0";
  return CheckReport::make("reduction.round_trip", "contains an element of T x t", 1e-8,
                           std::max({worst, invariant, idempotent}), meta);
}

CheckReport stratification_certificate(const LieModel& m, const ReductionConfig&) {
  require_builtin(m);
  const int r = m.rank();
  const int na = r == 1 ? 16 : 8;
  const int ny = r == 1 ? 21 : 9;
  const double ymax = 3.0;
  std::vector<int> shape;
  for (int i = 0; i < r; ++i) shape.push_back(na);
  for (int i = 0; i < r; ++i) shape.push_back(ny);
  int total = 1;
  for (int s : shape) total *= s;
  std::vector<char> singular(static_cast<std::size_t>(total), 0);
  int n_singular = 0, ambiguous = 0, mismatched = 0;
  nlohmann::json points = nlohmann::json::array();
  for (int c = 0; c < total; ++c) {
    Vec angles(r), y(r);
    int rest = c;
    for (int i = 0; i < r; ++i) {
      angles(i) = 2.0 * kPi * (rest % na) / na;
      rest /= na;
    }
    for (int i = 0; i < r; ++i) {
      y(i) = -ymax + 2.0 * ymax * (rest % ny) / (ny - 1);
      rest /= ny;
    }
    ReducedRepresentative rep;
    rep.t = m.torus_point(angles);
    rep.y0 = y;
    rep.conjugator = m.identity();
    const StratumTag tag = stratum_classify(m, rep);
    if (tag.ambiguous) ++ambiguous;
    if (tag.principal != (tag.isotropy_dim == m.rank())) ++mismatched;
    if (!tag.principal) {
      singular[static_cast<std::size_t>(c)] = 1;
      ++n_singular;
      points.push_back({{"angles", std::vector<double>(angles.data(), angles.data() + r)},
                        {"y", std::vector<double>(y.data(), y.data() + r)},
                        {"isotropy_dim", tag.isotropy_dim}});
    }
  }
  // a singular set of grid-codimension 1 shows up as neighbouring singular nodes
  int adjacent = 0;
  for (int c = 0; c < total; ++c) {
    if (!singular[static_cast<std::size_t>(c)]) continue;
    int stride = 1;
    for (std::size_t ax = 0; ax < shape.size(); ++ax) {
      const int coord = (c / stride) % shape[ax];
      const bool periodic = ax < static_cast<std::size_t>(r);
      const int next = coord + 1 < shape[ax] ? coord + 1 : (periodic ? 0 : -1);
      if (next >= 0) {
        const int nb = c + (next - coord) * stride;
        if (singular[static_cast<std::size_t>(nb)]) ++adjacent;
      }
      stride *= shape[ax];
    }
  }
  auto meta = base_meta(m);
  meta["grid_points"] = total;
  meta["singular_points"] = n_singular;
  meta["singular"] = points;
  meta["adjacent_singular_pairs"] = adjacent;
  meta["ambiguous"] = ambiguous;
  meta["threshold"] = kStratumThreshold;
  const double err = dbl(adjacent + mismatched + ambiguous);
  return CheckReport::make("reduction.strata", "are at least 2", 0.0, err, meta);
}

CheckReport weyl_isometry_certificate(const LieModel& m, const ReductionConfig& cfg) {
  require_builtin(m);
  const double cutoff = m.name() == "su2" ? cfg.isometry_cutoff : resolved_cutoff(m, cfg.cutoff);
  const auto irreps = Irrep::up_to(m, cutoff);
  const int modes = m.name() == "su2" ? static_cast<int>(std::lround(4.0 * cutoff)) + 4 : 2 * static_cast<int>(cutoff) + 2;
  std::vector<TorusSamples> images;
  for (std::size_t b = 0; b < irreps.size(); ++b)
    images.push_back(reduction_unitary(m, transform::PeterWeylVector::character(m, cutoff, b), modes));
  const CMat g = torus_gram(images);
  const Eigen::Index k = g.rows();
  const double residual = (g - CMat::Identity(k, k)).cwiseAbs().maxCoeff();
  double off = 0.0;
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      if (a != b) off = std::max(off, std::abs(g(a, b)));
  auto meta = base_meta(m);
  meta["irreps"] = k;
  meta["torus_modes"] = modes;
  meta["constant"] = 1.0 / std::sqrt(dbl(static_cast<int>(m.weyl_group().size())));
  meta["max_off_diagonal"] = off;
  meta["gram_diagonal"] = matrix_json(Mat(g.diagonal().real()));
  return CheckReport::make("reduction.weyl_isometry", "for the Weyl denominator function", 1e-6, residual, meta);
}

QrSides qr_sides(const LieModel& m, double cutoff, int level, int sigma_level) {
  require_builtin(m);
  const bool su2 = m.name() == "su2";
  const auto irreps = Irrep::up_to(m, cutoff);
  const auto table = transform::SigmaTable::build(m, irreps, sigma_level);
  std::vector<double> scales;
  for (const auto& p : irreps) scales.push_back(1.0 / std::sqrt(table.at(p)));
  const CMat g_hl = transform::character_gram(
      irreps, transform::hl2_gram(m, irreps, scales, transform::algebra_rule(m, cutoff, level)).gram);
  const Eigen::Index k = g_hl.rows();
  const int top = su2 ? static_cast<int>(std::lround(2.0 * cutoff)) : static_cast<int>(std::lround(cutoff));
  const int modes = su2 ? 2 * top + 4 : 2 * top + 2;
  const auto weyl = m.weyl_group();
  const double w_order = dbl(static_cast<int>(weyl.size()));
  QrSides out;

  // (A) C_phi chi_j, read back through the HL^2 inner product, then restricted to T
  std::vector<TorusSamples> chi;
  for (Eigen::Index b = 0; b < k; ++b)
    chi.push_back(reduction_unitary(m, transform::PeterWeylVector::character(m, cutoff, static_cast<std::size_t>(b)), modes));
  std::vector<TorusSamples> side_a;
  for (Eigen::Index j = 0; j < k; ++j) {
    TorusSamples s{chi[0].rule, CVec::Zero(chi[0].values.size())};
    for (Eigen::Index b = 0; b < k; ++b) s.values += g_hl(b, j) * chi[static_cast<std::size_t>(b)].values;
    side_a.push_back(s);
  }
  out.gram_a = torus_gram(side_a);

  // (B) W-symmetrized holomorphic torus characters, integrated over the quotient
  std::vector<std::vector<std::vector<int>>> orbits;
  if (su2) {
    for (int n = 0; n <= top; ++n) orbits.push_back(n == 0 ? std::vector<std::vector<int>>{{0}} : std::vector<std::vector<int>>{{n}, {-n}});
  } else {
    for (const auto& p : irreps) orbits.push_back({p.label()});
  }
  std::vector<double> norm;
  for (const auto& o : orbits) norm.push_back(1.0 / std::sqrt(transform::sigma_torus(m, o[0]) * dbl(static_cast<int>(o.size()))));
  auto s_value = [&](std::size_t a, const CMat& t) {
    cd v = 0.0;
    for (const auto& kk : orbits[a]) v += transform::torus_character(kk, t);
    return norm[a] * v;
  };
  QuadratureRule yrule;
  if (su2) {
    // fundamental domain y >= 0
    const double radius = quad::gaussian_cutoff_radius(dbl(top) + 1.0);
    yrule = quad::radial_rule(40 * level, radius, [](double y) { return std::exp(-2.0 * kPi * y * y); });
  } else {
    yrule = quad::gaussian_rule(m.rank(), 40 * level);
  }
  const auto trule = quad::torus_rule(m.rank(), modes);
  std::vector<CMat> tpts, ypts;
  for (Eigen::Index q = 0; q < trule.size(); ++q) tpts.push_back(m.torus_point(trule.nodes.col(q)).matrix);
  for (Eigen::Index q = 0; q < yrule.size(); ++q)
    ypts.push_back(m.exp_alg(Vec::Zero(m.dim()), m.embed_torus(yrule.nodes.col(q))).matrix);
  const std::size_t nb = orbits.size();
  out.gram_b = CMat::Zero(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
  CVec vals(static_cast<Eigen::Index>(nb));
  for (std::size_t qy = 0; qy < ypts.size(); ++qy)
    for (std::size_t qt = 0; qt < tpts.size(); ++qt) {
      const CMat t = tpts[qt] * ypts[qy];
      for (std::size_t a = 0; a < nb; ++a) vals(static_cast<Eigen::Index>(a)) = s_value(a, t);
      const double w = w_order * yrule.weights(static_cast<Eigen::Index>(qy)) * trule.weights(static_cast<Eigen::Index>(qt));
      out.gram_b += w * vals.conjugate() * vals.transpose();
    }

  // membership in L^2(T)^W
  sampling::Rng rng(977);
  for (int s = 0; s < 20; ++s) {
    Vec ang(m.rank());
    for (int j = 0; j < m.rank(); ++j) ang(j) = sampling::uniform(rng, 0.0, 2.0 * kPi);
    const Vec y = sampling::in_ball(rng, m.rank(), 1.0);
    const CMat tr = m.torus_point(ang).matrix;
    const CMat tc = transform::torus_complex_point(m, ang, y);
    for (const auto& w : weyl) {
      const CMat n = m.weyl_lift(w).matrix;
      const CMat ninv = n.inverse();
      for (Eigen::Index j = 0; j < k; ++j) {
        auto ra = [&](const CMat& t) {
          cd v = 0.0;
          for (Eigen::Index b = 0; b < k; ++b) v += g_hl(b, j) * irreps[static_cast<std::size_t>(b)].character(t);
          return v;
        };
        out.weyl_defect = std::max(out.weyl_defect, std::abs(ra(n * tr * ninv) - ra(tr)));
      }
      for (std::size_t a = 0; a < nb; ++a)
        out.weyl_defect = std::max(out.weyl_defect, std::abs(s_value(a, n * tc * ninv) - s_value(a, tc)));
    }
  }

  const double step = su2 ? 0.5 : 1.0;
  for (double c = 0.0; c <= cutoff + 1e-9; c += step) {
    int da = 0, db = 0;
    for (const auto& p : irreps)
      if (p.size() <= c + 1e-9) ++da;
    for (const auto& o : orbits) {
      double size = 0.0;
      for (int x : o[0]) size = std::max(size, std::abs(dbl(x)));
      if (su2) size /= 2.0;
      if (size <= c + 1e-9) ++db;
    }
    out.dims_a.push_back(da);
    out.dims_b.push_back(db);
  }
  return out;
}

CheckReport qr_commutes_certificate(const LieModel& m, const ReductionConfig& cfg) {
  require_builtin(m);
  const double cutoff = resolved_cutoff(m, cfg.cutoff);
  const QrSides s = qr_sides(m, cutoff, cfg.level, cfg.sigma_level);
  const Eigen::Index ka = s.gram_a.rows(), kb = s.gram_b.rows();
  const double dev_a = (s.gram_a - CMat::Identity(ka, ka)).cwiseAbs().maxCoeff();
  const double dev_b = (s.gram_b - CMat::Identity(kb, kb)).cwiseAbs().maxCoeff();
  const bool dims_match = s.dims_a == s.dims_b && ka == kb;
  double coincidence = 0.0;
  if (m.is_abelian() && dims_match) coincidence = (s.gram_a - s.gram_b).cwiseAbs().maxCoeff();

  // leading sub-certificate at the next smaller cutoff
  const double step = m.name() == "su2" ? 0.5 : 1.0;
  double monotone = 0.0;
  if (cutoff - step >= -1e-9) {
    const QrSides small = qr_sides(m, cutoff - step, cfg.level, cfg.sigma_level);
    const auto big_irreps = Irrep::up_to(m, cutoff), small_irreps = Irrep::up_to(m, cutoff - step);
    std::vector<Eigen::Index> idx;
    for (const auto& p : small_irreps)
      for (std::size_t b = 0; b < big_irreps.size(); ++b)
        if (big_irreps[b].label() == p.label()) idx.push_back(static_cast<Eigen::Index>(b));
    const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        monotone = std::max(monotone, std::abs(small.gram_a(a, b) - s.gram_a(idx[a], idx[b])));
        monotone = std::max(monotone, std::abs(small.gram_b(a, b) - s.gram_b(idx[a], idx[b])));
      }
  }

  auto meta = base_meta(m);
  meta["cutoff"] = cutoff;
  meta["gram_a"] = matrix_json(s.gram_a);
  meta["gram_b"] = matrix_json(s.gram_b);
  meta["deviation_a"] = dev_a;
  meta["deviation_b"] = dev_b;
  meta["dims_a"] = s.dims_a;
  meta["dims_b"] = s.dims_b;
  meta["weyl_invariance_defect"] = s.weyl_defect;
  meta["sub_certificate_gap"] = monotone;
  if (m.is_abelian()) meta["torus_coincidence"] = coincidence;
  const bool gates = dims_match && s.weyl_defect < 1e-8 && monotone < 1e-10 && coincidence < 1e-12;
  return CheckReport::make("reduction.qr_commutes", "both canonically isomorphic to", 1e-4,
                           gates ? std::max(dev_a, dev_b) : INFINITY, meta);
}

}  // namespace quantlab::reduction
