#include "quantlab/coherent_transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quantlab/density_weights.hpp"

namespace quantlab::transform {

namespace {

const cd kI(0.0, 1.0);

nlohmann::json base_meta(const LieModel& m, double cutoff) {
  return {{"model", m.name()}, {"normalization", m.normalization()}, {"cutoff", cutoff},
          {"haar", "probability"}, {"gaussian_weight", "exp(-2 pi |Y|^2) dY"}};
}

void require_builtin(const LieModel& m) {
  if (m.name() != "su2" && !(m.is_abelian() && m.has_torus_lattice()))
    throw UsageError(m.name() + ": transform suites are available for the built-in models only");
}

double resolved_cutoff(const LieModel& m, const TransformConfig& cfg) {
  return cfg.cutoff < 0.0 ? default_cutoff(m) : cfg.cutoff;
}

/// growth rate g with |pi(e^{iY})_ij|^2 <= C e^{g |Y|} over the given irreps
double growth_of(const LieModel& m, double cutoff) {
  if (m.name() == "su2") return 2.0 * cutoff + 1.0;
  return 2.0 * std::sqrt(static_cast<double>(m.rank())) * cutoff + 1.0;
}

}  // namespace

cd torus_character(const std::vector<int>& k, const CMat& t) {
  cd v = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const cd d = t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
    v *= k[j] >= 0 ? std::pow(d, k[j]) : std::pow(1.0 / d, -k[j]);
  }
  return v;
}

CMat torus_complex_point(const LieModel& m, const Vec& angles, const Vec& y) {
  return m.torus_point(angles).matrix * m.exp_alg(Vec::Zero(m.dim()), m.embed_torus(y)).matrix;
}

/// all k in Z^rank with |k_i| <= bound
std::vector<std::vector<int>> lattice_box(int rank, int bound) {
  std::vector<std::vector<int>> out;
  const int side = 2 * bound + 1;
  int count = 1;
  for (int i = 0; i < rank; ++i) count *= side;
  for (int c = 0; c < count; ++c) {
    std::vector<int> k(static_cast<std::size_t>(rank));
    int rest = c;
    for (int i = 0; i < rank; ++i) {
      k[static_cast<std::size_t>(i)] = rest % side - bound;
      rest /= side;
    }
    out.push_back(k);
  }
  return out;
}

double default_cutoff(const LieModel& m) {
  if (m.name() == "u1") return 8.0;
  if (m.name() == "t2") return 4.0;
  if (m.name() == "su2") return 2.0;
  throw UsageError(m.name() + ": no default cutoff");
}

double hs_norm_sq_inverse(const Irrep& p, const AlgebraVec& y) {
  const CMat h = kI * p.generator_of(y);
  const Vec ev = Eigen::SelfAdjointEigenSolver<CMat>(0.5 * (h + h.adjoint())).eigenvalues();
  // exp(-H) has eigenvalues e^{-lambda}; shift by the largest exponent before summing
  const double top = (-2.0 * ev).maxCoeff();
  return std::exp(top) * (-2.0 * ev.array() - top).exp().sum();
}

double sigma(const LieModel& m, const Irrep& p, int level) {
  require_builtin(m);
  const double d = p.dim();
  if (m.name() == "su2") {
    const double j = p.size();
    const double radius = quad::gaussian_cutoff_radius(2.0 * j);
    const auto r = quad::radial_rule(level, radius, [](double x) { return 4.0 * kPi * x * x * std::exp(-2.0 * kPi * x * x); });
    const AlgebraVec e3 = m.basis_vector(2);
    return r.integrate([&](const Vec& x) { return hs_norm_sq_inverse(p, x(0) * e3); }) / d;
  }
  const auto r = quad::gaussian_rule(m.rank(), level);
  return r.integrate([&](const Vec& y) { return hs_norm_sq_inverse(p, m.embed_torus(y)); }) / d;
}

double sigma_closed_form(const LieModel& m, const Irrep& p) {
  require_builtin(m);
  const double d = p.dim();
  if (m.name() == "su2") {
    // int r^2 e^{2 m r - 2 pi r^2} dr over R, completed square, summed over weights
    double s = 0.0;
    for (int a = 0; a < p.dim(); ++a) {
      const double w = a - p.size();
      s += std::exp(w * w / (2.0 * kPi)) * (0.5 + w * w / (2.0 * kPi));
    }
    return s / (d * std::sqrt(2.0));
  }
  // |pi(e^{iY})^{-1}|^2 = e^{2 c.y}
  Vec c(m.rank());
  for (int k = 0; k < m.rank(); ++k) c(k) = -(kI * p.generator(m.torus_indices()[static_cast<std::size_t>(k)]))(0, 0).real();
  return std::pow(2.0, -0.5 * m.rank()) * std::exp(c.squaredNorm() / (2.0 * kPi));
}

double sigma_full_gaussian(const LieModel& m, const Irrep& p, int level) {
  require_builtin(m);
  const auto r = quad::gaussian_rule(m.dim(), level);
  const AlgebraVec zero = AlgebraVec::Zero(m.dim());
  return r.integrate([&](const Vec& y) { return p(m.exp_alg(zero, -y).matrix).squaredNorm(); }) / p.dim();
}

std::pair<double, double> sigma_monte_carlo(const LieModel& m, const Irrep& p, int samples, std::uint64_t seed) {
  require_builtin(m);
  sampling::Rng rng(seed);
  const double sd = 1.0 / std::sqrt(4.0 * kPi);
  const double mass = std::pow(2.0, -0.5 * m.dim());
  const AlgebraVec zero = AlgebraVec::Zero(m.dim());
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    const AlgebraVec y = sd * sampling::gaussian_vector(rng, m.dim());
    const double v = p(m.exp_alg(zero, -y).matrix).squaredNorm() / p.dim();
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  return {mass * mean, mass * std::sqrt(var / samples)};
}

double sigma_torus(const LieModel& m, const std::vector<int>& k) {
  if (!m.has_torus_lattice()) throw UsageError(m.name() + ": no torus lattice");
  Vec kv(m.rank());
  for (int i = 0; i < m.rank(); ++i) kv(i) = k[static_cast<std::size_t>(i)];
  const Vec c = m.lattice().transpose() * kv;
  return std::pow(2.0, -0.5 * m.rank()) * std::exp(c.squaredNorm() / (2.0 * kPi));
}

double SigmaTable::at(const Irrep& p) const {
  const auto it = values.find(p.label_string());
  if (it == values.end()) throw UsageError("sigma table does not cover " + p.label_string());
  return it->second;
}

nlohmann::json SigmaTable::to_json() const {
  nlohmann::json v = nlohmann::json::object();
  for (const auto& [k, x] : values) v[k] = x;
  return {{"values", v}, {"rule", rule}, {"level", level}, {"error_estimate", error_estimate}};
}

SigmaTable SigmaTable::build(const LieModel& m, const std::vector<Irrep>& irreps, int level) {
  SigmaTable t;
  t.rule = m.name() == "su2" ? "radial-gauss-legendre" : "gauss-hermite-product";
  t.level = 2 * level;
  for (const auto& p : irreps) {
    const double a = sigma(m, p, level), b = sigma(m, p, 2 * level);
    t.values[p.label_string()] = b;
    t.error_estimate = std::max(t.error_estimate, std::abs(a - b) / b);
  }
  return t;
}

PeterWeylVector PeterWeylVector::zero(const LieModel& m, double cutoff) {
  PeterWeylVector f;
  f.irreps = Irrep::up_to(m, cutoff);
  f.cutoff = cutoff;
  for (const auto& p : f.irreps) f.coeffs.push_back(CMat::Zero(p.dim(), p.dim()));
  return f;
}

PeterWeylVector PeterWeylVector::character(const LieModel& m, double cutoff, std::size_t block) {
  auto f = zero(m, cutoff);
  if (block >= f.irreps.size()) throw UsageError("character index beyond the cutoff");
  const int d = f.irreps[block].dim();
  f.coeffs[block] = CMat::Identity(d, d) / std::sqrt(static_cast<double>(d));
  return f;
}

PeterWeylVector PeterWeylVector::random(const LieModel& m, double cutoff, sampling::Rng& rng) {
  auto f = zero(m, cutoff);
  double n2 = 0.0;
  for (auto& c : f.coeffs) {
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        const Vec z = sampling::gaussian_vector(rng, 2);
        c(i, j) = cd(z(0), z(1));
      }
    n2 += c.squaredNorm();
  }
  for (auto& c : f.coeffs) c /= std::sqrt(n2);
  return f;
}

double PeterWeylVector::norm2() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += c.squaredNorm();
  return s;
}

cd PeterWeylVector::operator()(const CMat& g) const {
  cd s = 0.0;
  for (std::size_t b = 0; b < irreps.size(); ++b) {
    if (coeffs[b].isZero(0.0)) continue;
    s += std::sqrt(static_cast<double>(irreps[b].dim())) * coeffs[b].cwiseProduct(irreps[b](g)).sum();
  }
  return s;
}

PeterWeylVector PeterWeylVector::translated(const CMat& h1, const CMat& h2) const {
  PeterWeylVector f = *this;
  const CMat h1inv = h1.inverse();
  for (std::size_t b = 0; b < irreps.size(); ++b)
    f.coeffs[b] = irreps[b](h1inv).transpose() * coeffs[b] * irreps[b](h2).transpose();
  return f;
}

double PeterWeylVector::class_defect() const {
  double worst = 0.0;
  for (const auto& c : coeffs) {
    const cd mean = c.trace() / static_cast<double>(c.rows());
    worst = std::max(worst, (c - mean * CMat::Identity(c.rows(), c.cols())).cwiseAbs().maxCoeff());
  }
  return worst;
}

PeterWeylVector transform_C_phi(const PeterWeylVector& f, const SigmaTable& s) {
  PeterWeylVector g = f;
  for (std::size_t b = 0; b < f.irreps.size(); ++b) g.coeffs[b] /= std::sqrt(s.at(f.irreps[b]));
  return g;
}

cd phi_kernel(const std::vector<Irrep>& irreps, const SigmaTable& s, const CMat& t) {
  const CMat tinv = t.inverse();
  cd v = 0.0;
  for (const auto& p : irreps) v += static_cast<double>(p.dim()) / std::sqrt(s.at(p)) * p.character(tinv);
  return v;
}

GroupRule haar_rule(const LieModel& m, double level) {
  require_builtin(m);
  GroupRule g;
  if (m.name() == "su2") {
    const auto r = quad::su2_haar_rule(level);
    g.weights = r.weights;
    for (Eigen::Index i = 0; i < r.size(); ++i) g.points.push_back(quad::su2_euler(r.nodes(0, i), r.nodes(1, i), r.nodes(2, i)));
    return g;
  }
  const auto r = quad::torus_rule(m.rank(), static_cast<int>(std::ceil(level - 1e-9)));
  g.weights = r.weights;
  for (Eigen::Index i = 0; i < r.size(); ++i) g.points.push_back(m.torus_point(r.nodes.col(i)).matrix);
  return g;
}

cd transform_by_quadrature(const LieModel& m, const PeterWeylVector& f, const SigmaTable& s, const CMat& t) {
  const GroupRule r = haar_rule(m, 2.0 * f.cutoff);
  cd v = 0.0;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const CMat& x = r.points[i];
    v += r.weights(static_cast<Eigen::Index>(i)) * f(x) * phi_kernel(f.irreps, s, x.adjoint() * t);
  }
  return v;
}

QuadratureRule algebra_rule(const LieModel& m, double cutoff, int level) {
  require_builtin(m);
  if (level < 1) throw UsageError("algebra_rule: level >= 1");
  if (m.name() == "su2") {
    const int top = static_cast<int>(std::lround(2.0 * cutoff));
    return quad::spherical_gaussian_rule(40 * level, quad::gaussian_cutoff_radius(growth_of(m, cutoff)),
                                         (top + 2) * level, (2 * top + 2) * level);
  }
  return quad::gaussian_rule(m.rank(), 40 * level);
}

GramResult hl2_gram(const LieModel& m, const std::vector<Irrep>& irreps, const std::vector<double>& scales,
                    const QuadratureRule& yrule) {
  require_builtin(m);
  double top = 0.0;
  std::vector<Eigen::Index> feat_off, block_of;
  Eigen::Index n = 0;
  for (std::size_t b = 0; b < irreps.size(); ++b) {
    feat_off.push_back(n);
    n += irreps[b].dim() * irreps[b].dim();
    top = std::max(top, irreps[b].size());
    for (int k = 0; k < irreps[b].dim() * irreps[b].dim(); ++k) block_of.push_back(static_cast<Eigen::Index>(b));
  }
  // Haar cross-moments of the matrix entries pi(x)_ic
  const GroupRule haar = haar_rule(m, 2.0 * top);
  CMat h = CMat::Zero(n, n);
  for (std::size_t q = 0; q < haar.points.size(); ++q) {
    CVec phi(n);
    for (std::size_t b = 0; b < irreps.size(); ++b) {
      const CMat p = irreps[b](haar.points[q]);
      const int d = irreps[b].dim();
      for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c) phi(feat_off[b] + i * d + c) = p(i, c);
    }
    h += haar.weights(static_cast<Eigen::Index>(q)) * phi.conjugate() * phi.transpose();
  }
  struct Entry {
    std::size_t a, b;
    int i, c, i2, c2;
    cd value;
  };
  std::vector<Entry> entries;
  GramResult out;
  for (std::size_t a = 0; a < irreps.size(); ++a)
    for (std::size_t b = 0; b < irreps.size(); ++b) {
      const int da = irreps[a].dim(), db = irreps[b].dim();
      for (int i = 0; i < da; ++i)
        for (int c = 0; c < da; ++c)
          for (int i2 = 0; i2 < db; ++i2)
            for (int c2 = 0; c2 < db; ++c2) {
              const cd v = h(feat_off[a] + i * da + c, feat_off[b] + i2 * db + c2);
              if (std::abs(v) > 1e-13) entries.push_back({a, b, i, c, i2, c2, v});
              else out.dropped = std::max(out.dropped, std::abs(v));
            }
    }
  out.gram = CMat::Zero(n, n);
  const AlgebraVec zero = AlgebraVec::Zero(m.dim());
  std::vector<CMat> pe(irreps.size());
  for (Eigen::Index q = 0; q < yrule.size(); ++q) {
    const AlgebraVec y = m.name() == "su2" ? AlgebraVec(yrule.nodes.col(q)) : m.embed_torus(yrule.nodes.col(q));
    const CMat e = m.exp_alg(zero, y).matrix;
    for (std::size_t b = 0; b < irreps.size(); ++b)
      pe[b] = scales[b] * std::sqrt(static_cast<double>(irreps[b].dim())) * irreps[b](e);
    const double w = yrule.weights(q);
    for (const auto& en : entries) {
      const int da = irreps[en.a].dim(), db = irreps[en.b].dim();
      const cd f = w * en.value;
      for (int j = 0; j < da; ++j) {
        const cd left = f * std::conj(pe[en.a](en.c, j));
        for (int j2 = 0; j2 < db; ++j2)
          out.gram(feat_off[en.a] + en.i * da + j, feat_off[en.b] + en.i2 * db + j2) += left * pe[en.b](en.c2, j2);
      }
    }
  }
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (block_of[static_cast<std::size_t>(a)] != block_of[static_cast<std::size_t>(b)])
        out.leakage = std::max(out.leakage, std::abs(out.gram(a, b)));
  return out;
}

CMat character_gram(const std::vector<Irrep>& irreps, const CMat& full) {
  const Eigen::Index k = static_cast<Eigen::Index>(irreps.size());
  Mat s = Mat::Zero(full.rows(), k);
  Eigen::Index off = 0;
  for (Eigen::Index b = 0; b < k; ++b) {
    const int d = irreps[static_cast<std::size_t>(b)].dim();
    for (int i = 0; i < d; ++i) s(off + i * d + i, b) = 1.0 / std::sqrt(static_cast<double>(d));
    off += d * d;
  }
  return s.transpose().cast<cd>() * full * s.cast<cd>();
}

CheckReport sigma_certificate(const LieModel& m, const TransformConfig& cfg) {
  require_builtin(m);
  const double cutoff = resolved_cutoff(m, cfg);
  const auto irreps = Irrep::up_to(m, cutoff);
  const SigmaTable table = SigmaTable::build(m, irreps, cfg.sigma_level);
  double worst = 0.0, full_gap = 0.0, weyl_gap = 0.0, worst_z = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  const auto weyl = m.weyl_group();
  const AlgebraVec zero = AlgebraVec::Zero(m.dim());
  const int full_level = std::min(cfg.sigma_level, m.dim() == 3 ? 24 : cfg.sigma_level);
  for (std::size_t b = 0; b < irreps.size(); ++b) {
    const auto& p = irreps[b];
    const double s = table.at(p), closed = sigma_closed_form(m, p);
    const double rel = std::abs(s - closed) / closed;
    worst = std::max(worst, rel);
    const double full = sigma_full_gaussian(m, p, full_level);
    full_gap = std::max(full_gap, std::abs(full - closed) / closed);
    const auto [mc, se] = sigma_monte_carlo(m, p, cfg.mc_samples, cfg.seed + b);
    const double z = se > 0.0 ? std::abs(mc - closed) / se : (std::abs(mc - closed) < 1e-12 ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, z);
    // sigma(pi o w) through conjugated representation matrices
    for (const auto& w : weyl) {
      const CMat n = m.weyl_lift(w).matrix;
      const auto r = quad::gaussian_rule(m.dim(), full_level);
      const double sw = r.integrate([&](const Vec& y) {
                          return p(n * m.exp_alg(zero, -y).matrix * n.inverse()).squaredNorm();
                        }) / p.dim();
      weyl_gap = std::max(weyl_gap, std::abs(sw - full) / full);
    }
    rows.push_back({{"irrep", p.label_string()}, {"sigma", s}, {"closed_form", closed}, {"full_gaussian", full},
                    {"monte_carlo", mc}, {"monte_carlo_se", se}});
  }
  auto meta = base_meta(m, cutoff);
  meta["sigma_table"] = table.to_json();
  meta["rows"] = rows;
  meta["full_gaussian_level"] = full_level;
  meta["full_gaussian_rel_gap"] = full_gap;
  meta["weyl_symmetry_defect"] = weyl_gap;
  meta["monte_carlo_samples"] = cfg.mc_samples;
  meta["monte_carlo_max_z"] = worst_z;
  meta["doubling_change"] = table.error_estimate;
  // Gaussian-sampled Monte Carlo is heavy-tailed for the large torus weights, so it only gates su2
  const bool mc_ok = m.name() != "su2" || worst_z < 5.0;
  meta["monte_carlo_gates"] = m.name() == "su2";
  const bool routes_ok = full_gap < 1e-9 && weyl_gap < 1e-10 && mc_ok && table.error_estimate < 1e-9;
  return CheckReport::make("transform.sigma", "This last integral is finite", 1e-10, routes_ok ? worst : INFINITY, meta);
}

CheckReport unitarity_certificate(const LieModel& m, const TransformConfig& cfg) {
  require_builtin(m);
  const double cutoff = resolved_cutoff(m, cfg);
  auto gram_at = [&](double cut, int level) {
    const auto irreps = Irrep::up_to(m, cut);
    const SigmaTable table = SigmaTable::build(m, irreps, cfg.sigma_level);
    std::vector<double> scales;
    for (const auto& p : irreps) scales.push_back(1.0 / std::sqrt(table.at(p)));
    return hl2_gram(m, irreps, scales, algebra_rule(m, cut, level));
  };
  const GramResult g1 = gram_at(cutoff, cfg.level);
  const GramResult g2 = gram_at(cutoff, 2 * cfg.level);
  const double step = m.name() == "su2" ? 1.0 : 2.0;
  const GramResult gt = gram_at(cutoff + step, cfg.level);
  const Eigen::Index n = g1.gram.rows();
  const double deviation = (g2.gram - CMat::Identity(n, n)).cwiseAbs().maxCoeff();
  const double doubling = (g2.gram - g1.gram).cwiseAbs().maxCoeff();
  const double tail = (gt.gram.topLeftCorner(n, n) - g1.gram).cwiseAbs().maxCoeff();
  const auto irreps = Irrep::up_to(m, cutoff);
  auto meta = base_meta(m, cutoff);
  meta["basis_size"] = n;
  meta["gram_minus_identity_max"] = deviation;
  meta["doubling_change"] = doubling;
  meta["tail_change"] = tail;
  meta["tail_cutoff"] = cutoff + step;
  meta["block_leakage"] = g2.leakage;
  meta["dropped_haar_moment"] = g2.dropped;
  meta["algebra_rule_nodes"] = algebra_rule(m, cutoff, 2 * cfg.level).size();
  meta["character_gram"] = matrix_json(character_gram(irreps, g2.gram));
  meta["gram_abs_deviation"] = matrix_json(Mat((g2.gram - CMat::Identity(n, n)).cwiseAbs()));
  const double tol = m.name() == "su2" ? 1e-4 : 1e-6;
  const bool gates = doubling < 1e-9 && tail < 1e-8 && g2.leakage < 1e-10;
  return CheckReport::make("transform.unitarity", "the following map is unitary", tol, gates ? deviation : INFINITY, meta);
}

CheckReport direct_transform_certificate(const LieModel& m, const TransformConfig& cfg) {
  require_builtin(m);
  const double cutoff = resolved_cutoff(m, cfg);
  const auto irreps = Irrep::up_to(m, cutoff);
  const SigmaTable table = SigmaTable::build(m, irreps, cfg.sigma_level);
  sampling::Rng rng(cfg.seed + 101);
  double worst = 0.0;
  int evaluations = 0;
  std::vector<PeterWeylVector> fs;
  for (std::size_t b = 0; b < irreps.size(); ++b) fs.push_back(PeterWeylVector::character(m, cutoff, b));
  for (int s = 0; s < cfg.samples; ++s) fs.push_back(PeterWeylVector::random(m, cutoff, rng));
  fs.push_back(PeterWeylVector::zero(m, cutoff));
  for (const auto& f : fs) {
    const CMat t = sampling::complex_point(m, rng, 1.0).matrix;
    const cd direct = transform_by_quadrature(m, f, table, t);
    const cd diagonal = transform_C_phi(f, table)(t);
    worst = std::max(worst, std::abs(direct - diagonal) / std::max(1.0, std::abs(diagonal)));
    ++evaluations;
  }
  auto meta = base_meta(m, cutoff);
  meta["evaluations"] = evaluations;
  meta["haar_level"] = 2.0 * cutoff;
  return CheckReport::make("transform.diagonal_action", "Define an entire function", 1e-8, worst, meta);
}

CheckReport equivariance_certificate(const LieModel& m, const TransformConfig& cfg) {
  require_builtin(m);
  const double cutoff = resolved_cutoff(m, cfg);
  const auto irreps = Irrep::up_to(m, cutoff);
  const SigmaTable table = SigmaTable::build(m, irreps, cfg.sigma_level);
  sampling::Rng rng(cfg.seed + 202);
  double worst = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    const CMat h1 = s == 0 ? m.identity().matrix : sampling::group_point(m, rng).matrix;
    const CMat h2 = s == 0 ? m.identity().matrix : sampling::group_point(m, rng).matrix;
    const auto f = PeterWeylVector::random(m, cutoff, rng);
    const CMat t = sampling::complex_point(m, rng, 1.0).matrix;
    const cd lhs = transform_by_quadrature(m, f.translated(h1, h2), table, t);
    const cd rhs = transform_C_phi(f, table)(h1.adjoint() * t * h2);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  auto meta = base_meta(m, cutoff);
  meta["samples"] = cfg.samples;
  meta["action"] = "((h1, h2) f)(x) = f(h1^{-1} x h2)";
  return CheckReport::make("transform.equivariance", "intertwines the natural G x G-actions", 1e-8, worst, meta);
}

CheckReport weyl_equivariance_certificate(const LieModel& m, const TransformConfig& cfg) {
  require_builtin(m);
  const double cutoff = resolved_cutoff(m, cfg);
  const int bound = m.name() == "su2" ? static_cast<int>(std::lround(2.0 * cutoff)) : static_cast<int>(cutoff);
  const auto ks = lattice_box(m.rank(), bound);
  const auto rule = quad::torus_rule(m.rank(), 2 * bound);
  std::vector<double> sig;
  for (const auto& k : ks) sig.push_back(sigma_torus(m, k));
  auto phi_t = [&](const CMat& t) {
    const CMat tinv = t.inverse();
    cd v = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) v += torus_character(ks[i], tinv) / std::sqrt(sig[i]);
    return v;
  };
  auto transform = [&](const std::function<cd(const CMat&)>& f, const CMat& t) {
    cd v = 0.0;
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const CMat x = m.torus_point(rule.nodes.col(q)).matrix;
      v += rule.weights(q) * f(x) * phi_t(x.adjoint() * t);
    }
    return v;
  };
  sampling::Rng rng(cfg.seed + 303);
  double worst = 0.0;
  const auto weyl = m.weyl_group();
  for (int s = 0; s < std::max(1, cfg.samples / 4); ++s) {
    std::vector<cd> a;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const Vec z = sampling::gaussian_vector(rng, 2);
      a.emplace_back(z(0), z(1));
    }
    const std::function<cd(const CMat&)> f = [&](const CMat& x) {
      cd v = 0.0;
      for (std::size_t i = 0; i < ks.size(); ++i) v += a[i] * torus_character(ks[i], x);
      return v;
    };
    const CMat t = torus_complex_point(m, sampling::in_ball(rng, m.rank(), kPi), sampling::in_ball(rng, m.rank(), 1.0));
    for (const auto& w : weyl) {
      const CMat n = m.weyl_lift(w).matrix;
      const CMat ninv = n.inverse();
      // (f o w)(x) = f(n x n^{-1})
      const std::function<cd(const CMat&)> fw = [&](const CMat& x) { return f(n * x * ninv); };
      const cd lhs = transform(fw, t);
      const cd rhs = transform(f, n * t * ninv);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
  }
  auto meta = base_meta(m, cutoff);
  meta["weyl_group_order"] = weyl.size();
  meta["torus_characters"] = ks.size();
  meta["torus_rule_points"] = rule.size();
  return CheckReport::make("transform.weyl_equivariance", "is W(G,T)-equivariant", 1e-8, worst, meta);
}

CheckReport spin_weighted_gram_certificate(const LieModel& m, const TransformConfig& cfg) {
  require_builtin(m);
  const double cutoff = resolved_cutoff(m, cfg);
  const auto irreps = Irrep::up_to(m, cutoff);
  const std::vector<double> ones(irreps.size(), 1.0);
  // eta adds at most e^{|Y|} growth; the spherical rule radius is taken one step further out
  const QuadratureRule plain = algebra_rule(m, cutoff + 0.5, cfg.level);
  QuadratureRule weighted = plain;
  for (Eigen::Index q = 0; q < weighted.size(); ++q) {
    const AlgebraVec y = m.name() == "su2" ? AlgebraVec(weighted.nodes.col(q)) : m.embed_torus(weighted.nodes.col(q));
    weighted.weights(q) *= density::eta(m, y);
  }
  const CMat ge = character_gram(irreps, hl2_gram(m, irreps, ones, plain).gram);
  const CMat gs = character_gram(irreps, hl2_gram(m, irreps, ones, weighted).gram);
  const Eigen::Index k = gs.rows();
  double off = 0.0, min_diag = INFINITY;
  bool finite = true;
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) {
      finite = finite && std::isfinite(std::abs(gs(a, b)));
      if (a == b) min_diag = std::min(min_diag, gs(a, a).real());
      else off = std::max(off, std::abs(gs(a, b)));
    }
  const double coincide = (gs - ge).cwiseAbs().maxCoeff();
  auto meta = base_meta(m, cutoff);
  meta["spin_gram_diagonal"] = matrix_json(Mat(gs.diagonal().real()));
  meta["dolbeault_gram_diagonal"] = matrix_json(Mat(ge.diagonal().real()));
  meta["max_off_diagonal"] = off;
  meta["min_diagonal"] = min_diag;
  meta["spin_minus_dolbeault_max"] = coincide;
  double err = off;
  if (m.is_abelian()) err = std::max(err, coincide);
  if (!finite || !(min_diag > 0.0)) err = INFINITY;
  return CheckReport::make("transform.spin_weighted_gram", "e^{-2\\pi|Y|^2} \\eta \\varepsilon", 1e-6, err, meta);
}

}  // namespace quantlab::transform
