#include "quantlab/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace quantlab {

namespace {

const cd kI(0.0, 1.0);

CMat pauli(int k) {
  CMat s(2, 2);
  switch (k) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, -kI, kI, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

Eigen::Map<const Eigen::VectorXcd> flat(const CMat& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

}  // namespace

int WeylElement::determinant() const { return matrix.determinant() > 0.0 ? 1 : -1; }

LieModel LieModel::u1() {
  LieModel m;
  m.name_ = "u1";
  m.dim_ = 1;
  m.rep_dim_ = 1;
  m.basis_ = {CMat::Constant(1, 1, kI)};
  m.trace_scale_ = 1.0;
  m.torus_indices_ = {0};
  m.lattice_ = Mat::Identity(1, 1);
  m.finalize();
  return m;
}

LieModel LieModel::t2() {
  LieModel m;
  m.name_ = "t2";
  m.dim_ = 2;
  m.rep_dim_ = 2;
  for (int k = 0; k < 2; ++k) {
    CMat e = CMat::Zero(2, 2);
    e(k, k) = kI;
    m.basis_.push_back(e);
  }
  m.trace_scale_ = 1.0;
  m.torus_indices_ = {0, 1};
  m.lattice_ = Mat::Identity(2, 2);
  m.finalize();
  return m;
}

LieModel LieModel::su2() {
  LieModel m;
  m.name_ = "su2";
  m.dim_ = 3;
  m.rep_dim_ = 2;
  for (int k = 0; k < 3; ++k) m.basis_.push_back(-0.5 * kI * pauli(k));
  m.trace_scale_ = 2.0;
  m.torus_indices_ = {2};
  // exp(theta e3) = diag(exp(-i theta/2), exp(i theta/2))
  m.lattice_ = Mat::Constant(1, 1, -0.5);
  m.roots_ = {RealRoot{Vec::Constant(1, 1.0)}, RealRoot{Vec::Constant(1, -1.0)}};
  // exp(pi e1) conjugates e3 to -e3
  m.weyl_lifts_ = {(kPi * m.basis_[0]).exp()};
  m.weyl_lift_words_ = {"s1"};
  m.finalize();
  return m;
}

std::vector<std::string> LieModel::builtin_names() { return {"u1", "t2", "su2"}; }

LieModel LieModel::by_name(const std::string& name) {
  if (name == "u1") return u1();
  if (name == "t2") return t2();
  if (name == "su2") return su2();
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown model '" + name + "' (built-in models: " + known + ")");
}

// File format, one directive per line, '#' starts a comment:
//   name <id>
//   dim <n>
//   bracket <i> <j> <k> <value>     [e_i, e_j] has coefficient value on e_k (1-based)
//   torus <i> [<j> ...]             basis indices spanning t (1-based)
//   root <a_1> ... <a_r>            covector on t; the negative is added automatically
// The basis is taken orthonormal and the adjoint representation serves as the
// defining representation.
LieModel LieModel::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open model file " + path.string());
  LieModel m;
  m.name_ = path.stem().string();
  std::map<std::tuple<int, int, int>, double> brackets;
  std::vector<Vec> root_list;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    auto fail = [&](const std::string& what) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": " + what);
    };
    if (key == "name") {
      ss >> m.name_;
    } else if (key == "dim") {
      if (!(ss >> m.dim_) || m.dim_ <= 0) fail("dim must be a positive integer");
    } else if (key == "bracket") {
      int i, j, k;
      double v;
      if (!(ss >> i >> j >> k >> v)) fail("expected: bracket i j k value");
      brackets[{i - 1, j - 1, k - 1}] += v;
    } else if (key == "torus") {
      int i;
      while (ss >> i) m.torus_indices_.push_back(i - 1);
    } else if (key == "root") {
      std::vector<double> cs;
      double v;
      while (ss >> v) cs.push_back(v);
      root_list.push_back(Eigen::Map<Vec>(cs.data(), static_cast<Eigen::Index>(cs.size())));
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (m.dim_ <= 0) throw UsageError(path.string() + ": missing dim");
  if (m.torus_indices_.empty()) throw UsageError(path.string() + ": missing torus");
  const int n = m.dim_;
  m.c_.assign(static_cast<std::size_t>(n * n * n), 0.0);
  for (const auto& [ijk, v] : brackets) {
    const auto [i, j, k] = ijk;
    if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
      throw UsageError(path.string() + ": bracket index out of range");
    m.c_[(i * n + j) * n + k] = v;
  }
  // antisymmetric completion when only i<j is listed
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double& a = m.c_[(i * n + j) * n + k];
        const double b = m.c_[(j * n + i) * n + k];
        if (a == 0.0 && b != 0.0) a = -b;
      }
  for (const auto& r : root_list) {
    if (r.size() != m.rank()) throw UsageError(path.string() + ": root length must equal rank");
    m.roots_.push_back(RealRoot{r});
    m.roots_.push_back(RealRoot{-r});
  }
  m.rep_dim_ = n;
  for (int k = 0; k < n; ++k) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(j, i) = m.c_[(k * n + i) * n + j];
    m.basis_.push_back(a.cast<cd>());
  }
  m.trace_scale_ = 0.0;
  m.finalize();
  return m;
}

void LieModel::finalize() {
  const int n = dim_;
  // projector from vec(M) (real and imaginary parts stacked) to coordinates
  Mat b(2 * rep_dim_ * rep_dim_, n);
  for (int k = 0; k < n; ++k) {
    const auto v = flat(basis_[k]);
    b.col(k) << v.real(), v.imag();
  }
  projector_ = b.completeOrthogonalDecomposition().pseudoInverse();

  if (c_.empty()) {
    c_.assign(static_cast<std::size_t>(n * n * n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const CMat br = basis_[i] * basis_[j] - basis_[j] * basis_[i];
        const auto [coords, resid] = from_matrix(br);
        if (resid > 1e-12) throw ModelError(name_ + ": basis is not closed under the bracket");
        for (int k = 0; k < n; ++k) c_[(i * n + j) * n + k] = coords(k);
      }
  }
  inner_ = Mat::Identity(n, n);
  if (trace_scale_ > 0.0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inner_(i, j) = -trace_scale_ * (basis_[i] * basis_[j]).trace().real();
    if ((inner_ - Mat::Identity(n, n)).norm() > 1e-12)
      throw ModelError(name_ + ": basis is not orthonormal for the trace form");
  }
  if (jacobi_residual() > 1e-12) throw ModelError(name_ + ": Jacobi identity fails");
  if (antisymmetry_residual() > 1e-12) throw ModelError(name_ + ": structure constants not antisymmetric");
  if (ad_invariance_residual() > 1e-12) throw ModelError(name_ + ": inner product not ad-invariant");
  if (torus_commutation_residual() > 1e-12) throw ModelError(name_ + ": torus basis does not commute");
}

std::vector<RealRoot> LieModel::positive_roots() const {
  // positive: first non-zero coefficient is positive
  std::vector<RealRoot> out;
  for (const auto& r : roots_) {
    for (Eigen::Index i = 0; i < r.covector.size(); ++i) {
      if (std::abs(r.covector(i)) > 1e-14) {
        if (r.covector(i) > 0) out.push_back(r);
        break;
      }
    }
  }
  return out;
}

std::string LieModel::normalization() const {
  if (name_ == "su2")
    return "su2: e_j = -(i/2) sigma_j, <X,Y> = -2 tr(XY), alpha(y e3) = y; probability Haar on G and T; "
           "dY Lebesgue in orthonormal coordinates";
  if (name_ == "u1") return "u1: e_1 = i, <X,Y> = -tr(XY); probability Haar; dY Lebesgue";
  if (name_ == "t2") return "t2: e_k = i E_kk, <X,Y> = -tr(XY); probability Haar; dY Lebesgue";
  return name_ + ": orthonormal basis from file, adjoint defining representation";
}

double LieModel::inner(const AlgebraVec& x, const AlgebraVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw UsageError("algebra vector has wrong dimension");
  return x.dot(inner_ * y);
}

AlgebraVec LieModel::bracket(const AlgebraVec& x, const AlgebraVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw UsageError("bracket: dimension mismatch");
  AlgebraVec out = AlgebraVec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double xy = x(i) * y(j);
      if (xy == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out(k) += xy * structure_constant(i, j, k);
    }
  }
  return out;
}

Mat LieModel::ad(const AlgebraVec& y) const {
  if (y.size() != dim_) throw UsageError("ad: dimension mismatch");
  Mat a = Mat::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j) a.col(j) = bracket(y, basis_vector(j));
  return a;
}

AlgebraVec LieModel::basis_vector(int k) const {
  AlgebraVec e = AlgebraVec::Zero(dim_);
  e(k) = 1.0;
  return e;
}

CMat LieModel::to_matrix(const AlgebraVec& y) const {
  if (y.size() != dim_) throw UsageError("to_matrix: dimension mismatch");
  CMat m = CMat::Zero(rep_dim_, rep_dim_);
  for (int k = 0; k < dim_; ++k) m += y(k) * basis_[k];
  return m;
}

std::pair<AlgebraVec, double> LieModel::from_matrix(const CMat& m) const {
  const auto v = flat(m);
  Vec stacked(2 * v.size());
  stacked << v.real(), v.imag();
  AlgebraVec coords = projector_ * stacked;
  const double resid = (to_matrix(coords) - m).norm();
  return {coords, resid};
}

Vec LieModel::torus_coords(const AlgebraVec& y) const {
  Vec t(rank());
  for (int i = 0; i < rank(); ++i) t(i) = y(torus_indices_[i]);
  return t;
}

AlgebraVec LieModel::embed_torus(const Vec& torus_coords) const {
  if (torus_coords.size() != rank()) throw UsageError("embed_torus: expected rank-length vector");
  AlgebraVec y = AlgebraVec::Zero(dim_);
  for (int i = 0; i < rank(); ++i) y(torus_indices_[i]) = torus_coords(i);
  return y;
}

double LieModel::off_torus_norm(const AlgebraVec& y) const {
  return (y - embed_torus(torus_coords(y))).norm();
}

TorusConjugation LieModel::conjugate_to_torus(const AlgebraVec& y) const {
  if (is_abelian() || off_torus_norm(y) == 0.0) return {identity(), torus_coords(y)};
  if (name_ == "su2") {
    // Ad on su(2) is the SO(3) rotation of coordinates; rotate e3 onto y/|y|.
    const double r = y.norm();
    const Eigen::Vector3d n = y / r;
    const Eigen::Vector3d e3(0, 0, 1);
    Eigen::Vector3d axis = e3.cross(n);
    const double s = axis.norm();
    const double angle = std::atan2(s, n.z());
    if (s < 1e-15) axis = Eigen::Vector3d(1, 0, 0);
    else axis /= s;
    return {exp_alg(angle * Vec(axis)), Vec::Constant(1, r)};
  }
  throw UsageError(name_ + ": torus conjugation is only available for built-in models");
}

GroupPoint LieModel::identity() const { return {CMat::Identity(rep_dim_, rep_dim_)}; }

GroupPoint LieModel::exp_alg(const AlgebraVec& y, const AlgebraVec& complex_part) const {
  if (y.size() != dim_ || complex_part.size() != dim_) throw UsageError("exp_alg: dimension mismatch");
  // x e^{iY} with x = exp(y)
  const CMat a = to_matrix(y).exp();
  if (complex_part.isZero(0.0)) return {a};
  const CMat b = (kI * to_matrix(complex_part)).exp();
  return {a * b};
}

GroupPoint LieModel::torus_point(const Vec& angles) const {
  if (!has_torus_lattice()) throw UsageError(name_ + ": model has no torus lattice data");
  const Vec theta = lattice_.fullPivLu().solve(angles);
  return exp_alg(embed_torus(theta));
}

double LieModel::unitarity_residual(const GroupPoint& g) const {
  const auto& m = g.matrix;
  return (m.adjoint() * m - CMat::Identity(m.rows(), m.cols())).norm();
}

Mat LieModel::adjoint_matrix(const GroupPoint& g) const {
  if (unitarity_residual(g) > 1e-8) throw UsageError("adjoint_action: group point is not unitary");
  Mat out(dim_, dim_);
  const CMat ginv = g.matrix.adjoint();
  for (int k = 0; k < dim_; ++k) out.col(k) = from_matrix(g.matrix * basis_[k] * ginv).first;
  return out;
}

AlgebraVec LieModel::adjoint_action(const GroupPoint& g, const AlgebraVec& y) const {
  if (y.size() != dim_) throw UsageError("adjoint_action: dimension mismatch");
  if (unitarity_residual(g) > 1e-8) throw UsageError("adjoint_action: group point is not unitary");
  return from_matrix(g.matrix * to_matrix(y) * g.matrix.adjoint()).first;
}

std::vector<WeylElement> LieModel::weyl_group() const {
  const int r = rank();
  std::vector<WeylElement> group = {WeylElement{Mat::Identity(r, r), "e"}};
  std::vector<WeylElement> gens;
  int idx = 0;
  for (const auto& a : positive_roots()) {
    const Vec& v = a.covector;
    gens.push_back({Mat::Identity(r, r) - 2.0 * v * v.transpose() / v.squaredNorm(),
                    "s" + std::to_string(++idx)});
  }
  auto contains = [&](const Mat& m) {
    return std::any_of(group.begin(), group.end(),
                       [&](const WeylElement& w) { return (w.matrix - m).norm() < 1e-10; });
  };
  constexpr int kMaxWordLength = 16;
  std::size_t frontier_begin = 0;
  for (int len = 0; len < kMaxWordLength; ++len) {
    const std::size_t frontier_end = group.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& s : gens) {
        const Mat m = s.matrix * group[i].matrix;
        if (!contains(m)) {
          const std::string w = group[i].word == "e" ? s.word : s.word + "." + group[i].word;
          group.push_back({m, w});
        }
      }
    }
    if (group.size() == frontier_end) return group;
    frontier_begin = frontier_end;
  }
  throw ModelError(name_ + ": Weyl group did not close within the word-length bound");
}

GroupPoint LieModel::weyl_lift(const WeylElement& w) const {
  CMat out = CMat::Identity(rep_dim_, rep_dim_);
  if (w.word == "e") return {out};
  std::stringstream ss(w.word);
  std::string tok;
  while (std::getline(ss, tok, '.')) {
    const auto it = std::find(weyl_lift_words_.begin(), weyl_lift_words_.end(), tok);
    if (it == weyl_lift_words_.end()) throw UsageError(name_ + ": no normalizer lift for " + tok);
    out = out * weyl_lifts_[static_cast<std::size_t>(it - weyl_lift_words_.begin())];
  }
  return {out};
}

double LieModel::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const AlgebraVec a = basis_vector(i), b = basis_vector(j), c = basis_vector(k);
        const AlgebraVec s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        worst = std::max(worst, s.cwiseAbs().maxCoeff());
      }
  return worst;
}

double LieModel::antisymmetry_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        worst = std::max(worst, std::abs(structure_constant(i, j, k) + structure_constant(j, i, k)));
  return worst;
}

double LieModel::ad_invariance_residual() const {
  double worst = 0.0;
  for (int z = 0; z < dim_; ++z) {
    const Mat a = ad(basis_vector(z));
    worst = std::max(worst, (a.transpose() * inner_ + inner_ * a).cwiseAbs().maxCoeff());
  }
  return worst;
}

double LieModel::torus_commutation_residual() const {
  double worst = 0.0;
  for (int a : torus_indices_)
    for (int b : torus_indices_)
      worst = std::max(worst, bracket(basis_vector(a), basis_vector(b)).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace quantlab
