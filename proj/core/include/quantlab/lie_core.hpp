#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "quantlab/types.hpp"

namespace quantlab {

/// Coordinates of an element of the Lie algebra in the orthonormal basis {e_k}.
using AlgebraVec = Vec;

/// A real root as a linear functional on t, given by its coefficients in the
/// orthonormal basis of t.
struct RealRoot {
  Vec covector;

  double operator()(const Vec& torus_coords) const { return covector.dot(torus_coords); }
};

struct WeylElement {
  Mat matrix;        // acts on t coordinates
  std::string word;  // generator word, "e" for the identity

  int determinant() const;
};

/// A point of G (or of G^C) as a matrix in the defining representation.
struct GroupPoint {
  CMat matrix;
};

/// Y = Ad_h (embedded torus_part).
struct TorusConjugation {
  GroupPoint h;
  Vec torus_part;
};

/// Desk-scale compact Lie group: orthonormal basis in a faithful matrix
/// representation, structure constants, maximal torus, real roots and Weyl group.
///
/// Built-in models: "u1", "t2", "su2". The su(2) basis is e_j = -(i/2) sigma_j with
/// <X,Y> = -2 tr(XY), so [e1,e2] = e3 cyclically and t = span{e3}.
class LieModel {
 public:
  static LieModel u1();
  static LieModel t2();
  static LieModel su2();
  static LieModel by_name(const std::string& name);
  static LieModel from_file(const std::filesystem::path& path);
  static std::vector<std::string> builtin_names();

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(torus_indices_.size()); }
  int defining_rep_dim() const { return rep_dim_; }
  bool is_abelian() const { return roots_.empty(); }
  bool has_torus_lattice() const { return lattice_.size() > 0; }

  double structure_constant(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  const Mat& inner() const { return inner_; }
  const std::vector<int>& torus_indices() const { return torus_indices_; }
  const std::vector<RealRoot>& roots() const { return roots_; }
  std::vector<RealRoot> positive_roots() const;
  const std::vector<CMat>& basis_matrices() const { return basis_; }

  /// Diagonal lattice data: the torus element exp(sum_i theta_i e_{t_i}) has
  /// diagonal entries exp(i (L theta)_j) for j < rank. Empty for file models.
  const Mat& lattice() const { return lattice_; }

  /// Human-readable statement of the fixed normalization, quoted in reports.
  std::string normalization() const;

  // algebra
  double inner(const AlgebraVec& x, const AlgebraVec& y) const;
  double norm2(const AlgebraVec& y) const { return inner(y, y); }
  AlgebraVec bracket(const AlgebraVec& x, const AlgebraVec& y) const;
  Mat ad(const AlgebraVec& y) const;
  AlgebraVec basis_vector(int k) const;
  CMat to_matrix(const AlgebraVec& y) const;
  /// Coordinates of a matrix in span{e_k}; the second member is the residual
  /// of the projection (zero iff the matrix lies in the algebra).
  std::pair<AlgebraVec, double> from_matrix(const CMat& m) const;

  // torus
  Vec torus_coords(const AlgebraVec& y) const;
  AlgebraVec embed_torus(const Vec& torus_coords) const;
  double off_torus_norm(const AlgebraVec& y) const;
  TorusConjugation conjugate_to_torus(const AlgebraVec& y) const;

  // group
  GroupPoint identity() const;
  GroupPoint exp_alg(const AlgebraVec& y, const AlgebraVec& complex_part) const;
  GroupPoint exp_alg(const AlgebraVec& y) const { return exp_alg(y, AlgebraVec::Zero(dim_)); }
  GroupPoint torus_point(const Vec& angles) const;  // diag(exp(i angles_j)), see lattice()
  double unitarity_residual(const GroupPoint& g) const;
  Mat adjoint_matrix(const GroupPoint& g) const;
  AlgebraVec adjoint_action(const GroupPoint& g, const AlgebraVec& y) const;

  // Weyl group
  std::vector<WeylElement> weyl_group() const;
  /// A representative n_w of w in the normalizer of T.
  GroupPoint weyl_lift(const WeylElement& w) const;

  // structural checks
  double jacobi_residual() const;
  double antisymmetry_residual() const;
  double ad_invariance_residual() const;
  double torus_commutation_residual() const;

 private:
  void finalize();

  std::string name_;
  int dim_ = 0;
  int rep_dim_ = 0;
  std::vector<CMat> basis_;
  std::vector<double> c_;
  Mat inner_;
  std::vector<int> torus_indices_;
  std::vector<RealRoot> roots_;
  Mat lattice_;
  double trace_scale_ = 1.0;  // <X,Y> = -trace_scale Re tr(XY)
  Mat projector_;             // least-squares map from vec(M) to coordinates
  std::vector<CMat> weyl_lifts_;
  std::vector<std::string> weyl_lift_words_;
};

}  // namespace quantlab
