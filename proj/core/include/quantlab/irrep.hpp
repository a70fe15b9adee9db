#pragma once

#include <string>
#include <vector>

#include "quantlab/lie_core.hpp"

namespace quantlab {

/// Irreducible representation of a built-in model, extended holomorphically to
/// G^C through its defining matrix.
///
/// u1: label {n}, pi(g) = g^n. t2: label {k1, k2}, pi(g) = g11^k1 g22^k2.
/// su2: label {2j}, pi_j = Sym^{2j} C^2 on the normalized monomials
/// x^a y^{2j-a} / sqrt(a! (2j-a)!) with (pi(g) P)(v) = P(g^T v).
class Irrep {
 public:
  static Irrep make(const LieModel& m, std::vector<int> label);
  /// All irreps up to the cutoff: |n| <= N for u1, |k_i| <= N for t2, j <= cutoff for su2.
  static std::vector<Irrep> up_to(const LieModel& m, double cutoff);

  const std::string& model_name() const { return model_; }
  const std::vector<int>& label() const { return label_; }
  std::string label_string() const;
  int dim() const { return dim_; }
  /// Spin j for su2, |n| or max |k_i| for tori.
  double size() const;

  CMat operator()(const CMat& g) const;
  cd character(const CMat& g) const { return (*this)(g).trace(); }
  /// pi-bar(e_k).
  const CMat& generator(int k) const { return gens_[static_cast<std::size_t>(k)]; }
  CMat generator_of(const AlgebraVec& y) const;

  /// Weight of the torus character on the diagonal: pi(diag) acts by prod t_jj^{w_j}.
  /// For su2 the a-th basis vector has t11^{a-(2j-a)}.
  std::vector<int> torus_exponents(int basis_index) const;

 private:
  enum class Kind { U1, T2, SU2 };
  Kind kind_ = Kind::U1;
  std::string model_;
  std::vector<int> label_;
  int dim_ = 1;
  std::vector<CMat> gens_;
};

}  // namespace quantlab
