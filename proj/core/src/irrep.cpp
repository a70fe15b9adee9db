#include "quantlab/irrep.hpp"

#include <cmath>
#include <sstream>

namespace quantlab {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

cd int_power(cd z, int k) {
  if (k < 0) return 1.0 / int_power(z, -k);
  cd out = 1.0;
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

// Coefficients of (p x + q y)^a (r x + s y)^b in x^c y^{n-c}, n = a + b.
CVec product_coefficients(cd p, cd q, cd r, cd s, int a, int b) {
  const int n = a + b;
  CVec out = CVec::Zero(n + 1);
  for (int u = 0; u <= a; ++u) {
    const cd pu = int_power(p, u) * int_power(q, a - u) * (factorial(a) / (factorial(u) * factorial(a - u)));
    if (pu == 0.0) continue;
    for (int v = 0; v <= b; ++v) {
      const cd rv = int_power(r, v) * int_power(s, b - v) * (factorial(b) / (factorial(v) * factorial(b - v)));
      out(u + v) += pu * rv;
    }
  }
  return out;
}

}  // namespace

Irrep Irrep::make(const LieModel& m, std::vector<int> label) {
  Irrep r;
  r.model_ = m.name();
  r.label_ = std::move(label);
  if (m.name() == "u1") {
    if (r.label_.size() != 1) throw UsageError("u1 irrep label is a single integer");
    r.kind_ = Kind::U1;
    r.dim_ = 1;
    r.gens_ = {CMat::Constant(1, 1, cd(0.0, r.label_[0]))};
  } else if (m.name() == "t2") {
    if (r.label_.size() != 2) throw UsageError("t2 irrep label is a pair of integers");
    r.kind_ = Kind::T2;
    r.dim_ = 1;
    r.gens_ = {CMat::Constant(1, 1, cd(0.0, r.label_[0])), CMat::Constant(1, 1, cd(0.0, r.label_[1]))};
  } else if (m.name() == "su2") {
    if (r.label_.size() != 1 || r.label_[0] < 0) throw UsageError("su2 irrep label is 2j >= 0");
    r.kind_ = Kind::SU2;
    const int n = r.label_[0];
    r.dim_ = n + 1;
    for (int k = 0; k < 3; ++k) {
      // derivative of P(g^T v) at g = 1 along X: grad P . (X^T v)
      const CMat& x = m.basis_matrices()[k];
      CMat g = CMat::Zero(n + 1, n + 1);
      for (int a = 0; a <= n; ++a) {
        const int b = n - a;
        const double norm_a = std::sqrt(factorial(a) * factorial(b));
        auto add = [&](int c, cd coeff) {
          if (c < 0 || c > n) return;
          g(c, a) += coeff * std::sqrt(factorial(c) * factorial(n - c)) / norm_a;
        };
        add(a, double(a) * x(0, 0) + double(b) * x(1, 1));
        add(a - 1, double(a) * x(1, 0));
        add(a + 1, double(b) * x(0, 1));
      }
      r.gens_.push_back(g);
    }
  } else {
    throw UsageError("irreps are available for the built-in models only");
  }
  return r;
}

std::vector<Irrep> Irrep::up_to(const LieModel& m, double cutoff) {
  if (cutoff < 0) throw UsageError("cutoff must be non-negative");
  std::vector<Irrep> out;
  if (m.name() == "su2") {
    const int top = static_cast<int>(std::floor(2.0 * cutoff + 1e-9));
    for (int tj = 0; tj <= top; ++tj) out.push_back(make(m, {tj}));
  } else if (m.name() == "u1") {
    const int n = static_cast<int>(std::floor(cutoff + 1e-9));
    for (int k = -n; k <= n; ++k) out.push_back(make(m, {k}));
  } else if (m.name() == "t2") {
    const int n = static_cast<int>(std::floor(cutoff + 1e-9));
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b) out.push_back(make(m, {a, b}));
  } else {
    throw UsageError("irreps are available for the built-in models only");
  }
  return out;
}

std::string Irrep::label_string() const {
  std::ostringstream ss;
  if (kind_ == Kind::SU2) {
    if (label_[0] % 2 == 0) ss << "j=" << label_[0] / 2;
    else ss << "j=" << label_[0] << "/2";
    return ss.str();
  }
  ss << "n=";
  for (std::size_t i = 0; i < label_.size(); ++i) ss << (i ? "," : "") << label_[i];
  return ss.str();
}

double Irrep::size() const {
  if (kind_ == Kind::SU2) return label_[0] / 2.0;
  int s = 0;
  for (int k : label_) s = std::max(s, std::abs(k));
  return s;
}

CMat Irrep::operator()(const CMat& g) const {
  switch (kind_) {
    case Kind::U1:
      return CMat::Constant(1, 1, int_power(g(0, 0), label_[0]));
    case Kind::T2:
      return CMat::Constant(1, 1, int_power(g(0, 0), label_[0]) * int_power(g(1, 1), label_[1]));
    case Kind::SU2: {
      const int n = label_[0];
      CMat out(n + 1, n + 1);
      for (int a = 0; a <= n; ++a) {
        const int b = n - a;
        // g^T v = (g11 x + g21 y, g12 x + g22 y)
        const CVec c = product_coefficients(g(0, 0), g(1, 0), g(0, 1), g(1, 1), a, b);
        const double norm_a = std::sqrt(factorial(a) * factorial(b));
        for (int k = 0; k <= n; ++k) out(k, a) = c(k) * std::sqrt(factorial(k) * factorial(n - k)) / norm_a;
      }
      return out;
    }
  }
  return {};
}

CMat Irrep::generator_of(const AlgebraVec& y) const {
  CMat out = CMat::Zero(dim_, dim_);
  for (std::size_t k = 0; k < gens_.size(); ++k) out += y(static_cast<Eigen::Index>(k)) * gens_[k];
  return out;
}

std::vector<int> Irrep::torus_exponents(int basis_index) const {
  if (kind_ == Kind::SU2) return {2 * basis_index - label_[0]};
  return label_;
}

}  // namespace quantlab
