#include "homofiber/lie_core.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace homofiber {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": ambient sizes differ (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

AlgebraElement AlgebraElement::from_matrix(const Matrix& m, double tol) {
  require_square(m, "AlgebraElement");
  if (!m.allFinite()) throw DomainError("AlgebraElement: non-finite entries");
  const double skew = (m + m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol) {
    throw DomainError("AlgebraElement: matrix is not skew-Hermitian (max |X + X*| = " +
                      std::to_string(skew) + ")");
  }
  return AlgebraElement(m);
}

AlgebraElement AlgebraElement::unchecked(Matrix m) {
  require_square(m, "AlgebraElement");
  return AlgebraElement(std::move(m));
}

bool AlgebraElement::is_skew_hermitian(double tol) const {
  if (entries_.size() == 0) return false;
  return (entries_ + entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_size(size(), other.size(), "add");
  entries_ += other.entries_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_size(size(), other.size(), "subtract");
  entries_ -= other.entries_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
  entries_ *= s;
  return *this;
}

GroupElement GroupElement::identity(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return GroupElement(Matrix::Identity(dim, dim));
}

GroupElement GroupElement::from_matrix(const Matrix& m, double tol) {
  require_square(m, "GroupElement");
  GroupElement g(m);
  if (!g.is_unitary(tol)) throw DomainError("GroupElement: matrix is not unitary");
  return g;
}

GroupElement GroupElement::unchecked(Matrix m) {
  require_square(m, "GroupElement");
  return GroupElement(std::move(m));
}

bool GroupElement::is_unitary(double tol) const {
  const auto n = entries_.rows();
  if (n == 0) return false;
  return (entries_ * entries_.adjoint() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require_same_size(a.size(), b.size(), "group product");
  return GroupElement(a.entries_ * b.entries_);
}

Subspace::Subspace(std::size_t ambient, std::vector<AlgebraElement> basis)
    : ambient_(ambient), basis_(std::move(basis)) {
  for (const auto& b : basis_) require_same_size(ambient_, b.size(), "Subspace");
}

RealVector Subspace::coordinates(const AlgebraElement& x) const {
  RealVector c(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) c(static_cast<Eigen::Index>(i)) = inner_B(x, basis_[i]);
  return c;
}

AlgebraElement Subspace::combine(std::span<const double> coefficients) const {
  if (coefficients.size() != dim()) {
    throw DimensionError("Subspace::combine: expected " + std::to_string(dim()) +
                         " coefficients, got " + std::to_string(coefficients.size()));
  }
  AlgebraElement out = AlgebraElement::zero(ambient_);
  for (std::size_t i = 0; i < dim(); ++i) out += coefficients[i] * basis_[i];
  return out;
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_size(x.size(), y.size(), "bracket");
  const Matrix& a = x.matrix();
  const Matrix& b = y.matrix();
  return AlgebraElement::unchecked(a * b - b * a);
}

double inner_B(const AlgebraElement& x, const AlgebraElement& y, double scale) {
  require_same_size(x.size(), y.size(), "inner_B");
  // Re tr(XY) without forming the product.
  const double re_trace = (x.matrix().transpose().cwiseProduct(y.matrix())).sum().real();
  return -scale * re_trace;
}

double norm_B(const AlgebraElement& x, double scale) {
  return std::sqrt(std::max(inner_B(x, x, scale), 0.0));
}

GroupElement expm(const AlgebraElement& x) {
  const Matrix& m = x.matrix();
  if (!m.allFinite()) throw DomainError("expm: non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!x.is_skew_hermitian(kSkewTolerance * scale)) return GroupElement::unchecked(expm(m));

  // X = -iH with H = iX Hermitian, so exp(X) = V diag(e^{-iμ}) V*.
  Matrix h = Complex(0.0, 1.0) * m;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXd& mu = eig.eigenvalues();
  Eigen::VectorXcd phases(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) phases(i) = std::polar(1.0, -mu(i));
  const Matrix& v = eig.eigenvectors();
  return GroupElement::unchecked(v * phases.asDiagonal() * v.adjoint());
}

Matrix expm(const Matrix& x) {
  require_square(x, "expm");
  if (!x.allFinite()) throw DomainError("expm: non-finite entries");
  return x.exp();
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  require_same_size(g.size(), x.size(), "adjoint");
  return AlgebraElement::unchecked(g.matrix() * x.matrix() * g.matrix().adjoint());
}

Subspace orthonormalize(std::span<const AlgebraElement> vectors, double rank_tol) {
  const std::size_t ambient = vectors.empty() ? 0 : vectors.front().size();
  return orthonormalize(ambient, vectors, rank_tol);
}

Subspace orthonormalize(std::size_t ambient, std::span<const AlgebraElement> vectors,
                        double rank_tol) {
  std::vector<AlgebraElement> basis;
  for (const auto& v : vectors) {
    require_same_size(ambient, v.size(), "orthonormalize");
    AlgebraElement r = v;
    // Two modified Gram–Schmidt passes keep the output orthonormal to roundoff.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) r -= inner_B(r, b) * b;
    }
    const double norm = norm_B(r);
    if (norm < rank_tol) continue;
    basis.push_back(r / norm);
  }
  return Subspace(ambient, std::move(basis));
}

AlgebraElement project(const Subspace& s, const AlgebraElement& x) {
  AlgebraElement out = AlgebraElement::zero(x.size());
  if (s.empty()) return out;
  require_same_size(s.ambient(), x.size(), "project");
  for (const auto& b : s.basis()) out += inner_B(x, b) * b;
  return out;
}

double residual_norm(const Subspace& s, const AlgebraElement& x) {
  return norm_B(x - project(s, x));
}

Subspace complement(const Subspace& whole, const Subspace& sub, double rank_tol) {
  std::vector<AlgebraElement> residuals;
  residuals.reserve(whole.dim());
  for (const auto& b : whole.basis()) residuals.push_back(b - project(sub, b));
  return orthonormalize(whole.ambient(), residuals, rank_tol);
}

Subspace direct_sum(std::span<const Subspace> parts) {
  std::size_t ambient = 0;
  std::vector<AlgebraElement> basis;
  for (const auto& p : parts) {
    if (p.ambient() == 0) continue;
    if (ambient == 0) ambient = p.ambient();
    require_same_size(ambient, p.ambient(), "direct_sum");
    basis.insert(basis.end(), p.basis().begin(), p.basis().end());
  }
  return Subspace(ambient, std::move(basis));
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

}  // namespace homofiber
