#pragma once

// Dense complex matrix algebra for compact matrix Lie groups G ⊂ U(n).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "homofiber/errors.hpp"

namespace homofiber {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance used to accept a matrix as skew-Hermitian.
inline constexpr double kSkewTolerance = 1e-12;
/// Tolerance used to accept a matrix as unitary.
inline constexpr double kUnitaryTolerance = 1e-10;
/// Residual norm below which Gram–Schmidt treats a vector as dependent.
inline constexpr double kRankTolerance = 1e-10;

/// An element of a matrix Lie algebra g ⊂ u(n).
///
/// Arithmetic is closed (sums and real multiples of skew-Hermitian matrices
/// stay skew-Hermitian), so only the validating factory checks the invariant.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::size_t n) : entries_(Matrix::Zero(n, n)) {}

  /// Wraps a matrix after checking it is square and skew-Hermitian.
  static AlgebraElement from_matrix(const Matrix& m, double tol = kSkewTolerance);
  /// Wraps a square matrix without the skew-Hermitian check.
  static AlgebraElement unchecked(Matrix m);
  static AlgebraElement zero(std::size_t n) { return AlgebraElement(n); }

  const Matrix& matrix() const { return entries_; }
  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  bool is_skew_hermitian(double tol = kSkewTolerance) const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(double s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
  friend AlgebraElement operator/(AlgebraElement a, double s) { return a *= 1.0 / s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }

 private:
  explicit AlgebraElement(Matrix m) : entries_(std::move(m)) {}
  Matrix entries_;
};

/// An element of a compact matrix group, stored as a unitary matrix.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement identity(std::size_t n);
  /// Wraps a matrix after checking it is unitary.
  static GroupElement from_matrix(const Matrix& m, double tol = kUnitaryTolerance);
  static GroupElement unchecked(Matrix m);

  const Matrix& matrix() const { return entries_; }
  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  /// Group inverse (conjugate transpose).
  GroupElement inverse() const { return GroupElement(entries_.adjoint()); }
  bool is_unitary(double tol = kUnitaryTolerance) const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

 private:
  explicit GroupElement(Matrix m) : entries_(std::move(m)) {}
  Matrix entries_;
};

/// Ordered B-orthonormal basis of a subspace of g.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  /// Trusts that `basis` is already B-orthonormal; use orthonormalize() otherwise.
  Subspace(std::size_t ambient, std::vector<AlgebraElement> basis);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }
  const std::vector<AlgebraElement>& basis() const { return basis_; }
  const AlgebraElement& operator[](std::size_t i) const { return basis_[i]; }

  /// Coefficients ⟨X, b_i⟩_B.
  RealVector coordinates(const AlgebraElement& x) const;
  /// Σ c_i b_i.
  AlgebraElement combine(std::span<const double> coefficients) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<AlgebraElement> basis_;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// B(X, Y) = -scale · Re tr(XY); positive definite on u(n) for scale > 0.
double inner_B(const AlgebraElement& x, const AlgebraElement& y, double scale = 1.0);
double norm_B(const AlgebraElement& x, double scale = 1.0);

/// Matrix exponential of an algebra element (Hermitian eigendecomposition of iX).
GroupElement expm(const AlgebraElement& x);
/// Matrix exponential of an arbitrary square matrix.
Matrix expm(const Matrix& x);

/// Ad(g)X = g X g⁻¹.
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);

/// Gram–Schmidt with respect to B; drops vectors whose residual B-norm falls
/// below `rank_tol`.
Subspace orthonormalize(std::span<const AlgebraElement> vectors, double rank_tol = kRankTolerance);
Subspace orthonormalize(std::size_t ambient, std::span<const AlgebraElement> vectors,
                        double rank_tol = kRankTolerance);

AlgebraElement project(const Subspace& s, const AlgebraElement& x);
/// ‖X − project(S, X)‖_B.
double residual_norm(const Subspace& s, const AlgebraElement& x);

/// B-orthogonal complement of `sub` inside `whole`.
Subspace complement(const Subspace& whole, const Subspace& sub, double rank_tol = kRankTolerance);
/// Concatenation of mutually B-orthogonal subspaces.
Subspace direct_sum(std::span<const Subspace> parts);

double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace homofiber
