#pragma once

// Diagonal invariant metric ⟨,⟩ = Σ λᵢ B|mᵢ, the field endomorphism
// I₀ = ad(W)|m_a + (1/λ) ad(W)|m_b with λ = λ_b/λ_a, and F(X, Y) = ⟨X, I₀Y⟩.
//
// The G-invariant extension of I₀ is never materialized: every quantity is
// pulled back to the base point through a group representative.

#include <optional>
#include <vector>

#include "homofiber/homogeneous_model.hpp"
#include "homofiber/lie_core.hpp"

namespace homofiber {

class DiagonalMetric {
 public:
  DiagonalMetric() = default;
  /// Throws DomainError unless every weight is finite and positive.
  explicit DiagonalMetric(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const;
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

/// A space together with the data of a charged-particle problem on it.
class ChargedSystem {
 public:
  /// Validates W ∈ z(h) and [m_a, m_b] ⊆ m_a. When m_b is absent, λ has no
  /// λ_b to come from and `empty_b_ratio` is used instead.
  ChargedSystem(ReductiveSplit split, DiagonalMetric metric, ModulePair pair, AlgebraElement w,
                double charge, double tol = kUserTolerance, double empty_b_ratio = 1.0);

  const ReductiveSplit& split() const { return split_; }
  const DiagonalMetric& metric() const { return metric_; }
  const ModulePair& pair() const { return pair_; }
  const AlgebraElement& w() const { return w_; }
  double charge() const { return charge_; }
  double tolerance() const { return tol_; }

  const Subspace& ma() const { return split_.module(pair_.a); }
  const Subspace& mb() const { return mb_; }
  double lambda_a() const { return metric_.weight(pair_.a); }
  /// λ_b; for an empty m_b this is λ_a times the configured ratio.
  double lambda_b() const { return lambda_ * lambda_a(); }
  /// λ = λ_b / λ_a.
  double lambda() const { return lambda_; }

  /// Same space and field with a different charge constant.
  ChargedSystem with_charge(double charge) const;

 private:
  ReductiveSplit split_;
  DiagonalMetric metric_;
  ModulePair pair_;
  AlgebraElement w_;
  double charge_ = 0.0;
  double tol_ = kUserTolerance;
  double lambda_ = 1.0;
  Subspace mb_;
};

/// Σ λᵢ B(P_i X, P_i Y); throws DomainError if X or Y has an h-component.
double metric_inner(const ChargedSystem& sys, const AlgebraElement& x, const AlgebraElement& y);
double metric_norm(const ChargedSystem& sys, const AlgebraElement& x);

/// I₀ on m_a ⊕ m_b; throws DomainError outside that subspace.
AlgebraElement apply_I0(const ChargedSystem& sys, const AlgebraElement& x);

/// F(X, Y) = ⟨X, I₀Y⟩; antisymmetric.
double em_two_form(const ChargedSystem& sys, const AlgebraElement& x, const AlgebraElement& y);

/// Basis of m orthonormal for ⟨,⟩ (each B-orthonormal module basis scaled by 1/√λᵢ).
std::vector<AlgebraElement> metric_orthonormal_basis(const ChargedSystem& sys);

}  // namespace homofiber
