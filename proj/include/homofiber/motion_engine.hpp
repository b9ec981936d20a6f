#pragma once

// Closed-form charged-particle motion through o:
//
//   x(t) = exp t(X_a + λX_b + kW) · exp t(1−λ)(X_b + (k/λ)W) · o,
//
// carried as the group representative α(t) = exp(tX) exp(tY).

#include <optional>
#include <vector>

#include "homofiber/field_metric.hpp"
#include "homofiber/lie_core.hpp"

namespace homofiber {

/// Faithful picture of G/H used to compare cosets: either p·v₀ for a vector
/// v₀ ∈ ℂⁿ or p ξ₀ p⁻¹ for a matrix ξ₀. The stabilizer of the base object is H.
struct BasePointModel {
  enum class Kind { Vector, Orbit };

  Kind kind = Kind::Vector;
  Matrix base;

  static BasePointModel vector(Eigen::VectorXcd v0);
  static BasePointModel orbit(Matrix xi0);

  Matrix apply(const GroupElement& p) const;
};

class ClosedFormMotion {
 public:
  const ChargedSystem& system() const { return sys_; }
  const AlgebraElement& xa() const { return xa_; }
  const AlgebraElement& xb() const { return xb_; }
  /// X = X_a + λX_b + kW.
  const AlgebraElement& x() const { return x_; }
  /// Y = (1−λ)(X_b + (k/λ)W).
  const AlgebraElement& y() const { return y_; }
  const GroupElement& origin() const { return origin_; }
  const std::optional<BasePointModel>& model() const { return model_; }

  /// Generators of the curve actually traced; equal to (X, Y) unless perturbed.
  const AlgebraElement& first_generator() const { return first_; }
  const AlgebraElement& second_generator() const { return second_; }
  bool perturbed() const { return perturbed_; }

  /// Deliberately wrong curve exp(tX) exp(t(Y + εN)); used to check that the
  /// verification oracle detects a curve that is not a solution.
  ClosedFormMotion with_perturbation(double epsilon, const AlgebraElement& direction) const;

  /// Same motion left-translated by `g`, i.e. starting at g·o.
  ClosedFormMotion translated(const GroupElement& g) const;
  ClosedFormMotion with_model(std::optional<BasePointModel> model) const;

  /// origin · exp(t·first) · exp(t·second).
  GroupElement representative(double t) const;
  /// Derivative of representative(t), by the product rule.
  Matrix representative_derivative(double t) const;

 private:
  friend ClosedFormMotion build_motion(const ChargedSystem&, const AlgebraElement&,
                                       const AlgebraElement&);
  ClosedFormMotion(ChargedSystem sys) : sys_(std::move(sys)) {}

  ChargedSystem sys_;
  AlgebraElement xa_, xb_, x_, y_;
  AlgebraElement first_, second_;
  GroupElement origin_;
  std::optional<BasePointModel> model_;
  bool perturbed_ = false;
};

struct TrajectorySample {
  double t = 0.0;
  GroupElement representative;
  std::optional<Matrix> model_point;
  /// T(t)X_a + X_b.
  AlgebraElement body_velocity;
  double speed = 0.0;
};

/// Throws DomainError if X_a ∉ m_a or X_b ∉ m_b.
ClosedFormMotion build_motion(const ChargedSystem& sys, const AlgebraElement& xa,
                              const AlgebraElement& xb);

/// T(t)X_a = Ad(exp(−tY)) X_a.
AlgebraElement transported_xa(const ClosedFormMotion& motion, double t);

TrajectorySample evaluate(const ClosedFormMotion& motion, double t);

/// α(t)⁻¹ α̇(t), unprojected; its h-part is the rotation of the representative
/// inside the fiber.
AlgebraElement body_generator_numeric(const ClosedFormMotion& motion, double t);

/// project(m, α⁻¹α̇), with α̇ from the product rule rather than any closed form
/// for the body velocity.
AlgebraElement body_velocity_numeric(const ClosedFormMotion& motion, double t);

/// `count` uniformly spaced times on [t0, t1]; the last one is exactly t1.
std::vector<double> uniform_times(double t0, double t1, std::size_t count);

/// evaluate() at uniform_times(t0, t1, count).
std::vector<TrajectorySample> sample_trajectory(const ClosedFormMotion& motion, double t0,
                                                double t1, std::size_t count);

}  // namespace homofiber
