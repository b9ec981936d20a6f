#include "homofiber/motion_engine.hpp"

#include <cmath>
#include <string>

namespace homofiber {

BasePointModel BasePointModel::vector(Eigen::VectorXcd v0) {
  return BasePointModel{Kind::Vector, Matrix(std::move(v0))};
}

BasePointModel BasePointModel::orbit(Matrix xi0) {
  if (xi0.rows() != xi0.cols()) throw DimensionError("orbit model needs a square base matrix");
  return BasePointModel{Kind::Orbit, std::move(xi0)};
}

Matrix BasePointModel::apply(const GroupElement& p) const {
  if (static_cast<std::size_t>(base.rows()) != p.size()) {
    throw DimensionError("base-point model size does not match the group element");
  }
  if (kind == Kind::Vector) return p.matrix() * base;
  return p.matrix() * base * p.matrix().adjoint();
}

ClosedFormMotion build_motion(const ChargedSystem& sys, const AlgebraElement& xa,
                              const AlgebraElement& xb) {
  const double tol = sys.tolerance();
  if (const double off = residual_norm(sys.ma(), xa); off > tol) {
    throw DomainError("X_a is not in m_a (residual " + std::to_string(off) + ")");
  }
  if (const double off = residual_norm(sys.mb(), xb); off > tol) {
    throw DomainError("X_b is not in m_b (residual " + std::to_string(off) + ")");
  }
  const double lambda = sys.lambda();
  const double k = sys.charge();

  ClosedFormMotion m(sys);
  m.xa_ = xa;
  m.xb_ = xb;
  m.x_ = xa + lambda * xb + k * sys.w();
  if (lambda == 1.0) {
    m.y_ = AlgebraElement::zero(xa.size());
  } else {
    m.y_ = (1.0 - lambda) * (xb + (k / lambda) * sys.w());
  }
  m.first_ = m.x_;
  m.second_ = m.y_;
  m.origin_ = GroupElement::identity(xa.size());
  return m;
}

ClosedFormMotion ClosedFormMotion::with_perturbation(double epsilon,
                                                     const AlgebraElement& direction) const {
  ClosedFormMotion copy = *this;
  copy.second_ = y_ + epsilon * direction;
  copy.perturbed_ = epsilon != 0.0;
  return copy;
}

ClosedFormMotion ClosedFormMotion::translated(const GroupElement& g) const {
  ClosedFormMotion copy = *this;
  copy.origin_ = g * origin_;
  return copy;
}

ClosedFormMotion ClosedFormMotion::with_model(std::optional<BasePointModel> model) const {
  ClosedFormMotion copy = *this;
  copy.model_ = std::move(model);
  return copy;
}

GroupElement ClosedFormMotion::representative(double t) const {
  return origin_ * expm(t * first_) * expm(t * second_);
}

Matrix ClosedFormMotion::representative_derivative(double t) const {
  const Matrix e1 = expm(t * first_).matrix();
  const Matrix e2 = expm(t * second_).matrix();
  return origin_.matrix() * (first_.matrix() * e1 * e2 + e1 * second_.matrix() * e2);
}

AlgebraElement transported_xa(const ClosedFormMotion& motion, double t) {
  return adjoint(expm(-t * motion.y()), motion.xa());
}

TrajectorySample evaluate(const ClosedFormMotion& motion, double t) {
  TrajectorySample s;
  s.t = t;
  s.representative = motion.representative(t);
  if (motion.model()) s.model_point = motion.model()->apply(s.representative);
  s.body_velocity = transported_xa(motion, t) + motion.xb();
  s.speed = metric_norm(motion.system(), s.body_velocity);
  return s;
}

AlgebraElement body_generator_numeric(const ClosedFormMotion& motion, double t) {
  const Matrix alpha = motion.representative(t).matrix();
  const Matrix u = alpha.adjoint() * motion.representative_derivative(t);
  // α is unitary, so α⁻¹α̇ is skew-Hermitian up to roundoff; drop the Hermitian part.
  return AlgebraElement::unchecked(0.5 * (u - u.adjoint()));
}

AlgebraElement body_velocity_numeric(const ClosedFormMotion& motion, double t) {
  return project(motion.system().split().m(), body_generator_numeric(motion, t));
}

std::vector<double> uniform_times(double t0, double t1, std::size_t count) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t0 < t1)) {
    throw DomainError("need finite t0 < t1");
  }
  if (count < 2) throw DomainError("need at least 2 samples");
  std::vector<double> out(count);
  const double step = (t1 - t0) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = t0 + step * static_cast<double>(i);
  out.back() = t1;
  return out;
}

std::vector<TrajectorySample> sample_trajectory(const ClosedFormMotion& motion, double t0,
                                                double t1, std::size_t count) {
  std::vector<TrajectorySample> out;
  out.reserve(count);
  for (double t : uniform_times(t0, t1, count)) out.push_back(evaluate(motion, t));
  return out;
}

}  // namespace homofiber
