#include "homofiber/verification_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homofiber {

void ResidualConfig::validate() const {
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) throw DomainError("fd step must be positive");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw DomainError("tolerance must be positive");
  for (double t : t_samples) {
    if (!std::isfinite(t)) throw DomainError("t samples must be finite");
  }
}

namespace {

AlgebraElement unit_probe(const ChargedSystem& sys, const AlgebraElement& z) {
  if (const double off = residual_norm(sys.split().m(), z); off > sys.tolerance()) {
    throw DomainError("probe direction Z is not in m (residual " + std::to_string(off) + ")");
  }
  const double n = metric_norm(sys, z);
  if (n == 0.0) throw DomainError("probe direction Z is zero");
  return z / n;
}

AlgebraElement skew_part(const Matrix& m) {
  return AlgebraElement::unchecked(0.5 * (m - m.adjoint()));
}

// Everything about the curve near t that does not depend on the probe.
struct CurveStencil {
  double t = 0.0;
  double step = 0.0;
  GroupElement alpha;
  GroupElement alpha_plus;
  GroupElement alpha_minus;
  AlgebraElement v;  // project(m, α⁻¹α̇)
  AlgebraElement u;  // α⁻¹α̇
  AlgebraElement v_plus;
  AlgebraElement v_minus;
  AlgebraElement spatial;  // ζ_E = α̇ α⁻¹

  CurveStencil(const ClosedFormMotion& motion, double t_, double h) : t(t_), step(h) {
    const Subspace& m = motion.system().split().m();
    alpha = motion.representative(t);
    alpha_plus = motion.representative(t + h);
    alpha_minus = motion.representative(t - h);
    const Matrix alpha_dot = motion.representative_derivative(t);
    u = skew_part(alpha.matrix().adjoint() * alpha_dot);
    v = project(m, u);
    spatial = skew_part(alpha_dot * alpha.matrix().adjoint());
    v_plus = body_velocity_numeric(motion, t + h);
    v_minus = body_velocity_numeric(motion, t - h);
  }
};

KoszulTerms terms_at(const ClosedFormMotion& motion, const CurveStencil& c,
                     const AlgebraElement& unit_z) {
  const ChargedSystem& sys = motion.system();
  const Subspace& m = sys.split().m();
  const double h = c.step;
  KoszulTerms out;
  out.t = c.t;

  // Body form of V along the curve: P_m Ad(α(t+s)⁻¹ α(t)) Z.
  auto probe_at = [&](const GroupElement& alpha_s) {
    return project(m, adjoint(alpha_s.inverse() * c.alpha, unit_z));
  };
  out.t1 = (metric_inner(sys, probe_at(c.alpha_plus), c.v_plus) -
            metric_inner(sys, probe_at(c.alpha_minus), c.v_minus)) /
           (2.0 * h);

  // [V, E] for Killing fields is −[ζ_V, ζ_E]*, whose body form at x(t) is −P_m[Z, u].
  out.t2 = -metric_inner(sys, c.v, project(m, bracket(unit_z, c.u)));

  // g(E, E) at π(p) is ‖P_m Ad(p⁻¹) ζ_E‖², differentiated along p = α(t) exp(sZ).
  auto energy = [&](const GroupElement& p) {
    const AlgebraElement w = project(m, adjoint(p.inverse(), c.spatial));
    return metric_inner(sys, w, w);
  };
  out.t3 = -0.5 * (energy(c.alpha * expm(h * unit_z)) - energy(c.alpha * expm(-h * unit_z))) /
           (2.0 * h);

  out.rhs = sys.charge() * metric_inner(sys, apply_I0(sys, c.v), unit_z);
  out.residual = out.t1 + out.t2 + out.t3 - out.rhs;
  return out;
}

}  // namespace

KoszulTerms koszul_terms(const ClosedFormMotion& motion, double t, const AlgebraElement& z,
                         double fd_step) {
  if (!(fd_step > 0.0)) throw DomainError("fd step must be positive");
  const AlgebraElement unit_z = unit_probe(motion.system(), z);
  const CurveStencil stencil(motion, t, fd_step);
  return terms_at(motion, stencil, unit_z);
}

double koszul_residual(const ClosedFormMotion& motion, double t, const AlgebraElement& z,
                       const ResidualConfig& cfg) {
  cfg.validate();
  return koszul_terms(motion, t, z, cfg.fd_step).residual;
}

ResidualReport koszul_sweep(const ClosedFormMotion& motion, const ResidualConfig& cfg) {
  cfg.validate();
  const ChargedSystem& sys = motion.system();
  std::vector<AlgebraElement> probes =
      cfg.probes.empty() ? metric_orthonormal_basis(sys) : cfg.probes;
  for (auto& z : probes) z = unit_probe(sys, z);

  ResidualReport report;
  report.entries.reserve(cfg.t_samples.size() * probes.size());
  for (double t : cfg.t_samples) {
    const CurveStencil stencil(motion, t, cfg.fd_step);
    for (std::size_t j = 0; j < probes.size(); ++j) {
      KoszulTerms e = terms_at(motion, stencil, probes[j]);
      e.probe = j;
      if (std::abs(e.residual) > report.max_abs_residual || report.entries.empty()) {
        report.max_abs_residual = std::abs(e.residual);
        report.argmax = report.entries.size();
      }
      report.entries.push_back(e);
    }
  }
  return report;
}

double AlgebraicTerms::discrepancy() const { return std::abs(e1 + e2 + e3 - target); }

AlgebraicTerms algebraic_identity_terms(const ClosedFormMotion& motion, double t,
                                        const AlgebraElement& z) {
  const ChargedSystem& sys = motion.system();
  const AlgebraElement unit_z = unit_probe(sys, z);
  const AlgebraElement a = transported_xa(motion, t);
  const AlgebraElement& xb = motion.xb();
  const AlgebraElement& w = sys.w();
  const double k = sys.charge();
  const double lambda = sys.lambda();
  const double la = sys.lambda_a();
  const double lb = sys.lambda_b();

  AlgebraicTerms out;
  out.e1 = (la - lb) * inner_B(unit_z, bracket(a, xb + (k / lambda) * w));
  out.e2 = (lb - la) * inner_B(unit_z, bracket(a, xb));
  out.e3 = -(k / lambda) * la * inner_B(unit_z, bracket(a, w)) -
           (k / lambda) * lb * inner_B(unit_z, bracket(xb, w));
  out.target = -k * la * inner_B(unit_z, bracket(a + xb, w));
  return out;
}

double algebraic_identity_check(const ClosedFormMotion& motion, double t, const AlgebraElement& z) {
  return algebraic_identity_terms(motion, t, z).discrepancy();
}

double transport_module_residual(const ClosedFormMotion& motion, double t) {
  return residual_norm(motion.system().ma(), transported_xa(motion, t));
}

double body_velocity_residual(const ClosedFormMotion& motion, double t) {
  const AlgebraElement closed_form = transported_xa(motion, t) + motion.xb();
  return norm_B(body_velocity_numeric(motion, t) - closed_form);
}

ConservationReport conservation_sweep(const ClosedFormMotion& motion, double t0, double t1,
                                      std::size_t count) {
  const ChargedSystem& sys = motion.system();
  auto speed = [&](double t) { return metric_norm(sys, body_velocity_numeric(motion, t)); };
  ConservationReport report;
  report.initial_speed = speed(0.0);
  for (double t : uniform_times(t0, t1, count)) {
    const double dev = std::abs(speed(t) - report.initial_speed);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.t_at_max = t;
    }
  }
  return report;
}

namespace {

Eigen::VectorXd realify(const Matrix& column) {
  const Eigen::Index n = column.rows();
  Eigen::VectorXd r(2 * n);
  r.head(n) = column.col(0).real();
  r.tail(n) = column.col(0).imag();
  return r;
}

}  // namespace

GreatCircleReport great_circle_check(const ClosedFormMotion& motion, double t0, double t1,
                                     std::size_t count) {
  const auto& model = motion.model();
  if (!model || model->kind != BasePointModel::Kind::Vector) {
    throw PreconditionError("great_circle_check needs a space with a vector base-point model");
  }
  if (motion.system().charge() != 0.0) {
    throw PreconditionError("great_circle_check needs k = 0");
  }

  const Eigen::VectorXd x0 = realify(model->apply(motion.representative(0.0)));
  const Eigen::VectorXd v0 = realify(motion.representative_derivative(0.0) * model->base);
  const double radius = x0.norm();

  // Orthonormal basis of span_R{x(0), ẋ(0)}.
  std::vector<Eigen::VectorXd> plane{x0 / radius};
  Eigen::VectorXd tangent = v0 - plane[0].dot(v0) * plane[0];
  if (tangent.norm() > kRankTolerance) plane.push_back(tangent.normalized());

  GreatCircleReport report;
  for (const auto& s : sample_trajectory(motion, t0, t1, count)) {
    const Eigen::VectorXd x = realify(*s.model_point);
    Eigen::VectorXd off = x;
    for (const auto& e : plane) off -= e.dot(x) * e;
    report.max_norm_error = std::max(report.max_norm_error, std::abs(x.norm() - radius));
    report.max_planarity = std::max(report.max_planarity, off.norm());
  }
  return report;
}

double orbit_geodesic_curvature(const ClosedFormMotion& motion, double t, double fd_step) {
  const auto& model = motion.model();
  if (!model || model->kind != BasePointModel::Kind::Orbit) {
    throw PreconditionError("geodesic curvature needs an orbit base-point model");
  }
  const Subspace& g = motion.system().split().g();
  if (g.dim() != 3) throw PreconditionError("orbit curvature is defined for 3-dimensional g");

  auto point = [&](double s) {
    return g.coordinates(AlgebraElement::unchecked(model->apply(motion.representative(s))));
  };
  const Eigen::Vector3d xm = point(t - fd_step);
  const Eigen::Vector3d x = point(t);
  const Eigen::Vector3d xp = point(t + fd_step);
  const Eigen::Vector3d d1 = (xp - xm) / (2.0 * fd_step);
  const Eigen::Vector3d d2 = (xp - 2.0 * x + xm) / (fd_step * fd_step);
  const double speed = d1.norm();
  if (speed == 0.0) return 0.0;
  return std::abs(x.dot(d1.cross(d2))) / (x.norm() * speed * speed * speed);
}

MagneticCircleReport magnetic_circle_check(const ChargedSystem& sys, const BasePointModel& model,
                                           const AlgebraElement& xa, std::span<const double> charges,
                                           std::span<const double> t_samples, double fd_step) {
  const ReductiveSplit& split = sys.split();
  if (split.ambient() != 2 || split.g().dim() != 3 || split.module_count() != 1 || sys.pair().b) {
    throw PreconditionError(
        "magnetic_circle_check needs a single-module SU(2)/U(1) system with empty m_b");
  }
  if (model.kind != BasePointModel::Kind::Orbit) {
    throw PreconditionError("magnetic_circle_check needs an orbit base-point model");
  }
  if (charges.empty() || t_samples.empty()) throw DomainError("no charges or samples to check");

  MagneticCircleReport report;
  const AlgebraElement zero = AlgebraElement::zero(split.ambient());
  for (double k : charges) {
    const ClosedFormMotion motion = build_motion(sys.with_charge(k), xa, zero).with_model(model);
    double lo = INFINITY;
    double hi = -INFINITY;
    double sum = 0.0;
    for (double t : t_samples) {
      const double kappa = orbit_geodesic_curvature(motion, t, fd_step);
      lo = std::min(lo, kappa);
      hi = std::max(hi, kappa);
      sum += kappa;
    }
    CurvatureProfile p{k, sum / static_cast<double>(t_samples.size()), hi - lo};
    report.max_spread = std::max(report.max_spread, p.spread);
    report.profiles.push_back(p);
  }
  report.strictly_increasing = true;
  for (std::size_t i = 1; i < report.profiles.size(); ++i) {
    if (!(report.profiles[i].mean > report.profiles[i - 1].mean)) report.strictly_increasing = false;
  }
  return report;
}

double lambda_collapse_check(const ClosedFormMotion& motion, std::span<const double> t_samples) {
  const ChargedSystem& sys = motion.system();
  if (sys.lambda() != 1.0) throw PreconditionError("lambda_collapse_check needs lambda = 1");
  const AlgebraElement generator = motion.xa() + motion.xb() + sys.charge() * sys.w();
  double worst = 0.0;
  for (double t : t_samples) {
    const GroupElement expected = motion.origin() * expm(t * generator);
    worst = std::max(worst, frobenius_distance(motion.representative(t).matrix(), expected.matrix()));
  }
  return worst;
}

double coset_distance(const BasePointModel& model, const GroupElement& p, const GroupElement& q) {
  return (model.apply(p) - model.apply(q)).norm();
}

}  // namespace homofiber
