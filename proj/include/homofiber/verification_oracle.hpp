#pragma once

// Numerical checks that a curve x(t) = α(t)·o solves ∇_ẋ ẋ = k I(ẋ).
//
// The covariant acceleration is only ever seen through the Koszul identity
//
//   g(V, ∇_E E) = E g(V, E) + g(E, [V, E]) − ½ V g(E, E),
//
// evaluated with finite differences on genuine vector fields of G/H:
//   V = Killing field of ζ_V = Ad(α(t)) Z, equal to (τ_α(t))_* Z at x(t);
//   E = Killing field of ζ_E = α̇(t) α(t)⁻¹, equal to ẋ(t) at x(t).
// Because E only agrees with ẋ at x(t), the first term is taken along the
// curve itself, d/dt g(V, ẋ), which absorbs the correction D/dt(ẋ − E).
// Nothing here uses the closed-form body velocity.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "homofiber/field_metric.hpp"
#include "homofiber/motion_engine.hpp"

namespace homofiber {

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr double kDefaultResidualTolerance = 1e-6;
inline constexpr double kAlgebraicTolerance = 1e-11;
inline constexpr double kTransportModuleTolerance = 1e-10;
inline constexpr double kBodyVelocityTolerance = 1e-11;
inline constexpr double kConservationTolerance = 1e-10;
inline constexpr double kCollapseTolerance = 1e-12;
inline constexpr double kGreatCircleTolerance = 1e-9;
inline constexpr double kCurvatureSpreadTolerance = 1e-6;

struct ResidualConfig {
  double fd_step = kDefaultFdStep;
  std::vector<double> t_samples;
  double tolerance = kDefaultResidualTolerance;
  /// Probe directions in m. Empty means a ⟨,⟩-orthonormal basis of m.
  std::vector<AlgebraElement> probes;

  void validate() const;
};

struct KoszulTerms {
  double t = 0.0;
  std::size_t probe = 0;
  double t1 = 0.0;  ///< d/dt g(V, ẋ)
  double t2 = 0.0;  ///< g(ẋ, [V, E])
  double t3 = 0.0;  ///< −½ V g(E, E)
  double rhs = 0.0;  ///< k g(I ẋ, V)
  double residual = 0.0;
};

struct ResidualReport {
  std::vector<KoszulTerms> entries;
  double max_abs_residual = 0.0;
  std::size_t argmax = 0;

  bool passed(double tol) const { return max_abs_residual <= tol; }
};

/// All Koszul terms at (t, Z). Z must lie in m; it is rescaled to unit metric norm.
KoszulTerms koszul_terms(const ClosedFormMotion& motion, double t, const AlgebraElement& z,
                         double fd_step = kDefaultFdStep);

double koszul_residual(const ClosedFormMotion& motion, double t, const AlgebraElement& z,
                       const ResidualConfig& cfg);

/// Residuals over cfg.t_samples × probes, in that order.
ResidualReport koszul_sweep(const ClosedFormMotion& motion, const ResidualConfig& cfg);

/// The three reduced expressions of the hand computation, the sum, and the target
/// −kλ_a B(Z, [T(t)X_a + X_b, W]).
struct AlgebraicTerms {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double target = 0.0;
  double discrepancy() const;
};

AlgebraicTerms algebraic_identity_terms(const ClosedFormMotion& motion, double t,
                                        const AlgebraElement& z);
/// |e1 + e2 + e3 − target|; pure bracket arithmetic, no finite differences.
double algebraic_identity_check(const ClosedFormMotion& motion, double t, const AlgebraElement& z);

/// ‖T(t)X_a − project(m_a, T(t)X_a)‖_B.
double transport_module_residual(const ClosedFormMotion& motion, double t);
/// ‖body_velocity_numeric(t) − (T(t)X_a + X_b)‖_B.
double body_velocity_residual(const ClosedFormMotion& motion, double t);

struct ConservationReport {
  double initial_speed = 0.0;
  double max_deviation = 0.0;
  double t_at_max = 0.0;
};

/// Speed ⟨v, v⟩^½ of the numerically differentiated curve on uniform_times(t0, t1, count).
ConservationReport conservation_sweep(const ClosedFormMotion& motion, double t0, double t1,
                                      std::size_t count);

struct GreatCircleReport {
  double max_norm_error = 0.0;  ///< max | |x(t)| − |x(0)| |
  double max_planarity = 0.0;   ///< max distance of x(t) from span_R{x(0), ẋ(0)}
};

/// Requires a vector base-point model and k = 0.
GreatCircleReport great_circle_check(const ClosedFormMotion& motion, double t0, double t1,
                                     std::size_t count);

struct CurvatureProfile {
  double charge = 0.0;
  double mean = 0.0;
  double spread = 0.0;  ///< max − min over the samples
};

struct MagneticCircleReport {
  std::vector<CurvatureProfile> profiles;
  double max_spread = 0.0;
  bool strictly_increasing = false;
};

/// Geodesic curvature of the orbit-model curve at t, from central differences
/// (Frenet construction on the orbit sphere in g ≅ ℝ³).
double orbit_geodesic_curvature(const ClosedFormMotion& motion, double t, double fd_step);

/// Sweeps the charges (in the order given) for fixed X_a on a single-module
/// SU(2)/U(1)-type system with an orbit model.
MagneticCircleReport magnetic_circle_check(const ChargedSystem& sys, const BasePointModel& model,
                                           const AlgebraElement& xa, std::span<const double> charges,
                                           std::span<const double> t_samples,
                                           double fd_step = kDefaultFdStep);

/// max_t ‖α(t) − origin·exp(t(X_a + X_b + kW))‖_F; requires λ = 1.
double lambda_collapse_check(const ClosedFormMotion& motion, std::span<const double> t_samples);

/// Distance between the model images of two representatives (0 iff same coset
/// for a faithful model).
double coset_distance(const BasePointModel& model, const GroupElement& p, const GroupElement& q);

}  // namespace homofiber
