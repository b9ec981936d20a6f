#include <cmath>
#include <random>

#include "doctest.h"
#include "homofiber/motion_engine.hpp"
#include "homofiber/space_catalog.hpp"
#include "support.hpp"

using namespace homofiber;
using testing_support::random_group;
using testing_support::random_unit;

namespace {

ChargedSystem system_of(const CatalogEntry& e, std::vector<double> weights, double k) {
  return make_system(e, SystemOptions{std::move(weights), std::nullopt, 1.0, k});
}

}  // namespace

TEST_CASE("generators of the closed form") {
  const CatalogEntry e = hopf(1);
  std::mt19937_64 rng(31);
  const AlgebraElement xa = random_unit(e.split.module(0), rng);
  const AlgebraElement xb = random_unit(e.split.module(1), rng);

  SUBCASE("lambda = 1 gives Y = 0 exactly") {
    const ClosedFormMotion m = build_motion(system_of(e, {1.0, 1.0}, 0.7), xa, xb);
    CHECK(m.y().matrix().isZero(0.0));
    CHECK(frobenius_distance(m.x().matrix(), (xa + xb + 0.7 * e.w).matrix()) == 0.0);
  }
  SUBCASE("general lambda") {
    const ClosedFormMotion m = build_motion(system_of(e, {1.0, 0.5}, 2.0), xa, xb);
    CHECK(frobenius_distance(m.x().matrix(), (xa + 0.5 * xb + 2.0 * e.w).matrix()) < 1e-15);
    CHECK(frobenius_distance(m.y().matrix(), (0.5 * (xb + 4.0 * e.w)).matrix()) < 1e-15);
    CHECK_FALSE(m.perturbed());
  }
  SUBCASE("zero initial data at k = 0 stays at the identity") {
    const ClosedFormMotion m =
        build_motion(system_of(e, {1.0, 2.0}, 0.0), AlgebraElement::zero(2), AlgebraElement::zero(2));
    CHECK(frobenius_distance(m.representative(1.3).matrix(), Matrix::Identity(2, 2)) == 0.0);
  }
}

TEST_CASE("initial data must lie in the designated modules") {
  const CatalogEntry e = hopf(2);
  const ChargedSystem sys = system_of(e, {1.0, 1.0}, 1.0);
  std::mt19937_64 rng(37);
  const AlgebraElement xa = random_unit(sys.ma(), rng);
  const AlgebraElement xb = random_unit(sys.mb(), rng);
  CHECK_THROWS_AS(build_motion(sys, xb, xb), DomainError);
  CHECK_THROWS_AS(build_motion(sys, xa, xa), DomainError);
  CHECK_THROWS_AS(build_motion(sys, e.w, xb), DomainError);
  CHECK_NOTHROW(build_motion(sys, xa, xb));
}

TEST_CASE("representative is a unitary curve through the identity with the product-rule derivative") {
  const CatalogEntry e = twistor_su3();
  std::mt19937_64 rng(41);
  const ChargedSystem sys = system_of(e, {1.0, 2.5}, -0.5);
  const ClosedFormMotion m = build_motion(sys, random_unit(sys.ma(), rng), random_unit(sys.mb(), rng));
  CHECK(frobenius_distance(m.representative(0.0).matrix(), Matrix::Identity(3, 3)) < 1e-15);
  for (double t : {-1.7, -0.2, 0.9, 2.0}) {
    CHECK(m.representative(t).is_unitary(1e-12));
    const double h = 1e-5;
    const Matrix fd = (m.representative(t + h).matrix() - m.representative(t - h).matrix()) / (2.0 * h);
    CHECK(frobenius_distance(fd, m.representative_derivative(t)) < 1e-8);
  }
}

TEST_CASE("transported X_a stays in m_a and the body velocity matches") {
  std::mt19937_64 rng(43);
  for (const CatalogEntry& e : {hopf(1), hopf(2), hopf(3), twistor_su3(), lie_group(LieGroupKind::SU2),
                                lie_group(LieGroupKind::U2)}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      for (double k : {0.0, 1.0, -0.5}) {
        const ChargedSystem sys = system_of(e, {1.0, lambda}, k);
        const ClosedFormMotion m =
            build_motion(sys, random_unit(sys.ma(), rng), random_unit(sys.mb(), rng));
        const double speed0 = evaluate(m, 0.0).speed;
        const double expected_speed =
            std::sqrt(sys.lambda_a() * inner_B(m.xa(), m.xa()) + sys.lambda_b() * inner_B(m.xb(), m.xb()));
        CHECK(speed0 == doctest::Approx(expected_speed).epsilon(1e-12));
        for (double t : {-2.0, -0.6, 0.35, 1.5, 2.0}) {
          const AlgebraElement txa = transported_xa(m, t);
          CHECK(residual_norm(sys.ma(), txa) <= 1e-10);
          CHECK(norm_B(body_velocity_numeric(m, t) - (txa + m.xb())) <= 1e-11);
          CHECK(std::abs(evaluate(m, t).speed - speed0) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("the h-part of the body generator is the fiber rotation (k/lambda) W") {
  const CatalogEntry e = hopf(2);
  std::mt19937_64 rng(47);
  const ChargedSystem sys = system_of(e, {1.0, 2.0}, 1.5);
  const ClosedFormMotion m = build_motion(sys, random_unit(sys.ma(), rng), random_unit(sys.mb(), rng));
  for (double t : {-1.0, 0.4, 1.9}) {
    const AlgebraElement u = body_generator_numeric(m, t);
    CHECK(norm_B(project(e.split.h(), u) - (1.5 / 2.0) * e.w) < 1e-12);
  }
}

TEST_CASE("sampling") {
  const CatalogEntry e = hopf(1);
  const ChargedSystem sys = system_of(e, {1.0, 1.0}, 0.0);
  std::mt19937_64 rng(53);
  const ClosedFormMotion m =
      build_motion(sys, random_unit(sys.ma(), rng), random_unit(sys.mb(), rng)).with_model(e.model);
  const auto two = sample_trajectory(m, -1.0, 0.3, 2);
  REQUIRE(two.size() == 2);
  CHECK(two.front().t == -1.0);
  CHECK(two.back().t == 0.3);
  const auto many = sample_trajectory(m, -2.0, 2.0, 7);
  CHECK(many.size() == 7);
  CHECK(many.back().t == 2.0);
  for (const auto& s : many) {
    REQUIRE(s.model_point);
    CHECK(s.model_point->norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(sample_trajectory(m, 0.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(sample_trajectory(m, 1.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(sample_trajectory(m, 0.0, INFINITY, 3), DomainError);
}

TEST_CASE("left translation moves the model curve rigidly") {
  const CatalogEntry e = hopf(2);
  std::mt19937_64 rng(59);
  const ChargedSystem sys = system_of(e, {1.0, 0.7}, 1.0);
  const ClosedFormMotion m =
      build_motion(sys, random_unit(sys.ma(), rng), random_unit(sys.mb(), rng)).with_model(e.model);
  const GroupElement g = random_group(3, rng);
  const ClosedFormMotion moved = m.translated(g);
  for (double t : {-1.0, 0.5, 2.0}) {
    const Matrix a = *evaluate(m, t).model_point;
    const Matrix b = *evaluate(moved, t).model_point;
    CHECK(frobenius_distance(g.matrix() * a, b) < 1e-12);
    CHECK(evaluate(moved, t).speed == doctest::Approx(evaluate(m, t).speed));
  }
}

TEST_CASE("base-point models are invariant under H") {
  std::mt19937_64 rng(61);
  for (const CatalogEntry& e : {hopf(1), hopf(3), kahler_s2(), twistor_su3()}) {
    REQUIRE(e.model);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupElement p = random_group(e.ambient, rng);
      const GroupElement h = expm(2.0 * random_unit(e.split.h(), rng));
      CHECK(frobenius_distance(e.model->apply(p * h), e.model->apply(p)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(BasePointModel::orbit(Matrix::Zero(2, 3)), DimensionError);
  CHECK_THROWS_AS(hopf(1).model->apply(GroupElement::identity(3)), DimensionError);
}
