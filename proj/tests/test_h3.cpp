#include <doctest.h>

#include <cmath>
#include <numbers>

#include "primstab/h3.hpp"
#include "primstab/word.hpp"
#include "test_support.hpp"

using namespace primstab;
using primstab::testing::random_moebius;
using primstab::testing::random_point;

namespace {

MoebiusMap mat(Complex a, Complex b, Complex c, Complex d) { return normalize({a, b, c, d}); }

bool same_point(const SpherePoint& p, const SpherePoint& q, double tol = 1e-12) {
  if (p.infinite || q.infinite) return p.infinite == q.infinite;
  return std::abs(p.z - q.z) < tol;
}

}  // namespace

TEST_CASE("normalize divides by a square root of the determinant") {
  auto m = mat(2, 0, 0, 2);
  CHECK(distance_up_to_sign(m, MoebiusMap::identity()) < 1e-15);

  m = mat(2, 0, 0, 1);
  CHECK(std::abs(m.a() - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(m.d() - 1.0 / std::sqrt(2.0)) < 1e-15);

  m = mat(1, 1, 0, 1);
  CHECK(m.a() == Complex(1));
  CHECK(m.b() == Complex(1));

  CHECK_THROWS_AS(mat(1, 2, 2, 4), NumericError);
}

TEST_CASE("H3 points need positive height") {
  CHECK_THROWS_AS(H3Point(0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(H3Point(0.0, -1.0), ValidationError);
}

TEST_CASE("act_h3 examples") {
  H3Point p({0.3, -0.7}, 1.5);
  H3Point q = act_h3(mat(1, 1, 0, 1), p);
  CHECK(std::abs(q.z() - Complex(1.3, -0.7)) < 1e-15);
  CHECK(q.t() == doctest::Approx(1.5).epsilon(1e-15));

  q = act_h3(mat(std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)), H3Point(0.0, 1.0));
  CHECK(std::abs(q.z()) < 1e-15);
  CHECK(q.t() == doctest::Approx(2.0).epsilon(1e-14));

  q = act_h3(MoebiusMap::identity(), p);
  CHECK(std::abs(q.z() - p.z()) < 1e-15);
  CHECK(q.t() == p.t());
}

TEST_CASE("dist_h3 examples") {
  CHECK(std::abs(dist_h3(H3Point(0.0, 1.0), H3Point(0.0, std::numbers::e)) - 1.0) < 1e-12);
  CHECK(dist_h3(H3Point(0.0, 1.0), H3Point(0.0, 1.0)) == 0.0);
  // cosh d = 1 + 4 / 2.
  CHECK(std::abs(dist_h3(H3Point(0.0, 1.0), H3Point(2.0, 1.0)) - std::acosh(3.0)) < 1e-12);
}

TEST_CASE("classify examples") {
  CHECK(classify(mat(1, 1, 0, 1)) == IsometryType::Parabolic);
  CHECK(classify(mat(2, 0, 0, 0.5)) == IsometryType::Loxodromic);
  CHECK(classify(mat(0, 1, -1, 0)) == IsometryType::Elliptic);
  CHECK(classify(MoebiusMap::identity()) == IsometryType::Identity);
  CHECK(classify(mat(-1, 0, 0, -1)) == IsometryType::Identity);
  // Purely imaginary trace: tr^2 < 0, loxodromic.
  CHECK(classify(mat(Complex(0, 1), 0, 0, Complex(0, -1)) * mat(2, 0, 0, 0.5)) == IsometryType::Loxodromic);
  CHECK(is_near_parabolic(mat(1, 1e-8, 0, 1)));
}

TEST_CASE("fixed_points examples") {
  auto pts = fixed_points(mat(2, 0, 0, 0.5));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].infinite);
  CHECK(same_point(pts[1], SpherePoint::finite(0.0)));

  pts = fixed_points(mat(1, 1, 0, 1));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].infinite);

  // (1/2 - 2) z = 3.
  pts = fixed_points(mat(2, 3, 0, 0.5));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].infinite);
  CHECK(same_point(pts[1], SpherePoint::finite(-2.0)));

  CHECK_THROWS_AS(fixed_points(MoebiusMap::identity()), NumericError);
}

TEST_CASE("fixed points of random maps are fixed") {
  for (int trial = 0; trial < 200; ++trial) {
    MoebiusMap m = random_moebius();
    for (const auto& p : fixed_points(m)) {
      CHECK(chordal_distance(act_boundary(m, p), p) < 1e-9);
    }
  }
}

TEST_CASE("translation_length examples") {
  // tr = 2.5, arccosh(1.25) = ln 2.
  CHECK(std::abs(translation_length(mat(2, 0, 0, 0.5)) - 2 * std::numbers::ln2) < 1e-12);
  CHECK(translation_length(mat(1, 1, 0, 1)) == 0.0);
  CHECK(std::abs(translation_length(mat(4, 0, 0, 0.25)) - 2 * std::log(4.0)) < 1e-12);
  CHECK_THROWS_WITH_AS(translation_length(mat(0, 1, -1, 0)), "no translation length", NumericError);
}

TEST_CASE("dist_to_geodesic examples") {
  BoundaryGeodesic vertical(SpherePoint::finite(0.0), SpherePoint::infinity());
  CHECK(dist_to_geodesic(H3Point(0.0, 5.0), vertical) == doctest::Approx(0.0));
  CHECK(std::abs(dist_to_geodesic(H3Point(1.0, 1.0), vertical) - std::asinh(1.0)) < 1e-12);
  CHECK_THROWS_AS(BoundaryGeodesic(SpherePoint::finite(1.0), SpherePoint::finite(1.0)), NumericError);
  CHECK_THROWS_AS(BoundaryGeodesic(SpherePoint::infinity(), SpherePoint::infinity()), NumericError);
}

TEST_CASE("isometry invariance of distances") {
  for (int trial = 0; trial < 1000; ++trial) {
    MoebiusMap m = random_moebius();
    H3Point p = random_point(), q = random_point();
    CHECK(std::abs(dist_h3(act_h3(m, p), act_h3(m, q)) - dist_h3(p, q)) < 1e-9);

    BoundaryGeodesic g(SpherePoint::finite(testing::random_complex(2.0)),
                       SpherePoint::finite(testing::random_complex(2.0)));
    CHECK(std::abs(dist_to_geodesic(act_h3(m, p), act_geodesic(m, g)) - dist_to_geodesic(p, g)) < 1e-9);
  }
}

TEST_CASE("triangle inequality and group action") {
  for (int trial = 0; trial < 500; ++trial) {
    H3Point p = random_point(), q = random_point(), r = random_point();
    CHECK(dist_h3(p, r) <= dist_h3(p, q) + dist_h3(q, r) + 1e-12);
    CHECK(dist_h3(p, q) == doctest::Approx(dist_h3(q, p)).epsilon(1e-14));

    MoebiusMap m1 = random_moebius(), m2 = random_moebius();
    H3Point lhs = act_h3(m1 * m2, p);
    H3Point rhs = act_h3(m1, act_h3(m2, p));
    CHECK(dist_h3(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("axis invariance and displacement bound") {
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    MoebiusMap m = random_moebius();
    if (classify(m) != IsometryType::Loxodromic) continue;
    ++checked;
    BoundaryGeodesic line = axis(m);
    H3Point p = random_point();
    CHECK(std::abs(dist_to_geodesic(act_h3(m, p), line) - dist_to_geodesic(p, line)) < 1e-8);
    const double ell = translation_length(m);
    CHECK(dist_h3(p, act_h3(m, p)) >= ell - 1e-8);
  }
  CHECK(checked > 400);

  // Equality on the axis: conjugate diag(lambda, 1/lambda) by g, start at g(0, 1).
  for (int trial = 0; trial < 200; ++trial) {
    MoebiusMap g = random_moebius();
    const double lambda = testing::uniform(1.1, 3.0);
    MoebiusMap m = g * mat(lambda, 0, 0, 1 / lambda) * g.inverse();
    H3Point on_axis = act_h3(g, H3Point(0.0, 1.0));
    CHECK(std::abs(dist_h3(on_axis, act_h3(m, on_axis)) - translation_length(m)) < 1e-6);
    CHECK(dist_to_geodesic(on_axis, axis(m)) < 1e-6);
  }
}

TEST_CASE("classify is conjugation invariant") {
  const MoebiusMap samples[] = {mat(1, 1, 0, 1), mat(2, 0, 0, 0.5), mat(0, 1, -1, 0),
                                mat(std::cos(0.4), std::sin(0.4), -std::sin(0.4), std::cos(0.4)),
                                mat(Complex(1.0, 1.0), 0, 0, 1.0 / Complex(1.0, 1.0))};
  for (const auto& m : samples) {
    for (int trial = 0; trial < 50; ++trial) {
      MoebiusMap g = random_moebius(1.0);
      CHECK(classify(g * m * g.inverse()) == classify(m));
    }
  }
}
