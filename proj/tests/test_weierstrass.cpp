/*
 * Copyright 2026 the isopoly authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>

#include "isopoly/weierstrass.hpp"

using namespace isopoly;

TEST_CASE("curve construction and singular rejection") {
  FieldRef qi = Field::gaussian_rationals();
  CHECK_NOTHROW(WeierstrassCurve::from_longs(qi, 0, -1, 0));
  CHECK_NOTHROW(WeierstrassCurve::from_longs(Field::rationals(), 0, -11, -14));
  CHECK_THROWS_AS(WeierstrassCurve::from_longs(Field::rationals(), 0, 0, 0), domain_error);
}

TEST_CASE("two-torsion of the CM curve, ordered") {
  FieldRef qi = Field::gaussian_rationals();
  WeierstrassCurve E = WeierstrassCurve::from_longs(qi, 0, -1, 0);
  TwoTorsion tt = two_torsion(E);
  REQUIRE(tt.points.size() == 3);
  CHECK(tt.split);
  CHECK(tt.points[0].x() == FieldElement::from_long(qi, 0));
  CHECK(tt.points[1].x() == FieldElement::from_long(qi, 1));
  CHECK(tt.points[2].x() == FieldElement::from_long(qi, -1));
  for (const auto& P : tt.points) CHECK(point_mul(2, P).is_infinity());
}

TEST_CASE("two-torsion of an irreducible cubic is empty") {
  WeierstrassCurve E = WeierstrassCurve::from_longs(Field::rationals(), 0, 0, -2);
  TwoTorsion tt = two_torsion(E);
  CHECK(tt.points.empty());
  CHECK(!tt.split);
}

TEST_CASE("two-torsion splits mod 5") {
  WeierstrassCurve E = WeierstrassCurve::from_longs(Field::prime_field(5), 0, -1, 0);
  TwoTorsion tt = two_torsion(E);
  CHECK(tt.points.size() == 3);
  CHECK(tt.split);
}

TEST_CASE("group law basics on the CM curve") {
  FieldRef qi = Field::gaussian_rationals();
  WeierstrassCurve E = WeierstrassCurve::from_longs(qi, 0, -1, 0);
  Point P00 = Point::affine(E, FieldElement::from_long(qi, 0), FieldElement::from_long(qi, 0));
  Point P10 = Point::affine(E, FieldElement::from_long(qi, 1), FieldElement::from_long(qi, 0));
  Point Pm10 = Point::affine(E, FieldElement::from_long(qi, -1), FieldElement::from_long(qi, 0));
  CHECK(point_add(P00, P00).is_infinity());
  CHECK(point_add(P10, Pm10) == P00);
  CHECK_THROWS_AS(Point::affine(E, FieldElement::from_long(qi, 2), FieldElement::from_long(qi, 1)),
                  domain_error);
}

TEST_CASE("doubling matches the tangent construction mod 5") {
  FieldRef f5 = Field::prime_field(5);
  WeierstrassCurve E = WeierstrassCurve::from_longs(f5, 0, -1, 0);
  Point P = Point::affine(E, FieldElement::fp(f5, 2), FieldElement::fp(f5, 1));
  Point D = point_mul(2, P);
  CHECK(D == Point::affine(E, FieldElement::fp(f5, 0), FieldElement::fp(f5, 0)));
}

TEST_CASE("associativity on random points mod 17") {
  FieldRef f = Field::prime_field(17);
  WeierstrassCurve E = WeierstrassCurve::from_longs(f, 0, -1, 0);
  std::vector<Point> pts;
  pts.push_back(Point::infinity(E));
  for (std::uint64_t x = 0; x < 17; ++x) {
    FieldElement fx = E.fpoly().eval(FieldElement::fp(f, x));
    auto y = fx.sqrt();
    if (y) {
      pts.push_back(Point::affine(E, FieldElement::fp(f, x), *y));
      pts.push_back(Point::affine(E, FieldElement::fp(f, x), -*y));
    }
  }
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const Point& A = pts[rng() % pts.size()];
    const Point& B = pts[rng() % pts.size()];
    const Point& C = pts[rng() % pts.size()];
    CHECK(point_add(point_add(A, B), C) == point_add(A, point_add(B, C)));
    CHECK(point_add(A, point_neg(A)).is_infinity());
  }
}

TEST_CASE("coordinate expansions") {
  FieldRef qi = Field::gaussian_rationals();
  WeierstrassCurve E = WeierstrassCurve::from_longs(qi, 0, -1, 0);
  auto [xs, ys] = expand_coordinates(E, 10);
  CHECK(xs.lead_exponent() == -2);
  CHECK(xs.lead_coeff().is_one());
  CHECK(ys.lead_exponent() == -3);
  CHECK(ys.lead_coeff() == FieldElement::from_long(qi, -1));
  // defining relation to precision
  LaurentSeries lhs = ys * ys;
  LaurentSeries rhs = xs * xs * xs + xs.scaled(E.A4());
  CHECK(lhs.agrees_with(rhs));
  // T = -x/y exactly
  LaurentSeries t = -(xs * ys.invert());
  CHECK(t.lead_exponent() == 1);
  CHECK(t.lead_coeff().is_one());
  for (long k = 2; k < t.precision(); ++k) CHECK(t.coeff(k).is_zero());
}

TEST_CASE("coordinate expansions carry the quadratic term on general models") {
  FieldRef q = Field::rationals();
  WeierstrassCurve E = WeierstrassCurve::from_longs(q, 2, -3, 1);
  auto [xs, ys] = expand_coordinates(E, 8);
  LaurentSeries lhs = ys * ys;
  LaurentSeries rhs = xs * xs * xs + (xs * xs).scaled(E.A2()) + xs.scaled(E.A4()) +
                      LaurentSeries::constant(E.A6(), xs.precision());
  CHECK(lhs.agrees_with(rhs));
}
