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

#include "isopoly/textio.hpp"

using namespace isopoly;

TEST_CASE("field and curve literals") {
  CHECK(parse_field("Q")->kind == FieldKind::Rationals);
  CHECK(parse_field("Q(i)")->kind == FieldKind::GaussianRationals);
  CHECK(parse_field("Fp:13")->p == 13);
  CHECK_THROWS_AS(parse_field("Fp:15"), domain_error);
  CHECK_THROWS_AS(parse_field("R"), domain_error);

  WeierstrassCurve E = parse_curve("E/Q(i):[0,-1,0]");
  CHECK(E.A4() == FieldElement::from_long(E.field(), -1));
  WeierstrassCurve Ep = parse_curve("E/Fp:13:[0,-1,0]");
  CHECK(Ep.field()->p == 13);
  WeierstrassCurve Eq = parse_curve("E/Q:[0,-1,1/4]");
  CHECK(Eq.A6() == FieldElement::from_mpq(Eq.field(), mpq_class(1, 4)));
}

TEST_CASE("point and isogeny literals") {
  WeierstrassCurve E = parse_curve("E/Q(i):[0,-1,0]");
  Point P = parse_point(E, "(1,0)");
  CHECK(P.x().is_one());
  CHECK(parse_point(E, "O").is_infinity());

  CHECK(parse_isogeny_literal(E, "3").to_isogeny(E).degree() == 9);
  CHECK(parse_isogeny_literal(E, "1+2i").to_isogeny(E).degree() == 5);
  CHECK(parse_isogeny_literal(E, "-i").to_isogeny(E).degree() == 1);
  CHECK(parse_isogeny_literal(E, "velu2@(1,0)").to_isogeny(E).degree() == 2);
  CHECK(parse_isogeny_literal(E, "velu2@(1,0) o (1+i)").to_isogeny(E).degree() == 4);
}

TEST_CASE("polynomial printing matches the canonical form") {
  FieldRef qi = Field::gaussian_rationals();
  Polynomial p = Polynomial::from_longs(qi, {-1, 0, -6, 0, 3});
  CHECK(polynomial_str(p) == "3*x^4 - 6*x^2 - 1");
  Polynomial g(qi, {FieldElement::zero(qi), FieldElement::gaussian(qi, 0, 2)});
  CHECK(polynomial_str(g) == "2i*x");
}

TEST_CASE("printed functions re-parse to identical canonical forms") {
  WeierstrassCurve E = parse_curve("E/Q(i):[0,-1,0]");
  FieldRef f = E.field();
  std::mt19937_64 rng(71);
  for (int k = 0; k < 60; ++k) {
    std::vector<FieldElement> cu, cv, cd;
    for (int j = 0; j < 4; ++j)
      cu.push_back(FieldElement::gaussian(f, mpq_class(static_cast<long>(rng() % 9) - 4, 2),
                                          mpq_class(static_cast<long>(rng() % 9) - 4, 3)));
    for (int j = 0; j < 3; ++j)
      cv.push_back(FieldElement::from_long(f, static_cast<long>(rng() % 9) - 4));
    for (int j = 0; j < 3; ++j)
      cd.push_back(FieldElement::from_long(f, static_cast<long>(rng() % 5) - 2));
    CurveFunction num(E, Polynomial(f, cu), Polynomial(f, cv));
    Polynomial den(f, cd);
    if (num.is_zero() || den.is_zero()) continue;
    CurveRationalFunction h(num, den);
    CurveRationalFunction back = parse_crf(E, crf_str(h));
    CHECK(back == h);
  }
}

TEST_CASE("printed prime-field functions re-parse") {
  WeierstrassCurve E = parse_curve("E/Fp:13:[0,-1,0]");
  CurveRationalFunction h =
      (CurveRationalFunction::x_over(E).pow(3) - CurveRationalFunction::y_over(E)) /
      (CurveRationalFunction::x_over(E) - CurveRationalFunction::constant(
                                              E, FieldElement::fp(E.field(), 5)));
  CHECK(parse_crf(E, crf_str(h)) == h);
}
