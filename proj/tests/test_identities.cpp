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

#include "isopoly/identities.hpp"
#include "isopoly/textio.hpp"

using namespace isopoly;

namespace {

PsiEngine golden_engine() {
  WeierstrassCurve E = WeierstrassCurve::from_longs(Field::gaussian_rationals(), 0, -1, 0);
  GChoices g = PsiEngine::default_gchoices(E);
  g.g[0] = Isogeny::gaussian(E, 1, 1);
  return PsiEngine(E, g, convention_solve(E, g));
}

HomElement velu_label(const PsiEngine& eng) {
  const WeierstrassCurve& E = eng.curve();
  Point P10 = Point::affine(E, FieldElement::one(E.field()), FieldElement::zero(E.field()));
  return HomElement::explicit_isogeny(Isogeny::velu2(E, P10), "velu2@(1,0)");
}

}  // namespace

TEST_CASE("first chain rule, unbiased and biased") {
  PsiEngine eng = golden_engine();
  // classical instance [2] o [3]
  IdentityReport r =
      verify_chain(eng, eng.resolve(HomElement::integer(2)), HomElement::integer(3), false);
  CHECK(r.equal);
  // [i] o [i]: both sides constant
  IdentityReport ri =
      verify_chain(eng, eng.resolve(HomElement::gauss(0, 1)), HomElement::gauss(0, 1), false);
  CHECK(ri.equal);
  CHECK(ri.lhs == parse_crf(eng.curve(), "-1"));
  // unbiased mode rejects biased labels
  CHECK_THROWS_AS(
      verify_chain(eng, eng.resolve(HomElement::gauss(1, 1)), HomElement::integer(3), false),
      domain_error);
  // biased catalog instance: both sides 1/(x-i)^2
  IdentityReport rb = verify_chain(eng, eng.resolve(velu_label(eng)), HomElement::gauss(1, 1), true);
  CHECK(rb.equal);
  CHECK(rb.lhs == parse_crf(eng.curve(), "1/((x-i)^2)"));
}

TEST_CASE("relation to x") {
  PsiEngine eng = golden_engine();
  const WeierstrassCurve& E = eng.curve();
  // classical (2, 1): the combination equals x - x o [2]
  IdentityReport r = verify_rel_x(eng, HomElement::integer(2), HomElement::integer(1));
  CHECK(r.equal);
  CurveRationalFunction x = CurveRationalFunction::x_over(E);
  CurveRationalFunction x2 = eng.resolve(HomElement::integer(2)).x_map();
  CHECK(r.lhs == x - x2);
  CHECK(r.lhs == parse_crf(E, "(3*x^4 - 6*x^2 - 1)/(4*(x^3 - x))"));
  // CM instance
  CHECK(verify_rel_x(eng, HomElement::gauss(1, 1), HomElement::gauss(0, 1)).equal);
  // degenerate labels rejected
  CHECK_THROWS_AS(verify_rel_x(eng, HomElement::integer(2), HomElement::integer(2)), domain_error);
  // antisymmetry: swapping labels negates both sides
  IdentityReport rs = verify_rel_x(eng, HomElement::integer(1), HomElement::integer(2));
  CHECK(rs.equal);
  CHECK(rs.lhs == -r.lhs);
}

TEST_CASE("first recurrence") {
  PsiEngine eng = golden_engine();
  CHECK(verify_rec1(eng, HomElement::gauss(1, 1), HomElement::gauss(0, 1), HomElement::integer(1))
            .equal);
  CHECK(verify_rec1(eng, HomElement::integer(2), HomElement::integer(1), HomElement::integer(3))
            .equal);
  // symmetry in the inputs
  CHECK(verify_rec1(eng, HomElement::integer(3), HomElement::integer(2), HomElement::integer(1))
            .equal);
  CHECK_THROWS_AS(
      verify_rec1(eng, HomElement::integer(1), HomElement::integer(-1), HomElement::integer(2)),
      domain_error);
}

TEST_CASE("second relation to x") {
  PsiEngine eng = golden_engine();
  CHECK(verify_rel_x2(eng, HomElement::integer(3), HomElement::integer(1), HomElement::integer(1))
            .equal);
  CHECK(verify_rel_x2(eng, HomElement::gauss(1, 1), HomElement::gauss(0, 1), HomElement::integer(1))
            .equal);
  CHECK_THROWS_AS(verify_rel_x2(eng, HomElement::integer(2), HomElement::integer(1),
                                HomElement::integer(-2)),
                  domain_error);
}

TEST_CASE("second recurrence") {
  PsiEngine eng = golden_engine();
  CHECK(verify_rec2(eng, HomElement::integer(3), HomElement::integer(2), HomElement::integer(1),
                    HomElement::integer(1))
            .equal);
  CHECK(verify_rec2(eng, HomElement::gauss(1, 1), HomElement::gauss(0, 1), HomElement::integer(1),
                    HomElement::gauss(0, 1))
            .equal);
  // biased sigma goes through the common-factor form
  CHECK(verify_rec2(eng, HomElement::integer(2), HomElement::gauss(0, 2), HomElement::gauss(2, 1),
                    HomElement::gauss(1, 1))
            .equal);
  CHECK_THROWS_AS(verify_rec2(eng, HomElement::integer(2), HomElement::integer(1),
                              HomElement::integer(3), HomElement::integer(-2)),
                  domain_error);
}

TEST_CASE("second chain rule") {
  PsiEngine eng = golden_engine();
  std::vector<std::pair<HomElement, long>> par = {{HomElement::gauss(1, 1), 1},
                                                  {HomElement::gauss(1, -1), 1},
                                                  {HomElement::integer(1), -2},
                                                  {HomElement::gauss(0, 1), -2}};
  CHECK(verify_second_chain(eng, par, HomElement::integer(2)).equal);
  CHECK(verify_second_chain(eng, par, HomElement::gauss(1, 1)).equal);
  // all-zero exponents: both sides 1
  std::vector<std::pair<HomElement, long>> zero = {{HomElement::integer(1), 0}};
  IdentityReport rz = verify_second_chain(eng, zero, HomElement::integer(2));
  CHECK(rz.equal);
  CHECK(rz.lhs == CurveRationalFunction::one(eng.curve()));
  // failing the quadratic check is an error
  std::vector<std::pair<HomElement, long>> bad = {{HomElement::integer(1), 1},
                                                  {HomElement::gauss(0, 1), -1}};
  CHECK_THROWS_AS(verify_second_chain(eng, bad, HomElement::integer(2)), domain_error);
}

TEST_CASE("pullback lemma") {
  PsiEngine eng = golden_engine();
  const WeierstrassCurve& E = eng.curve();
  KernelSymbolSum s;
  s.add(Isogeny::multiplication(E, 2), 1).add(Isogeny::identity(E), -4);
  CHECK(verify_pullback_lemma(eng, s, HomElement::integer(3)).equal);
  CHECK(verify_pullback_lemma(eng, s, HomElement::gauss(1, 1)).equal);
  // trivial sum: 1 = 1
  KernelSymbolSum trivial;
  IdentityReport rt = verify_pullback_lemma(eng, trivial, HomElement::integer(2));
  CHECK(rt.equal);
  CHECK(rt.lhs == CurveRationalFunction::one(E));
  // non-principal input
  KernelSymbolSum bad;
  bad.add(Isogeny::gaussian(E, 1, 1), 1).add(Isogeny::identity(E), -2);
  CHECK_THROWS_AS(verify_pullback_lemma(eng, bad, HomElement::integer(3)), non_principal);
}

TEST_CASE("biased chain-rule ratio is invariant under target rescaling") {
  WeierstrassCurve E = WeierstrassCurve::from_longs(Field::gaussian_rationals(), 0, -1, 0);
  GChoices g = PsiEngine::default_gchoices(E);
  g.g[0] = Isogeny::gaussian(E, 1, 1);
  DifferentialScaling sc = convention_solve(E, g);
  PsiEngine plain(E, g, sc);
  PsiEngine scaled(E, g, sc);
  // use the quotient at (0,0); [1+i] holds its slot, so this map is not a
  // distinguished choice and the override applies uniformly
  Point P00 = Point::affine(E, FieldElement::zero(E.field()), FieldElement::zero(E.field()));
  Isogeny velu = Isogeny::velu2(E, P00);
  scaled.override_target_scale(velu.target(), FieldElement::from_long(E.field(), 3));
  IdentityReport r1 = verify_chain(plain, velu, HomElement::gauss(1, 1), true);
  IdentityReport r2 = verify_chain(scaled, velu, HomElement::gauss(1, 1), true);
  CHECK(r1.equal);
  CHECK(r2.equal);
  CHECK(r1.lhs == r2.lhs);
}

TEST_CASE("identities hold over the quadratic extension") {
  FieldRef ext = Field::quad_ext(11);
  WeierstrassCurve E = WeierstrassCurve::from_longs(ext, 0, -1, 0);
  GChoices g = PsiEngine::default_gchoices(E);
  PsiEngine eng(E, g, convention_solve(E, g));
  CHECK(verify_rel_x(eng, HomElement::integer(2), HomElement::integer(1)).equal);
  CHECK(eng.curve().field()->name() == "F_11^2");
}

TEST_CASE("randomized suites over small prime fields") {
  std::mt19937_64 rng(2026);
  for (std::uint64_t p : {13ull, 17ull}) {
    WeierstrassCurve E = WeierstrassCurve::from_longs(Field::prime_field(p), 0, -1, 0);
    GChoices g = PsiEngine::default_gchoices(E);
    PsiEngine eng(E, g, convention_solve(E, g));
    auto rnd_label = [&]() {
      while (true) {
        long a = static_cast<long>(rng() % 7) - 3;
        long b = static_cast<long>(rng() % 7) - 3;
        if (a || b) return HomElement::gauss(a, b);
      }
    };
    int done = 0;
    while (done < 10) {
      HomElement a = rnd_label(), b = rnd_label(), c = rnd_label(), s = rnd_label();
      try {
        IdentityReport r1 = verify_rel_x(eng, a, b);
        IdentityReport r2 = verify_rec1(eng, a, b, c);
        IdentityReport r3 = verify_rel_x2(eng, a, b, s);
        CHECK(r1.equal);
        CHECK(r2.equal);
        CHECK(r3.equal);
        ++done;
      } catch (const domain_error&) {
        // degenerate draw; resample
      }
    }
  }
}
