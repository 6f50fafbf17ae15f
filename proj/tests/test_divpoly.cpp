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

#include "isopoly/divpoly.hpp"
#include "isopoly/textio.hpp"

using namespace isopoly;

namespace {

WeierstrassCurve cm_curve() {
  return WeierstrassCurve::from_longs(Field::gaussian_rationals(), 0, -1, 0);
}

// Engine with the catalog configuration: g1 = [1+i], Vélu quotients at
// (1,0) and (-1,0), convention-solved scaling.
PsiEngine golden_engine() {
  WeierstrassCurve E = cm_curve();
  GChoices g = PsiEngine::default_gchoices(E);
  g.g[0] = Isogeny::gaussian(E, 1, 1);
  return PsiEngine(E, g, convention_solve(E, g));
}

}  // namespace

TEST_CASE("classical division polynomials") {
  WeierstrassCurve E = cm_curve();
  FieldRef f = E.field();
  CHECK(classical_psi(E, 0).is_zero());
  CHECK(classical_psi(E, 1) == CurveFunction::one(E));
  CHECK(classical_psi(E, 2) ==
        CurveFunction(E, Polynomial(f), Polynomial::constant(FieldElement::from_long(f, -2))));
  CHECK(classical_psi(E, 3) ==
        CurveFunction::xpoly(E, Polynomial::from_longs(f, {-1, 0, -6, 0, 3})));
  // index 4 from the recurrence: -4y(x^2+1)(x^2-2x-1)(x^2+2x-1)
  Polynomial expect4 = Polynomial::from_longs(f, {1, 0, 1}) *
                       Polynomial::from_longs(f, {-1, -2, 1}) *
                       Polynomial::from_longs(f, {-1, 2, 1});
  CHECK(classical_psi(E, 4) ==
        CurveFunction(E, Polynomial(f), expect4.scaled(FieldElement::from_long(f, -4))));
  CHECK(classical_psi(E, -3) == -classical_psi(E, 3));

  // catalog index 5 value, expanded
  WeierstrassCurve Eq = cm_curve();
  CurveFunction psi5 = classical_psi(Eq, 5);
  CurveRationalFunction expect5 =
      parse_crf(Eq, "5*(x^2 - 2/5i - 1/5)*(x^2 + 2/5i - 1/5)*(x^8 - 12*x^6 - 26*x^4 + 52*x^2 + 1)");
  CHECK(CurveRationalFunction::from(psi5) == expect5);
}

TEST_CASE("classical recurrence instances hold as functions") {
  WeierstrassCurve E = WeierstrassCurve::from_longs(Field::prime_field(13), 2, -1, 3);
  // general recurrence with (p,q,r,s) = (4,3,2,1) and (5,2,3,1)
  auto psi = [&](long n) { return CurveRationalFunction::from(classical_psi(E, n)); };
  for (auto [p, q, r, s] : std::vector<std::array<long, 4>>{{4, 3, 2, 1}, {5, 2, 3, 1}}) {
    CurveRationalFunction t1 = psi(p + q + s) * psi(p - q) * psi(r + s) * psi(r);
    CurveRationalFunction t2 = psi(q + r + s) * psi(q - r) * psi(p + s) * psi(p);
    CurveRationalFunction t3 = psi(r + p + s) * psi(r - p) * psi(q + s) * psi(q);
    CHECK((t1 + t2 + t3).is_zero());
  }
}

TEST_CASE("quadratic identity check") {
  // parallelogram: q(a+b) + q(a-b) - 2q(a) - 2q(b) = 0
  std::vector<std::pair<std::vector<long>, long>> par = {
      {{2, 1}, 1}, {{0, 1}, 1}, {{1, 1}, -2}, {{1, 0}, -2}};
  CHECK(quadratic_identity_check(par));
  // cube identity on (a, b, c) in rank 3
  std::vector<std::pair<std::vector<long>, long>> cube = {
      {{1, 1, 1}, 1}, {{1, 1, 0}, -1}, {{0, 1, 1}, -1}, {{1, 0, 1}, -1},
      {{1, 0, 0}, 1}, {{0, 1, 0}, 1},  {{0, 0, 1}, 1}};
  CHECK(quadratic_identity_check(cube));
  std::vector<std::pair<std::vector<long>, long>> bad = {{{1, 0}, 1}, {{0, 1}, -1}};
  CHECK(!quadratic_identity_check(bad));
}

TEST_CASE("convention constant and scaling") {
  WeierstrassCurve E = cm_curve();
  FieldRef f = E.field();
  FieldElement i = FieldElement::sqrt_minus_one(f);

  GChoices velu = PsiEngine::default_gchoices(E);
  DifferentialScaling s0 = convention_solve(E, velu);
  CHECK(s0.lambda.is_one());
  CHECK(s0.lambda1.is_one());
  CHECK(s0.lambda2.is_one());
  CHECK(s0.lambda3 == FieldElement::from_long(f, 2));  // all Vélu leads are 1

  GChoices g = velu;
  g.g[0] = Isogeny::gaussian(E, 1, 1);
  DifferentialScaling s1 = convention_solve(E, g);
  CHECK(s1.lambda3 == FieldElement::one(f) - i);  // 2/(1+i)

  // the convention constraint: kernel function of the distinguished sum is 1
  for (const auto& sc : {std::pair{velu, s0}, std::pair{g, s1}}) {
    PsiEngine eng(E, sc.first, sc.second);
    NormalizedFunction one = eng.kernel_function(eng.kersum2_symbols());
    CHECK(one.value == CurveRationalFunction::one(E));
  }
}

TEST_CASE("catalog values under the golden configuration") {
  PsiEngine eng = golden_engine();
  const WeierstrassCurve& E = eng.curve();
  FieldRef f = E.field();
  FieldElement i = FieldElement::sqrt_minus_one(f);

  CHECK(eng.psi(HomElement::gauss(0, 1)).value == parse_crf(E, "i"));
  CHECK(eng.psi(HomElement::gauss(1, 1)).value == parse_crf(E, "2i*x"));
  CHECK(eng.psi(HomElement::gauss(1, 2)).value == parse_crf(E, "(1+2i)*(x^2 + 2/5i - 1/5)"));
  CHECK(eng.psi(HomElement::gauss(2, 1)).value == parse_crf(E, "(2+i)*(x^2 - 2/5i - 1/5)"));
  CHECK(eng.psi(HomElement::gauss(2, 2)).value ==
        parse_crf(E, "-(2+2i)*y*(x-i)*(x+i)"));
  // classical indices agree with the kernel-function route
  for (long n : {2L, 3L, 4L}) {
    CHECK(eng.psi(HomElement::integer(n)).value ==
          CurveRationalFunction::from(classical_psi(E, n)));
  }
  // under the pinned first slot, the conjugate kernel gets lead 2
  CHECK(eng.psi(HomElement::gauss(1, -1)).value == parse_crf(E, "2*x"));

  // hat functions
  CHECK(eng.psi_hat(0).value == CurveRationalFunction::one(E));
  CHECK(eng.psi_hat(1).value == parse_crf(E, "2i*x"));
  CHECK(eng.psi_hat(eng.resolve(HomElement::gauss(1, 1))).value == parse_crf(E, "2i*x"));

  // velu-headed labels
  Point P10 = Point::affine(E, FieldElement::one(f), FieldElement::zero(f));
  HomElement velu = HomElement::explicit_isogeny(Isogeny::velu2(E, P10), "velu2@(1,0)");
  CHECK(eng.psi(velu).value == parse_crf(E, "x - 1"));
  HomElement comp = HomElement::chain({velu, HomElement::gauss(1, 1)});
  CHECK(eng.psi(comp).value == parse_crf(E, "2i*x*(x-i)"));
  CHECK(eng.psi_hat(eng.resolve(comp)).value == parse_crf(E, "2i*x"));
  (void)i;
}

TEST_CASE("conjugate configuration reproduces the conjugate catalog value") {
  WeierstrassCurve E = cm_curve();
  GChoices g = PsiEngine::default_gchoices(E);
  g.g[0] = Isogeny::gaussian(E, 1, -1);
  PsiEngine eng(E, g, convention_solve(E, g));
  CHECK(eng.psi(HomElement::gauss(1, -1)).value == parse_crf(E, "-2i*x"));
}

TEST_CASE("default Vélu choice yields the same functions up to scalars") {
  WeierstrassCurve E = cm_curve();
  PsiEngine eng(E, PsiEngine::default_gchoices(E), DifferentialScaling::ones(E.field()));
  // before convention rescaling, the first-slot hat function is x
  CHECK(eng.psi_hat(1).value == parse_crf(E, "x"));
  PsiEngine conv(E, PsiEngine::default_gchoices(E),
                 convention_solve(E, PsiEngine::default_gchoices(E)));
  // psi of 1+i under default choices: (1+i) x
  CHECK(conv.psi(HomElement::gauss(1, 1)).value == parse_crf(E, "(1+i)*x"));
}

TEST_CASE("kernel function basics and errors") {
  PsiEngine eng = golden_engine();
  const WeierstrassCurve& E = eng.curve();
  // (K_[n]) - n^2 (K_1) is the classical division polynomial
  for (long n : {2L, 3L}) {
    KernelSymbolSum s;
    s.add(Isogeny::multiplication(E, n), 1).add(Isogeny::identity(E), -n * n);
    CHECK(eng.kernel_function(s).value == CurveRationalFunction::from(classical_psi(E, n)));
  }
  // non-principal: biased kernel without the correction
  KernelSymbolSum bad;
  bad.add(Isogeny::gaussian(E, 1, 1), 1).add(Isogeny::identity(E), -2);
  CHECK_THROWS_AS(eng.kernel_function(bad), non_principal);
  // degree violation
  KernelSymbolSum deg;
  deg.add(Isogeny::multiplication(E, 2), 1);
  CHECK_THROWS_AS(eng.kernel_function(deg), non_principal);
}

TEST_CASE("tilde functions and the square relation") {
  PsiEngine eng = golden_engine();
  const WeierstrassCurve& E = eng.curve();
  // unbiased: tilde = psi^2
  Isogeny three = Isogeny::multiplication(E, 3);
  CHECK(eng.psi_tilde(three).value == eng.psi(three).value.pow(2));
  // in general tilde * hat = psi^2
  for (auto h : {HomElement::gauss(1, 1), HomElement::gauss(2, 1), HomElement::gauss(2, 2)}) {
    Isogeny phi = eng.resolve(h);
    CHECK(eng.psi_tilde(phi).value * eng.psi_hat(phi).value == eng.psi(phi).value.pow(2));
  }
  // velu-headed magnified label
  Point P10 = Point::affine(E, FieldElement::one(E.field()), FieldElement::zero(E.field()));
  Isogeny velu = Isogeny::velu2(E, P10);
  CHECK(eng.psi_tilde(velu).value * eng.psi_hat(velu).value == eng.psi(velu).value.pow(2));
}

TEST_CASE("multiplicativity of kernel functions") {
  PsiEngine eng = golden_engine();
  const WeierstrassCurve& E = eng.curve();
  std::mt19937_64 rng(61);
  int done = 0;
  while (done < 30) {
    long a = static_cast<long>(rng() % 5) - 2, b = static_cast<long>(rng() % 5) - 2;
    long c = static_cast<long>(rng() % 5) - 2, d = static_cast<long>(rng() % 5) - 2;
    if ((a == 0 && b == 0) || (c == 0 && d == 0)) continue;
    Isogeny phi = Isogeny::gaussian(E, a, b);
    Isogeny psi2 = Isogeny::gaussian(E, c, d);
    KernelSymbolSum s1 = eng.psi_symbols(phi);
    KernelSymbolSum s2 = eng.psi_symbols(psi2);
    KernelSymbolSum sum = s1;
    for (const auto& [iso, n] : s2.terms) sum.add(iso, n);
    NormalizedFunction product_fn = eng.kernel_function(sum);
    CHECK(product_fn.value == eng.psi(phi).value * eng.psi(psi2).value);
    ++done;
  }
}

TEST_CASE("invariance under symbol rewriting modulo the distinguished sum") {
  PsiEngine eng = golden_engine();
  const WeierstrassCurve& E = eng.curve();
  // hat_1 via its own symbols vs the same divisor with the distinguished sum added
  KernelSymbolSum s1 = eng.hat_symbols(1);
  KernelSymbolSum s2 = s1;
  for (const auto& [iso, n] : eng.kersum2_symbols().terms) s2.add(iso, n);
  CHECK(eng.kernel_function(s1).value == eng.kernel_function(s2).value);
  // product of the three hat functions is the square of the second
  // division polynomial (uses the convention)
  CurveRationalFunction prod =
      eng.psi_hat(1).value * eng.psi_hat(2).value * eng.psi_hat(3).value;
  CHECK(prod == CurveRationalFunction::from(classical_psi(E, 2)).pow(2));
}

TEST_CASE("independence from the target differential when exponents cancel") {
  WeierstrassCurve E = cm_curve();
  FieldRef f = E.field();
  GChoices g = PsiEngine::default_gchoices(E);
  DifferentialScaling sc = convention_solve(E, g);
  PsiEngine plain(E, g, sc);
  PsiEngine scaled(E, g, sc);
  // rescale the differential on the Vélu target curve
  WeierstrassCurve target = g.g[1].target();
  scaled.override_target_scale(target, FieldElement::from_long(f, 7));
  // exponent-sum zero over Hom(E, target): (K_g2) - (K_g2') with the two
  // degree-2 isogenies to the same target... use (K_phi) - (K_phi) trivially
  // nonzero instead: two distinct odd endomorphisms with the same target E.
  scaled.override_target_scale(E, FieldElement::from_long(f, 5));
  KernelSymbolSum s;
  s.add(Isogeny::gaussian(E, 1, 2), 1).add(Isogeny::gaussian(E, 2, 1), -1);
  CHECK(plain.kernel_function(s).value == scaled.kernel_function(s).value);
  // nonzero exponent sum does depend on the scaling
  KernelSymbolSum dep;
  dep.add(Isogeny::gaussian(E, 1, 2), 1).add(Isogeny::identity(E), -5);
  CHECK(plain.kernel_function(dep).value != scaled.kernel_function(dep).value);
}

TEST_CASE("square roots of hat products") {
  PsiEngine eng = golden_engine();
  // even-exponent square: the negated parallelogram exponents give hat(1+i)^-2
  std::vector<std::pair<HomElement, long>> even = {{HomElement::gauss(1, 1), -1},
                                                   {HomElement::gauss(1, -1), -1},
                                                   {HomElement::gauss(1, 0), 2},
                                                   {HomElement::gauss(0, 1), 2}};
  NormalizedFunction r = eng.sqrt_hat_product(even);
  CHECK(r.value == eng.psi_hat(1).value.inverse());

  // parallelogram exponents in a configuration where biased classes appear
  std::vector<std::pair<HomElement, long>> par = {{HomElement::gauss(1, 1), 1},
                                                  {HomElement::gauss(1, -1), 1},
                                                  {HomElement::gauss(1, 0), -2},
                                                  {HomElement::gauss(0, 1), -2}};
  NormalizedFunction root = eng.sqrt_hat_product(par);
  CurveRationalFunction square = eng.psi_hat(eng.resolve(HomElement::gauss(1, 1))).value *
                                 eng.psi_hat(eng.resolve(HomElement::gauss(1, -1))).value;
  CHECK(root.value * root.value == square);

  // cube exponents where all three biased slots appear oddly -> y factor
  Point P10 = Point::affine(eng.curve(), FieldElement::one(eng.curve().field()),
                            FieldElement::zero(eng.curve().field()));
  Point Pm10 = Point::affine(eng.curve(), -FieldElement::one(eng.curve().field()),
                             FieldElement::zero(eng.curve().field()));
  HomElement a = HomElement::gauss(1, 1);                      // slot 1
  HomElement b = HomElement::explicit_isogeny(Isogeny::velu2(eng.curve(), P10), "g2");
  HomElement c = HomElement::explicit_isogeny(Isogeny::velu2(eng.curve(), Pm10), "g3");
  (void)b;
  (void)c;
  // all three two-torsion slots odd: hat(g1) hat(g2) hat(g3) via Gaussian
  // labels alone is impossible, so square the check instead on (1+i) classes:
  std::vector<std::pair<HomElement, long>> odd = {{HomElement::gauss(1, 1), 1},
                                                  {HomElement::gauss(1, -1), 1},
                                                  {HomElement::gauss(1, 0), -1},
                                                  {HomElement::gauss(0, 1), -1}};
  // q(1+i) + q(1-i) - q(1) - q(i) = 2+2-1-1 != 0 as quadratic identity? It is
  // not; expect a rejection.
  CHECK_THROWS_AS(eng.sqrt_hat_product(odd), domain_error);

  // failing the check is an error
  std::vector<std::pair<HomElement, long>> bad = {{HomElement::gauss(1, 0), 1},
                                                  {HomElement::gauss(0, 1), -1}};
  CHECK_THROWS_AS(eng.sqrt_hat_product(bad), domain_error);
}

TEST_CASE("audit validates every golden function") {
  PsiEngine eng = golden_engine();
  for (auto h : {HomElement::gauss(0, 1), HomElement::gauss(1, 1), HomElement::gauss(1, -1),
                 HomElement::gauss(1, 2), HomElement::gauss(2, 1), HomElement::gauss(2, 2),
                 HomElement::integer(2), HomElement::integer(3), HomElement::integer(4)}) {
    CHECK(eng.audit(eng.psi(h)) > 0);
  }
  for (int idx : {1, 2, 3}) CHECK(eng.audit(eng.psi_hat(idx)) > 0);
}

TEST_CASE("biased labels over unsplit two-torsion request an extension") {
  WeierstrassCurve E = WeierstrassCurve::from_longs(Field::prime_field(11), 0, 1, 0);
  // x^3 + x = x(x^2+1), and -1 is not a square mod 11: partial splitting
  TwoTorsion tt = two_torsion(E);
  CHECK(!tt.split);
  REQUIRE(tt.points.size() == 1);
  PsiEngine eng(E, std::nullopt, DifferentialScaling::ones(E.field()));
  Isogeny velu = Isogeny::velu2(E, tt.points[0]);
  CHECK_THROWS_AS(eng.psi(velu), extension_required);
  // unbiased multiplication still works without split two-torsion
  CHECK(eng.psi(HomElement::integer(2)).value ==
        CurveRationalFunction::from(classical_psi(E, 2)));
}
