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

#include "isopoly/polynomial.hpp"

using namespace isopoly;

namespace {

Polynomial rnd_poly(const FieldRef& f, std::mt19937_64& rng, long maxdeg) {
  long d = static_cast<long>(rng() % (maxdeg + 1));
  std::vector<FieldElement> c;
  for (long k = 0; k <= d; ++k)
    c.push_back(FieldElement::from_long(f, static_cast<long>(rng() % 19) - 9));
  return Polynomial(f, std::move(c));
}

}  // namespace

TEST_CASE("gcd and divmod basics") {
  FieldRef q = Field::rationals();
  Polynomial x2m1 = Polynomial::from_longs(q, {-1, 0, 1});       // x^2 - 1
  Polynomial x3mx = Polynomial::from_longs(q, {0, -1, 0, 1});    // x^3 - x
  CHECK(Polynomial::gcd(x2m1, x3mx) == x2m1);
  auto [quo, rem] = x3mx.divmod(Polynomial::x(q));
  CHECK(quo == x2m1);
  CHECK(rem.is_zero());
  CHECK_THROWS_AS(x3mx.divmod(Polynomial(q)), domain_error);
}

TEST_CASE("evaluation over the Gaussian rationals") {
  FieldRef qi = Field::gaussian_rationals();
  Polynomial p = Polynomial::from_longs(qi, {1, 0, 1});  // x^2 + 1
  CHECK(p.eval(FieldElement::sqrt_minus_one(qi)).is_zero());
}

TEST_CASE("ring axioms on random polynomial triples") {
  std::mt19937_64 rng(5);
  for (const auto& f : {Field::rationals(), Field::prime_field(17)}) {
    for (int k = 0; k < 200; ++k) {
      Polynomial a = rnd_poly(f, rng, 6), b = rnd_poly(f, rng, 6), c = rnd_poly(f, rng, 6);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("divmod reconstructs and gcd divides") {
  std::mt19937_64 rng(9);
  FieldRef f = Field::prime_field(13);
  for (int k = 0; k < 100; ++k) {
    Polynomial a = rnd_poly(f, rng, 8), b = rnd_poly(f, rng, 5);
    if (b.is_zero()) continue;
    auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.degree() < b.degree()));
    Polynomial g = Polynomial::gcd(a, b);
    if (!a.is_zero() && !g.is_zero()) {
      CHECK(a.divmod(g).second.is_zero());
      CHECK(b.divmod(g).second.is_zero());
      CHECK(g.is_monic());
    }
  }
}

TEST_CASE("monic square root") {
  FieldRef q = Field::rationals();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 40; ++k) {
    Polynomial s = rnd_poly(q, rng, 4);
    if (s.is_zero()) continue;
    Polynomial sm = s.monic();
    auto r = (sm * sm).sqrt_monic();
    REQUIRE(r.has_value());
    CHECK(*r == sm);
  }
  CHECK(!Polynomial::from_longs(q, {1, 1, 1}).sqrt_monic().has_value());
}

TEST_CASE("roots over prime fields are complete") {
  FieldRef f = Field::prime_field(13);
  // (x - 2)(x - 5)(x - 5) has roots {2, 5}
  Polynomial p = Polynomial::from_longs(f, {-2, 1}) * Polynomial::from_longs(f, {-5, 1}) *
                 Polynomial::from_longs(f, {-5, 1});
  auto rs = p.roots();
  REQUIRE(rs.size() == 2);
  CHECK(rs[0] == FieldElement::fp(f, 2));
  CHECK(rs[1] == FieldElement::fp(f, 5));
  // brute-force agreement on a random cubic family
  std::mt19937_64 rng(3);
  for (int k = 0; k < 30; ++k) {
    Polynomial c = rnd_poly(f, rng, 3);
    if (c.degree() < 1) continue;
    std::size_t expect = 0;
    for (std::uint64_t v = 0; v < 13; ++v)
      if (c.eval(FieldElement::fp(f, v)).is_zero()) ++expect;
    CHECK(c.roots().size() == expect);
  }
}

TEST_CASE("rational and Gaussian root search") {
  FieldRef q = Field::rationals();
  Polynomial p = Polynomial::from_longs(q, {1, -4, 4});  // (2x - 1)^2
  auto rs = p.roots();
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == FieldElement::from_mpq(q, mpq_class(1, 2)));
  CHECK(Polynomial::from_longs(q, {-2, 0, 0, 1}).roots().empty());  // x^3 - 2

  FieldRef qi = Field::gaussian_rationals();
  auto gs = Polynomial::from_longs(qi, {1, 0, 1}).roots();  // x^2 + 1
  REQUIRE(gs.size() == 2);
  CHECK(gs[0] * gs[0] == FieldElement::from_long(qi, -1));
}
