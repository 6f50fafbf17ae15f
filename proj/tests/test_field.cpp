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

#include "isopoly/field.hpp"

using namespace isopoly;

namespace {

FieldElement rnd(const FieldRef& f, std::mt19937_64& rng) {
  switch (f->kind) {
    case FieldKind::Rationals: {
      long n = static_cast<long>(rng() % 41) - 20;
      long d = 1 + static_cast<long>(rng() % 9);
      return FieldElement::from_mpq(f, mpq_class(n, d));
    }
    case FieldKind::GaussianRationals: {
      long a = static_cast<long>(rng() % 21) - 10;
      long b = static_cast<long>(rng() % 21) - 10;
      return FieldElement::gaussian(f, mpq_class(a, 3), mpq_class(b, 2));
    }
    case FieldKind::PrimeField: return FieldElement::fp(f, rng() % f->p);
    case FieldKind::QuadExt: return FieldElement::fp2(f, rng() % f->p, rng() % f->p);
  }
  return FieldElement::zero(f);
}

}  // namespace

TEST_CASE("field construction rejects bad moduli") {
  CHECK_THROWS_AS(Field::prime_field(2), domain_error);
  CHECK_THROWS_AS(Field::prime_field(1), domain_error);
  CHECK_THROWS_AS(Field::prime_field(15), domain_error);
  CHECK_NOTHROW(Field::prime_field(3));
}

TEST_CASE("sqrt of -1 availability") {
  CHECK(!Field::rationals()->has_sqrt_minus_one());
  CHECK(Field::gaussian_rationals()->has_sqrt_minus_one());
  CHECK(Field::prime_field(13)->has_sqrt_minus_one());
  CHECK(!Field::prime_field(11)->has_sqrt_minus_one());
  CHECK(Field::quad_ext(11)->has_sqrt_minus_one());
  FieldRef f13 = Field::prime_field(13);
  FieldElement i = FieldElement::sqrt_minus_one(f13);
  CHECK(i * i == -FieldElement::one(f13));
  CHECK(i.fp_value() == 5);  // smaller residue of {5, 8}
}

TEST_CASE("ring axioms on random triples in every field") {
  std::mt19937_64 rng(42);
  std::vector<FieldRef> fields = {Field::rationals(), Field::gaussian_rationals(),
                                  Field::prime_field(13), Field::quad_ext(11)};
  for (const auto& f : fields) {
    for (int k = 0; k < 200; ++k) {
      FieldElement a = rnd(f, rng), b = rnd(f, rng), c = rnd(f, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement::one(f));
    }
  }
}

TEST_CASE("square roots: identities and canonical signs") {
  FieldRef q = Field::rationals();
  CHECK(*FieldElement::from_long(q, 4).sqrt() == FieldElement::from_long(q, 2));
  CHECK(!FieldElement::from_long(q, 2).sqrt().has_value());
  CHECK(!FieldElement::from_long(q, -4).sqrt().has_value());

  FieldRef qi = Field::gaussian_rationals();
  FieldElement two_i = FieldElement::gaussian(qi, 0, 2);
  FieldElement r = *two_i.sqrt();
  CHECK(r == FieldElement::gaussian(qi, 1, 1));  // (1+i)^2 = 2i
  CHECK(r * r == two_i);
  CHECK(*FieldElement::from_long(qi, -4).sqrt() == FieldElement::gaussian(qi, 0, 2));

  FieldRef f11 = Field::prime_field(11);
  CHECK(*FieldElement::fp(f11, 3).sqrt() == FieldElement::fp(f11, 5));  // 5^2 = 25 = 3
  // Euler criterion agreement
  for (std::uint64_t v = 1; v < 11; ++v) {
    bool has = FieldElement::fp(f11, v).sqrt().has_value();
    bool euler = FieldElement::fp(f11, v).pow(5).is_one();
    CHECK(has == euler);
  }
}

TEST_CASE("square roots in the quadratic extension") {
  FieldRef f = Field::quad_ext(13);
  std::mt19937_64 rng(7);
  int found = 0;
  for (int k = 0; k < 60; ++k) {
    FieldElement a = rnd(f, rng);
    auto s = a.sqrt();
    if (s) {
      ++found;
      CHECK(*s * *s == a);
    }
  }
  CHECK(found > 10);
  // every base-field element becomes a square upstairs
  FieldRef base = Field::prime_field(13);
  for (std::uint64_t v = 1; v < 13; ++v) {
    FieldElement lifted = lift_to_quad_ext(FieldElement::fp(base, v), f);
    CHECK(lifted.sqrt().has_value());
  }
}

TEST_CASE("cube roots") {
  FieldRef q = Field::rationals();
  CHECK(*FieldElement::from_long(q, 27).cbrt() == FieldElement::from_long(q, 3));
  CHECK(*FieldElement::from_long(q, -8).cbrt() == FieldElement::from_long(q, -2));
  CHECK(!FieldElement::from_long(q, 4).cbrt().has_value());

  for (std::uint64_t p : {11ull, 13ull, 37ull}) {  // 11 = 2 mod 3, others = 1 mod 3
    FieldRef f = Field::prime_field(p);
    for (std::uint64_t v = 0; v < p; ++v) {
      FieldElement c = FieldElement::fp(f, v);
      auto r = c.cbrt();
      bool exists = false;
      for (std::uint64_t w = 0; w < p && !exists; ++w)
        exists = FieldElement::fp(f, w).pow(3) == c;
      CHECK(r.has_value() == exists);
      if (r) CHECK(r->pow(3) == c);
    }
  }
}

TEST_CASE("canonical order sorts balanced lifts") {
  FieldRef f = Field::prime_field(13);
  FieldElement zero = FieldElement::fp(f, 0), one = FieldElement::fp(f, 1),
               minus_one = FieldElement::fp(f, 12);
  CHECK(FieldElement::canonical_less(zero, one));
  CHECK(FieldElement::canonical_less(one, minus_one));
}

TEST_CASE("element printing") {
  FieldRef qi = Field::gaussian_rationals();
  CHECK(FieldElement::gaussian(qi, 0, 2).str() == "2i");
  CHECK(FieldElement::gaussian(qi, 0, -1).str() == "-i");
  CHECK(FieldElement::gaussian(qi, mpq_class(1, 2), mpq_class(-3, 4)).str() == "1/2 - 3/4i");
  CHECK(FieldElement::from_long(Field::prime_field(13), -1).str() == "12");
}
