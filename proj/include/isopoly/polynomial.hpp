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

#ifndef ISOPOLY_POLYNOMIAL_HPP
#define ISOPOLY_POLYNOMIAL_HPP

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "isopoly/field.hpp"

namespace isopoly {

/// Dense univariate polynomial over an exact field. Highest stored
/// coefficient is nonzero; the zero polynomial stores nothing.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const FieldRef& f) : f_(f) {}
  Polynomial(const FieldRef& f, std::vector<FieldElement> coeffs);
  static Polynomial zero(const FieldRef& f) { return Polynomial(f); }
  static Polynomial constant(const FieldElement& c);
  static Polynomial from_longs(const FieldRef& f, std::initializer_list<long> asc);
  static Polynomial x(const FieldRef& f);
  /// c * x^k
  static Polynomial monomial(const FieldElement& c, std::size_t k);

  const FieldRef& field() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  FieldElement operator[](std::size_t k) const;  // 0 beyond degree
  FieldElement lc() const;                              // leading coefficient
  bool is_monic() const;
  bool is_constant() const { return c_.size() <= 1; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const FieldElement& c) const;
  Polynomial shifted(std::size_t k) const;  // * x^k
  Polynomial pow(unsigned long e) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Quotient and remainder; throws on zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  /// Exact division; throws if the remainder is nonzero.
  Polynomial divexact(const Polynomial& d) const;
  /// Monic greatest common divisor.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);
  Polynomial monic() const;
  Polynomial derivative() const;
  FieldElement eval(const FieldElement& x) const;

  /// Monic square root of a monic polynomial of even degree, if exact.
  std::optional<Polynomial> sqrt_monic() const;

  /// Distinct roots in the base field. Finite fields: complete (randomized
  /// equal-degree splitting with an internal deterministic generator).
  /// Q / Q(i): rational-root search; throws when divisor enumeration would
  /// exceed its bound.
  std::vector<FieldElement> roots() const;

  std::string key() const;  // canonical string, usable as a map key

 private:
  FieldRef f_;
  std::vector<FieldElement> c_;  // c_[k] multiplies x^k
  void trim();
};

}  // namespace isopoly

#endif  // ISOPOLY_POLYNOMIAL_HPP
