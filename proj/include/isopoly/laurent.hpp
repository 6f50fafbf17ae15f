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

#ifndef ISOPOLY_LAURENT_HPP
#define ISOPOLY_LAURENT_HPP

#include <string>
#include <vector>

#include "isopoly/field.hpp"

namespace isopoly {

/// Thrown when a series does not carry enough known terms for the requested
/// operation. Consumers request more precision rather than truncating silently.
class insufficient_precision : public std::runtime_error {
 public:
  explicit insufficient_precision(const std::string& what) : std::runtime_error(what) {}
};

/// Truncated Laurent series: coefficients for exponents lead..prec-1, where
/// prec is the exponent of the first unknown term. The first stored
/// coefficient is nonzero unless the series is zero to the tracked precision.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  /// Zero to precision `prec`.
  static LaurentSeries zero(const FieldRef& f, long prec);
  static LaurentSeries constant(const FieldElement& c, long prec);
  /// c * T^k, known through exponent prec-1.
  static LaurentSeries monomial(const FieldElement& c, long k, long prec);
  LaurentSeries(const FieldRef& f, long lead, std::vector<FieldElement> coeffs, long prec);

  const FieldRef& field() const { return f_; }
  long precision() const { return prec_; }
  bool is_zero_to_precision() const { return c_.empty(); }
  long lead_exponent() const;       // throws if zero to precision
  FieldElement lead_coeff() const;  // throws if zero to precision
  FieldElement coeff(long k) const; // throws if k >= precision

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator-() const;
  LaurentSeries scaled(const FieldElement& c) const;
  /// Reciprocal; requires a nonzero lead term.
  LaurentSeries invert() const;
  LaurentSeries operator/(const LaurentSeries& o) const { return *this * o.invert(); }
  LaurentSeries pow(long e) const;
  /// Substitution this(o); requires o's lead exponent >= 1.
  LaurentSeries compose(const LaurentSeries& o) const;
  LaurentSeries truncated(long prec) const;

  /// Exact equality of all coefficients up to min(precisions).
  bool agrees_with(const LaurentSeries& o) const;

  std::string str(const std::string& var = "T") const;

 private:
  FieldRef f_;
  long lead_ = 0;
  std::vector<FieldElement> c_;
  long prec_ = 0;
  void normalize();
};

}  // namespace isopoly

#endif  // ISOPOLY_LAURENT_HPP
