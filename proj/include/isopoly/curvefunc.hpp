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

#ifndef ISOPOLY_CURVEFUNC_HPP
#define ISOPOLY_CURVEFUNC_HPP

#include <optional>
#include <string>

#include "isopoly/weierstrass.hpp"

namespace isopoly {

/// Element u(x) + y v(x) of the coordinate ring k[x,y]/(y^2 - f(x)).
class CurveFunction {
 public:
  CurveFunction() = default;
  CurveFunction(const WeierstrassCurve& E, Polynomial u, Polynomial v);
  static CurveFunction zero(const WeierstrassCurve& E);
  static CurveFunction one(const WeierstrassCurve& E);
  static CurveFunction constant(const WeierstrassCurve& E, const FieldElement& c);
  static CurveFunction xpoly(const WeierstrassCurve& E, const Polynomial& u);
  static CurveFunction x(const WeierstrassCurve& E);
  static CurveFunction y(const WeierstrassCurve& E);

  const WeierstrassCurve& curve() const { return E_; }
  const Polynomial& u() const { return u_; }
  const Polynomial& v() const { return v_; }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

  CurveFunction operator+(const CurveFunction& o) const;
  CurveFunction operator-(const CurveFunction& o) const;
  CurveFunction operator*(const CurveFunction& o) const;
  CurveFunction operator-() const;
  CurveFunction scaled(const FieldElement& c) const;
  CurveFunction conj() const;        // u - y v
  Polynomial norm() const;           // u^2 - f v^2
  bool operator==(const CurveFunction& o) const;
  bool operator!=(const CurveFunction& o) const { return !(*this == o); }

  FieldElement eval(const Point& P) const;  // P affine

 private:
  WeierstrassCurve E_;
  Polynomial u_, v_;
};

/// Quotient (u + y v)/d with monic y-free denominator d and no common
/// x-polynomial factor of u, v, d. The canonical form makes equality a
/// component-wise comparison.
class CurveRationalFunction {
 public:
  CurveRationalFunction() = default;
  CurveRationalFunction(CurveFunction num, Polynomial den);  // canonicalizes
  static CurveRationalFunction zero(const WeierstrassCurve& E);
  static CurveRationalFunction one(const WeierstrassCurve& E);
  static CurveRationalFunction constant(const WeierstrassCurve& E, const FieldElement& c);
  static CurveRationalFunction from(const CurveFunction& g);
  static CurveRationalFunction x_over(const WeierstrassCurve& E);
  static CurveRationalFunction y_over(const WeierstrassCurve& E);
  /// p(x)/q(x) as a function on E.
  static CurveRationalFunction of_fraction(const WeierstrassCurve& E, const Polynomial& p,
                                           const Polynomial& q);

  const WeierstrassCurve& curve() const { return num_.curve(); }
  const CurveFunction& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// True when v = 0 and den = 1 (a plain polynomial in x and y absent).
  bool is_polynomial() const { return den_.degree() == 0; }

  CurveRationalFunction operator+(const CurveRationalFunction& o) const;
  CurveRationalFunction operator-(const CurveRationalFunction& o) const;
  CurveRationalFunction operator*(const CurveRationalFunction& o) const;
  CurveRationalFunction operator/(const CurveRationalFunction& o) const;
  CurveRationalFunction operator-() const;
  CurveRationalFunction inverse() const;
  CurveRationalFunction scaled(const FieldElement& c) const;
  CurveRationalFunction pow(long e) const;
  bool operator==(const CurveRationalFunction& o) const;
  bool operator!=(const CurveRationalFunction& o) const { return !(*this == o); }

  struct Value {
    bool pole = false;
    FieldElement v;  // meaningful when !pole
  };
  /// Exact value at an affine point; poles reported, 0/0 throws domain_error.
  Value eval(const Point& P) const;

  std::string key() const;

 private:
  CurveFunction num_;
  Polynomial den_;
};

/// Valuation of h at P (affine or infinity); h != 0.
long ord_at(const CurveRationalFunction& h, const Point& P);

/// Laurent expansion at the identity in T = -x/y with at least `terms` known
/// coefficients.
LaurentSeries expand_at_O(const CurveRationalFunction& h, long terms);

/// Square root of a function whose divisor is supported on {O} u E[2]
/// (split two-torsion required). Absent when the parity criterion fails or
/// the needed scalar square root is missing from the field.
std::optional<CurveRationalFunction> sqrt_two_torsion_supported(const CurveRationalFunction& h);

/// Substitution x -> xn/xd, y -> y * ys/yw (maps of an isogeny into h).
CurveRationalFunction substitute_maps(const CurveRationalFunction& h,
                                      const WeierstrassCurve& source, const Polynomial& xn,
                                      const Polynomial& xd, const Polynomial& ys,
                                      const Polynomial& yw);

CurveRationalFunction lift_crf(const CurveRationalFunction& h, const WeierstrassCurve& lifted);

}  // namespace isopoly

#endif  // ISOPOLY_CURVEFUNC_HPP
