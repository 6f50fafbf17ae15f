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

#ifndef ISOPOLY_WEIERSTRASS_HPP
#define ISOPOLY_WEIERSTRASS_HPP

#include <string>
#include <utility>
#include <vector>

#include "isopoly/laurent.hpp"
#include "isopoly/polynomial.hpp"

namespace isopoly {

/// Curve y^2 = f(x) = x^3 + A2 x^2 + A4 x + A6 over an odd-characteristic
/// field, with nonzero discriminant. The invariant differential is the
/// normalized one for the parameter T = -x/y, i.e. dx/(2y).
class WeierstrassCurve {
 public:
  WeierstrassCurve() = default;
  /// Validates nonsingularity; throws domain_error for a singular model.
  WeierstrassCurve(const FieldRef& f, const FieldElement& A2, const FieldElement& A4,
                   const FieldElement& A6);
  static WeierstrassCurve from_longs(const FieldRef& f, long a2, long a4, long a6);

  const FieldRef& field() const { return f_; }
  const FieldElement& A2() const { return a2_; }
  const FieldElement& A4() const { return a4_; }
  const FieldElement& A6() const { return a6_; }

  Polynomial fpoly() const;   // x^3 + A2 x^2 + A4 x + A6
  Polynomial fprime() const;  // 3x^2 + 2 A2 x + A4
  FieldElement discriminant_of_cubic() const;
  bool is_cm_by_i() const;  // model admits (x,y) -> (-x, iy): A2 = A6 = 0, i in field

  bool operator==(const WeierstrassCurve& o) const;
  bool operator!=(const WeierstrassCurve& o) const { return !(*this == o); }
  std::string key() const;

 private:
  FieldRef f_;
  FieldElement a2_, a4_, a6_;
};

/// Affine point or the point at infinity.
class Point {
 public:
  Point() : infinity_(true) {}
  static Point infinity(const WeierstrassCurve& E);
  /// Validates membership; throws domain_error if (x, y) is not on E.
  static Point affine(const WeierstrassCurve& E, const FieldElement& x, const FieldElement& y);

  bool is_infinity() const { return infinity_; }
  const FieldElement& x() const;
  const FieldElement& y() const;
  const WeierstrassCurve& curve() const { return E_; }

  bool operator==(const Point& o) const;
  bool operator!=(const Point& o) const { return !(*this == o); }
  std::string str() const;

 private:
  WeierstrassCurve E_;
  bool infinity_ = true;
  FieldElement x_, y_;
};

/// Chord-tangent addition; throws on mismatched curves.
Point point_add(const Point& P, const Point& Q);
Point point_neg(const Point& P);
Point point_mul(long n, const Point& P);

struct TwoTorsion {
  std::vector<Point> points;  // rational (e, 0), canonically ordered
  bool split = false;         // true iff f splits completely over the base field
};

/// Rational two-torsion of E with the canonical ordering of the roots.
TwoTorsion two_torsion(const WeierstrassCurve& E);

/// Expansions x(T) = T^-2 + ..., y(T) = -T^-3 + ... in the local parameter
/// T = -x/y, with at least `terms` known coefficients each.
std::pair<LaurentSeries, LaurentSeries> expand_coordinates(const WeierstrassCurve& E, long terms);

/// Coefficient-wise curve lift F_p -> F_{p^2}.
WeierstrassCurve lift_curve(const WeierstrassCurve& E, const FieldRef& ext);
Point lift_point(const Point& P, const WeierstrassCurve& lifted);

}  // namespace isopoly

#endif  // ISOPOLY_WEIERSTRASS_HPP
