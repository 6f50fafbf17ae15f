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

#include "isopoly/weierstrass.hpp"

#include <sstream>

namespace isopoly {

WeierstrassCurve::WeierstrassCurve(const FieldRef& f, const FieldElement& A2,
                                   const FieldElement& A4, const FieldElement& A6)
    : f_(f), a2_(A2), a4_(A4), a6_(A6) {
  if (discriminant_of_cubic().is_zero()) throw domain_error("singular Weierstrass model");
}

WeierstrassCurve WeierstrassCurve::from_longs(const FieldRef& f, long a2, long a4, long a6) {
  return WeierstrassCurve(f, FieldElement::from_long(f, a2), FieldElement::from_long(f, a4),
                          FieldElement::from_long(f, a6));
}

Polynomial WeierstrassCurve::fpoly() const {
  return Polynomial(f_, {a6_, a4_, a2_, FieldElement::one(f_)});
}

Polynomial WeierstrassCurve::fprime() const { return fpoly().derivative(); }

FieldElement WeierstrassCurve::discriminant_of_cubic() const {
  // For x^3 + b x^2 + c x + d:
  // disc = 18 b c d - 4 b^3 d + b^2 c^2 - 4 c^3 - 27 d^2
  const FieldElement &b = a2_, &c = a4_, &d = a6_;
  auto k = [&](long v) { return FieldElement::from_long(f_, v); };
  return k(18) * b * c * d - k(4) * b * b * b * d + b * b * c * c - k(4) * c * c * c -
         k(27) * d * d;
}

bool WeierstrassCurve::is_cm_by_i() const {
  return a2_.is_zero() && a6_.is_zero() && f_->has_sqrt_minus_one();
}

bool WeierstrassCurve::operator==(const WeierstrassCurve& o) const {
  return *f_ == *o.f_ && a2_ == o.a2_ && a4_ == o.a4_ && a6_ == o.a6_;
}

std::string WeierstrassCurve::key() const {
  std::ostringstream os;
  os << f_->name() << "[" << a2_.str() << "," << a4_.str() << "," << a6_.str() << "]";
  return os.str();
}

Point Point::infinity(const WeierstrassCurve& E) {
  Point P;
  P.E_ = E;
  P.infinity_ = true;
  return P;
}

Point Point::affine(const WeierstrassCurve& E, const FieldElement& x, const FieldElement& y) {
  if (y * y != E.fpoly().eval(x)) throw domain_error("point not on curve");
  Point P;
  P.E_ = E;
  P.infinity_ = false;
  P.x_ = x;
  P.y_ = y;
  return P;
}

const FieldElement& Point::x() const {
  if (infinity_) throw domain_error("x() of the point at infinity");
  return x_;
}

const FieldElement& Point::y() const {
  if (infinity_) throw domain_error("y() of the point at infinity");
  return y_;
}

bool Point::operator==(const Point& o) const {
  if (!(E_ == o.E_)) return false;
  if (infinity_ || o.infinity_) return infinity_ == o.infinity_;
  return x_ == o.x_ && y_ == o.y_;
}

std::string Point::str() const {
  if (infinity_) return "O";
  return "(" + x_.str() + "," + y_.str() + ")";
}

Point point_add(const Point& P, const Point& Q) {
  if (!(P.curve() == Q.curve())) throw domain_error("point addition across different curves");
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const WeierstrassCurve& E = P.curve();
  const FieldRef& f = E.field();
  if (P.x() == Q.x()) {
    if (P.y() != Q.y() || P.y().is_zero()) return Point::infinity(E);
    // tangent
    FieldElement m = E.fprime().eval(P.x()) / (FieldElement::from_long(f, 2) * P.y());
    FieldElement x3 = m * m - E.A2() - P.x() - Q.x();
    FieldElement y3 = m * (P.x() - x3) - P.y();
    return Point::affine(E, x3, y3);
  }
  FieldElement m = (Q.y() - P.y()) / (Q.x() - P.x());
  FieldElement x3 = m * m - E.A2() - P.x() - Q.x();
  FieldElement y3 = m * (P.x() - x3) - P.y();
  return Point::affine(E, x3, y3);
}

Point point_neg(const Point& P) {
  if (P.is_infinity()) return P;
  return Point::affine(P.curve(), P.x(), -P.y());
}

Point point_mul(long n, const Point& P) {
  if (n < 0) return point_mul(-n, point_neg(P));
  Point R = Point::infinity(P.curve());
  Point B = P;
  while (n) {
    if (n & 1) R = point_add(R, B);
    B = point_add(B, B);
    n >>= 1;
  }
  return R;
}

TwoTorsion two_torsion(const WeierstrassCurve& E) {
  TwoTorsion t;
  auto rs = E.fpoly().roots();  // canonically ordered
  for (const auto& e : rs) t.points.push_back(Point::affine(E, e, FieldElement::zero(E.field())));
  t.split = rs.size() == 3;
  return t;
}

std::pair<LaurentSeries, LaurentSeries> expand_coordinates(const WeierstrassCurve& E, long terms) {
  if (terms < 1) throw domain_error("expand_coordinates needs precision >= 1");
  const FieldRef& f = E.field();
  // With z = T and w = -1/y: w = z^3 + A2 z^2 w + A4 z w^2 + A6 w^3,
  // iterated to z-adic convergence; then x = z/w, y = -1/w.
  const long wprec = terms + 6;
  LaurentSeries z = LaurentSeries::monomial(FieldElement::one(f), 1, wprec);
  LaurentSeries z2 = z * z;
  LaurentSeries z3 = z2 * z;
  LaurentSeries w = z3.truncated(wprec);
  for (long it = 0; it < wprec; ++it) {
    LaurentSeries next = z3 + z2.scaled(E.A2()) * w + z.scaled(E.A4()) * (w * w) +
                         (w * w * w).scaled(E.A6());
    // fixed point reached once all tracked coefficients stabilize
    if (next.agrees_with(w) && next.precision() >= wprec) {
      w = next;
      break;
    }
    w = next;
  }
  LaurentSeries winv = w.invert();
  LaurentSeries x = z * winv;
  LaurentSeries y = -winv;
  return {x.truncated(std::min(x.precision(), -2 + terms)),
          y.truncated(std::min(y.precision(), -3 + terms))};
}

WeierstrassCurve lift_curve(const WeierstrassCurve& E, const FieldRef& ext) {
  return WeierstrassCurve(ext, lift_to_quad_ext(E.A2(), ext), lift_to_quad_ext(E.A4(), ext),
                          lift_to_quad_ext(E.A6(), ext));
}

Point lift_point(const Point& P, const WeierstrassCurve& lifted) {
  if (P.is_infinity()) return Point::infinity(lifted);
  const FieldRef& ext = lifted.field();
  return Point::affine(lifted, lift_to_quad_ext(P.x(), ext), lift_to_quad_ext(P.y(), ext));
}

}  // namespace isopoly
