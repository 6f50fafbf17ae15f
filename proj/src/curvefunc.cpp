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

#include "isopoly/curvefunc.hpp"

#include <climits>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace isopoly {

CurveFunction::CurveFunction(const WeierstrassCurve& E, Polynomial u, Polynomial v)
    : E_(E), u_(std::move(u)), v_(std::move(v)) {}

CurveFunction CurveFunction::zero(const WeierstrassCurve& E) {
  return CurveFunction(E, Polynomial(E.field()), Polynomial(E.field()));
}

CurveFunction CurveFunction::one(const WeierstrassCurve& E) {
  return constant(E, FieldElement::one(E.field()));
}

CurveFunction CurveFunction::constant(const WeierstrassCurve& E, const FieldElement& c) {
  return CurveFunction(E, Polynomial::constant(c), Polynomial(E.field()));
}

CurveFunction CurveFunction::xpoly(const WeierstrassCurve& E, const Polynomial& u) {
  return CurveFunction(E, u, Polynomial(E.field()));
}

CurveFunction CurveFunction::x(const WeierstrassCurve& E) {
  return xpoly(E, Polynomial::x(E.field()));
}

CurveFunction CurveFunction::y(const WeierstrassCurve& E) {
  return CurveFunction(E, Polynomial(E.field()),
                       Polynomial::constant(FieldElement::one(E.field())));
}

CurveFunction CurveFunction::operator+(const CurveFunction& o) const {
  return CurveFunction(E_, u_ + o.u_, v_ + o.v_);
}

CurveFunction CurveFunction::operator-(const CurveFunction& o) const {
  return CurveFunction(E_, u_ - o.u_, v_ - o.v_);
}

CurveFunction CurveFunction::operator-() const { return CurveFunction(E_, -u_, -v_); }

CurveFunction CurveFunction::operator*(const CurveFunction& o) const {
  // (u1 + y v1)(u2 + y v2) = u1 u2 + f v1 v2 + y (u1 v2 + u2 v1)
  Polynomial f = E_.fpoly();
  return CurveFunction(E_, u_ * o.u_ + f * (v_ * o.v_), u_ * o.v_ + o.u_ * v_);
}

CurveFunction CurveFunction::scaled(const FieldElement& c) const {
  return CurveFunction(E_, u_.scaled(c), v_.scaled(c));
}

CurveFunction CurveFunction::conj() const { return CurveFunction(E_, u_, -v_); }

Polynomial CurveFunction::norm() const { return u_ * u_ - E_.fpoly() * (v_ * v_); }

bool CurveFunction::operator==(const CurveFunction& o) const {
  return E_ == o.E_ && u_ == o.u_ && v_ == o.v_;
}

FieldElement CurveFunction::eval(const Point& P) const {
  if (P.is_infinity()) throw domain_error("CurveFunction::eval at infinity");
  return u_.eval(P.x()) + P.y() * v_.eval(P.x());
}

CurveRationalFunction::CurveRationalFunction(CurveFunction num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw domain_error("zero denominator");
  const FieldRef& f = den_.field();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(FieldElement::one(f));
    return;
  }
  // Cancel the common x-polynomial content of u, v, den.
  Polynomial g = Polynomial::gcd(Polynomial::gcd(num_.u(), num_.v()), den_);
  if (g.degree() > 0) {
    num_ = CurveFunction(num_.curve(), num_.u().divexact(g), num_.v().divexact(g));
    den_ = den_.divexact(g);
  }
  FieldElement lc = den_.lc();
  if (!lc.is_one()) {
    den_ = den_.scaled(lc.inverse());
    num_ = num_.scaled(lc.inverse());
  }
}

CurveRationalFunction CurveRationalFunction::zero(const WeierstrassCurve& E) {
  return from(CurveFunction::zero(E));
}

CurveRationalFunction CurveRationalFunction::one(const WeierstrassCurve& E) {
  return from(CurveFunction::one(E));
}

CurveRationalFunction CurveRationalFunction::constant(const WeierstrassCurve& E,
                                                      const FieldElement& c) {
  return from(CurveFunction::constant(E, c));
}

CurveRationalFunction CurveRationalFunction::from(const CurveFunction& g) {
  return CurveRationalFunction(g, Polynomial::constant(FieldElement::one(g.curve().field())));
}

CurveRationalFunction CurveRationalFunction::x_over(const WeierstrassCurve& E) {
  return from(CurveFunction::x(E));
}

CurveRationalFunction CurveRationalFunction::y_over(const WeierstrassCurve& E) {
  return from(CurveFunction::y(E));
}

CurveRationalFunction CurveRationalFunction::of_fraction(const WeierstrassCurve& E,
                                                         const Polynomial& p, const Polynomial& q) {
  return CurveRationalFunction(CurveFunction::xpoly(E, p), q);
}

CurveRationalFunction CurveRationalFunction::operator+(const CurveRationalFunction& o) const {
  return CurveRationalFunction(num_ * CurveFunction::xpoly(o.curve(), o.den_) +
                                   o.num_ * CurveFunction::xpoly(curve(), den_),
                               den_ * o.den_);
}

CurveRationalFunction CurveRationalFunction::operator-(const CurveRationalFunction& o) const {
  return *this + (-o);
}

CurveRationalFunction CurveRationalFunction::operator-() const {
  return CurveRationalFunction(-num_, den_);
}

CurveRationalFunction CurveRationalFunction::operator*(const CurveRationalFunction& o) const {
  return CurveRationalFunction(num_ * o.num_, den_ * o.den_);
}

CurveRationalFunction CurveRationalFunction::inverse() const {
  if (is_zero()) throw domain_error("inverting the zero function");
  // 1/((u+yv)/d) = d (u - yv) / (u^2 - f v^2)
  return CurveRationalFunction(num_.conj() * CurveFunction::xpoly(curve(), den_), num_.norm());
}

CurveRationalFunction CurveRationalFunction::operator/(const CurveRationalFunction& o) const {
  return *this * o.inverse();
}

CurveRationalFunction CurveRationalFunction::scaled(const FieldElement& c) const {
  return CurveRationalFunction(num_.scaled(c), den_);
}

CurveRationalFunction CurveRationalFunction::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CurveRationalFunction r = one(curve());
  CurveRationalFunction b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool CurveRationalFunction::operator==(const CurveRationalFunction& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

CurveRationalFunction::Value CurveRationalFunction::eval(const Point& P) const {
  if (P.is_infinity()) throw domain_error("eval at infinity; use expand_at_O");
  FieldElement d = den_.eval(P.x());
  FieldElement n = num_.eval(P);
  if (!d.is_zero()) return {false, n / d};
  if (!n.is_zero()) return {true, FieldElement::zero(d.field())};
  throw domain_error("indeterminate 0/0 at " + P.str() + "; use ord_at");
}

std::string CurveRationalFunction::key() const {
  std::ostringstream os;
  os << num_.u().key() << "|" << num_.v().key() << "|" << den_.key();
  return os.str();
}

namespace {

// Cached coordinate expansions, keyed by curve and refreshed on demand.
std::pair<LaurentSeries, LaurentSeries> coordinate_series(const WeierstrassCurve& E, long terms) {
  struct Entry {
    long terms;
    LaurentSeries x, y;
  };
  static std::mutex mu;
  static std::map<std::string, Entry> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(E.key());
  if (it == cache.end() || it->second.terms < terms) {
    auto [xs, ys] = expand_coordinates(E, terms);
    cache[E.key()] = Entry{terms, xs, ys};
    return {xs, ys};
  }
  return {it->second.x, it->second.y};
}

LaurentSeries eval_poly_at_series(const Polynomial& p, const LaurentSeries& xs) {
  const FieldRef& f = p.field();
  LaurentSeries acc = LaurentSeries::zero(f, xs.precision() + 2 * std::max<long>(p.degree(), 1));
  for (long k = p.degree(); k >= 0; --k) {
    acc = acc * xs + LaurentSeries::constant(p[static_cast<std::size_t>(k)], acc.precision());
  }
  if (p.is_zero()) return LaurentSeries::zero(f, xs.precision());
  return acc;
}

}  // namespace

LaurentSeries expand_at_O(const CurveRationalFunction& h, long terms) {
  if (h.is_zero()) throw domain_error("expanding the zero function");
  const WeierstrassCurve& E = h.curve();
  // Request enough coordinate precision that `terms` coefficients of the
  // result survive; retry with more on shortfall.
  long budget = terms + 8;
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto [xs, ys] = coordinate_series(E, budget);
    LaurentSeries nu = eval_poly_at_series(h.num().u(), xs);
    LaurentSeries nv = eval_poly_at_series(h.num().v(), xs);
    LaurentSeries numer = nu + ys * nv;
    LaurentSeries denom = eval_poly_at_series(h.den(), xs);
    if (!denom.is_zero_to_precision() && !numer.is_zero_to_precision()) {
      LaurentSeries r = numer * denom.invert();
      if (!r.is_zero_to_precision() && r.precision() - r.lead_exponent() >= terms) return r;
    }
    budget *= 2;
  }
  throw insufficient_precision("expand_at_O failed to reach requested precision");
}

long ord_at(const CurveRationalFunction& h, const Point& P) {
  if (h.is_zero()) throw domain_error("ord_at of the zero function");
  if (P.is_infinity()) return expand_at_O(h, 1).lead_exponent();
  const WeierstrassCurve& E = h.curve();
  const FieldRef& f = E.field();
  Polynomial xm = Polynomial(f, {-P.x(), FieldElement::one(f)});  // x - x0

  auto poly_mult = [&](const Polynomial& p) {
    long m = 0;
    Polynomial q = p;
    while (!q.is_zero()) {
      auto [quo, rem] = q.divmod(xm);
      if (!rem.is_zero()) break;
      ++m;
      q = quo;
    }
    return m;
  };

  if (P.y().is_zero()) {
    // Two-torsion: ord(x - x0) = 2, ord(y) = 1; u and y v have orders of
    // opposite parity, so the minimum is exact.
    auto part_ord = [&](const Polynomial& u, bool with_y) -> long {
      if (u.is_zero()) return LONG_MAX;
      return 2 * poly_mult(u) + (with_y ? 1 : 0);
    };
    long n = std::min(part_ord(h.num().u(), false), part_ord(h.num().v(), true));
    long d = 2 * poly_mult(h.den());
    return n - d;
  }

  // General affine point: x - x0 is a uniformizer.
  std::function<long(const CurveFunction&)> cf_ord = [&](const CurveFunction& g) -> long {
    if (g.is_zero()) throw domain_error("ord of zero");
    if (!g.eval(P).is_zero()) return 0;
    // u(x0) + y0 v(x0) = 0. If both components vanish at x0, pull the
    // uniformizer out of each and recurse.
    bool u_div = g.u().is_zero() || g.u().eval(P.x()).is_zero();
    bool v_div = g.v().is_zero() || g.v().eval(P.x()).is_zero();
    if (u_div && v_div) {
      Polynomial u2 = g.u().is_zero() ? g.u() : g.u().divexact(xm);
      Polynomial v2 = g.v().is_zero() ? g.v() : g.v().divexact(xm);
      return 1 + cf_ord(CurveFunction(g.curve(), u2, v2));
    }
    // Otherwise the conjugate branch does not vanish at P, and
    // ord(g) = mult_{x0}(u^2 - f v^2).
    return poly_mult(g.norm());
  };

  return cf_ord(h.num()) - poly_mult(h.den());
}

std::optional<CurveRationalFunction> sqrt_two_torsion_supported(const CurveRationalFunction& h) {
  if (h.is_zero()) throw domain_error("sqrt of the zero function");
  const WeierstrassCurve& E = h.curve();
  const FieldRef& f = E.field();
  TwoTorsion tt = two_torsion(E);
  if (!tt.split) throw domain_error("sqrt_two_torsion_supported needs split two-torsion");
  // Decompose h = c * y^eps * prod (x - e_i)^{k_i}; reject other support.
  bool has_y;
  Polynomial xpart_num(f), xpart_den(f);
  if (!h.num().v().is_zero()) {
    if (!h.num().u().is_zero()) throw domain_error("support not contained in the two-torsion");
    has_y = true;
    xpart_num = h.num().v();
  } else {
    has_y = false;
    xpart_num = h.num().u();
  }
  xpart_den = h.den();

  long k[3];
  FieldElement c = FieldElement::one(f);
  Polynomial num = xpart_num, den = xpart_den;
  for (int i = 0; i < 3; ++i) {
    const FieldElement e = tt.points[static_cast<std::size_t>(i)].x();
    Polynomial lin(f, {-e, FieldElement::one(f)});
    k[i] = 0;
    while (!num.is_zero()) {
      auto [q, r] = num.divmod(lin);
      if (!r.is_zero()) break;
      ++k[i];
      num = q;
    }
    while (true) {
      auto [q, r] = den.divmod(lin);
      if (!r.is_zero()) break;
      --k[i];
      den = q;
    }
  }
  if (num.degree() != 0 || den.degree() != 0)
    throw domain_error("support not contained in the two-torsion");
  c = num.lc() / den.lc();
  if (has_y) return std::nullopt;  // odd order at every two-torsion point

  bool all_even = (k[0] % 2 == 0) && (k[1] % 2 == 0) && (k[2] % 2 == 0);
  bool all_odd = (k[0] % 2 != 0) && (k[1] % 2 != 0) && (k[2] % 2 != 0);
  if (!all_even && !all_odd) return std::nullopt;  // mixed parity

  auto sc = c.sqrt();
  if (!sc) return std::nullopt;

  Polynomial pnum = Polynomial::constant(FieldElement::one(f));
  Polynomial pden = Polynomial::constant(FieldElement::one(f));
  for (int i = 0; i < 3; ++i) {
    const FieldElement e = tt.points[static_cast<std::size_t>(i)].x();
    Polynomial lin(f, {-e, FieldElement::one(f)});
    long half = (k[i] - (all_odd ? 1 : 0)) / 2;
    if (half >= 0)
      pnum = pnum * lin.pow(static_cast<unsigned long>(half));
    else
      pden = pden * lin.pow(static_cast<unsigned long>(-half));
  }
  CurveFunction numfun = all_odd ? CurveFunction(E, Polynomial(f), pnum.scaled(*sc))
                                 : CurveFunction(E, pnum.scaled(*sc), Polynomial(f));
  return CurveRationalFunction(numfun, pden);
}

CurveRationalFunction substitute_maps(const CurveRationalFunction& h,
                                      const WeierstrassCurve& source, const Polynomial& xn,
                                      const Polynomial& xd, const Polynomial& ys,
                                      const Polynomial& yw) {
  const FieldRef& f = source.field();
  // p(xn/xd) = P(x)/xd^deg p — Horner with incrementally built xd-powers.
  auto compose_frac = [&](const Polynomial& p) -> std::pair<Polynomial, long> {
    if (p.is_zero()) return {Polynomial(f), 0};
    Polynomial acc = Polynomial::constant(p[static_cast<std::size_t>(p.degree())]);
    Polynomial dpow = Polynomial::constant(FieldElement::one(f));
    for (long k = p.degree() - 1; k >= 0; --k) {
      dpow = dpow * xd;
      acc = acc * xn + dpow.scaled(p[static_cast<std::size_t>(k)]);
    }
    return {acc, p.degree()};
  };
  auto [un, upow] = compose_frac(h.num().u());
  auto [vn, vpow] = compose_frac(h.num().v());
  auto [dn, dpow] = compose_frac(h.den());

  // h o phi = [un/xd^upow + y (ys/yw) vn/xd^vpow] / (dn/xd^dpow)
  // Put everything over the common denominator xd^max * yw.
  long mx = std::max({upow, vpow, dpow});
  Polynomial XU = un * xd.pow(static_cast<unsigned long>(mx - upow));
  Polynomial XV = vn * xd.pow(static_cast<unsigned long>(mx - vpow));
  Polynomial XD = dn * xd.pow(static_cast<unsigned long>(mx - dpow));
  // numerator: XU * yw + y * ys * XV ; denominator: XD * yw
  CurveFunction num(source, XU * yw, ys * XV);
  return CurveRationalFunction(num, XD * yw);
}

CurveRationalFunction lift_crf(const CurveRationalFunction& h, const WeierstrassCurve& lifted) {
  const FieldRef& ext = lifted.field();
  auto lift_poly = [&](const Polynomial& p) {
    std::vector<FieldElement> c;
    for (long k = 0; k <= p.degree(); ++k)
      c.push_back(lift_to_quad_ext(p[static_cast<std::size_t>(k)], ext));
    return Polynomial(ext, std::move(c));
  };
  return CurveRationalFunction(
      CurveFunction(lifted, lift_poly(h.num().u()), lift_poly(h.num().v())), lift_poly(h.den()));
}

}  // namespace isopoly
