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

#include "isopoly/isogeny.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace isopoly {

namespace {

// Rational function in x with on-construction reduction.
struct RatPoly {
  Polynomial n, d;
  RatPoly(Polynomial num, Polynomial den) : n(std::move(num)), d(std::move(den)) {
    if (d.is_zero()) throw domain_error("zero denominator in map arithmetic");
    if (n.is_zero()) {
      d = Polynomial::constant(FieldElement::one(d.field()));
      return;
    }
    Polynomial g = Polynomial::gcd(n, d);
    if (g.degree() > 0) {
      n = n.divexact(g);
      d = d.divexact(g);
    }
    FieldElement lc = d.lc();
    if (!lc.is_one()) {
      n = n.scaled(lc.inverse());
      d = d.scaled(lc.inverse());
    }
  }
  static RatPoly of(const Polynomial& p) {
    return RatPoly(p, Polynomial::constant(FieldElement::one(p.field())));
  }
  RatPoly operator+(const RatPoly& o) const { return RatPoly(n * o.d + o.n * d, d * o.d); }
  RatPoly operator-(const RatPoly& o) const { return RatPoly(n * o.d - o.n * d, d * o.d); }
  RatPoly operator*(const RatPoly& o) const { return RatPoly(n * o.n, d * o.d); }
  RatPoly operator/(const RatPoly& o) const {
    if (o.n.is_zero()) throw domain_error("division by zero map");
    return RatPoly(n * o.d, d * o.n);
  }
  RatPoly operator-() const { return RatPoly(-n, d); }
  bool is_zero() const { return n.is_zero(); }
};

// p(num/den) * den^deg(p) and the power used. Denominator powers are built
// incrementally alongside the Horner loop.
std::pair<Polynomial, long> substitute_fraction(const Polynomial& p, const Polynomial& num,
                                                const Polynomial& den) {
  if (p.is_zero()) return {p, 0};
  Polynomial acc = Polynomial::constant(p[static_cast<std::size_t>(p.degree())]);
  Polynomial dpow = Polynomial::constant(FieldElement::one(p.field()));
  for (long k = p.degree() - 1; k >= 0; --k) {
    dpow = dpow * den;
    acc = acc * num + dpow.scaled(p[static_cast<std::size_t>(k)]);
  }
  return {acc, p.degree()};
}

}  // namespace

Isogeny Isogeny::from_maps(const WeierstrassCurve& src, const WeierstrassCurve& dst,
                           const Polynomial& xnum, const Polynomial& xden, const Polynomial& ynum,
                           const Polynomial& yden, const FieldElement& lead) {
  RatPoly xm(xnum, xden), ym(ynum, yden);
  if (xm.is_zero() || ym.is_zero()) throw domain_error("degenerate isogeny maps");
  Isogeny phi;
  phi.src_ = src;
  phi.dst_ = dst;
  phi.xn_ = xm.n;
  phi.xd_ = xm.d;
  phi.ys_ = ym.n;
  phi.yw_ = ym.d;
  phi.a_ = lead;
  if (phi.xn_.degree() != phi.xd_.degree() + 1)
    throw domain_error("maps do not define a separable isogeny in standard form");
  phi.degree_ = phi.xn_.degree();
  return phi;
}

Isogeny Isogeny::identity(const WeierstrassCurve& E) {
  const FieldRef& f = E.field();
  Polynomial one = Polynomial::constant(FieldElement::one(f));
  return from_maps(E, E, Polynomial::x(f), one, one, one, FieldElement::one(f));
}

Isogeny Isogeny::velu2(const WeierstrassCurve& E, const Point& P) {
  if (P.is_infinity() || !P.y().is_zero() || !(P.curve() == E))
    throw domain_error("velu2 needs a rational two-torsion point of the source curve");
  const FieldRef& f = E.field();
  const FieldElement x0 = P.x();
  FieldElement v = E.fprime().eval(x0);
  FieldElement w = x0 * v;
  FieldElement a4 = E.A4() - FieldElement::from_long(f, 5) * v;
  FieldElement a6 =
      E.A6() - FieldElement::from_long(f, 4) * E.A2() * v - FieldElement::from_long(f, 7) * w;
  WeierstrassCurve target(f, E.A2(), a4, a6);
  Polynomial lin(f, {-x0, FieldElement::one(f)});  // x - x0
  // x + v/(x-x0), y (1 - v/(x-x0)^2)
  Polynomial xn = Polynomial::x(f) * lin + Polynomial::constant(v);
  Polynomial lin2 = lin * lin;
  Polynomial ys = lin2 - Polynomial::constant(v);
  return from_maps(E, target, xn, lin, ys, lin2, FieldElement::one(f));
}

Isogeny Isogeny::cm_i(const WeierstrassCurve& E) {
  if (!E.A2().is_zero() || !E.A6().is_zero())
    throw domain_error("Gaussian multiplication needs a model y^2 = x^3 + A4 x");
  if (!E.field()->has_sqrt_minus_one())
    throw extension_required("no square root of -1 in " + E.field()->name());
  const FieldRef& f = E.field();
  FieldElement i = FieldElement::sqrt_minus_one(f);
  Polynomial one = Polynomial::constant(FieldElement::one(f));
  return from_maps(E, E, -Polynomial::x(f), one, Polynomial::constant(i), one, i);
}

Isogeny Isogeny::multiplication(const WeierstrassCurve& E, long n) {
  if (n == 0) throw domain_error("multiplication by zero is not an isogeny");
  if (E.field()->is_finite() && n % static_cast<long>(E.field()->p) == 0)
    throw domain_error("multiplication by a multiple of the characteristic is inseparable");
  if (n < 0) return isogeny_neg(multiplication(E, -n));
  if (n == 1) return identity(E);
  static std::mutex mu;
  static std::map<std::string, std::map<long, Isogeny>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache[E.key()].find(n);
    if (it != cache[E.key()].end()) return it->second;
  }
  Isogeny half = multiplication(E, n / 2);
  auto dbl = isogeny_add(half, half);
  if (!dbl) throw domain_error("unexpected cancellation in the multiplication ladder");
  Isogeny result = *dbl;
  if (n % 2 != 0) {
    auto r = isogeny_add(*dbl, identity(E));
    if (!r) throw domain_error("unexpected cancellation in the multiplication ladder");
    result = *r;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[E.key()].emplace(n, result);
  return result;
}

Isogeny Isogeny::gaussian(const WeierstrassCurve& E, long a, long b) {
  if (a == 0 && b == 0) throw domain_error("zero Gaussian integer is not an isogeny");
  if (E.field()->is_finite() && (a * a + b * b) % static_cast<long>(E.field()->p) == 0)
    throw domain_error("Gaussian multiplication with norm divisible by the characteristic is inseparable");
  if (b == 0) return multiplication(E, a);
  Isogeny bi = compose(multiplication(E, b == 0 ? 1 : b), cm_i(E));
  if (a == 0) return bi;
  auto r = isogeny_add(multiplication(E, a), bi);
  if (!r) throw domain_error("unexpected cancellation in Gaussian realization");
  return *r;
}

bool Isogeny::operator==(const Isogeny& o) const {
  return src_ == o.src_ && dst_ == o.dst_ && xn_ == o.xn_ && xd_ == o.xd_ && ys_ == o.ys_ &&
         yw_ == o.yw_;
}

std::string Isogeny::key() const {
  std::ostringstream os;
  os << src_.key() << ">" << dst_.key() << "|" << xn_.key() << "/" << xd_.key() << "|" << ys_.key()
     << "/" << yw_.key();
  return os.str();
}

Point Isogeny::apply(const Point& P) const {
  if (!(P.curve() == src_)) throw domain_error("point not on the source curve");
  if (P.is_infinity()) return Point::infinity(dst_);
  FieldElement dx = xd_.eval(P.x());
  if (dx.is_zero()) return Point::infinity(dst_);  // kernel fiber
  FieldElement x2 = xn_.eval(P.x()) / dx;
  FieldElement y2 = P.y() * ys_.eval(P.x()) / yw_.eval(P.x());
  return Point::affine(dst_, x2, y2);
}

CurveRationalFunction Isogeny::x_map() const {
  return CurveRationalFunction::of_fraction(src_, xn_, xd_);
}

CurveRationalFunction Isogeny::y_map() const {
  return CurveRationalFunction(CurveFunction(src_, Polynomial(src_.field()), ys_), yw_);
}

LaurentSeries Isogeny::parameter_series(long terms) const {
  // T' o phi = -(x'/y') o phi = -xn*yw*y / (xd*ys*f)
  const FieldRef& f = src_.field();
  CurveFunction num(src_, Polynomial(f), -(xn_ * yw_));
  CurveRationalFunction t(num, xd_ * ys_ * src_.fpoly());
  return expand_at_O(t, terms);
}

void Isogeny::validate(long series_terms) const {
  // Curve equations commute: f_src * ys^2 * xd^3 == f_tgt(xn/xd) * xd^3 * yw^2.
  const Polynomial fs = src_.fpoly();
  auto [ft, pw] = substitute_fraction(dst_.fpoly(), xn_, xd_);
  Polynomial lhs = fs * ys_ * ys_ * xd_.pow(3);
  Polynomial rhs = ft * yw_ * yw_;
  if (pw != 3) rhs = rhs * xd_.pow(static_cast<unsigned long>(3 - pw));
  if (lhs != rhs) throw domain_error("isogeny maps do not commute with curve equations");
  LaurentSeries t = parameter_series(series_terms);
  if (t.lead_exponent() != 1 || t.lead_coeff() != a_)
    throw domain_error("stored formal lead disagrees with the parameter series");
}

Isogeny compose(const Isogeny& psi, const Isogeny& phi) {
  if (!(phi.target() == psi.source())) throw domain_error("composition curve mismatch");
  auto [xn2, px] = substitute_fraction(psi.xn(), phi.xn(), phi.xd());
  auto [xd2, pdx] = substitute_fraction(psi.xd(), phi.xn(), phi.xd());
  // common power of phi.xd
  long mx = std::max(px, pdx);
  Polynomial XN = xn2 * phi.xd().pow(static_cast<unsigned long>(mx - px));
  Polynomial XD = xd2 * phi.xd().pow(static_cast<unsigned long>(mx - pdx));
  auto [ys2, py] = substitute_fraction(psi.ys(), phi.xn(), phi.xd());
  auto [yw2, pwy] = substitute_fraction(psi.yw(), phi.xn(), phi.xd());
  long my = std::max(py, pwy);
  Polynomial YS = ys2 * phi.xd().pow(static_cast<unsigned long>(my - py)) * phi.ys();
  Polynomial YW = yw2 * phi.xd().pow(static_cast<unsigned long>(my - pwy)) * phi.yw();
  Isogeny r = Isogeny::from_maps(phi.source(), psi.target(), XN, XD, YS, YW,
                                 psi.lead_coeff() * phi.lead_coeff());
  if (r.degree() != psi.degree() * phi.degree())
    throw domain_error("composed degree inconsistent");
  return r;
}

Isogeny isogeny_neg(const Isogeny& phi) {
  return Isogeny::from_maps(phi.source(), phi.target(), phi.xn(), phi.xd(), -phi.ys(), phi.yw(),
                            -phi.lead_coeff());
}

std::optional<Isogeny> isogeny_add(const Isogeny& alpha, const Isogeny& beta) {
  if (!(alpha.source() == beta.source()) || !(alpha.target() == beta.target()))
    throw domain_error("pointwise sum needs matching source and target");
  const WeierstrassCurve& E = alpha.source();
  const WeierstrassCurve& Et = alpha.target();
  const FieldRef& f = E.field();

  const bool same_x = alpha.xn() == beta.xn() && alpha.xd() == beta.xd();
  RatPoly xa(alpha.xn(), alpha.xd()), xb(beta.xn(), beta.xd());
  RatPoly sa(alpha.ys(), alpha.yw()), sb(beta.ys(), beta.yw());

  RatPoly fsrc = RatPoly::of(E.fpoly());
  RatPoly a2 = RatPoly::of(Polynomial::constant(Et.A2()));

  RatPoly t = RatPoly::of(Polynomial(f));  // slope divided by y
  RatPoly x3 = t, s3 = t;
  if (same_x) {
    const bool same_y = alpha.ys() == beta.ys() && alpha.yw() == beta.yw();
    if (!same_y) {
      // y-maps must be negatives of each other: beta = -alpha.
      return std::nullopt;
    }
    // tangent: m = f_t'(x1) / (2 y1) = y * f_t'(x1) / (2 f(x) s1)
    auto [fp, fppow] = substitute_fraction(Et.fpoly().derivative(), alpha.xn(), alpha.xd());
    RatPoly fprime_at(fp, alpha.xd().pow(static_cast<unsigned long>(fppow)));
    t = fprime_at / (RatPoly::of(Polynomial::constant(FieldElement::from_long(f, 2))) * fsrc * sa);
    x3 = fsrc * t * t - a2 - xa - xa;
    s3 = t * (xa - x3) - sa;
  } else {
    // chord: m = (y2 - y1)/(x2 - x1) = y (s2 - s1)/(x2 - x1)
    t = (sb - sa) / (xb - xa);
    x3 = fsrc * t * t - a2 - xa - xb;
    s3 = t * (xa - x3) - sa;
  }
  return Isogeny::from_maps(E, Et, x3.n, x3.d, s3.n, s3.d,
                            alpha.lead_coeff() + beta.lead_coeff());
}

CurveRationalFunction pullback(const CurveRationalFunction& h, const Isogeny& phi) {
  if (!(h.curve() == phi.target())) throw domain_error("pullback curve mismatch");
  return substitute_maps(h, phi.source(), phi.xn(), phi.xd(), phi.ys(), phi.yw());
}

KernelSum kernel_sum(const Isogeny& phi) {
  const WeierstrassCurve& E = phi.source();
  Polynomial g = Polynomial::gcd(phi.kernel_polynomial(), E.fpoly());
  if (g.is_zero() || g.degree() == 0 || g.degree() == 3)
    return {Point::infinity(E), 0};
  if (g.degree() == 2) throw domain_error("kernel meets exactly two two-torsion points");
  FieldElement e = -g[0];  // monic linear factor
  TwoTorsion tt = two_torsion(E);
  if (!tt.split)
    throw extension_required("two-torsion does not split; extension required to index kernel sum");
  for (std::size_t i = 0; i < tt.points.size(); ++i) {
    if (tt.points[i].x() == e) return {tt.points[i], static_cast<int>(i) + 1};
  }
  throw extension_required("kernel-sum point not among the rational two-torsion");
}

mpq_class degree_pairing(const Isogeny& phi, const Isogeny& psi) {
  auto sum = isogeny_add(phi, psi);
  long dsum = sum ? sum->degree() : 0;
  mpq_class r(dsum - phi.degree() - psi.degree(), 2);
  r.canonicalize();
  return r;
}

HomElement HomElement::integer(long n) {
  HomElement h;
  h.ga = n;
  h.gb = 0;
  return h;
}

HomElement HomElement::gauss(long a, long b) {
  HomElement h;
  h.ga = a;
  h.gb = b;
  return h;
}

HomElement HomElement::explicit_isogeny(const Isogeny& phi, const std::string& label) {
  HomElement h;
  h.ga = 1;
  h.gb = 0;
  h.expl = std::make_shared<Isogeny>(phi);
  h.expl_label = label;
  return h;
}

HomElement HomElement::chain(std::vector<HomElement> parts) {
  if (parts.empty()) throw domain_error("empty composition chain");
  HomElement r = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const HomElement& p = parts[i];
    if (p.expl) throw domain_error("only the leftmost chain factor may be an explicit isogeny");
    // (h o g1) o g2 = h o (g1*g2) in the Gaussian order
    long na = r.ga * p.ga - r.gb * p.gb;
    long nb = r.ga * p.gb + r.gb * p.ga;
    r.ga = na;
    r.gb = nb;
  }
  return r;
}

bool HomElement::is_zero() const { return ga == 0 && gb == 0; }

std::string HomElement::label() const {
  std::ostringstream os;
  if (expl) {
    os << expl_label;
    if (!(ga == 1 && gb == 0)) os << "o(" << HomElement::gauss(ga, gb).label() << ")";
    return os.str();
  }
  if (gb == 0) return std::to_string(ga);
  if (ga == 0) {
    if (gb == 1) return "i";
    if (gb == -1) return "-i";
    return std::to_string(gb) + "i";
  }
  os << ga << (gb > 0 ? "+" : "-");
  long ab = gb > 0 ? gb : -gb;
  if (ab != 1) os << ab;
  os << "i";
  return os.str();
}

std::vector<long> HomElement::coordinates(bool cm) const {
  if (cm) return {ga, gb};
  if (gb != 0) throw domain_error("Gaussian label on a non-CM curve");
  return {ga};
}

Isogeny HomElement::to_isogeny(const WeierstrassCurve& E) const {
  if (is_zero()) throw domain_error("the zero map is not an isogeny");
  Isogeny g = gb == 0 ? Isogeny::multiplication(E, ga) : Isogeny::gaussian(E, ga, gb);
  if (!expl) return g;
  if (ga == 1 && gb == 0) return *expl;
  return compose(*expl, g);
}

HomElement HomElement::operator+(const HomElement& o) const {
  if (static_cast<bool>(expl) != static_cast<bool>(o.expl) ||
      (expl && !(expl.get() == o.expl.get() || *expl == *o.expl)))
    throw domain_error("sum of hom elements with different explicit heads");
  HomElement r = *this;
  r.ga += o.ga;
  r.gb += o.gb;
  return r;
}

HomElement HomElement::operator-() const {
  HomElement r = *this;
  r.ga = -ga;
  r.gb = -gb;
  return r;
}

HomElement HomElement::operator-(const HomElement& o) const { return *this + (-o); }

Isogeny lift_isogeny(const Isogeny& phi, const WeierstrassCurve& src_lifted,
                     const WeierstrassCurve& dst_lifted) {
  const FieldRef& ext = src_lifted.field();
  auto lift_poly = [&](const Polynomial& p) {
    std::vector<FieldElement> c;
    for (long k = 0; k <= p.degree(); ++k)
      c.push_back(lift_to_quad_ext(p[static_cast<std::size_t>(k)], ext));
    return Polynomial(ext, std::move(c));
  };
  return Isogeny::from_maps(src_lifted, dst_lifted, lift_poly(phi.xn()), lift_poly(phi.xd()),
                            lift_poly(phi.ys()), lift_poly(phi.yw()),
                            lift_to_quad_ext(phi.lead_coeff(), ext));
}

}  // namespace isopoly
