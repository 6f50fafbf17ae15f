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

#ifndef ISOPOLY_ISOGENY_HPP
#define ISOPOLY_ISOGENY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isopoly/curvefunc.hpp"

namespace isopoly {

/// Separable isogeny as an explicit rational-map pair
///   x' = xn(x)/xd(x),  y' = y * ys(x)/yw(x),
/// with xd, yw monic and the fractions in lowest terms. deg xn = deg xd + 1
/// equals the degree; `a` is the formal-group lead (T' o phi = a T + ...)
/// with respect to the normalized parameters on both models.
class Isogeny {
 public:
  Isogeny() = default;

  static Isogeny identity(const WeierstrassCurve& E);
  /// Degree-2 quotient by the rational two-torsion point P = (x0, 0),
  /// normalized so that a = 1.
  static Isogeny velu2(const WeierstrassCurve& E, const Point& P);
  /// (x, y) -> (-x, iy) on a model y^2 = x^3 + A4 x; a = i.
  static Isogeny cm_i(const WeierstrassCurve& E);
  /// Multiplication by n != 0 via the addition ladder; a = n.
  static Isogeny multiplication(const WeierstrassCurve& E, long n);
  /// a + b i on a CM model (b != 0 requires cm_i); a = a + b i.
  static Isogeny gaussian(const WeierstrassCurve& E, long a, long b);

  const WeierstrassCurve& source() const { return src_; }
  const WeierstrassCurve& target() const { return dst_; }
  const Polynomial& xn() const { return xn_; }
  const Polynomial& xd() const { return xd_; }
  const Polynomial& ys() const { return ys_; }
  const Polynomial& yw() const { return yw_; }
  long degree() const { return degree_; }
  const FieldElement& lead_coeff() const { return a_; }

  /// Monic kernel polynomial: the denominator of the x-map in lowest terms.
  const Polynomial& kernel_polynomial() const { return xd_; }

  bool operator==(const Isogeny& o) const;
  bool operator!=(const Isogeny& o) const { return !(*this == o); }
  std::string key() const;

  Point apply(const Point& P) const;
  /// x' o phi and y' o phi as functions on the source curve.
  CurveRationalFunction x_map() const;
  CurveRationalFunction y_map() const;
  /// T' o phi = -x'/y' o phi as a series in T, `terms` known coefficients.
  LaurentSeries parameter_series(long terms) const;

  /// Consistency: maps satisfy the target curve equation; the stored lead
  /// matches the parameter series. Used by audits and tests.
  void validate(long series_terms = 4) const;

  /// Construction with explicit maps (canonicalizes, checks invariants).
  static Isogeny from_maps(const WeierstrassCurve& src, const WeierstrassCurve& dst,
                           const Polynomial& xnum, const Polynomial& xden, const Polynomial& ynum,
                           const Polynomial& yden, const FieldElement& lead);

 private:
  WeierstrassCurve src_, dst_;
  Polynomial xn_, xd_, ys_, yw_;
  long degree_ = 0;
  FieldElement a_;
};

/// Composition psi o phi; degrees and leads multiply.
Isogeny compose(const Isogeny& psi, const Isogeny& phi);
/// Pointwise sum via the chord-tangent law on function-field points;
/// nullopt is the zero map (beta = -alpha). Leads add.
std::optional<Isogeny> isogeny_add(const Isogeny& alpha, const Isogeny& beta);
Isogeny isogeny_neg(const Isogeny& phi);

/// h o phi for h on the target of phi.
CurveRationalFunction pullback(const CurveRationalFunction& h, const Isogeny& phi);

struct KernelSum {
  Point point;  // the two-torsion point the kernel sums to (or infinity)
  int index;    // 0 for infinity, else 1..3 in the canonical E[2] ordering
};

/// Sum of the kernel points; throws extension_required when it is a
/// non-rational two-torsion point.
KernelSum kernel_sum(const Isogeny& phi);

/// <phi, phi'> = (deg(phi + phi') - deg phi - deg phi') / 2.
mpq_class degree_pairing(const Isogeny& phi, const Isogeny& psi);

/// Hom-element: integer, Gaussian integer (CM models), explicit isogeny, or a
/// composition chain of these. Realizable as an explicit Isogeny.
class HomElement {
 public:
  static HomElement integer(long n);
  static HomElement gauss(long a, long b);
  static HomElement explicit_isogeny(const Isogeny& phi, const std::string& label);
  /// Chain c1 o c2 o ... o ck (applied right to left).
  static HomElement chain(std::vector<HomElement> parts);

  bool is_zero() const;
  std::string label() const;
  /// Coordinates in the Hom basis used by the quadratic-identity check:
  /// (n) on a generic curve, (a, b) on a CM curve. Explicit factors multiply
  /// on the left and do not change coordinates.
  std::vector<long> coordinates(bool cm) const;
  /// Realize on E (throws domain_error for Gaussian parts on non-CM models,
  /// or for the zero element).
  Isogeny to_isogeny(const WeierstrassCurve& E) const;

  HomElement operator+(const HomElement& o) const;  // Gaussian/integer parts only
  HomElement operator-(const HomElement& o) const;
  HomElement operator-() const;

  long ga = 0, gb = 0;  // Gaussian coordinates for integer/gauss kinds
  bool is_gauss_like = true;
  std::shared_ptr<Isogeny> expl;  // explicit head (applied last), may be null
  std::string expl_label;

 private:
  HomElement() = default;
};

/// Coefficient-wise lift of an isogeny F_p -> F_{p^2}.
Isogeny lift_isogeny(const Isogeny& phi, const WeierstrassCurve& src_lifted,
                     const WeierstrassCurve& dst_lifted);

}  // namespace isopoly

#endif  // ISOPOLY_ISOGENY_HPP
