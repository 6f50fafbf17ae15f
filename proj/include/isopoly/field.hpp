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

#ifndef ISOPOLY_FIELD_HPP
#define ISOPOLY_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace isopoly {

/// Thrown on invalid inputs (bad modulus, mismatched fields, singular curves, ...).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a computation needs a root that does not exist over the working
/// field and automatic extension is not available or not allowed.
class extension_required : public std::runtime_error {
 public:
  explicit extension_required(const std::string& what) : std::runtime_error(what) {}
};

enum class FieldKind {
  Rationals,          // Q
  GaussianRationals,  // Q(i)
  PrimeField,         // F_p, p an odd prime
  QuadExt             // F_{p^2} = F_p[u]/(u^2 - d), d a non-residue
};

class Field;
using FieldRef = std::shared_ptr<const Field>;

/// Field descriptor. Immutable; shared by every element of the field.
class Field : public std::enable_shared_from_this<Field> {
 public:
  FieldKind kind;
  std::uint64_t p = 0;  // modulus for PrimeField/QuadExt
  std::uint64_t d = 0;  // non-residue defining u^2 = d for QuadExt

  static FieldRef rationals();
  static FieldRef gaussian_rationals();
  static FieldRef prime_field(std::uint64_t p);  // odd prime, 3 <= p < 2^31
  static FieldRef quad_ext(std::uint64_t p);     // F_{p^2}, least non-residue picked

  bool is_finite() const { return kind == FieldKind::PrimeField || kind == FieldKind::QuadExt; }
  bool has_sqrt_minus_one() const;
  std::string name() const;  // "Q", "Q(i)", "F_13", "F_13^2"
  bool operator==(const Field& o) const { return kind == o.kind && p == o.p && d == o.d; }

 private:
  Field(FieldKind k, std::uint64_t p_, std::uint64_t d_) : kind(k), p(p_), d(d_) {}
};

/// Exact scalar: reduced rational, pair of reduced rationals (a+bi),
/// residue in [0,p), or residue pair a+bu. Immutable value semantics.
class FieldElement {
 public:
  struct GaussQ {
    mpq_class re, im;
  };
  struct FpV {
    std::uint64_t v;
  };
  struct Fp2V {
    std::uint64_t a, b;
  };

  FieldElement() = default;
  static FieldElement zero(const FieldRef& f);
  static FieldElement one(const FieldRef& f);
  static FieldElement from_long(const FieldRef& f, long v);
  static FieldElement from_mpq(const FieldRef& f, const mpq_class& v);
  static FieldElement gaussian(const FieldRef& f, const mpq_class& re, const mpq_class& im);
  static FieldElement fp(const FieldRef& f, std::uint64_t v);           // reduced mod p
  static FieldElement fp2(const FieldRef& f, std::uint64_t a, std::uint64_t b);
  /// The canonical square root of -1 where one exists (i in Q(i); the smaller
  /// residue r with r^2 = -1 in F_p, p = 1 mod 4).
  static FieldElement sqrt_minus_one(const FieldRef& f);

  const FieldRef& field() const { return f_; }

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(long e) const;

  /// Exact square root with the canonical sign, or absence.
  /// Q / Q(i): first nonzero rational component positive; F_p: smaller residue;
  /// F_{p^2}: lexicographically smaller coefficient pair.
  std::optional<FieldElement> sqrt() const;
  /// Exact cube root where supported (Q; finite fields). Q(i) handles only
  /// rational-real inputs.
  std::optional<FieldElement> cbrt() const;

  /// Strict total order used for canonical sequencing (two-torsion ordering,
  /// deterministic test output). Orders by "absolute value then sign", with
  /// balanced lifts in finite fields, componentwise.
  static bool canonical_less(const FieldElement& a, const FieldElement& b);

  std::string str() const;

  // Rational/Gaussian component access (throws for finite fields).
  const mpq_class& rat() const;
  mpq_class gauss_re() const;
  mpq_class gauss_im() const;
  std::uint64_t fp_value() const;
  Fp2V fp2_value() const;

 private:
  FieldRef f_;
  std::variant<mpq_class, GaussQ, FpV, Fp2V> v_;
  friend struct FieldOps;
};

/// Deterministic k-th root in a finite field (k = 2 or 3), used by sqrt/cbrt.
std::optional<FieldElement> finite_kth_root(const FieldElement& c, unsigned k);

/// Coefficient-wise embedding F_p -> F_{p^2}.
FieldElement lift_to_quad_ext(const FieldElement& x, const FieldRef& ext);

}  // namespace isopoly

#endif  // ISOPOLY_FIELD_HPP
