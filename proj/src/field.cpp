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

#include "isopoly/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <vector>

namespace isopoly {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }
u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  if (s >= p) s -= p;
  return s;
}
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) {
  if (a == 0) throw domain_error("division by zero in F_p");
  return powmod(a, p - 2, p);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  mpz_class z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

u64 least_nonresidue(u64 p) {
  for (u64 d = 2; d < p; ++d) {
    if (powmod(d, (p - 1) / 2, p) == p - 1) return d;
  }
  throw domain_error("no quadratic non-residue found");
}

// Multiplication in F_{p^2} = F_p[u]/(u^2 - d).
FieldElement::Fp2V mul2(FieldElement::Fp2V x, FieldElement::Fp2V y, u64 p, u64 d) {
  u64 ac = mulmod(x.a, y.a, p);
  u64 bd = mulmod(x.b, y.b, p);
  u64 ad = mulmod(x.a, y.b, p);
  u64 bc = mulmod(x.b, y.a, p);
  return {addmod(ac, mulmod(bd, d, p), p), addmod(ad, bc, p)};
}

FieldElement::Fp2V inv2(FieldElement::Fp2V x, u64 p, u64 d) {
  // (a + bu)^-1 = (a - bu) / (a^2 - d b^2)
  u64 n = submod(mulmod(x.a, x.a, p), mulmod(d, mulmod(x.b, x.b, p), p), p);
  if (n == 0) throw domain_error("division by zero in F_{p^2}");
  u64 ni = invmod(n, p);
  return {mulmod(x.a, ni, p), mulmod(submod(0, x.b, p), ni, p)};
}

bool rational_sqrt(const mpq_class& c, mpq_class& out) {
  if (sgn(c) < 0) return false;
  if (sgn(c) == 0) {
    out = 0;
    return true;
  }
  const mpz_class& n = c.get_num();
  const mpz_class& de = c.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(de.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), de.get_mpz_t());
  out = mpq_class(rn) / mpq_class(rd);
  return true;
}

bool rational_cbrt(const mpq_class& c, mpq_class& out) {
  if (sgn(c) == 0) {
    out = 0;
    return true;
  }
  mpz_class n = c.get_num(), de = c.get_den();
  bool neg = sgn(n) < 0;
  if (neg) n = -n;
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), de.get_mpz_t(), 3) == 0) return false;
  out = mpq_class(neg ? mpz_class(-rn) : rn) / mpq_class(rd);
  return true;
}

// (|x|, sign) key comparison for rationals: smaller absolute value first,
// non-negative before negative on ties.
int rat_key_cmp(const mpq_class& a, const mpq_class& b) {
  mpq_class aa = abs(a), ab = abs(b);
  int c = cmp(aa, ab);
  if (c != 0) return c;
  bool na = sgn(a) < 0, nb = sgn(b) < 0;
  if (na != nb) return na ? 1 : -1;
  return 0;
}

// Balanced-lift key for residues: min(v, p-v), with the small lift first.
int fp_key_cmp(u64 a, u64 b, u64 p) {
  u64 la = std::min(a, a == 0 ? 0 : p - a);
  u64 lb = std::min(b, b == 0 ? 0 : p - b);
  if (la != lb) return la < lb ? -1 : 1;
  bool na = a != 0 && a > p / 2, nb = b != 0 && b > p / 2;
  if (na != nb) return na ? 1 : -1;
  return 0;
}

}  // namespace

FieldRef Field::rationals() {
  static FieldRef f(new Field(FieldKind::Rationals, 0, 0));
  return f;
}

FieldRef Field::gaussian_rationals() {
  static FieldRef f(new Field(FieldKind::GaussianRationals, 0, 0));
  return f;
}

FieldRef Field::prime_field(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw domain_error("modulus must be an odd prime >= 3");
  if (p >= (1ull << 31)) throw domain_error("modulus too large (need p < 2^31)");
  if (!is_prime_u64(p)) throw domain_error("modulus is not prime");
  return FieldRef(new Field(FieldKind::PrimeField, p, 0));
}

FieldRef Field::quad_ext(std::uint64_t p) {
  FieldRef base = prime_field(p);  // validates p
  return FieldRef(new Field(FieldKind::QuadExt, p, least_nonresidue(p)));
}

bool Field::has_sqrt_minus_one() const {
  switch (kind) {
    case FieldKind::Rationals: return false;
    case FieldKind::GaussianRationals: return true;
    case FieldKind::PrimeField: return p % 4 == 1;
    case FieldKind::QuadExt: return true;  // -1 is a square in F_{p^2}
  }
  return false;
}

std::string Field::name() const {
  switch (kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::GaussianRationals: return "Q(i)";
    case FieldKind::PrimeField: return "F_" + std::to_string(p);
    case FieldKind::QuadExt: return "F_" + std::to_string(p) + "^2";
  }
  return "?";
}

FieldElement FieldElement::zero(const FieldRef& f) { return from_long(f, 0); }
FieldElement FieldElement::one(const FieldRef& f) { return from_long(f, 1); }

FieldElement FieldElement::from_long(const FieldRef& f, long v) {
  FieldElement e;
  e.f_ = f;
  switch (f->kind) {
    case FieldKind::Rationals: e.v_ = mpq_class(v); break;
    case FieldKind::GaussianRationals: e.v_ = GaussQ{mpq_class(v), mpq_class(0)}; break;
    case FieldKind::PrimeField: {
      long r = v % static_cast<long>(f->p);
      if (r < 0) r += f->p;
      e.v_ = FpV{static_cast<u64>(r)};
      break;
    }
    case FieldKind::QuadExt: {
      long r = v % static_cast<long>(f->p);
      if (r < 0) r += f->p;
      e.v_ = Fp2V{static_cast<u64>(r), 0};
      break;
    }
  }
  return e;
}

FieldElement FieldElement::from_mpq(const FieldRef& f, const mpq_class& vraw) {
  mpq_class v = vraw;
  v.canonicalize();
  FieldElement e;
  e.f_ = f;
  switch (f->kind) {
    case FieldKind::Rationals: e.v_ = v; break;
    case FieldKind::GaussianRationals: e.v_ = GaussQ{v, mpq_class(0)}; break;
    case FieldKind::PrimeField:
    case FieldKind::QuadExt: {
      // v = n/d reduced; map to n * d^-1 mod p.
      mpz_class n = v.get_num(), de = v.get_den(), pz(static_cast<unsigned long>(f->p));
      mpz_class nm = n % pz;
      if (nm < 0) nm += pz;
      mpz_class dm = de % pz;
      if (dm == 0) throw domain_error("denominator divisible by modulus");
      u64 nv = nm.get_ui(), dv = mpz_class(dm).get_ui();
      u64 r = mulmod(nv, invmod(dv, f->p), f->p);
      if (f->kind == FieldKind::PrimeField)
        e.v_ = FpV{r};
      else
        e.v_ = Fp2V{r, 0};
      break;
    }
  }
  return e;
}

FieldElement FieldElement::gaussian(const FieldRef& f, const mpq_class& re, const mpq_class& im) {
  if (f->kind != FieldKind::GaussianRationals) throw domain_error("gaussian() needs Q(i)");
  FieldElement e;
  e.f_ = f;
  mpq_class r = re, i = im;
  r.canonicalize();
  i.canonicalize();
  e.v_ = GaussQ{r, i};
  return e;
}

FieldElement FieldElement::fp(const FieldRef& f, std::uint64_t v) {
  if (f->kind != FieldKind::PrimeField) throw domain_error("fp() needs a prime field");
  FieldElement e;
  e.f_ = f;
  e.v_ = FpV{v % f->p};
  return e;
}

FieldElement FieldElement::fp2(const FieldRef& f, std::uint64_t a, std::uint64_t b) {
  if (f->kind != FieldKind::QuadExt) throw domain_error("fp2() needs F_{p^2}");
  FieldElement e;
  e.f_ = f;
  e.v_ = Fp2V{a % f->p, b % f->p};
  return e;
}

FieldElement FieldElement::sqrt_minus_one(const FieldRef& f) {
  if (!f->has_sqrt_minus_one()) throw extension_required("no square root of -1 in " + f->name());
  switch (f->kind) {
    case FieldKind::GaussianRationals: return gaussian(f, 0, 1);
    default: {
      auto r = (-one(f)).sqrt();
      if (!r) throw extension_required("no square root of -1 in " + f->name());
      return *r;
    }
  }
}

bool FieldElement::is_zero() const {
  switch (f_->kind) {
    case FieldKind::Rationals: return sgn(std::get<mpq_class>(v_)) == 0;
    case FieldKind::GaussianRationals: {
      const auto& g = std::get<GaussQ>(v_);
      return sgn(g.re) == 0 && sgn(g.im) == 0;
    }
    case FieldKind::PrimeField: return std::get<FpV>(v_).v == 0;
    case FieldKind::QuadExt: {
      auto x = std::get<Fp2V>(v_);
      return x.a == 0 && x.b == 0;
    }
  }
  return false;
}

bool FieldElement::is_one() const { return *this == one(f_); }

bool FieldElement::operator==(const FieldElement& o) const {
  if (!(*f_ == *o.f_)) return false;
  switch (f_->kind) {
    case FieldKind::Rationals: return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
    case FieldKind::GaussianRationals: {
      const auto& a = std::get<GaussQ>(v_);
      const auto& b = std::get<GaussQ>(o.v_);
      return a.re == b.re && a.im == b.im;
    }
    case FieldKind::PrimeField: return std::get<FpV>(v_).v == std::get<FpV>(o.v_).v;
    case FieldKind::QuadExt: {
      auto a = std::get<Fp2V>(v_), b = std::get<Fp2V>(o.v_);
      return a.a == b.a && a.b == b.b;
    }
  }
  return false;
}

#define ISOPOLY_CHECK_SAME_FIELD(o)                                       \
  if (!(*f_ == *(o).f_)) throw domain_error("mixed-field arithmetic");

FieldElement FieldElement::operator+(const FieldElement& o) const {
  ISOPOLY_CHECK_SAME_FIELD(o);
  FieldElement r;
  r.f_ = f_;
  switch (f_->kind) {
    case FieldKind::Rationals:
      r.v_ = mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_));
      break;
    case FieldKind::GaussianRationals: {
      const auto& a = std::get<GaussQ>(v_);
      const auto& b = std::get<GaussQ>(o.v_);
      r.v_ = GaussQ{a.re + b.re, a.im + b.im};
      break;
    }
    case FieldKind::PrimeField:
      r.v_ = FpV{addmod(std::get<FpV>(v_).v, std::get<FpV>(o.v_).v, f_->p)};
      break;
    case FieldKind::QuadExt: {
      auto a = std::get<Fp2V>(v_), b = std::get<Fp2V>(o.v_);
      r.v_ = Fp2V{addmod(a.a, b.a, f_->p), addmod(a.b, b.b, f_->p)};
      break;
    }
  }
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
  FieldElement r;
  r.f_ = f_;
  switch (f_->kind) {
    case FieldKind::Rationals: r.v_ = mpq_class(-std::get<mpq_class>(v_)); break;
    case FieldKind::GaussianRationals: {
      const auto& a = std::get<GaussQ>(v_);
      r.v_ = GaussQ{-a.re, -a.im};
      break;
    }
    case FieldKind::PrimeField: r.v_ = FpV{submod(0, std::get<FpV>(v_).v, f_->p)}; break;
    case FieldKind::QuadExt: {
      auto a = std::get<Fp2V>(v_);
      r.v_ = Fp2V{submod(0, a.a, f_->p), submod(0, a.b, f_->p)};
      break;
    }
  }
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  ISOPOLY_CHECK_SAME_FIELD(o);
  FieldElement r;
  r.f_ = f_;
  switch (f_->kind) {
    case FieldKind::Rationals:
      r.v_ = mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_));
      break;
    case FieldKind::GaussianRationals: {
      const auto& a = std::get<GaussQ>(v_);
      const auto& b = std::get<GaussQ>(o.v_);
      r.v_ = GaussQ{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
      break;
    }
    case FieldKind::PrimeField:
      r.v_ = FpV{mulmod(std::get<FpV>(v_).v, std::get<FpV>(o.v_).v, f_->p)};
      break;
    case FieldKind::QuadExt:
      r.v_ = mul2(std::get<Fp2V>(v_), std::get<Fp2V>(o.v_), f_->p, f_->d);
      break;
  }
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw domain_error("division by zero");
  FieldElement r;
  r.f_ = f_;
  switch (f_->kind) {
    case FieldKind::Rationals: r.v_ = mpq_class(1 / std::get<mpq_class>(v_)); break;
    case FieldKind::GaussianRationals: {
      const auto& a = std::get<GaussQ>(v_);
      mpq_class n = a.re * a.re + a.im * a.im;
      r.v_ = GaussQ{a.re / n, -a.im / n};
      break;
    }
    case FieldKind::PrimeField: r.v_ = FpV{invmod(std::get<FpV>(v_).v, f_->p)}; break;
    case FieldKind::QuadExt: r.v_ = inv2(std::get<Fp2V>(v_), f_->p, f_->d); break;
  }
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r = one(f_), b = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) r = r * b;
    b = b * b;
    u >>= 1;
  }
  return r;
}

std::optional<FieldElement> FieldElement::sqrt() const {
  switch (f_->kind) {
    case FieldKind::Rationals: {
      mpq_class out;
      if (!rational_sqrt(std::get<mpq_class>(v_), out)) return std::nullopt;
      return from_mpq(f_, out);
    }
    case FieldKind::GaussianRationals: {
      const auto& g = std::get<GaussQ>(v_);
      mpq_class c, dd;
      if (sgn(g.im) == 0) {
        if (rational_sqrt(g.re, c)) return gaussian(f_, c, 0);
        if (rational_sqrt(mpq_class(-g.re), c)) return gaussian(f_, 0, c);  // (ci)^2 = -c^2
        return std::nullopt;
      }
      // (c+di)^2 = re+im*i: c^2 = (re + m)/2 with m = sqrt(re^2+im^2).
      mpq_class m;
      if (!rational_sqrt(g.re * g.re + g.im * g.im, m)) return std::nullopt;
      if (!rational_sqrt((g.re + m) / 2, c)) {
        if (!rational_sqrt((g.re - m) / 2, c)) return std::nullopt;
      }
      if (sgn(c) == 0) return std::nullopt;
      dd = g.im / (2 * c);
      FieldElement r = gaussian(f_, c, dd);
      if (!(r * r == *this)) return std::nullopt;
      // Canonical sign: first nonzero rational component positive.
      if (sgn(c) < 0 || (sgn(c) == 0 && sgn(dd) < 0)) r = -r;
      return r;
    }
    case FieldKind::PrimeField:
    case FieldKind::QuadExt: return finite_kth_root(*this, 2);
  }
  return std::nullopt;
}

std::optional<FieldElement> FieldElement::cbrt() const {
  switch (f_->kind) {
    case FieldKind::Rationals: {
      mpq_class out;
      if (!rational_cbrt(std::get<mpq_class>(v_), out)) return std::nullopt;
      return from_mpq(f_, out);
    }
    case FieldKind::GaussianRationals: {
      const auto& g = std::get<GaussQ>(v_);
      if (sgn(g.im) == 0) {
        mpq_class out;
        if (!rational_cbrt(g.re, out)) return std::nullopt;
        return gaussian(f_, out, 0);
      }
      return std::nullopt;  // general Q(i) cube roots unsupported
    }
    case FieldKind::PrimeField:
    case FieldKind::QuadExt: return finite_kth_root(*this, 3);
  }
  return std::nullopt;
}

namespace {

// Field order minus one, as the exponent group size.
u64 unit_group_order(const Field& f) {
  if (f.kind == FieldKind::PrimeField) return f.p - 1;
  return f.p * f.p - 1;  // p < 2^31 keeps this in range
}

}  // namespace

std::optional<FieldElement> finite_kth_root(const FieldElement& c, unsigned k) {
  const FieldRef& f = c.field();
  if (!f->is_finite()) throw domain_error("finite_kth_root needs a finite field");
  if (c.is_zero()) return c;
  const u64 m = unit_group_order(*f);

  auto canonicalize_sign = [&](FieldElement r) {
    if (k != 2) return r;
    FieldElement nr = -r;
    bool take_neg = false;
    if (f->kind == FieldKind::PrimeField) {
      take_neg = nr.fp_value() < r.fp_value();
    } else {
      auto a = r.fp2_value(), b = nr.fp2_value();
      take_neg = (b.a < a.a) || (b.a == a.a && b.b < a.b);
    }
    return take_neg ? nr : r;
  };

  if (m % k != 0) {
    // k coprime to group order: unique root c^(k^-1 mod m).
    u64 kinv = 0;
    {
      // extended Euclid on small numbers
      long long t = 0, newt = 1, r = static_cast<long long>(m), newr = k;
      while (newr != 0) {
        long long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
      }
      long long ti = t;
      ti %= static_cast<long long>(m);
      if (ti < 0) ti += m;
      kinv = static_cast<u64>(ti);
    }
    FieldElement r = c.pow(static_cast<long>(kinv));
    return canonicalize_sign(r);
  }

  // Residue test: c^(m/k) must be 1.
  if (!c.pow(static_cast<long>(m / k)).is_one()) return std::nullopt;

  // m = k^s * t with k not dividing t.
  u64 t = m;
  unsigned s = 0;
  while (t % k == 0) {
    t /= k;
    ++s;
  }

  // Non-k-th-power eta by deterministic scan.
  FieldElement eta = FieldElement::one(f);
  {
    bool found = false;
    for (u64 trial = 2; trial < 2000000 && !found; ++trial) {
      FieldElement cand;
      if (f->kind == FieldKind::PrimeField) {
        cand = FieldElement::fp(f, trial % f->p);
      } else {
        cand = FieldElement::fp2(f, trial % f->p, 1 + (trial / f->p) % f->p);
      }
      if (cand.is_zero()) continue;
      if (!cand.pow(static_cast<long>(m / k)).is_one()) {
        eta = cand;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }

  // x0 = c^alpha with alpha = k^-1 mod t, so x0^k = c * w with w in the k-Sylow.
  u64 alpha;
  {
    long long tt = 0, newt = 1, r = static_cast<long long>(t), newr = k;
    while (newr != 0) {
      long long q = r / newr;
      std::swap(tt -= q * newt, newt);
      std::swap(r -= q * newr, newr);
    }
    tt %= static_cast<long long>(t);
    if (tt < 0) tt += t;
    alpha = static_cast<u64>(tt);
  }
  FieldElement x0 = c.pow(static_cast<long>(alpha));
  FieldElement w = x0.pow(static_cast<long>(k)) / c;  // in the Sylow subgroup, order k^s
  FieldElement z = eta.pow(static_cast<long>(t));     // generator of the Sylow subgroup

  // Discrete log of w base z by base-k digits (Pohlig-Hellman).
  u64 e = 0;
  {
    // gamma = z^(k^(s-1)) has order k; table of its powers.
    FieldElement gamma = z;
    for (unsigned j = 0; j + 1 < s; ++j) gamma = gamma.pow(static_cast<long>(k));
    std::vector<FieldElement> table;
    FieldElement acc = FieldElement::one(f);
    for (unsigned j = 0; j < k; ++j) {
      table.push_back(acc);
      acc = acc * gamma;
    }
    u64 kpow = 1;
    for (unsigned j = 0; j < s; ++j) {
      FieldElement h = w * z.pow(static_cast<long>(e)).inverse();
      // hj = h^(k^(s-1-j)) lies in the order-k subgroup
      FieldElement hj = h;
      for (unsigned l = 0; l + 1 < s - j; ++l) hj = hj.pow(static_cast<long>(k));
      unsigned digit = k;
      for (unsigned l = 0; l < k; ++l) {
        if (hj == table[l]) {
          digit = l;
          break;
        }
      }
      if (digit == k) return std::nullopt;
      // w = z^e', we want z^e = w, accumulate negative digit
      e += static_cast<u64>(digit) * kpow;
      kpow *= k;
    }
  }
  // w = z^e; need v with v^k = w^-1, i.e. e divisible-by-k handling:
  if (e % k != 0) {
    // try e' = k^s - e (z^e inverse representation)
    u64 ksp = 1;
    for (unsigned j = 0; j < s; ++j) ksp *= k;
    // v^k = w^-1 = z^(ksp - e); solvable iff k | (ksp - e) iff k | e. Not solvable.
    (void)ksp;
    return std::nullopt;
  }
  u64 ksp = 1;
  for (unsigned j = 0; j < s; ++j) ksp *= k;
  u64 einv = (ksp - e % ksp) % ksp;  // exponent of w^-1
  FieldElement v = z.pow(static_cast<long>(einv / k));
  FieldElement root = x0 * v;
  if (!(root.pow(static_cast<long>(k)) == c)) return std::nullopt;
  return canonicalize_sign(root);
}

bool FieldElement::canonical_less(const FieldElement& a, const FieldElement& b) {
  if (!(*a.f_ == *b.f_)) throw domain_error("mixed-field comparison");
  switch (a.f_->kind) {
    case FieldKind::Rationals:
      return rat_key_cmp(std::get<mpq_class>(a.v_), std::get<mpq_class>(b.v_)) < 0;
    case FieldKind::GaussianRationals: {
      const auto& x = std::get<GaussQ>(a.v_);
      const auto& y = std::get<GaussQ>(b.v_);
      int c = rat_key_cmp(x.re, y.re);
      if (c != 0) return c < 0;
      return rat_key_cmp(x.im, y.im) < 0;
    }
    case FieldKind::PrimeField:
      return fp_key_cmp(std::get<FpV>(a.v_).v, std::get<FpV>(b.v_).v, a.f_->p) < 0;
    case FieldKind::QuadExt: {
      auto x = std::get<Fp2V>(a.v_), y = std::get<Fp2V>(b.v_);
      int c = fp_key_cmp(x.a, y.a, a.f_->p);
      if (c != 0) return c < 0;
      return fp_key_cmp(x.b, y.b, a.f_->p) < 0;
    }
  }
  return false;
}

std::string FieldElement::str() const {
  std::ostringstream os;
  switch (f_->kind) {
    case FieldKind::Rationals: os << std::get<mpq_class>(v_).get_str(); break;
    case FieldKind::GaussianRationals: {
      const auto& g = std::get<GaussQ>(v_);
      if (sgn(g.im) == 0) {
        os << g.re.get_str();
      } else if (sgn(g.re) == 0) {
        if (g.im == 1)
          os << "i";
        else if (g.im == -1)
          os << "-i";
        else
          os << g.im.get_str() << "i";
      } else {
        os << g.re.get_str();
        mpq_class ai = abs(g.im);
        os << (sgn(g.im) < 0 ? " - " : " + ");
        if (ai == 1)
          os << "i";
        else
          os << ai.get_str() << "i";
      }
      break;
    }
    case FieldKind::PrimeField: os << std::get<FpV>(v_).v; break;
    case FieldKind::QuadExt: {
      auto x = std::get<Fp2V>(v_);
      if (x.b == 0) {
        os << x.a;
      } else if (x.a == 0) {
        if (x.b == 1)
          os << "u";
        else
          os << x.b << "u";
      } else {
        os << x.a << " + ";
        if (x.b == 1)
          os << "u";
        else
          os << x.b << "u";
      }
      break;
    }
  }
  return os.str();
}

const mpq_class& FieldElement::rat() const {
  if (f_->kind != FieldKind::Rationals) throw domain_error("rat() needs Q");
  return std::get<mpq_class>(v_);
}

mpq_class FieldElement::gauss_re() const {
  if (f_->kind == FieldKind::Rationals) return std::get<mpq_class>(v_);
  if (f_->kind != FieldKind::GaussianRationals) throw domain_error("gauss_re() needs Q(i)");
  return std::get<GaussQ>(v_).re;
}

mpq_class FieldElement::gauss_im() const {
  if (f_->kind == FieldKind::Rationals) return mpq_class(0);
  if (f_->kind != FieldKind::GaussianRationals) throw domain_error("gauss_im() needs Q(i)");
  return std::get<GaussQ>(v_).im;
}

std::uint64_t FieldElement::fp_value() const {
  if (f_->kind != FieldKind::PrimeField) throw domain_error("fp_value() needs F_p");
  return std::get<FpV>(v_).v;
}

FieldElement::Fp2V FieldElement::fp2_value() const {
  if (f_->kind != FieldKind::QuadExt) throw domain_error("fp2_value() needs F_{p^2}");
  return std::get<Fp2V>(v_);
}

FieldElement lift_to_quad_ext(const FieldElement& x, const FieldRef& ext) {
  if (ext->kind != FieldKind::QuadExt) throw domain_error("lift target must be F_{p^2}");
  if (x.field()->kind != FieldKind::PrimeField || x.field()->p != ext->p)
    throw domain_error("lift source must be F_p with matching p");
  return FieldElement::fp2(ext, x.fp_value(), 0);
}

}  // namespace isopoly
