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

#include "isopoly/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

namespace isopoly {

namespace {

// Divisor candidates (positive) of |n|, bounded enumeration.
std::vector<mpz_class> integer_divisors(const mpz_class& n, unsigned long bound = 10000) {
  std::vector<mpz_class> out;
  mpz_class a = abs(n);
  if (a == 0) return out;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (d > bound) throw domain_error("divisor enumeration bound exceeded in root search");
    if (a % d == 0) {
      out.push_back(d);
      out.push_back(a / d);
    }
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(const FieldRef& f, std::vector<FieldElement> coeffs)
    : f_(f), c_(std::move(coeffs)) {
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::constant(const FieldElement& c) {
  Polynomial p(c.field());
  if (!c.is_zero()) p.c_.push_back(c);
  return p;
}

Polynomial Polynomial::from_longs(const FieldRef& f, std::initializer_list<long> asc) {
  std::vector<FieldElement> v;
  v.reserve(asc.size());
  for (long x : asc) v.push_back(FieldElement::from_long(f, x));
  return Polynomial(f, std::move(v));
}

Polynomial Polynomial::x(const FieldRef& f) {
  return Polynomial(f, {FieldElement::zero(f), FieldElement::one(f)});
}

Polynomial Polynomial::monomial(const FieldElement& c, std::size_t k) {
  Polynomial p(c.field());
  if (c.is_zero()) return p;
  p.c_.assign(k + 1, FieldElement::zero(c.field()));
  p.c_[k] = c;
  return p;
}

FieldElement Polynomial::operator[](std::size_t k) const {
  if (k < c_.size()) return c_[k];
  return FieldElement::zero(f_);
}

FieldElement Polynomial::lc() const {
  if (is_zero()) throw domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

bool Polynomial::is_monic() const { return !is_zero() && c_.back().is_one(); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), FieldElement::zero(f_));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < c_.size() && k < o.c_.size())
      r[k] = c_[k] + o.c_[k];
    else if (k < c_.size())
      r[k] = c_[k];
    else
      r[k] = o.c_[k];
  }
  return Polynomial(f_, std::move(r));
}

Polynomial Polynomial::operator-() const {
  std::vector<FieldElement> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(-x);
  return Polynomial(f_, std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial(f_);
  if (f_->kind == FieldKind::PrimeField) {
    // flat residue arithmetic; the generic path pays heavily for boxing
    const std::uint64_t p = f_->p;
    std::vector<std::uint64_t> a(c_.size()), b(o.c_.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = c_[k].fp_value();
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = o.c_[k].fp_value();
    std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
      }
    }
    std::vector<FieldElement> out;
    out.reserve(r.size());
    for (std::uint64_t v : r) out.push_back(FieldElement::fp(f_, v));
    return Polynomial(f_, std::move(out));
  }
  std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, FieldElement::zero(f_));
  for (std::size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (std::size_t b = 0; b < o.c_.size(); ++b) {
      if (o.c_[b].is_zero()) continue;
      r[a + b] = r[a + b] + c_[a] * o.c_[b];
    }
  }
  return Polynomial(f_, std::move(r));
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
  if (c.is_zero()) return Polynomial(f_);
  std::vector<FieldElement> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x * c);
  return Polynomial(f_, std::move(r));
}

Polynomial Polynomial::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<FieldElement> r(c_.size() + k, FieldElement::zero(f_));
  for (std::size_t a = 0; a < c_.size(); ++a) r[a + k] = c_[a];
  return Polynomial(f_, std::move(r));
}

Polynomial Polynomial::pow(unsigned long e) const {
  Polynomial r = constant(FieldElement::one(f_));
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != o.c_[k]) return false;
  return true;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {Polynomial(f_), *this};
  if (f_->kind == FieldKind::PrimeField) {
    const std::uint64_t p = f_->p;
    auto inv = [&](std::uint64_t x) {
      std::uint64_t r = 1, e = p - 2;
      while (e) {
        if (e & 1) r = static_cast<unsigned __int128>(r) * x % p;
        x = static_cast<unsigned __int128>(x) * x % p;
        e >>= 1;
      }
      return r;
    };
    std::vector<std::uint64_t> rem(c_.size()), dd(d.c_.size());
    for (std::size_t k = 0; k < rem.size(); ++k) rem[k] = c_[k].fp_value();
    for (std::size_t k = 0; k < dd.size(); ++k) dd[k] = d.c_[k].fp_value();
    const std::uint64_t dinv = inv(dd.back());
    const long dn = d.degree();
    std::vector<std::uint64_t> quo(static_cast<std::size_t>(degree() - dn + 1), 0);
    for (long k = degree(); k >= dn; --k) {
      std::uint64_t top = rem[static_cast<std::size_t>(k)];
      if (top == 0) continue;
      std::uint64_t q = static_cast<unsigned __int128>(top) * dinv % p;
      quo[static_cast<std::size_t>(k - dn)] = q;
      for (long j = 0; j <= dn; ++j) {
        std::uint64_t& cell = rem[static_cast<std::size_t>(k - dn + j)];
        std::uint64_t sub = static_cast<unsigned __int128>(q) * dd[static_cast<std::size_t>(j)] % p;
        cell = cell >= sub ? cell - sub : cell + p - sub;
      }
    }
    rem.resize(static_cast<std::size_t>(std::max<long>(dn, 0)));
    std::vector<FieldElement> qv, rv;
    qv.reserve(quo.size());
    rv.reserve(rem.size());
    for (std::uint64_t v : quo) qv.push_back(FieldElement::fp(f_, v));
    for (std::uint64_t v : rem) rv.push_back(FieldElement::fp(f_, v));
    return {Polynomial(f_, std::move(qv)), Polynomial(f_, std::move(rv))};
  }
  FieldElement dlc_inv = d.lc().inverse();
  std::vector<FieldElement> rem = c_;
  std::vector<FieldElement> quo(degree() - d.degree() + 1, FieldElement::zero(f_));
  for (long k = degree(); k >= d.degree(); --k) {
    FieldElement& top = rem[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    FieldElement q = top * dlc_inv;
    quo[static_cast<std::size_t>(k - d.degree())] = q;
    for (long j = 0; j <= d.degree(); ++j) {
      rem[static_cast<std::size_t>(k - d.degree() + j)] =
          rem[static_cast<std::size_t>(k - d.degree() + j)] - q * d.c_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(std::max<long>(d.degree(), 0));
  return {Polynomial(f_, std::move(quo)), Polynomial(f_, std::move(rem))};
}

Polynomial Polynomial::divexact(const Polynomial& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw domain_error("inexact polynomial division");
  return q;
}

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x.divmod(y).second;
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x.monic();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw domain_error("monic() of zero polynomial");
  return scaled(lc().inverse());
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial(f_);
  std::vector<FieldElement> r;
  r.reserve(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k)
    r.push_back(c_[k] * FieldElement::from_long(f_, static_cast<long>(k)));
  return Polynomial(f_, std::move(r));
}

FieldElement Polynomial::eval(const FieldElement& x) const {
  FieldElement r = FieldElement::zero(f_);
  for (std::size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
  return r;
}

std::optional<Polynomial> Polynomial::sqrt_monic() const {
  if (is_zero() || !is_monic() || degree() % 2 != 0) return std::nullopt;
  const long d = degree() / 2;
  // Solve s^2 = this with s monic of degree d, coefficients from the top.
  std::vector<FieldElement> s(static_cast<std::size_t>(d) + 1, FieldElement::zero(f_));
  s[static_cast<std::size_t>(d)] = FieldElement::one(f_);
  FieldElement two_inv = FieldElement::from_long(f_, 2).inverse();
  for (long k = 1; k <= d; ++k) {
    // coefficient of x^(2d-k): 2*s_{d-k} + sum_{0<j<k} s_{d-j} s_{d-k+j}
    FieldElement acc = (*this)[static_cast<std::size_t>(2 * d - k)];
    for (long j = 1; j < k; ++j)
      acc = acc - s[static_cast<std::size_t>(d - j)] * s[static_cast<std::size_t>(d - k + j)];
    s[static_cast<std::size_t>(d - k)] = acc * two_inv;
  }
  Polynomial root(f_, std::move(s));
  if (root * root != *this) return std::nullopt;
  return root;
}

namespace {

// x^e mod m by square-and-multiply on polynomials.
Polynomial powmod_x(const FieldRef& f, std::uint64_t e, const Polynomial& m) {
  Polynomial r = Polynomial::constant(FieldElement::one(f));
  Polynomial b = Polynomial::x(f).divmod(m).second;
  while (e) {
    if (e & 1) r = (r * b).divmod(m).second;
    b = (b * b).divmod(m).second;
    e >>= 1;
  }
  return r;
}

std::uint64_t field_order(const Field& f) {
  return f.kind == FieldKind::PrimeField ? f.p : f.p * f.p;
}

// Equal-degree splitting of a squarefree product of linear factors.
void split_linear(const Polynomial& g, std::vector<FieldElement>& out, std::uint64_t& state) {
  const FieldRef& f = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-(g[0] / g[1]));
    return;
  }
  const std::uint64_t q = field_order(*f);
  while (true) {
    // deterministic xorshift stream for the splitting offsets
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    FieldElement delta;
    if (f->kind == FieldKind::PrimeField) {
      delta = FieldElement::fp(f, state % f->p);
    } else {
      delta = FieldElement::fp2(f, state % f->p, (state >> 31) % f->p);
    }
    // h = (x+delta)^((q-1)/2) mod g
    Polynomial h = Polynomial::constant(FieldElement::one(f));
    {
      Polynomial b = Polynomial(f, {delta, FieldElement::one(f)}).divmod(g).second;
      std::uint64_t e = (q - 1) / 2;
      while (e) {
        if (e & 1) h = (h * b).divmod(g).second;
        b = (b * b).divmod(g).second;
        e >>= 1;
      }
    }
    Polynomial d = Polynomial::gcd(h - Polynomial::constant(FieldElement::one(f)), g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, out, state);
      split_linear(g.divexact(d), out, state);
      return;
    }
  }
}

std::vector<FieldElement> finite_field_roots(const Polynomial& p) {
  const FieldRef& f = p.field();
  std::vector<FieldElement> out;
  Polynomial g = p.monic();
  // strip x factors
  while (g.degree() > 0 && g[0].is_zero()) {
    g = g.divexact(Polynomial::x(f));
    if (out.empty()) out.push_back(FieldElement::zero(f));
  }
  if (g.degree() <= 0) return out;
  // product of distinct linear factors: gcd(g, x^q - x)
  Polynomial xq = powmod_x(f, field_order(*f), g);
  Polynomial lin = Polynomial::gcd(xq - Polynomial::x(f).divmod(g).second, g);
  std::uint64_t state = 0x9e3779b97f4a7c15ull ^ field_order(*f);
  split_linear(lin, out, state);
  return out;
}

std::vector<FieldElement> rational_roots(const Polynomial& p) {
  const FieldRef& f = p.field();
  const bool gaussian = f->kind == FieldKind::GaussianRationals;
  std::vector<FieldElement> out;
  Polynomial g = p;
  while (g.degree() > 0 && g[0].is_zero()) {
    g = g.divexact(Polynomial::x(f));
    if (out.empty()) out.push_back(FieldElement::zero(f));
  }
  if (g.degree() <= 0) return out;

  // Clear denominators to (Gaussian) integer coefficients.
  mpz_class den(1);
  for (long k = 0; k <= g.degree(); ++k) {
    const FieldElement& c = g[static_cast<std::size_t>(k)];
    mpz_class d1 = c.gauss_re().get_den(), d2 = c.gauss_im().get_den();
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), d1.get_mpz_t());
    mpz_lcm(den.get_mpz_t(), l.get_mpz_t(), d2.get_mpz_t());
  }
  auto scaled_coeff = [&](long k) {
    const FieldElement& c = g[static_cast<std::size_t>(k)];
    return std::make_pair(mpz_class(c.gauss_re() * den), mpz_class(c.gauss_im() * den));
  };
  auto [c0r, c0i] = scaled_coeff(0);
  auto [cnr, cni] = scaled_coeff(g.degree());
  mpz_class n0 = c0r * c0r + c0i * c0i;  // norm of the constant term
  mpz_class nn = cnr * cnr + cni * cni;

  auto try_root = [&](const FieldElement& cand) {
    if (g.eval(cand).is_zero()) {
      for (const auto& r : out)
        if (r == cand) return;
      out.push_back(cand);
    }
  };

  if (!gaussian) {
    for (const auto& dn : integer_divisors(c0r)) {
      for (const auto& dd : integer_divisors(cnr)) {
        mpq_class q(dn, dd);
        q.canonicalize();
        try_root(FieldElement::from_mpq(f, q));
        try_root(FieldElement::from_mpq(f, mpq_class(-q)));
      }
    }
  } else {
    // Gaussian-integer candidates a+bi with (a^2+b^2) | norm(c0), over
    // denominators dividing the leading coefficient's norm.
    if (n0 > 100000000) throw domain_error("root search bound exceeded over Q(i)");
    long bound = 1;
    while (mpz_class(bound) * bound <= n0) ++bound;
    for (const auto& dd : integer_divisors(nn)) {
      for (long a = -bound; a <= bound; ++a) {
        for (long b = -bound; b <= bound; ++b) {
          if (a == 0 && b == 0) continue;
          mpz_class nz = mpz_class(a) * a + mpz_class(b) * b;
          if (n0 % nz != 0) continue;
          mpq_class re(a, dd), im(b, dd);
          re.canonicalize();
          im.canonicalize();
          try_root(FieldElement::gaussian(f, re, im));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<FieldElement> Polynomial::roots() const {
  if (is_zero()) throw domain_error("roots() of the zero polynomial");
  if (is_constant()) return {};
  std::vector<FieldElement> out;
  if (f_->is_finite())
    out = finite_field_roots(*this);
  else
    out = rational_roots(*this);
  std::sort(out.begin(), out.end(), FieldElement::canonical_less);
  return out;
}

std::string Polynomial::key() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) os << ",";
    os << c_[k].str();
  }
  os << "]";
  return os.str();
}

}  // namespace isopoly
