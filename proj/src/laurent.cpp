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

#include "isopoly/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace isopoly {

LaurentSeries::LaurentSeries(const FieldRef& f, long lead, std::vector<FieldElement> coeffs,
                             long prec)
    : f_(f), lead_(lead), c_(std::move(coeffs)), prec_(prec) {
  if (lead_ + static_cast<long>(c_.size()) > prec_)
    c_.resize(static_cast<std::size_t>(prec_ - lead_));
  normalize();
}

void LaurentSeries::normalize() {
  std::size_t skip = 0;
  while (skip < c_.size() && c_[skip].is_zero()) ++skip;
  if (skip) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(skip));
    lead_ += static_cast<long>(skip);
  }
  if (c_.empty()) lead_ = prec_;
  while (!c_.empty() && lead_ + static_cast<long>(c_.size()) > prec_) c_.pop_back();
}

LaurentSeries LaurentSeries::zero(const FieldRef& f, long prec) {
  return LaurentSeries(f, prec, {}, prec);
}

LaurentSeries LaurentSeries::constant(const FieldElement& c, long prec) {
  return monomial(c, 0, prec);
}

LaurentSeries LaurentSeries::monomial(const FieldElement& c, long k, long prec) {
  if (c.is_zero() || k >= prec) return zero(c.field(), prec);
  return LaurentSeries(c.field(), k, {c}, prec);
}

long LaurentSeries::lead_exponent() const {
  if (c_.empty()) throw insufficient_precision("lead exponent of series that is zero to precision");
  return lead_;
}

FieldElement LaurentSeries::lead_coeff() const {
  if (c_.empty()) throw insufficient_precision("lead coefficient of series that is zero to precision");
  return c_.front();
}

FieldElement LaurentSeries::coeff(long k) const {
  if (k >= prec_) throw insufficient_precision("coefficient beyond tracked precision");
  if (k < lead_ || k >= lead_ + static_cast<long>(c_.size())) return FieldElement::zero(f_);
  return c_[static_cast<std::size_t>(k - lead_)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  long prec = std::min(prec_, o.prec_);
  long lo = std::min(c_.empty() ? prec : lead_, o.c_.empty() ? prec : o.lead_);
  if (lo >= prec) return zero(f_, prec);
  std::vector<FieldElement> r(static_cast<std::size_t>(prec - lo), FieldElement::zero(f_));
  for (long k = lo; k < prec; ++k) {
    FieldElement s = FieldElement::zero(f_);
    if (k >= lead_ && k < lead_ + static_cast<long>(c_.size()))
      s = s + c_[static_cast<std::size_t>(k - lead_)];
    if (k >= o.lead_ && k < o.lead_ + static_cast<long>(o.c_.size()))
      s = s + o.c_[static_cast<std::size_t>(k - o.lead_)];
    r[static_cast<std::size_t>(k - lo)] = s;
  }
  return LaurentSeries(f_, lo, std::move(r), prec);
}

LaurentSeries LaurentSeries::operator-() const {
  std::vector<FieldElement> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(-x);
  return LaurentSeries(f_, lead_, std::move(r), prec_);
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  // Known-precision rule: min over inputs of (own precision + other's lead).
  if (c_.empty() || o.c_.empty()) {
    long prec = std::min(prec_ + (o.c_.empty() ? o.prec_ : o.lead_),
                         o.prec_ + (c_.empty() ? prec_ : lead_));
    return zero(f_, prec);
  }
  long prec = std::min(prec_ + o.lead_, o.prec_ + lead_);
  long lo = lead_ + o.lead_;
  std::vector<FieldElement> r(static_cast<std::size_t>(prec - lo), FieldElement::zero(f_));
  for (std::size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (std::size_t b = 0; b < o.c_.size(); ++b) {
      long k = lead_ + static_cast<long>(a) + o.lead_ + static_cast<long>(b);
      if (k >= prec) break;
      if (o.c_[b].is_zero()) continue;
      r[static_cast<std::size_t>(k - lo)] = r[static_cast<std::size_t>(k - lo)] + c_[a] * o.c_[b];
    }
  }
  return LaurentSeries(f_, lo, std::move(r), prec);
}

LaurentSeries LaurentSeries::scaled(const FieldElement& c) const {
  if (c.is_zero()) return zero(f_, prec_);
  std::vector<FieldElement> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x * c);
  return LaurentSeries(f_, lead_, std::move(r), prec_);
}

LaurentSeries LaurentSeries::invert() const {
  if (c_.empty()) throw domain_error("inverting a series that is zero to precision");
  // this = c0 T^lead (1 + u), invert the unit part by geometric iteration.
  long n = prec_ - lead_;  // relative precision
  FieldElement c0i = c_.front().inverse();
  // unit part coefficients u_k for k = 1..n-1 of (this / (c0 T^lead))
  std::vector<FieldElement> u(static_cast<std::size_t>(n), FieldElement::zero(f_));
  for (std::size_t k = 0; k < c_.size(); ++k) u[k] = c_[k] * c0i;
  // v = u^-1 via v_0 = 1, v_k = -sum_{j=1..k} u_j v_{k-j}
  std::vector<FieldElement> v(static_cast<std::size_t>(n), FieldElement::zero(f_));
  v[0] = FieldElement::one(f_);
  for (long k = 1; k < n; ++k) {
    FieldElement acc = FieldElement::zero(f_);
    for (long j = 1; j <= k; ++j)
      acc = acc + u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(k - j)];
    v[static_cast<std::size_t>(k)] = -acc;
  }
  for (auto& x : v) x = x * c0i;
  return LaurentSeries(f_, -lead_, std::move(v), -lead_ + n);
}

LaurentSeries LaurentSeries::pow(long e) const {
  if (e < 0) return invert().pow(-e);
  // Start from 1 carrying the base's relative precision.
  LaurentSeries r = constant(FieldElement::one(f_), c_.empty() ? prec_ : prec_ - lead_);
  LaurentSeries b = *this;
  long u = e;
  while (u) {
    if (u & 1) r = r * b;
    b = b * b;
    u >>= 1;
  }
  return r;
}

LaurentSeries LaurentSeries::compose(const LaurentSeries& o) const {
  if (!o.c_.empty() && o.lead_exponent() < 1)
    throw domain_error("composition requires a series with lead exponent >= 1");
  if (o.c_.empty() && o.prec_ < 1)
    throw insufficient_precision("composition target known to too little precision");
  if (c_.empty()) return zero(f_, prec_);  // conservative
  // this = T^lead * sum_k c_k T^k  ->  o^lead * (unit polynomial evaluated at o)
  long n = prec_ - lead_;
  LaurentSeries acc = zero(f_, o.prec_ + std::max<long>(n - 1, 0));
  // Horner on the unit-part coefficients.
  for (std::size_t k = c_.size(); k-- > 0;) {
    acc = acc * o + constant(c_[k], acc.precision());
  }
  LaurentSeries base = o.pow(lead_);
  return acc * base;
}

LaurentSeries LaurentSeries::truncated(long prec) const {
  if (prec > prec_) throw insufficient_precision("cannot extend precision by truncation");
  std::vector<FieldElement> r;
  for (long k = lead_; k < std::min(prec, lead_ + static_cast<long>(c_.size())); ++k)
    r.push_back(c_[static_cast<std::size_t>(k - lead_)]);
  return LaurentSeries(f_, lead_, std::move(r), prec);
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
  long prec = std::min(prec_, o.prec_);
  long lo = std::min(c_.empty() ? prec : lead_, o.c_.empty() ? prec : o.lead_);
  for (long k = lo; k < prec; ++k)
    if (coeff(k) != o.coeff(k)) return false;
  return true;
}

std::string LaurentSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    long k = lead_ + static_cast<long>(j);
    std::string cs = c_[j].str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string mag = neg ? cs.substr(1) : cs;
    bool composite = mag.find_first_of("+- ") != std::string::npos;
    if (k == 0) {
      os << (composite ? "(" + mag + ")" : mag);
    } else {
      if (mag != "1") os << (composite ? "(" + mag + ")" : mag) << "*";
      os << var;
      if (k != 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << prec_ << ")";
  return os.str();
}

}  // namespace isopoly
