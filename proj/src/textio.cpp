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

#include "isopoly/textio.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace isopoly {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// Sign of a coefficient for display purposes: the first nonzero component.
bool display_negative(const FieldElement& c) {
  switch (c.field()->kind) {
    case FieldKind::Rationals: return sgn(c.rat()) < 0;
    case FieldKind::GaussianRationals: {
      mpq_class re = c.gauss_re();
      if (sgn(re) != 0) return sgn(re) < 0;
      return sgn(c.gauss_im()) < 0;
    }
    default: return false;  // residues print as-is
  }
}

// Coefficient text without the leading sign handled by the caller.
std::string coeff_magnitude(const FieldElement& c, bool& needs_parens) {
  FieldElement a = display_negative(c) ? -c : c;
  std::string s = a.str();
  needs_parens = s.find_first_of("+- ") != std::string::npos;
  return s;
}

}  // namespace

std::string polynomial_str(const Polynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = p.degree(); k >= 0; --k) {
    FieldElement c = p[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    bool neg = display_negative(c);
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    bool parens = false;
    std::string mag = coeff_magnitude(c, parens);
    bool unit = (mag == "1");
    if (k == 0) {
      os << (parens ? "(" + mag + ")" : mag);
    } else {
      if (!unit) os << (parens ? "(" + mag + ")" : mag) << "*";
      os << var;
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

std::string crf_str(const CurveRationalFunction& h) {
  if (h.is_zero()) return "0";
  const Polynomial& u = h.num().u();
  const Polynomial& v = h.num().v();
  std::ostringstream os;
  std::string num;
  if (v.is_zero()) {
    num = polynomial_str(u);
  } else if (u.is_zero()) {
    if (v.degree() == 0) {
      bool parens = false;
      FieldElement c = v[0];
      bool neg = display_negative(c);
      std::string mag = coeff_magnitude(c, parens);
      std::string cs = (neg ? "-" : "") + (parens ? "(" + mag + ")" : mag);
      num = (mag == "1" ? (neg ? std::string("-y") : std::string("y")) : cs + "*y");
    } else {
      num = "y*(" + polynomial_str(v) + ")";
    }
  } else {
    num = "(" + polynomial_str(u) + ") + y*(" + polynomial_str(v) + ")";
  }
  if (h.den().degree() == 0) return num;
  os << "(" << num << ")/(" << polynomial_str(h.den()) << ")";
  return os.str();
}

FieldRef parse_field(const std::string& raw) {
  std::string s = strip(raw);
  if (s == "Q") return Field::rationals();
  if (s == "Q(i)") return Field::gaussian_rationals();
  if (s.rfind("Fp:", 0) == 0) {
    unsigned long p = std::stoul(s.substr(3));
    return Field::prime_field(p);
  }
  throw domain_error("unknown field spec: " + raw + " (expected Q, Q(i), Fp:<prime>)");
}

namespace {

// Recursive-descent expression parser over the coordinate ring of E, or over
// plain scalars when no curve is supplied.
class ExprParser {
 public:
  ExprParser(const WeierstrassCurve* E, const FieldRef& f, std::string text)
      : E_(E), f_(f), s_(std::move(text)) {
    if (!E_) {
      scalar_curve_ = scalar_dummy(f);
      E_ = &*scalar_curve_;
    }
  }

  CurveRationalFunction parse() {
    CurveRationalFunction r = expr();
    skip_ws();
    if (pos_ != s_.size()) throw domain_error("trailing characters in expression: " + s_);
    return r;
  }

  // Some nonsingular cubic over f, used only to host scalar arithmetic.
  static WeierstrassCurve scalar_dummy(const FieldRef& f) {
    for (long a6 = 1; a6 < 64; ++a6) {
      try {
        return WeierstrassCurve::from_longs(f, 0, 1, a6);
      } catch (const domain_error&) {
      }
    }
    throw domain_error("no nonsingular scalar host curve found");
  }

 private:
  const WeierstrassCurve* E_;
  std::optional<WeierstrassCurve> scalar_curve_;
  FieldRef f_;
  std::string s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  CurveRationalFunction expr() {
    CurveRationalFunction r =
        eat('-') ? -term() : (eat('+') ? term() : term());
    while (true) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        break;
    }
    return r;
  }

  CurveRationalFunction term() {
    CurveRationalFunction r = factor();
    while (true) {
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        break;
    }
    return r;
  }

  CurveRationalFunction factor() {
    CurveRationalFunction b = atom();
    skip_ws();
    if (eat('^')) {
      bool neg = eat('-');
      long e = read_integer();
      return b.pow(neg ? -e : e);
    }
    return b;
  }

  long read_integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw domain_error("expected integer in expression");
    return std::stol(s_.substr(start, pos_ - start));
  }

  CurveRationalFunction atom() {
    skip_ws();
    if (eat('(')) {
      CurveRationalFunction r = expr();
      if (!eat(')')) throw domain_error("missing ')' in expression");
      return r;
    }
    char c = peek();
    if (c == 'x') {
      if (scalar_curve_) throw domain_error("variable in a scalar literal");
      ++pos_;
      return CurveRationalFunction::x_over(*E_);
    }
    if (c == 'y') {
      if (scalar_curve_) throw domain_error("variable in a scalar literal");
      ++pos_;
      return CurveRationalFunction::y_over(*E_);
    }
    if (c == 'i' && !f_->is_finite()) {
      ++pos_;
      return CurveRationalFunction::constant(*E_, FieldElement::sqrt_minus_one(f_));
    }
    if (c == 'u' && f_->kind == FieldKind::QuadExt) {
      ++pos_;
      return CurveRationalFunction::constant(*E_, FieldElement::fp2(f_, 0, 1));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // number, possibly "p/q", possibly with an imaginary-unit suffix
      mpz_class num = read_mpz();
      mpz_class den = 1;
      if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
          std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        den = read_mpz();
      }
      mpq_class q(num, den);
      q.canonicalize();
      bool imag = false;
      if (pos_ < s_.size() && s_[pos_] == 'i' && !f_->is_finite()) {
        ++pos_;
        imag = true;
      } else if (pos_ < s_.size() && s_[pos_] == 'u' && f_->kind == FieldKind::QuadExt) {
        ++pos_;
        FieldElement uu = FieldElement::fp2(f_, 0, 1);
        return CurveRationalFunction::constant(*E_, FieldElement::from_mpq(f_, q) * uu);
      }
      FieldElement v = FieldElement::from_mpq(f_, q);
      if (imag) {
        if (f_->kind != FieldKind::GaussianRationals)
          throw domain_error("imaginary literal outside Q(i)");
        v = v * FieldElement::sqrt_minus_one(f_);
      }
      return CurveRationalFunction::constant(*E_, v);
    }
    throw domain_error(std::string("unexpected character '") + c + "' in expression");
  }

  mpz_class read_mpz() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw domain_error("expected number in expression");
    return mpz_class(s_.substr(start, pos_ - start));
  }
};

}  // namespace

CurveRationalFunction parse_crf(const WeierstrassCurve& E, const std::string& s) {
  return ExprParser(&E, E.field(), s).parse();
}

FieldElement parse_field_element(const FieldRef& f, const std::string& s) {
  CurveRationalFunction r = ExprParser(nullptr, f, s).parse();
  if (!r.is_polynomial() || r.num().u().degree() > 0 || !r.num().v().is_zero())
    throw domain_error("expected a scalar literal: " + s);
  if (r.is_zero()) return FieldElement::zero(f);
  return r.num().u()[0];
}

WeierstrassCurve parse_curve(const std::string& raw) {
  std::string s = strip(raw);
  if (s.rfind("E/", 0) != 0) throw domain_error("curve literal must start with E/");
  std::size_t colon = s.find(":[");
  if (colon == std::string::npos) throw domain_error("curve literal missing ':['");
  FieldRef f = parse_field(s.substr(2, colon - 2));
  std::string rest = strip(s.substr(colon + 1));
  if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
    throw domain_error("curve literal needs [A2,A4,A6]");
  std::string inner = rest.substr(1, rest.size() - 2);
  std::vector<std::string> parts;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t k = 0; k <= inner.size(); ++k) {
    if (k == inner.size() || (inner[k] == ',' && depth == 0)) {
      parts.push_back(strip(inner.substr(start, k - start)));
      start = k + 1;
    } else if (inner[k] == '(') {
      ++depth;
    } else if (inner[k] == ')') {
      --depth;
    }
  }
  if (parts.size() != 3) throw domain_error("curve literal needs exactly three coefficients");
  return WeierstrassCurve(f, parse_field_element(f, parts[0]), parse_field_element(f, parts[1]),
                          parse_field_element(f, parts[2]));
}

Point parse_point(const WeierstrassCurve& E, const std::string& raw) {
  std::string s = strip(raw);
  if (s == "O" || s == "o" || s == "inf") return Point::infinity(E);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw domain_error("point literal needs (x,y) or O");
  std::string inner = s.substr(1, s.size() - 2);
  std::size_t comma = inner.find(',');
  if (comma == std::string::npos) throw domain_error("point literal needs two coordinates");
  FieldElement x = parse_field_element(E.field(), strip(inner.substr(0, comma)));
  FieldElement y = parse_field_element(E.field(), strip(inner.substr(comma + 1)));
  return Point::affine(E, x, y);
}

namespace {

HomElement parse_single_isogeny(const WeierstrassCurve& E, const std::string& raw) {
  std::string s = strip(raw);
  if (s.rfind("velu2@", 0) == 0) {
    Point P = parse_point(E, s.substr(6));
    return HomElement::explicit_isogeny(Isogeny::velu2(E, P), s);
  }
  // Gaussian integer literal: n, i, -i, a+bi, a-bi, bi.
  long a = 0, b = 0;
  std::size_t k = 0;
  auto read_signed = [&](long& out) -> bool {
    std::size_t start = k;
    long sign = 1;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) {
      if (s[k] == '-') sign = -1;
      ++k;
    }
    std::size_t digits = k;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (digits == k) {
      out = sign;  // bare sign, as in "i" / "-i" / "+i"
      return start != k || k < s.size();
    }
    out = sign * std::stol(s.substr(digits, k - digits));
    return true;
  };
  long first = 0;
  if (!read_signed(first)) throw domain_error("bad isogeny literal: " + raw);
  if (k < s.size() && s[k] == 'i') {
    ++k;
    b = first;
  } else {
    a = first;
    if (k < s.size()) {
      long second = 0;
      if (!read_signed(second)) throw domain_error("bad isogeny literal: " + raw);
      if (k >= s.size() || s[k] != 'i') throw domain_error("bad isogeny literal: " + raw);
      ++k;
      b = second;
    }
  }
  if (k != s.size()) throw domain_error("bad isogeny literal: " + raw);
  return b == 0 ? HomElement::integer(a) : HomElement::gauss(a, b);
}

}  // namespace

HomElement parse_isogeny_literal(const WeierstrassCurve& E, const std::string& raw) {
  // Split on "o" composition markers (ASCII) or the UTF-8 ring operator.
  std::string s = raw;
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    bool split = false;
    std::size_t adv = 1;
    if (s[k] == 'o' && k > 0 && (s[k - 1] == ' ' || s[k - 1] == ')')) {
      // " o " composition to avoid clashing with point literal 'O'
      if (k + 1 < s.size() && (s[k + 1] == ' ' || s[k + 1] == '(')) split = true;
    }
    if (k + 2 < s.size() && static_cast<unsigned char>(s[k]) == 0xE2 &&
        static_cast<unsigned char>(s[k + 1]) == 0x88 &&
        static_cast<unsigned char>(s[k + 2]) == 0x98) {
      split = true;
      adv = 3;
    }
    if (split) {
      parts.push_back(s.substr(start, k - start));
      start = k + adv;
      k += adv - 1;
    }
  }
  parts.push_back(s.substr(start));
  std::vector<HomElement> factors;
  for (auto& p : parts) {
    std::string q = strip(p);
    if (!q.empty() && q.front() == '(' && q.back() == ')') q = strip(q.substr(1, q.size() - 2));
    factors.push_back(parse_single_isogeny(E, q));
  }
  return factors.size() == 1 ? factors[0] : HomElement::chain(factors);
}

}  // namespace isopoly
