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

#include "isopoly/divpoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace isopoly {

namespace {

CurveFunction cf_divexact(const CurveFunction& a, const CurveFunction& b) {
  if (b.is_zero()) throw domain_error("division by zero");
  Polynomial n = b.norm();
  CurveFunction c = a * b.conj();
  return CurveFunction(a.curve(), c.u().divexact(n), c.v().divexact(n));
}

struct PsiCache {
  std::mutex mu;
  std::map<std::string, std::map<long, CurveFunction>> table;
};

PsiCache& psi_cache() {
  static PsiCache c;
  return c;
}

CurveFunction classical_psi_impl(const WeierstrassCurve& E, long n,
                                 std::map<long, CurveFunction>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  const FieldRef& f = E.field();
  CurveFunction r = CurveFunction::zero(E);
  if (n < 0) {
    r = -classical_psi_impl(E, -n, memo);
  } else if (n == 0) {
    r = CurveFunction::zero(E);
  } else if (n <= 4) {
    FieldElement b2 = FieldElement::from_long(f, 4) * E.A2();
    FieldElement b4 = FieldElement::from_long(f, 2) * E.A4();
    FieldElement b6 = FieldElement::from_long(f, 4) * E.A6();
    FieldElement b8 = FieldElement::from_long(f, 4) * E.A2() * E.A6() - E.A4() * E.A4();
    auto k = [&](long v) { return FieldElement::from_long(f, v); };
    switch (n) {
      case 1: r = CurveFunction::one(E); break;
      case 2:
        r = CurveFunction(E, Polynomial(f), Polynomial::constant(k(-2)));  // -2y
        break;
      case 3:
        r = CurveFunction::xpoly(
            E, Polynomial(f, {b8, k(3) * b6, k(3) * b4, b2, k(3)}));
        break;
      case 4: {
        Polynomial inner(f, {b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, k(10) * b8, k(10) * b6,
                             k(5) * b4, b2, k(2)});
        // -psi4 = -2y * inner
        r = CurveFunction(E, Polynomial(f), inner.scaled(k(-2)));
        break;
      }
    }
  } else if (n % 2 == 1) {
    long m = (n - 1) / 2;
    CurveFunction a = classical_psi_impl(E, m + 2, memo);
    CurveFunction b = classical_psi_impl(E, m, memo);
    CurveFunction c = classical_psi_impl(E, m - 1, memo);
    CurveFunction d = classical_psi_impl(E, m + 1, memo);
    r = a * b * b * b - c * d * d * d;
  } else {
    long m = n / 2;
    CurveFunction a = classical_psi_impl(E, m + 2, memo);
    CurveFunction b = classical_psi_impl(E, m - 1, memo);
    CurveFunction c = classical_psi_impl(E, m - 2, memo);
    CurveFunction d = classical_psi_impl(E, m + 1, memo);
    CurveFunction mm = classical_psi_impl(E, m, memo);
    CurveFunction num = mm * (a * b * b - c * d * d);
    r = cf_divexact(num, classical_psi_impl(E, 2, memo));
  }
  memo.emplace(n, r);
  return r;
}

// Pairwise-coprime refinement of a multiset of monic polynomials with
// multiplicities; each input is an exact product of returned basis elements.
std::pair<std::vector<Polynomial>, std::vector<long>> coprime_refine(
    const std::vector<std::pair<Polynomial, long>>& parts) {
  std::vector<Polynomial> basis;
  std::function<void(const Polynomial&)> insert = [&](const Polynomial& gpoly) {
    Polynomial g = gpoly;
    for (std::size_t i = 0; i < basis.size() && g.degree() > 0; ++i) {
      Polynomial d = Polynomial::gcd(g, basis[i]);
      if (d.degree() == 0) continue;
      if (d.degree() < basis[i].degree()) {
        Polynomial other = basis[i].divexact(d);
        basis[i] = d;
        insert(other);
      }
      while (g.degree() > 0) {
        auto [q, r] = g.divmod(basis[i]);
        if (!r.is_zero()) break;
        g = q;
      }
    }
    if (g.degree() > 0) basis.push_back(g);
  };
  for (const auto& [g, n] : parts) insert(g);
  std::vector<long> mult(basis.size(), 0);
  for (const auto& [g, n] : parts) {
    Polynomial rem = g;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      long count = 0;
      while (rem.degree() > 0) {
        auto [q, r] = rem.divmod(basis[i]);
        if (!r.is_zero()) break;
        rem = q;
        ++count;
      }
      mult[i] += n * count;
    }
    if (rem.degree() != 0) throw domain_error("coprime refinement failed");
  }
  return {basis, mult};
}

}  // namespace

CurveFunction classical_psi(const WeierstrassCurve& E, long n) {
  PsiCache& c = psi_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  return classical_psi_impl(E, n, c.table[E.key()]);
}

KernelSymbolSum& KernelSymbolSum::add(const Isogeny& phi, long mult) {
  if (mult == 0) return *this;
  for (auto& t : terms) {
    if (t.first == phi) {
      t.second += mult;
      return *this;
    }
  }
  terms.emplace_back(phi, mult);
  return *this;
}

KernelSymbolSum KernelSymbolSum::pulled_back(const Isogeny& beta) const {
  if (!(beta.target() == beta.source()))
    throw domain_error("symbol-sum pullback implemented along endomorphisms");
  KernelSymbolSum r;
  for (const auto& [phi, n] : terms) r.add(compose(phi, beta), n);
  return r;
}

std::string KernelSymbolSum::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [phi, n] : terms) {
    if (n == 0) continue;
    os << (first ? (n < 0 ? "-" : "") : (n < 0 ? " - " : " + "));
    first = false;
    long a = std::abs(n);
    if (a != 1) os << a << "*";
    os << "(K deg " << phi.degree() << ")";
  }
  if (first) os << "0";
  return os.str();
}

DifferentialScaling DifferentialScaling::ones(const FieldRef& f) {
  FieldElement one = FieldElement::one(f);
  return DifferentialScaling{one, one, one, one};
}

const FieldElement& DifferentialScaling::li(int i) const {
  switch (i) {
    case 1: return lambda1;
    case 2: return lambda2;
    case 3: return lambda3;
  }
  throw domain_error("scaling index out of range");
}

PsiEngine::PsiEngine(const WeierstrassCurve& E, std::optional<GChoices> g, DifferentialScaling s)
    : E_(E), tt_(two_torsion(E)), g_(std::move(g)), sc_(std::move(s)) {
  curve_scale_[E_.key()] = sc_.lambda;
  if (g_) {
    for (int i = 0; i < 3; ++i) {
      const Isogeny& gi = g_->g[static_cast<std::size_t>(i)];
      if (!(gi.source() == E_) || gi.degree() != 2)
        throw domain_error("gChoices must be degree-2 isogenies from the base curve");
      Polynomial ker = gi.kernel_polynomial();
      if (!tt_.split || ker.degree() != 1 ||
          !(-ker[0] == tt_.points[static_cast<std::size_t>(i)].x()))
        throw domain_error("gChoices kernel does not match the ordered two-torsion");
      // one differential per curve: colliding targets must carry equal scalars
      std::string k = gi.target().key();
      auto it = curve_scale_.find(k);
      if (it == curve_scale_.end()) {
        curve_scale_[k] = sc_.li(i + 1);
      } else if (it->second != sc_.li(i + 1)) {
        throw domain_error("differential scaling conflict on a shared target curve");
      }
    }
  }
}

GChoices PsiEngine::default_gchoices(const WeierstrassCurve& E) {
  TwoTorsion tt = two_torsion(E);
  if (!tt.split) throw extension_required("split two-torsion required for gChoices");
  return GChoices{{Isogeny::velu2(E, tt.points[0]), Isogeny::velu2(E, tt.points[1]),
                   Isogeny::velu2(E, tt.points[2])}};
}

FieldElement PsiEngine::symbol_scale(const Isogeny& phi) const {
  auto it = curve_scale_.find(phi.target().key());
  if (it != curve_scale_.end()) return it->second;
  return FieldElement::one(E_.field());
}

void PsiEngine::override_target_scale(const WeierstrassCurve& target, const FieldElement& s) {
  curve_scale_[target.key()] = s;
}

int PsiEngine::iota(const Isogeny& phi) const {
  Polynomial g = Polynomial::gcd(phi.kernel_polynomial(), E_.fpoly());
  if (g.is_zero() || g.degree() == 0 || g.degree() == 3) return 0;
  if (g.degree() == 2) throw domain_error("kernel meets exactly two two-torsion points");
  if (!tt_.split)
    throw extension_required("two-torsion does not split; extension required to index kernel sum");
  FieldElement e = -g[0];
  for (std::size_t i = 0; i < tt_.points.size(); ++i)
    if (tt_.points[i].x() == e) return static_cast<int>(i) + 1;
  throw extension_required("kernel-sum point not among the rational two-torsion");
}

const Isogeny& PsiEngine::g_for(int iota_index) const {
  if (!g_) throw domain_error("no gChoices fixed for this context");
  if (iota_index < 1 || iota_index > 3) throw domain_error("iota index out of range");
  return g_->g[static_cast<std::size_t>(iota_index - 1)];
}

NormalizedFunction PsiEngine::kernel_function(const KernelSymbolSum& s) const {
  const FieldRef& f = E_.field();
  const Polynomial fpoly = E_.fpoly();
  long total_degree = 0;
  long o_mult = 0;
  FieldElement lead = FieldElement::one(f);
  std::vector<std::pair<Polynomial, long>> tor_parts;    // squarefree divisors of f
  std::vector<std::pair<Polynomial, long>> pair_parts;   // one factor per +/- pair

  for (const auto& [phi, n] : s.terms) {
    if (n == 0) continue;
    if (!(phi.source() == E_)) throw domain_error("symbol with foreign source curve");
    total_degree += n * phi.degree();
    o_mult += n;
    lead = lead * (phi.lead_coeff() * symbol_scale(phi)).pow(n);
    Polynomial K = phi.kernel_polynomial();
    if (K.degree() == 0) continue;  // trivial kernel
    Polynomial tor = Polynomial::gcd(K, fpoly);
    if (tor.degree() > 0) tor_parts.emplace_back(tor, n);
    Polynomial rest = K.divexact(tor.degree() > 0 ? tor : Polynomial::constant(FieldElement::one(f)));
    if (rest.degree() > 0) {
      auto sq = rest.sqrt_monic();
      if (!sq) throw domain_error("kernel polynomial pair part is not a perfect square");
      pair_parts.emplace_back(*sq, n);
    }
  }
  if (total_degree != 0)
    throw non_principal("image divisor has degree " + std::to_string(total_degree));

  // Refine the collected two-torsion parts to a pairwise-coprime basis.
  auto [basis, mult] = coprime_refine(tor_parts);

  // Parity analysis: the point sum of the image divisor vanishes iff all
  // two-torsion multiplicities (including the implicit zeros) share parity,
  // and odd parity covers all of f.
  int eps = 0;
  {
    bool any_odd = false, any_even_nonzero_structure = false;
    long covered_deg = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      covered_deg += basis[i].degree();
      if (mult[i] % 2 != 0)
        any_odd = true;
      else
        any_even_nonzero_structure = true;
    }
    bool uncovered = covered_deg < 3;
    if (any_odd && (any_even_nonzero_structure || uncovered)) {
      std::ostringstream os;
      os << "kernel sum is a nontrivial two-torsion point (mixed parity at ";
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (mult[i] % 2 != 0) os << basis[i].key();
      os << ")";
      throw non_principal(os.str());
    }
    eps = any_odd ? 1 : 0;
  }

  // Assemble value = c * y^eps * prod basis^((m-eps)/2) * prod pairs^n.
  Polynomial num = Polynomial::constant(FieldElement::one(f));
  Polynomial den = Polynomial::constant(FieldElement::one(f));
  auto apply_power = [&](const Polynomial& b, long e) {
    if (e > 0)
      num = num * b.pow(static_cast<unsigned long>(e));
    else if (e < 0)
      den = den * b.pow(static_cast<unsigned long>(-e));
  };
  for (std::size_t i = 0; i < basis.size(); ++i) apply_power(basis[i], (mult[i] - eps) / 2);
  for (const auto& [sq, n] : pair_parts) apply_power(sq, n);

  FieldElement c = eps ? -lead : lead;
  CurveFunction numfun = eps ? CurveFunction(E_, Polynomial(f), num.scaled(c))
                             : CurveFunction(E_, num.scaled(c), Polynomial(f));
  NormalizedFunction nf;
  nf.value = CurveRationalFunction(numfun, den);
  nf.symbols = s;
  nf.lead_coeff = lead;
  nf.lead_exp = o_mult;
  return nf;
}

KernelSymbolSum PsiEngine::psi_symbols(const Isogeny& phi) const {
  KernelSymbolSum s;
  int i = iota(phi);
  s.add(phi, 1);
  long gdeg = 1;
  if (i >= 1) {
    const Isogeny& gi = g_for(i);
    s.add(gi, 1);
    gdeg = gi.degree();
  }
  s.add(Isogeny::identity(E_), -(phi.degree() + (i >= 1 ? gdeg : 1)) + (i >= 1 ? 0 : 1));
  return s;
}

KernelSymbolSum PsiEngine::hat_symbols(int index) const {
  KernelSymbolSum s;
  if (index == 0) return s;
  const Isogeny& gi = g_for(index);
  s.add(gi, 2);
  s.add(Isogeny::identity(E_), -2 * gi.degree());
  return s;
}

KernelSymbolSum PsiEngine::kersum2_symbols() const {
  KernelSymbolSum s;
  for (int i = 1; i <= 3; ++i) s.add(g_for(i), 1);
  s.add(Isogeny::multiplication(E_, 2), -1);
  s.add(Isogeny::identity(E_), -2);
  return s;
}

Isogeny PsiEngine::resolve(const HomElement& h) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::string k = h.label();
  auto it = iso_cache_.find(k);
  if (it != iso_cache_.end()) return it->second;
  Isogeny r = h.to_isogeny(E_);
  iso_cache_.emplace(std::move(k), r);
  return r;
}

NormalizedFunction PsiEngine::psi(const Isogeny& phi) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = fn_cache_.find("psi|" + phi.key());
    if (it != fn_cache_.end()) return it->second;
  }
  NormalizedFunction nf = kernel_function(psi_symbols(phi));
  std::lock_guard<std::mutex> lock(mu_);
  fn_cache_.emplace("psi|" + phi.key(), nf);
  return nf;
}

NormalizedFunction PsiEngine::psi(const HomElement& h) const { return psi(resolve(h)); }

NormalizedFunction PsiEngine::psi_hat(int index) const {
  if (index == 0) {
    NormalizedFunction nf;
    nf.value = CurveRationalFunction::one(E_);
    nf.lead_coeff = FieldElement::one(E_.field());
    nf.lead_exp = 0;
    return nf;
  }
  return kernel_function(hat_symbols(index));
}

NormalizedFunction PsiEngine::psi_tilde(const Isogeny& phi) const {
  KernelSymbolSum s;
  s.add(phi, 2);
  s.add(Isogeny::identity(E_), -2 * phi.degree());
  return kernel_function(s);
}

NormalizedFunction PsiEngine::half_hat_kernel_function(
    const std::vector<std::pair<HomElement, long>>& e) const {
  KernelSymbolSum s;
  for (const auto& [h, n] : e) {
    if (n == 0) continue;
    Isogeny phi = resolve(h);
    int i = iota(phi);
    if (i == 0) continue;  // hat is 1
    const Isogeny& gi = g_for(i);
    s.add(gi, n);
    s.add(Isogeny::identity(E_), -n * gi.degree());
  }
  return kernel_function(s);
}

NormalizedFunction PsiEngine::sqrt_hat_product(
    const std::vector<std::pair<HomElement, long>>& e) const {
  std::vector<std::pair<std::vector<long>, long>> vecs;
  const bool cm = E_.is_cm_by_i();
  for (const auto& [h, n] : e) vecs.emplace_back(h.coordinates(cm), n);
  if (!quadratic_identity_check(vecs))
    throw domain_error("exponents do not form a finite integral quadratic identity");
  return half_hat_kernel_function(e);
}

int PsiEngine::audit(const NormalizedFunction& nf) const {
  int checks = 0;
  // Lead data against an actual expansion.
  LaurentSeries s = expand_at_O(nf.value, 2);
  if (s.lead_exponent() != nf.lead_exp) throw domain_error("audit: lead exponent mismatch");
  if (s.lead_coeff() != nf.lead_coeff) throw domain_error("audit: lead coefficient mismatch");
  checks += 2;

  // Order at the identity and at each rational two-torsion point, computed by
  // the generic valuation machinery, against the multiplicities the symbol
  // sum dictates.
  long expected_o = 0;
  std::map<std::string, long> tor_expect;
  std::vector<std::pair<Polynomial, long>> pair_parts;
  for (const auto& [phi, n] : nf.symbols.terms) {
    if (n == 0) continue;
    expected_o += n;
    Polynomial K = phi.kernel_polynomial();
    Polynomial tor = Polynomial::gcd(K, E_.fpoly());
    for (const auto& P : tt_.points)
      if (tor.eval(P.x()).is_zero()) tor_expect[P.str()] += n;
    Polynomial rest = tor.degree() > 0 ? K.divexact(tor) : K;
    if (rest.degree() > 0) pair_parts.emplace_back(*rest.sqrt_monic(), n);
  }
  if (ord_at(nf.value, Point::infinity(E_)) != expected_o)
    throw domain_error("audit: order at the identity does not match the symbol sum");
  ++checks;
  for (const auto& P : tt_.points) {
    if (ord_at(nf.value, P) != tor_expect[P.str()])
      throw domain_error("audit: order at " + P.str() + " does not match the symbol sum");
    ++checks;
  }
  // Each +/- kernel fiber appears in the value with the summed multiplicity.
  auto divisibility_count = [](Polynomial p, const Polynomial& q) {
    long m = 0;
    while (!p.is_zero() && p.degree() >= q.degree()) {
      auto [quo, rem] = p.divmod(q);
      if (!rem.is_zero()) break;
      ++m;
      p = quo;
    }
    return m;
  };
  auto [pbasis, pmult] = coprime_refine(pair_parts);
  long total_degree = expected_o;
  for (const auto& P : tt_.points) total_degree += tor_expect[P.str()];
  for (std::size_t i = 0; i < pbasis.size(); ++i) {
    Polynomial numx = nf.value.num().v().is_zero() ? nf.value.num().u() : nf.value.num().v();
    long actual = divisibility_count(numx, pbasis[i]) - divisibility_count(nf.value.den(), pbasis[i]);
    if (actual != pmult[i])
      throw domain_error("audit: kernel-fiber multiplicity mismatch at " + pbasis[i].key());
    total_degree += 2 * pbasis[i].degree() * pmult[i];
    ++checks;
  }
  // principality: the orders over the whole support sum to zero
  if (tt_.split && total_degree != 0)
    throw domain_error("audit: divisor degree over the support is nonzero");
  ++checks;
  return checks;
}

std::pair<int, int> PsiEngine::audit_all() const {
  std::vector<NormalizedFunction> fns;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [k, nf] : fn_cache_) fns.push_back(nf);
  }
  if (g_ && tt_.split)
    for (int i = 1; i <= 3; ++i) fns.push_back(psi_hat(i));
  int checks = 0;
  for (const auto& nf : fns) checks += audit(nf);
  return {static_cast<int>(fns.size()), checks};
}

DifferentialScaling convention_solve(const WeierstrassCurve& E, const GChoices& g) {
  const FieldRef& f = E.field();
  const long terms = 8;
  LaurentSeries t2 = Isogeny::multiplication(E, 2).parameter_series(terms);
  LaurentSeries t = LaurentSeries::monomial(FieldElement::one(f), 1, terms + 1);
  LaurentSeries numer = t2 * t * t;
  LaurentSeries denom = g.g[0].parameter_series(terms) * g.g[1].parameter_series(terms) *
                        g.g[2].parameter_series(terms);
  LaurentSeries kappa_series = numer * denom.invert();
  if (kappa_series.lead_exponent() != 0)
    throw domain_error("convention expression is not a unit series");
  FieldElement kappa = kappa_series.lead_coeff();
  DifferentialScaling s = DifferentialScaling::ones(f);
  if (kappa.is_one()) return s;
  // Absorb the constant into the last slot whose target curve carries its
  // own differential (distinct from the base curve and the other targets).
  for (int i = 3; i >= 1; --i) {
    const std::string k = g.g[static_cast<std::size_t>(i - 1)].target().key();
    bool free_slot = k != E.key();
    for (int j = 1; j <= 3 && free_slot; ++j)
      if (j != i && g.g[static_cast<std::size_t>(j - 1)].target().key() == k) free_slot = false;
    if (!free_slot) continue;
    (i == 3 ? s.lambda3 : (i == 2 ? s.lambda2 : s.lambda1)) = kappa;
    return s;
  }
  throw domain_error("no independent slot differential available to absorb the convention constant");
}

bool quadratic_identity_check(const std::vector<std::pair<std::vector<long>, long>>& exponents) {
  if (exponents.empty()) return true;
  std::size_t dim = 0;
  for (const auto& [v, n] : exponents) dim = std::max(dim, v.size());
  std::vector<std::vector<long>> m(dim, std::vector<long>(dim, 0));
  for (const auto& [v, n] : exponents) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        long vi = i < v.size() ? v[i] : 0;
        long vj = j < v.size() ? v[j] : 0;
        m[i][j] += n * vi * vj;
      }
    }
  }
  for (const auto& row : m)
    for (long x : row)
      if (x != 0) return false;
  return true;
}

}  // namespace isopoly
