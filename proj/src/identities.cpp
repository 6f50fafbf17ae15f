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

#include "isopoly/identities.hpp"

namespace isopoly {

namespace {

IdentityReport finish(std::string name, std::vector<std::string> inputs,
                      CurveRationalFunction lhs, CurveRationalFunction rhs,
                      const std::string& field) {
  IdentityReport r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  r.equal = lhs == rhs;
  if (!r.equal && !rhs.is_zero()) r.discrepancy = lhs / rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.field = field;
  return r;
}

// Relation-to-x combination for a label pair.
CurveRationalFunction rel_x_lhs(const PsiEngine& eng, const HomElement& alpha,
                                const HomElement& beta) {
  Isogeny ia = eng.resolve(alpha);
  Isogeny ib = eng.resolve(beta);
  Isogeny isum = eng.resolve(alpha + beta);
  Isogeny idiff = eng.resolve(alpha - beta);
  CurveRationalFunction num = eng.psi(isum).value * eng.psi(idiff).value *
                              eng.psi_hat(ia).value * eng.psi_hat(ib).value;
  CurveRationalFunction den =
      eng.psi(ia).value.pow(2) * eng.psi(ib).value.pow(2) * eng.psi_hat(isum).value;
  return num / den;
}

// Slope-relation combination for a label triple, including the square-root
// factor; `with_sigma_psi` controls the extra psi(sigma) factor and the
// hat(sigma) term in the root.
CurveRationalFunction rel_x2_lhs(const PsiEngine& eng, const HomElement& alpha,
                                 const HomElement& beta, const HomElement& sigma,
                                 bool with_sigma_psi) {
  HomElement abs_ = alpha + beta + sigma;
  HomElement amb = alpha - beta;
  HomElement as = alpha + sigma;
  HomElement bs = beta + sigma;
  CurveRationalFunction num = eng.psi(abs_).value * eng.psi(amb).value;
  if (with_sigma_psi) num = num * eng.psi(sigma).value;
  CurveRationalFunction den = eng.psi(as).value * eng.psi(bs).value * eng.psi(alpha).value *
                              eng.psi(beta).value;
  std::vector<std::pair<HomElement, long>> e = {
      {as, 1}, {bs, 1}, {alpha, 1}, {beta, 1}, {abs_, -1}, {amb, -1}};
  if (with_sigma_psi) e.emplace_back(sigma, -1);
  NormalizedFunction root =
      with_sigma_psi ? eng.sqrt_hat_product(e) : eng.half_hat_kernel_function(e);
  return num / den * root.value;
}

// (y' o a - y' o s) / (x' o a - x' o s) on the source curve; for equal
// labels the chord degenerates to the tangent f'(x') / (2 y') pulled back.
CurveRationalFunction slope(const PsiEngine& eng, const HomElement& a, const HomElement& s) {
  Isogeny ia = eng.resolve(a);
  Isogeny is = eng.resolve(s);
  if (ia == is) {
    CurveRationalFunction fp = substitute_maps(
        CurveRationalFunction::from(CurveFunction::xpoly(ia.target(), ia.target().fprime())),
        ia.source(), ia.xn(), ia.xd(), ia.ys(), ia.yw());
    return fp / (ia.y_map().scaled(FieldElement::from_long(ia.source().field(), 2)));
  }
  return (ia.y_map() - is.y_map()) / (ia.x_map() - is.x_map());
}

}  // namespace

IdentityReport verify_chain(const PsiEngine& eng, const Isogeny& alpha, const HomElement& beta,
                            bool biased_mode) {
  Isogeny ib = eng.resolve(beta);
  if (!(ib.target() == eng.curve()) || !(alpha.source() == eng.curve()))
    throw domain_error("chain rule needs beta an endomorphism of alpha's source");
  Isogeny comp = compose(alpha, ib);
  // psi(alpha) lives on alpha's source = engine curve; pull back along beta.
  NormalizedFunction pa = eng.psi(alpha);
  NormalizedFunction pb = eng.psi(ib);
  NormalizedFunction pc = eng.psi(comp);
  CurveRationalFunction pa_pulled = pullback(pa.value, ib);
  CurveRationalFunction rhs_core = pa_pulled * pb.value.pow(alpha.degree());
  std::vector<std::string> inputs = {"deg " + std::to_string(alpha.degree()), beta.label()};
  if (!biased_mode) {
    if (eng.iota(alpha) != 0 || eng.iota(ib) != 0)
      throw domain_error("unbiased chain rule requires trivial kernel sums");
    return finish("chain", std::move(inputs), pc.value, rhs_core, eng.curve().field()->name());
  }
  CurveRationalFunction lhs = (pc.value / rhs_core).pow(2);
  CurveRationalFunction hat_pulled = pullback(eng.psi_hat(alpha).value, ib);
  CurveRationalFunction rhs = eng.psi_hat(comp).value /
                              (hat_pulled * eng.psi_hat(ib).value.pow(alpha.degree()));
  return finish("chain2", std::move(inputs), lhs, rhs, eng.curve().field()->name());
}

IdentityReport verify_second_chain(const PsiEngine& eng,
                                   const std::vector<std::pair<HomElement, long>>& exponents,
                                   const HomElement& beta) {
  Isogeny ib = eng.resolve(beta);
  // gamma-side combination prod psi^e * sqrt(prod hat^-e), pulled back
  CurveRationalFunction gprod = CurveRationalFunction::one(eng.curve());
  std::vector<std::pair<HomElement, long>> composed, neg, composed_neg;
  std::vector<std::string> inputs;
  for (const auto& [h, n] : exponents) {
    gprod = gprod * eng.psi(h).value.pow(n);
    composed.emplace_back(HomElement::chain({h, beta}), n);
    neg.emplace_back(h, -n);
    composed_neg.emplace_back(HomElement::chain({h, beta}), -n);
    inputs.push_back(h.label() + "^" + std::to_string(n));
  }
  inputs.push_back("beta=" + beta.label());
  gprod = gprod * eng.sqrt_hat_product(neg).value;
  CurveRationalFunction lhs = pullback(gprod, ib);

  CurveRationalFunction rhs = CurveRationalFunction::one(eng.curve());
  for (const auto& [h, n] : composed) rhs = rhs * eng.psi(h).value.pow(n);
  rhs = rhs * eng.sqrt_hat_product(composed_neg).value;
  return finish("chain-second", std::move(inputs), lhs, rhs, eng.curve().field()->name());
}

IdentityReport verify_rel_x(const PsiEngine& eng, const HomElement& alpha,
                            const HomElement& beta) {
  if ((alpha - beta).is_zero() || (alpha + beta).is_zero())
    throw domain_error("relation to x needs alpha != +-beta");
  CurveRationalFunction lhs = rel_x_lhs(eng, alpha, beta);
  CurveRationalFunction rhs = eng.resolve(beta).x_map() - eng.resolve(alpha).x_map();
  return finish("rel-x", {alpha.label(), beta.label()}, lhs, rhs, eng.curve().field()->name());
}

IdentityReport verify_rec1(const PsiEngine& eng, const HomElement& alpha, const HomElement& beta,
                           const HomElement& gamma) {
  const HomElement* v[3] = {&alpha, &beta, &gamma};
  for (int i = 0; i < 3; ++i) {
    const HomElement& a = *v[i];
    const HomElement& b = *v[(i + 1) % 3];
    if ((a + b).is_zero() || (a - b).is_zero())
      throw domain_error("recurrence needs pairwise nondegenerate labels");
  }
  CurveRationalFunction lhs = rel_x_lhs(eng, alpha, beta) + rel_x_lhs(eng, beta, gamma) +
                              rel_x_lhs(eng, gamma, alpha);
  CurveRationalFunction rhs = CurveRationalFunction::zero(eng.curve());
  return finish("rec1", {alpha.label(), beta.label(), gamma.label()}, lhs, rhs,
                eng.curve().field()->name());
}

IdentityReport verify_rel_x2(const PsiEngine& eng, const HomElement& alpha, const HomElement& beta,
                             const HomElement& sigma) {
  const HomElement labels[7] = {alpha + beta + sigma, alpha - beta, sigma,    alpha + sigma,
                                beta + sigma,         alpha,        beta};
  for (const auto& l : labels)
    if (l.is_zero()) throw domain_error("slope relation needs nondegenerate labels");
  CurveRationalFunction lhs = rel_x2_lhs(eng, alpha, beta, sigma, true);
  CurveRationalFunction rhs = slope(eng, alpha, sigma) - slope(eng, beta, sigma);
  return finish("rel-x2", {alpha.label(), beta.label(), sigma.label()}, lhs, rhs,
                eng.curve().field()->name());
}

IdentityReport verify_rec2(const PsiEngine& eng, const HomElement& alpha, const HomElement& beta,
                           const HomElement& gamma, const HomElement& sigma) {
  if (sigma.is_zero()) throw domain_error("recurrence needs nondegenerate labels");
  const HomElement* v[3] = {&alpha, &beta, &gamma};
  for (int i = 0; i < 3; ++i) {
    const HomElement& a = *v[i];
    const HomElement& b = *v[(i + 1) % 3];
    const HomElement need[6] = {a + b + sigma, a - b, a + sigma, b + sigma, a, b};
    for (const auto& l : need)
      if (l.is_zero()) throw domain_error("recurrence needs nondegenerate labels");
  }
  bool sigma_unbiased = eng.iota(eng.resolve(sigma)) == 0;
  CurveRationalFunction lhs = CurveRationalFunction::zero(eng.curve());
  if (sigma_unbiased && !sigma.is_zero()) {
    // literal displayed form: terms without the psi(sigma)/hat(sigma) factors
    for (int i = 0; i < 3; ++i)
      lhs = lhs + rel_x2_lhs(eng, *v[i], *v[(i + 1) % 3], sigma, false);
  } else {
    // common-factor form: the three slope-relation combinations share the
    // nonzero factor psi(sigma)*sqrt(hat(sigma)^-1), so their sum vanishing
    // is the same statement
    for (int i = 0; i < 3; ++i)
      lhs = lhs + rel_x2_lhs(eng, *v[i], *v[(i + 1) % 3], sigma, true);
  }
  CurveRationalFunction rhs = CurveRationalFunction::zero(eng.curve());
  return finish("rec2", {alpha.label(), beta.label(), gamma.label(), sigma.label()}, lhs, rhs,
                eng.curve().field()->name());
}

IdentityReport verify_pullback_lemma(const PsiEngine& eng, const KernelSymbolSum& s,
                                     const HomElement& beta) {
  Isogeny ib = eng.resolve(beta);
  NormalizedFunction base = eng.kernel_function(s);
  NormalizedFunction pulled_sum = eng.kernel_function(s.pulled_back(ib));
  CurveRationalFunction pulled_fn = pullback(base.value, ib);
  return finish("pullback", {s.str(), beta.label()}, pulled_sum.value, pulled_fn,
                eng.curve().field()->name());
}

}  // namespace isopoly
