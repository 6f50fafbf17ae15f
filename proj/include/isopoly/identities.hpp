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

#ifndef ISOPOLY_IDENTITIES_HPP
#define ISOPOLY_IDENTITIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "isopoly/divpoly.hpp"

namespace isopoly {

/// Outcome of a symbolic verification: both sides as canonical functions and
/// their exact comparison. `field` records the field actually used (the
/// quadratic extension when a retry was necessary).
struct IdentityReport {
  std::string name;
  std::vector<std::string> inputs;
  CurveRationalFunction lhs, rhs;
  bool equal = false;
  std::optional<CurveRationalFunction> discrepancy;  // lhs/rhs when unequal
  std::string field;
};

/// First chain rule for alpha composed with an endomorphism beta of the
/// engine's curve. Unbiased mode checks
///   psi(alpha o beta) = (psi(alpha) o beta) * psi(beta)^deg alpha
/// and requires both kernel sums trivial; biased mode checks the squared
/// ratio against the hat-function ratio.
IdentityReport verify_chain(const PsiEngine& eng, const Isogeny& alpha, const HomElement& beta,
                            bool biased_mode);

/// Second chain rule: exponents over endomorphism labels gamma (a finite
/// integral quadratic identity), pulled back along the endomorphism beta.
IdentityReport verify_second_chain(const PsiEngine& eng,
                                   const std::vector<std::pair<HomElement, long>>& exponents,
                                   const HomElement& beta);

/// Relation to the target x-coordinate for labels alpha, beta with a common
/// target. Requires alpha != +-beta.
IdentityReport verify_rel_x(const PsiEngine& eng, const HomElement& alpha, const HomElement& beta);

/// Three-term recurrence built from the relation to x.
IdentityReport verify_rec1(const PsiEngine& eng, const HomElement& alpha, const HomElement& beta,
                           const HomElement& gamma);

/// Relation to the target slope for labels alpha, beta, sigma.
IdentityReport verify_rel_x2(const PsiEngine& eng, const HomElement& alpha, const HomElement& beta,
                             const HomElement& sigma);

/// Three-term recurrence built from the slope relation.
IdentityReport verify_rec2(const PsiEngine& eng, const HomElement& alpha, const HomElement& beta,
                           const HomElement& gamma, const HomElement& sigma);

/// Pullback lemma: kernel_function(beta^* s) = kernel_function(s) o beta.
IdentityReport verify_pullback_lemma(const PsiEngine& eng, const KernelSymbolSum& s,
                                     const HomElement& beta);

}  // namespace isopoly

#endif  // ISOPOLY_IDENTITIES_HPP
