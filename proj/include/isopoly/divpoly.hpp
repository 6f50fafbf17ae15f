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

#ifndef ISOPOLY_DIVPOLY_HPP
#define ISOPOLY_DIVPOLY_HPP

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "isopoly/isogeny.hpp"

namespace isopoly {

/// Thrown when a kernel symbol sum has a non-principal image divisor.
class non_principal : public std::runtime_error {
 public:
  explicit non_principal(const std::string& what) : std::runtime_error(what) {}
};

/// Classical division polynomial of index n (any sign), under the convention
/// with lead coefficient n at the identity: 1, -2y, 3x^4 + ..., -4y(...), ...
/// Memoized per curve; the double-and-add index scheme applies fixed
/// instances of the general recurrence to the four initial terms.
CurveFunction classical_psi(const WeierstrassCurve& E, long n);

/// Integer-weighted formal sum of kernel symbols (K_phi). The identity
/// isogeny is the symbol (K_1).
struct KernelSymbolSum {
  std::vector<std::pair<Isogeny, long>> terms;

  KernelSymbolSum& add(const Isogeny& phi, long mult);
  /// beta^*: (K_gamma) -> (K_{gamma o beta}); beta an endomorphism here.
  KernelSymbolSum pulled_back(const Isogeny& beta) const;
  std::string str() const;
};

/// The three distinguished degree-2 isogenies g_i with kernels {O, P_i}.
struct GChoices {
  std::array<Isogeny, 3> g;
};

/// Scalings of the invariant differentials: omega = lambda * (normalized) on
/// the base curve, omega_i = lambda_i * (normalized) on the target model of
/// g_i. Differentials are attached to curves, so a distinguished isogeny
/// whose target IS the base curve must carry lambda_i = lambda.
struct DifferentialScaling {
  FieldElement lambda, lambda1, lambda2, lambda3;
  static DifferentialScaling ones(const FieldRef& f);
  const FieldElement& li(int i) const;  // i in 1..3
};

/// Kernel function together with its normalization data.
struct NormalizedFunction {
  CurveRationalFunction value;
  KernelSymbolSum symbols;
  FieldElement lead_coeff;  // coefficient of T^lead_exp at the identity
  long lead_exp = 0;
};

/// Normalization context: curve, ordered two-torsion, distinguished degree-2
/// isogenies, differential scalings. Construction does not require split
/// two-torsion unless gChoices are used. Caches are guarded; the engine is
/// safe for concurrent reads after warm-up.
class PsiEngine {
 public:
  PsiEngine(const WeierstrassCurve& E, std::optional<GChoices> g, DifferentialScaling s);
  /// Vélu quotients at the canonically ordered two-torsion (needs split E[2]).
  static GChoices default_gchoices(const WeierstrassCurve& E);

  const WeierstrassCurve& curve() const { return E_; }
  const TwoTorsion& two_torsion_data() const { return tt_; }
  const std::optional<GChoices>& gchoices() const { return g_; }
  const DifferentialScaling& scaling() const { return sc_; }

  /// Differential scaling attached to the symbol (K_phi): the scalar of
  /// phi's target curve (1 for curves without an assigned differential).
  FieldElement symbol_scale(const Isogeny& phi) const;
  /// Override the scaling of every symbol targeting the given curve
  /// (used to probe independence from the target differential).
  void override_target_scale(const WeierstrassCurve& target, const FieldElement& s);

  /// Kernel sum index of phi: 0 unbiased, else 1..3.
  int iota(const Isogeny& phi) const;
  const Isogeny& g_for(int iota_index) const;  // iota_index in 1..3

  /// The normalized function attached to a principal kernel symbol sum.
  NormalizedFunction kernel_function(const KernelSymbolSum& s) const;

  /// Division polynomial of phi (divisor phi^*(O') - deg phi (O) + (P_phi) - (O)).
  NormalizedFunction psi(const Isogeny& phi) const;
  NormalizedFunction psi(const HomElement& h) const;
  /// Hat function: 1 for index 0, else the normalized c (x - e_i).
  NormalizedFunction psi_hat(int index) const;
  NormalizedFunction psi_hat(const Isogeny& phi) const { return psi_hat(iota(phi)); }
  /// Tilde function: kernel function of 2(K_phi) - 2 deg phi (K_1).
  NormalizedFunction psi_tilde(const Isogeny& phi) const;

  /// Unique kernel function squaring to prod hat(phi)^{e_phi}; requires the
  /// exponents to pass the quadratic identity check.
  NormalizedFunction sqrt_hat_product(const std::vector<std::pair<HomElement, long>>& e) const;
  /// Same construction with only principality enforced (no quadratic check);
  /// used where a common factor makes the combination meaningful.
  NormalizedFunction half_hat_kernel_function(
      const std::vector<std::pair<HomElement, long>>& e) const;

  /// Symbol sum of psi / hat / tilde, exposed for identity bookkeeping.
  KernelSymbolSum psi_symbols(const Isogeny& phi) const;
  KernelSymbolSum hat_symbols(int index) const;
  KernelSymbolSum kersum2_symbols() const;

  Isogeny resolve(const HomElement& h) const;  // cached realization on E

  /// Divisor and lead audit of a computed function against its symbol sum;
  /// throws domain_error on any mismatch. Returns the number of checks made.
  int audit(const NormalizedFunction& nf) const;
  /// Audit every division polynomial this context has computed; returns
  /// (functions audited, checks made).
  std::pair<int, int> audit_all() const;

 private:
  WeierstrassCurve E_;
  TwoTorsion tt_;
  std::optional<GChoices> g_;
  DifferentialScaling sc_;
  std::map<std::string, FieldElement> curve_scale_;  // curve key -> scalar
  mutable std::mutex mu_;
  mutable std::map<std::string, Isogeny> iso_cache_;
  mutable std::map<std::string, NormalizedFunction> fn_cache_;
};

/// Solve the differential-scaling convention: the kernel function of
///   (K_{g1}) + (K_{g2}) + (K_{g3}) - (K_[2]) - 2 (K_1)
/// becomes the constant 1. The convention constant is computed by series
/// expansion and absorbed into lambda3; lambda = lambda1 = lambda2 = 1.
DifferentialScaling convention_solve(const WeierstrassCurve& E, const GChoices& g);

/// True iff sum e_v * v v^T vanishes, i.e. the exponents cancel under every
/// quadratic form.
bool quadratic_identity_check(const std::vector<std::pair<std::vector<long>, long>>& exponents);

}  // namespace isopoly

#endif  // ISOPOLY_DIVPOLY_HPP
