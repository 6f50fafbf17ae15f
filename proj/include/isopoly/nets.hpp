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

#ifndef ISOPOLY_NETS_HPP
#define ISOPOLY_NETS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "isopoly/divpoly.hpp"

namespace isopoly {

/// Memoized array of field values indexed by integer vectors, satisfying the
/// division-polynomial recurrences. Rank 1 arises from a curve point; rank 2
/// from a pair of points, with initial values derived from the relation to x
/// evaluated by exact point arithmetic.
class EllipticNet {
 public:
  /// Rank-1 net W(n) = psi_n(P); requires 2P != O.
  EllipticNet(const WeierstrassCurve& E, const Point& P);
  /// Rank-2 net for the points (P1, P2), gauge W(1,1) = 1.
  EllipticNet(const WeierstrassCurve& E, const Point& P1, const Point& P2);

  int rank() const { return rank_; }
  const WeierstrassCurve& curve() const { return E_; }

  /// Value at an index vector (size = rank); throws domain_error with the
  /// blocking index if a recurrence denominator vanishes.
  FieldElement value(const std::vector<long>& v) const;
  FieldElement value(long n) const { return value(std::vector<long>{n}); }
  FieldElement value(long a, long b) const { return value(std::vector<long>{a, b}); }

 private:
  WeierstrassCurve E_;
  int rank_;
  std::vector<Point> base_;
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  mutable std::map<std::vector<long>, FieldElement> memo_;
  FieldElement compute(const std::vector<long>& v) const;
  FieldElement rank1(long n) const;
  Point combo(const std::vector<long>& v) const;
};

/// Rank-1 sequence W(n) = psi_n(P) for n in [-range, range], as a net.
EllipticNet eds(const WeierstrassCurve& E, const Point& P, long range);

/// Specialized division-polynomial values with differentials scaled so that
/// every hat function is 1 at P.
struct ConsonantCollection {
  DifferentialScaling scaling;
  std::vector<std::pair<std::string, FieldElement>> values;  // label -> value
  WeierstrassCurve curve;
};

/// Solve the consonance condition hat_i(P) = 1 (i = 1..3) jointly with the
/// differential convention, then evaluate every label at P. Requires the
/// three square roots and one cube root to exist in the working field;
/// `allow_extension` retries the square roots over F_{p^2}.
ConsonantCollection consonant_specialize(const WeierstrassCurve& E,
                                         const std::vector<HomElement>& labels, const Point& P,
                                         const GChoices& g, bool allow_extension = false);

/// The consonance scaling alone (no evaluation).
DifferentialScaling consonant_scaling(const WeierstrassCurve& E, const Point& P, const GChoices& g);

struct RecoverReport {
  bool equal = false;
  std::string detail;
};

/// Specialization recovery: the consonant values W(a) = psi_{sum a_i phi_i}(P)
/// match the elliptic net of the image points phi_i(P) after fixing the
/// quadratic gauge constants on the generating set. Checks indices in a box
/// with max-norm `box`.
RecoverReport verify_recover(const WeierstrassCurve& E, const std::vector<HomElement>& labels,
                             const Point& P, const GChoices& g, long box);

}  // namespace isopoly

#endif  // ISOPOLY_NETS_HPP
