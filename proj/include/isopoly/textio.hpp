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

#ifndef ISOPOLY_TEXTIO_HPP
#define ISOPOLY_TEXTIO_HPP

#include <string>

#include "isopoly/divpoly.hpp"

namespace isopoly {

/// Field spec strings: "Q", "Q(i)", "Fp:<odd prime>".
FieldRef parse_field(const std::string& s);

/// Curve literal "E/<field>:[A2,A4,A6]", e.g. "E/Q(i):[0,-1,0]".
WeierstrassCurve parse_curve(const std::string& s);

/// Point literal "(x,y)" or "O".
Point parse_point(const WeierstrassCurve& E, const std::string& s);

/// Isogeny literals: "n", "a+bi", "velu2@(x0,0)", compositions with "o" or
/// the composition sign. The Vélu factor must be leftmost.
HomElement parse_isogeny_literal(const WeierstrassCurve& E, const std::string& s);

/// Canonical polynomial text in a variable, descending powers:
/// "3*x^4 - 6*x^2 - 1", Gaussian coefficients as "2i" or "(1 + 2i)".
std::string polynomial_str(const Polynomial& p, const std::string& var = "x");

/// Canonical text of a curve function: "u + y*(v)" over "(d)" as needed.
std::string crf_str(const CurveRationalFunction& h);

/// Parse an expression in x, y, i and rational literals into a canonical
/// function on E. Grammar: sums of products of powers of atoms; "2i", "3/2"
/// and "3/2i" are single literals ((3/2)*i for the last).
CurveRationalFunction parse_crf(const WeierstrassCurve& E, const std::string& s);

/// Parse a field element literal (the coefficient grammar above).
FieldElement parse_field_element(const FieldRef& f, const std::string& s);

}  // namespace isopoly

#endif  // ISOPOLY_TEXTIO_HPP
