#pragma once

#include <variant>
#include <vector>

#include <json.hpp>

#include "randroots/polyalg.hpp"

namespace randroots::poly {

using PolySystemCoeffs = std::vector<MultiPoly>;
using AnyPoly = std::variant<MonomialPoly, BernsteinPoly, ComplexPoly, MultiPoly, PolySystemCoeffs>;

// Schema: {"basis": "monomial"|"bernstein"|"multi"|"complex", "m": int,
//          "degree": int | [int], "coeffs": [...]}
// Multi-index keys are comma-joined exponents ("2,0"). A system of multi
// polynomials uses a degree list and a list of coefficient objects. Complex
// coefficients are [re, im] pairs.
nlohmann::json to_json(const MonomialPoly& p);
nlohmann::json to_json(const BernsteinPoly& p);
nlohmann::json to_json(const ComplexPoly& p);
nlohmann::json to_json(const MultiPoly& p);
nlohmann::json to_json(const PolySystemCoeffs& system);
nlohmann::json to_json(const AnyPoly& p);

/// Throws ParseError naming the offending field.
AnyPoly polynomial_from_json(const nlohmann::json& j);

std::string index_key(const MultiIndex& j);
MultiIndex parse_index_key(const std::string& key);

}  // namespace randroots::poly
