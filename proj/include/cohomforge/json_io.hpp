#pragma once

#include <json.hpp>

#include "cohomforge/euler.hpp"
#include "cohomforge/extensions.hpp"

namespace cohomforge {

using json = nlohmann::json;

/// Wraps nlohmann parsing; throws Error("ParseError", ...) on bad input.
json parse_json(const std::string& text);

/// {"kind":"table","table":[[...]]}, {"kind":"cyclic","m":4}, or the
/// shorthands {"cyclic":4}, {"dihedral":3}, {"quaternion8":true},
/// {"heisenberg":3}, {"symmetric":3}, {"product":[<group>,<group>]}.
FiniteGroup group_from_json(const json& j);

/// Canonical form always re-emits the full multiplication table.
json group_to_json(const FiniteGroup& G);

/// {"generators":m,"relations":[[...]],"action":{"<g>":[[...]]}} with the
/// shorthands {"cyclic":d} and {"free":r}; omitted action means trivial.
GModulePtr module_from_json(const json& j, const FiniteGroup& G);

/// {"degree":p,"values":{"(g1,...,gp)":[coords],...}}; omitted tuples are 0.
Cochain cochain_from_json(const json& j, GModulePtr A);
json cochain_to_json(const Cochain& c);

json factors_to_json(const std::vector<i64>& factors);

/// {"rotation":a,"fourier":[[k,c,s],...]}.
CircleDiffeoLift lift_from_json(const json& j);

}  // namespace cohomforge
