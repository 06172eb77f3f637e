#pragma once

/**
 * @file roots.hpp
 * @brief Roots of a polynomial in a chosen ambient field and fiber multiplicities.
 */

#include <vector>

#include "embed.hpp"
#include "factor.hpp"

namespace ccomp {

/// All roots of f in `ambient` (an extension of f's field, or Q for f over Q), with multiplicities.
inline std::vector<RootWithMultiplicity> roots_in(const Polynomial& f, const FieldSpec& ambient, std::uint64_t seed = 0)
{
    if (!embeds_into(f.spec(), ambient))
        throw Error(ErrorCode::incompatible_fields, "ambient field does not contain the coefficient field");
    return roots_in_own_field(embed(f, ambient), seed);
}

/// Multiplicity of x = a as a root of f(x) - f(a); a may live in an extension of f's field.
inline unsigned multiplicity(const Polynomial& f, const FieldElement& a)
{
    if (f.is_constant())
        throw Error(ErrorCode::invalid_params, "multiplicity needs a nonconstant polynomial");
    Polynomial g = embed(f, a.spec());
    g -= Polynomial::constant(eval(g, a));
    return root_multiplicity(g, a);
}

} // namespace ccomp
