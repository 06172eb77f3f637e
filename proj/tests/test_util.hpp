#pragma once

// Conversions between oracle coefficient vectors and library polynomials, plus random generators.

#include <ostream>
#include <random>

#include "ccomp/ccomp.hpp"
#include "oracles.hpp"

namespace ccomp {

inline void PrintTo(const FieldElement& e, std::ostream* os) { *os << to_string(e); }
inline void PrintTo(const Polynomial& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(const FieldSpec& F, std::ostream* os) { *os << to_string(F); }

} // namespace ccomp

namespace testutil {

using namespace ccomp;

inline Polynomial to_lib(const oracle::Poly& a, const FieldSpec& F)
{
    std::vector<FieldElement> c;
    for (auto v : a)
        c.push_back(F.from_int(v));
    return Polynomial(F, std::move(c));
}

/// Coefficients of a polynomial over a prime field as residues.
inline oracle::Poly from_lib(const Polynomial& f)
{
    oracle::Poly out;
    for (const auto& c : f.coeffs())
        out.push_back(c.coeffs().empty() ? 0 : c.coeffs()[0]);
    oracle::trim(out);
    return out;
}

inline FieldElement random_element(const FieldSpec& F, std::mt19937_64& rng)
{
    if (!F.is_finite())
        return F.from_rational(Rational(static_cast<long long>(rng() % 41) - 20, 1 + static_cast<long long>(rng() % 7)));
    std::vector<std::uint64_t> c(F.degree());
    for (auto& v : c)
        v = rng() % F.characteristic();
    return F.from_coeffs(c);
}

inline Polynomial random_poly(const FieldSpec& F, std::mt19937_64& rng, int deg)
{
    std::vector<FieldElement> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(random_element(F, rng));
    while (c.back().is_zero())
        c.back() = random_element(F, rng);
    return Polynomial(F, std::move(c));
}

inline Polynomial P(const char* text, const FieldSpec& F) { return parse_poly(text, F); }

} // namespace testutil
