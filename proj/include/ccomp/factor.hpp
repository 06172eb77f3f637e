#pragma once

/**
 * @file factor.hpp
 * @brief Roots and factor-degree structure of polynomials in their own field.
 *
 * Finite fields: roots come from gcd(f, x^q - x) followed by equal-degree
 * splitting, or from a direct scan when q <= 1024. Over Q only rational roots
 * are found (rational root theorem). Results are sorted canonically.
 */

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "polynomial.hpp"

namespace ccomp {

struct RootWithMultiplicity {
    FieldElement root;
    unsigned multiplicity = 1;

    friend bool operator==(const RootWithMultiplicity&, const RootWithMultiplicity&) = default;
};

/// Largest m with (x - a)^m | f; 0 when a is not a root. f must be nonzero.
inline unsigned root_multiplicity(Polynomial f, const FieldElement& a)
{
    if (f.is_zero())
        throw Error(ErrorCode::invalid_params, "multiplicity in the zero polynomial");
    const Polynomial lin = Polynomial::x(f.spec()) - Polynomial::constant(a);
    unsigned m = 0;
    for (;;) {
        auto [q, r] = divrem(f, lin);
        if (!r.is_zero())
            return m;
        ++m;
        f = std::move(q);
    }
}

namespace detail {

constexpr std::uint64_t scan_limit = 1024;

inline FieldElement random_element(const FieldSpec& F, std::mt19937_64& rng)
{
    detail::Coeffs c(F.degree());
    for (auto& v : c)
        v = rng() % F.characteristic();
    return FieldElement(F, std::move(c));
}

/// Splits a squarefree product of distinct linear factors into its roots.
inline void split_linear(const Polynomial& g, std::mt19937_64& rng, std::vector<FieldElement>& out)
{
    const FieldSpec& F = g.spec();
    if (g.degree() <= 0)
        return;
    if (g.degree() == 1) {
        out.push_back(-(g.coeff(0) / g.coeff(1)));
        return;
    }
    const std::uint64_t p = F.characteristic();
    const BigInt q = F.order();
    const Polynomial x = Polynomial::x(F);
    for (;;) {
        Polynomial a = x * random_element(F, rng) + Polynomial::constant(random_element(F, rng));
        Polynomial t(F);
        if (p == 2) {
            // absolute trace a + a^2 + ... + a^{2^{k-1}} mod g, k = [F:F_2]
            Polynomial term = a % g;
            for (std::size_t i = 0; i < F.degree(); ++i) {
                t += term;
                term = (term * term) % g;
            }
        } else {
            t = powmod(a, (q - 1) / 2, g) - Polynomial::constant(F.one());
        }
        Polynomial d = gcd_monic(g, t);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, rng, out);
            split_linear(divrem(g, d).first, rng, out);
            return;
        }
    }
}

inline std::vector<FieldElement> distinct_roots_finite(const Polynomial& f, std::uint64_t seed)
{
    const FieldSpec& F = f.spec();
    std::vector<FieldElement> roots;
    if (f.degree() <= 0)
        return roots;
    const std::uint64_t q = F.small_order();
    if (q != 0 && q <= scan_limit) {
        for (std::uint64_t i = 0; i < q; ++i) {
            auto e = F.element_at(i);
            if (eval(f, e).is_zero())
                roots.push_back(std::move(e));
        }
    } else {
        const Polynomial x = Polynomial::x(F);
        Polynomial fm = monic(f);
        Polynomial g = gcd_monic(fm, powmod(x, F.order(), fm) - x);
        std::mt19937_64 rng(seed);
        split_linear(g, rng, roots);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline std::vector<BigInt> positive_divisors(const BigInt& n)
{
    if (n == 0)
        return {};
    if (n > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw Error(ErrorCode::unsupported, "rational root search needs coefficients below 2^64");
    std::vector<BigInt> out;
    for (auto d : nt::divisors(n.convert_to<std::uint64_t>()))
        out.emplace_back(d);
    return out;
}

inline std::vector<FieldElement> distinct_roots_rational(const Polynomial& f)
{
    std::vector<FieldElement> roots;
    if (f.degree() <= 0)
        return roots;
    const FieldSpec& Q = f.spec();
    // integer primitive multiple of f
    BigInt den = 1;
    for (const auto& c : f.coeffs())
        den = boost::multiprecision::lcm(den, BigInt(boost::multiprecision::denominator(c.rational())));
    std::vector<BigInt> a;
    for (const auto& c : f.coeffs())
        a.push_back(BigInt(boost::multiprecision::numerator(c.rational()) * (den / boost::multiprecision::denominator(c.rational()))));
    std::size_t low = 0;
    while (a[low] == 0)
        ++low;
    if (low > 0)
        roots.push_back(Q.zero());
    if (low + 1 < a.size()) {
        const auto nums = positive_divisors(abs(a[low]));
        const auto dens = positive_divisors(abs(a.back()));
        std::vector<Rational> seen;
        for (const auto& d : dens) {
            for (const auto& n : nums) {
                for (int s : {1, -1}) {
                    Rational cand(n * s, d);
                    if (std::find(seen.begin(), seen.end(), cand) != seen.end())
                        continue;
                    seen.push_back(cand);
                    Rational v = 0;
                    for (std::size_t i = a.size(); i-- > low;)
                        v = v * cand + Rational(a[i]);
                    if (v == 0)
                        roots.push_back(Q.from_rational(cand));
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// a^{1/p} in a finite field.
inline FieldElement pth_root(const FieldElement& a)
{
    const auto n = a.spec().degree();
    return n == 1 ? a : frobenius(a, n - 1);
}

} // namespace detail

/// Roots of f lying in f's own field, with multiplicities, sorted canonically.
inline std::vector<RootWithMultiplicity> roots_in_own_field(const Polynomial& f, std::uint64_t seed = 0)
{
    if (f.is_zero())
        throw Error(ErrorCode::invalid_params, "roots of the zero polynomial");
    auto distinct = f.spec().is_finite() ? detail::distinct_roots_finite(f, seed) : detail::distinct_roots_rational(f);
    std::vector<RootWithMultiplicity> out;
    out.reserve(distinct.size());
    for (auto& r : distinct) {
        unsigned m = root_multiplicity(f, r);
        out.push_back({std::move(r), m});
    }
    return out;
}

/// Product of the distinct monic irreducible factors of f.
inline Polynomial radical(const Polynomial& f)
{
    const FieldSpec& F = f.spec();
    if (f.degree() <= 0)
        return Polynomial::constant(F.one());
    Polynomial fm = monic(f);
    Polynomial d = derivative(fm);
    if (d.is_zero()) {
        // f is a polynomial in x^p: take the p-th root coefficientwise
        const auto p = F.characteristic();
        std::vector<FieldElement> c;
        for (std::size_t i = 0; i < fm.coeffs().size(); i += p)
            c.push_back(detail::pth_root(fm.coeffs()[i]));
        return radical(Polynomial(F, std::move(c)));
    }
    Polynomial c = gcd_monic(fm, d);
    Polynomial w = divrem(fm, c).first;
    if (!F.is_finite())
        return monic(w);
    for (;;) {
        Polynomial y = gcd_monic(c, w);
        if (y.degree() <= 0)
            break;
        c = divrem(c, y).first;
    }
    return monic(w * radical(c));
}

/// Degrees of the irreducible factors of the squarefree part of f, as degree -> count.
inline std::map<std::size_t, std::size_t> factor_degrees(const Polynomial& f)
{
    const FieldSpec& F = f.spec();
    if (!F.is_finite())
        throw Error(ErrorCode::unsupported, "factor degrees over Q");
    if (f.is_zero())
        throw Error(ErrorCode::invalid_params, "factor degrees of the zero polynomial");
    std::map<std::size_t, std::size_t> out;
    Polynomial g = radical(f);
    const Polynomial x = Polynomial::x(F);
    const BigInt q = F.order();
    Polynomial h = x % g;
    for (std::size_t d = 1; g.degree() >= static_cast<int>(2 * d); ++d) {
        h = powmod(h, q, g);
        Polynomial fac = gcd_monic(g, h - x);
        if (fac.degree() > 0) {
            out[d] += static_cast<std::size_t>(fac.degree()) / d;
            g = divrem(g, fac).first;
            h = h % g;
        }
    }
    if (g.degree() > 0)
        out[static_cast<std::size_t>(g.degree())] += 1;
    return out;
}

} // namespace ccomp
