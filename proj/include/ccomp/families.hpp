#pragma once

/**
 * @file families.hpp
 * @brief Polynomial pairs with known least common composites, Dickson
 * polynomials, and tame right-component extraction.
 */

#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "search.hpp"
#include "text.hpp"

namespace ccomp {

enum class FamilyTag { cyclic_additive, cyclic_shifted, tame_cyclic, tame_dickson, deg2_pair };

inline const char* family_tag_name(FamilyTag t)
{
    switch (t) {
    case FamilyTag::cyclic_additive: return "CyclicAdditive";
    case FamilyTag::cyclic_shifted: return "CyclicShifted";
    case FamilyTag::tame_cyclic: return "TameCyclic";
    case FamilyTag::tame_dickson: return "TameDickson";
    case FamilyTag::deg2_pair: return "Deg2Pair";
    }
    return "?";
}

/// base * p^exponent, kept symbolic so huge degrees can be checked by formula.
struct DegreeFormula {
    BigInt base = 1;
    std::uint64_t p = 1;
    std::uint64_t exponent = 0;

    /// Exact value; throws Unsupported when p^exponent would exceed 2^20 bits.
    BigInt value() const
    {
        if (p > 1 && exponent * 64 > (1u << 20))
            throw Error(ErrorCode::unsupported, "degree too large to expand");
        return base * nt::big_pow(p, exponent);
    }

    std::string str() const
    {
        if (exponent == 0 || p == 1)
            return base.str();
        return base.str() + "*" + std::to_string(p) + "^" + std::to_string(exponent);
    }
};

struct FamilyInstance {
    Polynomial f1, f2;
    std::optional<Polynomial> expected_h;
    DegreeFormula expected_min_degree;
    FamilyTag tag = FamilyTag::cyclic_additive;
    std::string params;
    std::uint64_t order = 0; ///< multiplicative order d for the cyclic families
};

/// Degree cap for materializing expected composites.
constexpr std::uint64_t materialize_cap = 1u << 16;

/// D_n(x, alpha) by D_n = x D_{n-1} - alpha D_{n-2}, D_0 = 2, D_1 = x.
inline Polynomial dickson(std::uint64_t n, const FieldElement& alpha)
{
    const FieldSpec& F = alpha.spec();
    Polynomial prev = Polynomial::constant(F.from_int(2));
    if (n == 0)
        return prev;
    const Polynomial x = Polynomial::x(F);
    Polynomial cur = x;
    for (std::uint64_t k = 2; k <= n; ++k) {
        Polynomial next = x * cur - prev * alpha;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// The closed-form sum of n/(n-i) binom(n-i, i) (-alpha)^i x^{n-2i}; the rational factor is integral.
inline Polynomial dickson_closed_form(std::uint64_t n, const FieldElement& alpha)
{
    const FieldSpec& F = alpha.spec();
    if (n == 0)
        return Polynomial::constant(F.from_int(2));
    std::vector<FieldElement> c(n + 1, F.zero());
    const FieldElement neg = -alpha;
    for (std::uint64_t i = 0; 2 * i <= n; ++i) {
        BigInt binom = 1;
        for (std::uint64_t k = 0; k < i; ++k)
            binom = binom * (n - i - k) / (k + 1);
        const BigInt coef = BigInt(n) * binom / (n - i);
        c[n - 2 * i] = F.from_int(coef) * neg.pow(i);
    }
    return Polynomial(F, std::move(c));
}

/// (x^n, x^{p^r} - x) over F_p, least composite (x^{p^{rd}} - x)^n with d the order of p^r mod n.
inline FamilyInstance additive_family(std::uint64_t n, std::uint64_t p, std::uint64_t r)
{
    if (!nt::is_prime(p) || n == 0 || r == 0 || n % p == 0)
        throw Error(ErrorCode::invalid_params, "additive family needs p prime, n >= 1 with p not dividing n, r >= 1");
    const FieldSpec F = FieldSpec::prime(p);
    FamilyInstance fi;
    fi.tag = FamilyTag::cyclic_additive;
    fi.params = "n=" + std::to_string(n) + " p=" + std::to_string(p) + " r=" + std::to_string(r);
    const BigInt pr = nt::big_pow(p, r);
    if (pr > BigInt(materialize_cap))
        throw Error(ErrorCode::invalid_params, "p^r too large to build x^{p^r} - x");
    const auto pr64 = pr.convert_to<std::uint64_t>();
    fi.f1 = Polynomial::monomial(F.one(), n);
    fi.f2 = Polynomial::monomial(F.one(), pr64) - Polynomial::x(F);
    fi.order = n == 1 ? 1 : nt::multiplicative_order(pr64 % n, n);
    fi.expected_min_degree = {BigInt(n), p, r * fi.order};
    if (r * fi.order < 64 && fi.expected_min_degree.value() <= materialize_cap) {
        const auto q = nt::big_pow(p, r * fi.order).convert_to<std::uint64_t>();
        fi.expected_h = pow(Polynomial::monomial(F.one(), q) - Polynomial::x(F), n);
    }
    return fi;
}

/// (x^n, (x - 1)^m) over F_p, least composite (x^{p^d} - x)^{lcm(m,n)} with d the order of p mod lcm(m,n).
inline FamilyInstance shifted_family(std::uint64_t n, std::uint64_t m, std::uint64_t p)
{
    if (!nt::is_prime(p) || n < 2 || m < 2 || n % p == 0 || m % p == 0)
        throw Error(ErrorCode::invalid_params, "shifted family needs p prime, n, m > 1 and p not dividing nm");
    const FieldSpec F = FieldSpec::prime(p);
    FamilyInstance fi;
    fi.tag = FamilyTag::cyclic_shifted;
    fi.params = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " p=" + std::to_string(p);
    const std::uint64_t L = nt::lcm(n, m);
    fi.f1 = Polynomial::monomial(F.one(), n);
    fi.f2 = pow(Polynomial::x(F) - Polynomial::constant(F.one()), m);
    fi.order = nt::multiplicative_order(p % L, L);
    fi.expected_min_degree = {BigInt(L), p, fi.order};
    if (fi.order < 64 && fi.expected_min_degree.value() <= materialize_cap) {
        const auto q = nt::big_pow(p, fi.order).convert_to<std::uint64_t>();
        fi.expected_h = pow(Polynomial::monomial(F.one(), q) - Polynomial::x(F), L);
    }
    return fi;
}

/// Cyclic tame pair: f1 = l1(x^r P(x^n))(h), f2 = l2(x^n)(h) with gcd(r, n) = 1.
inline FamilyInstance tame_cyclic(const Polynomial& l1, const Polynomial& l2, const Polynomial& h, const Polynomial& P,
                                  std::uint64_t r, std::uint64_t n)
{
    const FieldSpec& F = h.spec();
    if (l1.degree() != 1 || l2.degree() != 1 || h.is_constant() || r == 0 || n == 0 || std::gcd(r, n) != 1)
        throw Error(ErrorCode::invalid_params, "tame cyclic family needs degree-one l_i, nonconstant h, gcd(r, n) = 1");
    const Polynomial x = Polynomial::x(F);
    const Polynomial xn = Polynomial::monomial(F.one(), n);
    const Polynomial A = Polynomial::monomial(F.one(), r) * compose(P, xn);
    FamilyInstance fi;
    fi.tag = FamilyTag::tame_cyclic;
    fi.params = "r=" + std::to_string(r) + " n=" + std::to_string(n) + " P=" + to_string(P) + " h=" + to_string(h);
    fi.f1 = compose(l1, compose(A, h));
    fi.f2 = compose(l2, compose(xn, h));
    const std::uint64_t p = F.characteristic();
    if (p != 0 && (fi.f1.degree() % p == 0 || fi.f2.degree() % p == 0))
        throw Error(ErrorCode::invalid_params, "characteristic divides a degree");
    if (fi.f1.degree() <= 1 || fi.f2.degree() <= 1)
        throw Error(ErrorCode::invalid_params, "degrees must exceed 1");
    const auto L = nt::lcm(static_cast<std::uint64_t>(fi.f1.degree()), static_cast<std::uint64_t>(fi.f2.degree()));
    fi.expected_min_degree = {BigInt(L), 1, 0};
    fi.expected_h = normalize(compose(pow(A, n), h));
    return fi;
}

/// Dickson tame pair: f1 = l1(D_m(x, a))(h), f2 = l2(D_n(x, a))(h); composite D_{lcm(m,n)}(x, a)(h).
inline FamilyInstance tame_dickson(const Polynomial& l1, const Polynomial& l2, const Polynomial& h,
                                   const FieldElement& alpha, std::uint64_t m, std::uint64_t n)
{
    const FieldSpec& F = h.spec();
    if (l1.degree() != 1 || l2.degree() != 1 || h.is_constant() || m == 0 || n == 0)
        throw Error(ErrorCode::invalid_params, "tame Dickson family needs degree-one l_i, nonconstant h, m, n > 0");
    FamilyInstance fi;
    fi.tag = FamilyTag::tame_dickson;
    fi.params = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " alpha=" + to_string(alpha) + " h=" + to_string(h);
    fi.f1 = compose(l1, compose(dickson(m, alpha), h));
    fi.f2 = compose(l2, compose(dickson(n, alpha), h));
    const std::uint64_t p = F.characteristic();
    if (p != 0 && (fi.f1.degree() % p == 0 || fi.f2.degree() % p == 0))
        throw Error(ErrorCode::invalid_params, "characteristic divides a degree");
    if (fi.f1.degree() <= 1 || fi.f2.degree() <= 1)
        throw Error(ErrorCode::invalid_params, "degrees must exceed 1");
    const auto L = nt::lcm(static_cast<std::uint64_t>(fi.f1.degree()), static_cast<std::uint64_t>(fi.f2.degree()));
    fi.expected_min_degree = {BigInt(L), 1, 0};
    fi.expected_h = normalize(compose(dickson(nt::lcm(m, n), alpha), h));
    return fi;
}

/// Common composite of two quadratics built from the dihedral orbit of x under the two fiber involutions.
inline Polynomial deg2_orbit_composite(const Polynomial& f1, const Polynomial& f2)
{
    const FieldSpec& F = f1.spec();
    if (f1.degree() != 2 || f2.degree() != 2 || !(F == f2.spec()))
        throw Error(ErrorCode::invalid_params, "two quadratics over one field required");
    const std::uint64_t p = F.characteristic();
    if (p == 0)
        throw Error(ErrorCode::unsupported, "quadratics over Q need not share a composite");
    const Polynomial x = Polynomial::x(F);
    if (normalize(f1) == normalize(f2))
        return normalize(f1);
    if (p == 2 && (f1.coeff(1).is_zero() || f2.coeff(1).is_zero())) {
        // inseparable quadratic (p = 2): the square of the other map works
        const Polynomial& other = f1.coeff(1).is_zero() ? f2 : f1;
        return normalize(other * other);
    }
    // sigma_i(x) = s_i - x with s_i the root sum; sigma_1 sigma_2 is translation by s_1 - s_2
    const FieldElement s1 = -(f1.coeff(1) / f1.coeff(2));
    const FieldElement s2 = -(f2.coeff(1) / f2.coeff(2));
    const FieldElement delta = s1 - s2;
    const std::uint64_t order = delta.is_zero() ? 1 : p;
    Polynomial h = Polynomial::constant(F.one());
    FieldElement shift = F.zero();
    for (std::uint64_t k = 0; k < order; ++k) {
        h *= (x + Polynomial::constant(shift)) * (Polynomial::constant(s1 + shift) - x);
        shift += delta;
    }
    return normalize(h);
}

/// Explicit degree-2p composite from normal forms x^2 + a x (p = 2) or (x - a)^2 (p odd).
inline Polynomial deg2_explicit_composite(const Polynomial& f1, const Polynomial& f2)
{
    const FieldSpec& F = f1.spec();
    if (f1.degree() != 2 || f2.degree() != 2 || !(F == f2.spec()))
        throw Error(ErrorCode::invalid_params, "two quadratics over one field required");
    const std::uint64_t p = F.characteristic();
    if (p == 0)
        throw Error(ErrorCode::unsupported, "quadratics over Q need not share a composite");
    const Polynomial x = Polynomial::x(F);
    auto c = [](const FieldElement& v) { return Polynomial::constant(v); };
    if (p == 2) {
        if (f1.coeff(1).is_zero() || f2.coeff(1).is_zero())
            return deg2_orbit_composite(f1, f2);
        const FieldElement a = f1.coeff(1) / f1.coeff(2), b = f2.coeff(1) / f2.coeff(2);
        const Polynomial u1 = x * x + x * a;
        return normalize(compose(x * x + x * (b * (a + b)), u1));
    }
    const FieldElement two = F.from_int(2);
    const FieldElement a = -(f1.coeff(1) / (two * f1.coeff(2)));
    const FieldElement b = -(f2.coeff(1) / (two * f2.coeff(2)));
    const FieldElement e = a - b;
    const Polynomial u1 = pow(x - c(a), 2);
    const Polynomial outer = Polynomial::monomial(F.one(), p) -
                             Polynomial::monomial(two * e.pow(p - 1), (p + 1) / 2) + x * e.pow(2 * (p - 1));
    return normalize(compose(outer, u1));
}

/// The pair (x^2 + a x, x^2 + b x); least composite degree 2p when a != b, else 2.
inline FamilyInstance deg2_pair(const FieldElement& a, const FieldElement& b)
{
    const FieldSpec& F = a.spec();
    if (!F.is_finite())
        throw Error(ErrorCode::invalid_params, "degree-2 family needs positive characteristic");
    const Polynomial x = Polynomial::x(F);
    FamilyInstance fi;
    fi.tag = FamilyTag::deg2_pair;
    fi.params = "a=" + to_string(a) + " b=" + to_string(b);
    fi.f1 = x * x + x * a;
    fi.f2 = x * x + x * b;
    if (a == b) {
        fi.expected_min_degree = {BigInt(2), 1, 0};
        fi.expected_h = normalize(fi.f1);
    } else {
        fi.expected_min_degree = {BigInt(2), F.characteristic(), 1};
        fi.expected_h = deg2_explicit_composite(fi.f1, fi.f2);
    }
    return fi;
}

/// Decomposition f = g(r) with deg r = n, r monic and r(0) = 0, when one exists and deg f / n is tame.
inline std::optional<std::pair<Polynomial, Polynomial>> tame_right_component(const Polynomial& f, std::uint64_t n)
{
    const FieldSpec& F = f.spec();
    if (f.is_constant() || n == 0 || static_cast<std::uint64_t>(f.degree()) % n != 0)
        throw Error(ErrorCode::invalid_params, "n must divide deg f");
    const std::uint64_t m = static_cast<std::uint64_t>(f.degree()) / n;
    const std::uint64_t p = F.characteristic();
    if (p != 0 && m % p == 0)
        throw Error(ErrorCode::invalid_params, "cofactor degree divisible by the characteristic");
    const Polynomial x = Polynomial::x(F);
    if (m == 1) {
        Polynomial r = normalize(f);
        Polynomial g = x * f.leading() + Polynomial::constant(f.constant_term());
        return std::make_pair(g, r);
    }
    const Polynomial fm = monic(f);
    const FieldElement m_inv = F.from_int(static_cast<long long>(m)).inverse();
    std::vector<FieldElement> rc(n + 1, F.zero());
    rc[n] = F.one();
    for (std::uint64_t k = 1; k < n; ++k) {
        Polynomial r(F, rc);
        const FieldElement have = pow(r, m).coeff(n * m - k);
        rc[n - k] = (fm.coeff(n * m - k) - have) * m_inv;
    }
    Polynomial r(F, rc);
    auto g = extract_cofactor(f, r);
    if (!g)
        return std::nullopt;
    return std::make_pair(*g, r);
}

/// A normalized r of degree gcd(deg f1, deg f2) with f_i = g_i(r), if the tame extraction finds one.
inline std::optional<Polynomial> common_right_component(const Polynomial& f1, const Polynomial& f2)
{
    if (!(f1.spec() == f2.spec()) || f1.is_constant() || f2.is_constant())
        return std::nullopt;
    const std::uint64_t n = std::gcd(static_cast<std::uint64_t>(f1.degree()), static_cast<std::uint64_t>(f2.degree()));
    if (n == 1)
        return Polynomial::x(f1.spec());
    try {
        auto a = tame_right_component(f1, n);
        auto b = tame_right_component(f2, n);
        if (!a || !b || !(a->second == b->second))
            return std::nullopt;
        return a->second;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::invalid_params)
            return std::nullopt;
        throw;
    }
}

} // namespace ccomp
