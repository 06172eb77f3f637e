#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials over a FieldSpec.
 *
 * Coefficients are stored lowest degree first with no trailing zeros, so the
 * zero polynomial is the empty sequence and has degree -1.
 */

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "field.hpp"

namespace ccomp {

class Polynomial {
public:
    /// Zero polynomial over Q.
    Polynomial() = default;

    explicit Polynomial(FieldSpec spec) : spec_(std::move(spec)) {}

    Polynomial(FieldSpec spec, std::vector<FieldElement> coeffs) : spec_(std::move(spec)), c_(std::move(coeffs))
    {
        for (const auto& c : c_) {
            if (!(c.spec() == spec_))
                throw Error(ErrorCode::incompatible_fields, "coefficient from a different field");
        }
        trim();
    }

    /// Integer coefficients, lowest degree first.
    static Polynomial from_ints(const FieldSpec& spec, std::initializer_list<long long> ascending)
    {
        std::vector<FieldElement> c;
        for (auto v : ascending)
            c.push_back(spec.from_int(v));
        return Polynomial(spec, std::move(c));
    }

    static Polynomial constant(const FieldElement& c) { return Polynomial(c.spec(), {c}); }

    static Polynomial monomial(const FieldElement& c, std::size_t k)
    {
        std::vector<FieldElement> v(k + 1, c.spec().zero());
        v[k] = c;
        return Polynomial(c.spec(), std::move(v));
    }

    static Polynomial x(const FieldSpec& spec) { return monomial(spec.one(), 1); }

    const FieldSpec& spec() const { return spec_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    FieldElement coeff(std::size_t k) const { return k < c_.size() ? c_[k] : spec_.zero(); }
    FieldElement leading() const { return c_.empty() ? spec_.zero() : c_.back(); }
    FieldElement constant_term() const { return coeff(0); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    Polynomial operator+(const Polynomial& o) const
    {
        check(o);
        std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), spec_.zero());
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size())
                r[i] = c_[i] + o.c_[i];
            else
                r[i] = i < c_.size() ? c_[i] : o.c_[i];
        }
        return Polynomial(spec_, std::move(r), trusted{});
    }

    Polynomial operator-() const
    {
        std::vector<FieldElement> r;
        r.reserve(c_.size());
        for (const auto& c : c_)
            r.push_back(-c);
        return Polynomial(spec_, std::move(r), trusted{});
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const
    {
        check(o);
        if (c_.empty() || o.c_.empty())
            return Polynomial(spec_);
        std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, spec_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (!o.c_[j].is_zero())
                    r[i + j] += c_[i] * o.c_[j];
            }
        }
        return Polynomial(spec_, std::move(r), trusted{});
    }

    Polynomial operator*(const FieldElement& s) const
    {
        if (!(s.spec() == spec_))
            throw Error(ErrorCode::incompatible_fields, "scalar from a different field");
        std::vector<FieldElement> r;
        r.reserve(c_.size());
        for (const auto& c : c_)
            r.push_back(c * s);
        return Polynomial(spec_, std::move(r), trusted{});
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.spec_ == b.spec_ && a.c_ == b.c_; }

private:
    struct trusted {};
    Polynomial(FieldSpec spec, std::vector<FieldElement> coeffs, trusted) : spec_(std::move(spec)), c_(std::move(coeffs))
    {
        trim();
    }

    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }

    void check(const Polynomial& o) const
    {
        if (!(spec_ == o.spec_))
            throw Error(ErrorCode::incompatible_fields, "polynomials over different fields");
    }

    FieldSpec spec_;
    std::vector<FieldElement> c_;
};

inline Polynomial operator*(const FieldElement& s, const Polynomial& f) { return f * s; }

/// Quotient and remainder; throws DivideByZero when b = 0.
inline std::pair<Polynomial, Polynomial> divrem(const Polynomial& a, const Polynomial& b)
{
    if (!(a.spec() == b.spec()))
        throw Error(ErrorCode::incompatible_fields, "polynomials over different fields");
    if (b.is_zero())
        throw Error(ErrorCode::divide_by_zero, "polynomial division by zero");
    const auto& spec = a.spec();
    if (a.degree() < b.degree())
        return {Polynomial(spec), a};
    std::vector<FieldElement> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<FieldElement> q(r.size() - db, spec.zero());
    const FieldElement lead_inv = b.leading().inverse();
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k].is_zero())
            continue;
        FieldElement c = r[k] * lead_inv;
        q[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j) {
            if (!bc[j].is_zero())
                r[k - db + j] -= c * bc[j];
        }
    }
    r.resize(db, spec.zero());
    return {Polynomial(spec, std::move(q)), Polynomial(spec, std::move(r))};
}

inline Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divrem(a, b).second; }

/// Scales to leading coefficient 1; zero stays zero.
inline Polynomial monic(const Polynomial& f)
{
    if (f.is_zero() || f.is_monic())
        return f;
    return f * f.leading().inverse();
}

inline Polynomial gcd_monic(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline FieldElement eval(const Polynomial& f, const FieldElement& a)
{
    if (!(a.spec() == f.spec()))
        throw Error(ErrorCode::incompatible_fields, "evaluation point from a different field");
    FieldElement r = f.spec().zero();
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        r = r * a + c[i];
    return r;
}

/// outer(inner(x)) by Horner's rule.
inline Polynomial compose(const Polynomial& outer, const Polynomial& inner)
{
    if (!(outer.spec() == inner.spec()))
        throw Error(ErrorCode::incompatible_fields, "polynomials over different fields");
    Polynomial r(outer.spec());
    const auto& c = outer.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        r = r * inner + Polynomial::constant(c[i]);
    return r;
}

inline Polynomial derivative(const Polynomial& f)
{
    const auto& c = f.coeffs();
    if (c.size() <= 1)
        return Polynomial(f.spec());
    std::vector<FieldElement> d;
    d.reserve(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i] * f.spec().from_int(static_cast<long long>(i)));
    return Polynomial(f.spec(), std::move(d));
}

/// f lies in K[x^p] iff its derivative vanishes; always false in characteristic 0.
inline bool in_Kxp(const Polynomial& f)
{
    if (!f.spec().is_finite())
        return false;
    return derivative(f).is_zero();
}

inline Polynomial pow(Polynomial base, std::uint64_t e)
{
    Polynomial r = Polynomial::constant(base.spec().one());
    while (e) {
        if (e & 1)
            r *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return r;
}

/// base^e mod m.
inline Polynomial powmod(Polynomial base, BigInt e, const Polynomial& m)
{
    Polynomial r = Polynomial::constant(base.spec().one()) % m;
    base = base % m;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0))
            r = (r * base) % m;
        e >>= 1;
        if (e > 0)
            base = (base * base) % m;
    }
    return r;
}

/// The degree-one normalization (f - f(0)) / lc(f): monic with zero constant term.
inline Polynomial normalize(const Polynomial& f)
{
    if (f.is_constant())
        return f;
    return monic(f - Polynomial::constant(f.constant_term()));
}

/// f with every coefficient mapped through `map` (which must land in `target`).
template <class Map>
Polynomial map_coefficients(const Polynomial& f, const FieldSpec& target, Map&& map)
{
    std::vector<FieldElement> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs())
        c.push_back(map(a));
    return Polynomial(target, std::move(c));
}

} // namespace ccomp
