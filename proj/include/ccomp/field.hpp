#pragma once

/**
 * @file field.hpp
 * @brief Exact arithmetic in F_p, F_{p^n} and Q.
 *
 * A FieldSpec is a cheap handle to an interned, immutable field description.
 * Extension fields are F_p[t]/(m(t)) for a monic irreducible modulus m; their
 * elements are coefficient vectors of length n = deg m. Rationals are reduced
 * fractions of arbitrary-precision integers.
 *
 * Two specs are equal iff kind, characteristic and modulus agree; because
 * specs are interned this is a pointer comparison.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "error.hpp"
#include "number_theory.hpp"

namespace ccomp {

enum class FieldKind { prime, extension, rationals };

class FieldElement;

namespace detail {

using u64 = std::uint64_t;
using Coeffs = boost::container::small_vector<u64, 4>;

struct FieldData {
    FieldKind kind = FieldKind::rationals;
    u64 p = 0;
    std::size_t degree = 1;
    std::vector<u64> modulus; // ascending, monic; extension kind only
    u64 id = 0;
};

/// Dense polynomials over F_p as ascending coefficient vectors with no trailing zeros.
namespace zp {

using Poly = std::vector<u64>;

inline void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline u64 inv(u64 a, u64 p) { return nt::pow_mod(a, p - 2, p); }

inline Poly sub(Poly a, const Poly& b, u64 p)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + nt::mul_mod(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

inline std::pair<Poly, Poly> divrem(Poly a, const Poly& b, u64 p)
{
    if (b.empty())
        throw Error(ErrorCode::divide_by_zero, "polynomial division by zero over F_p");
    trim(a);
    if (a.size() < b.size())
        return {{}, a};
    Poly q(a.size() - b.size() + 1, 0);
    const u64 lead_inv = inv(b.back(), p);
    for (std::size_t k = a.size(); k-- >= b.size();) {
        u64 c = nt::mul_mod(a[k], lead_inv, p);
        q[k - (b.size() - 1)] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t idx = k - (b.size() - 1) + j;
            a[idx] = (a[idx] + p - nt::mul_mod(c, b[j], p)) % p;
        }
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly rem(const Poly& a, const Poly& f, u64 p) { return divrem(a, f, p).second; }

inline Poly monic(Poly a, u64 p)
{
    if (a.empty())
        return a;
    u64 li = inv(a.back(), p);
    for (auto& c : a)
        c = nt::mul_mod(c, li, p);
    return a;
}

inline Poly gcd(Poly a, Poly b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline Poly mul_mod(const Poly& a, const Poly& b, const Poly& f, u64 p) { return rem(mul(a, b, p), f, p); }

inline Poly pow_mod(Poly base, BigInt e, const Poly& f, u64 p)
{
    Poly r{1};
    r = rem(r, f, p);
    base = rem(base, f, p);
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0))
            r = mul_mod(r, base, f, p);
        e >>= 1;
        if (e > 0)
            base = mul_mod(base, base, f, p);
    }
    return r;
}

/// Inverse of a modulo f (f irreducible, a != 0 mod f) by the extended Euclidean algorithm.
inline Poly inv_mod(const Poly& a, const Poly& f, u64 p)
{
    Poly r0 = f, r1 = rem(a, f, p);
    Poly s0{}, s1{1};
    if (r1.empty())
        throw Error(ErrorCode::divide_by_zero, "inverse of zero field element");
    while (!r1.empty()) {
        auto [q, r] = divrem(r0, r1, p);
        Poly s = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant
    u64 c = inv(r0[0], p);
    for (auto& v : s0)
        v = nt::mul_mod(v, c, p);
    return rem(s0, f, p);
}

/// Frobenius irreducibility test: x^{p^n} = x mod f and gcd(x^{p^{n/l}} - x, f) = 1 for primes l | n.
inline bool is_irreducible(const Poly& f_in, u64 p)
{
    Poly f = f_in;
    trim(f);
    if (f.size() < 2)
        return false;
    f = monic(f, p);
    const std::size_t n = f.size() - 1;
    if (n == 1)
        return true;
    const Poly x{0, 1};
    std::vector<Poly> frob(n + 1); // frob[i] = x^{p^i} mod f
    frob[0] = rem(x, f, p);
    for (std::size_t i = 1; i <= n; ++i)
        frob[i] = pow_mod(frob[i - 1], BigInt(p), f, p);
    if (frob[n] != frob[0])
        return false;
    for (u64 l : nt::prime_factors(n)) {
        Poly g = gcd(sub(frob[n / l], x, p), f, p);
        if (g.size() != 1)
            return false;
    }
    return true;
}

} // namespace zp

struct FieldTable {
    std::mutex mu;
    std::map<std::pair<u64, std::vector<u64>>, std::shared_ptr<const FieldData>> fields;
    std::shared_ptr<const FieldData> rationals;
    u64 next_id = 1;

    static FieldTable& instance()
    {
        static FieldTable table;
        return table;
    }

    std::shared_ptr<const FieldData> intern(FieldKind kind, u64 p, std::vector<u64> modulus)
    {
        std::lock_guard lock(mu);
        if (kind == FieldKind::rationals) {
            if (!rationals) {
                auto d = std::make_shared<FieldData>();
                d->kind = FieldKind::rationals;
                d->id = 0;
                rationals = d;
            }
            return rationals;
        }
        auto key = std::make_pair(p, modulus);
        auto it = fields.find(key);
        if (it != fields.end())
            return it->second;
        auto d = std::make_shared<FieldData>();
        d->kind = kind;
        d->p = p;
        d->degree = kind == FieldKind::prime ? 1 : modulus.size() - 1;
        d->modulus = std::move(modulus);
        d->id = next_id++;
        fields.emplace(key, d);
        return d;
    }
};

} // namespace detail

class FieldSpec {
public:
    /// Defaults to Q.
    FieldSpec() : d_(detail::FieldTable::instance().intern(FieldKind::rationals, 0, {})) {}

    static FieldSpec rationals() { return FieldSpec(); }

    static FieldSpec prime(std::uint64_t p)
    {
        if (!nt::is_prime(p))
            throw Error(ErrorCode::invalid_field, "characteristic " + std::to_string(p) + " is not prime");
        return FieldSpec(detail::FieldTable::instance().intern(FieldKind::prime, p, {0, 1}));
    }

    /// Extension F_p[t]/(modulus); the modulus (ascending coefficients) is made monic and checked irreducible.
    static FieldSpec with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus)
    {
        if (!nt::is_prime(p))
            throw Error(ErrorCode::invalid_field, "characteristic " + std::to_string(p) + " is not prime");
        for (auto& c : modulus)
            c %= p;
        detail::zp::trim(modulus);
        if (modulus.size() < 2)
            throw Error(ErrorCode::invalid_field, "modulus must have degree >= 1");
        modulus = detail::zp::monic(modulus, p);
        if (modulus.size() == 2)
            return prime(p);
        if (!detail::zp::is_irreducible(modulus, p))
            throw Error(ErrorCode::invalid_field, "modulus is reducible over F_" + std::to_string(p));
        return FieldSpec(detail::FieldTable::instance().intern(FieldKind::extension, p, std::move(modulus)));
    }

    FieldKind kind() const { return d_->kind; }
    std::uint64_t characteristic() const { return d_->p; }
    /// Degree over the prime field (1 for prime fields and Q).
    std::size_t degree() const { return d_->degree; }
    const std::vector<std::uint64_t>& modulus() const { return d_->modulus; }
    bool is_finite() const { return d_->kind != FieldKind::rationals; }
    std::uint64_t id() const { return d_->id; }
    const detail::FieldData& data() const { return *d_; }

    /// p^n; only meaningful for finite fields.
    BigInt order() const { return nt::big_pow(d_->p, d_->degree); }

    /// Field size when it fits in 64 bits, otherwise 0.
    std::uint64_t small_order() const
    {
        if (!is_finite())
            return 0;
        BigInt q = order();
        if (q > BigInt(std::numeric_limits<std::uint64_t>::max()))
            return 0;
        return q.convert_to<std::uint64_t>();
    }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(const BigInt& v) const;
    FieldElement from_rational(const Rational& v) const;
    /// Element with the given coefficients w.r.t. 1, w, w^2, ... (reduced mod p, zero padded).
    FieldElement from_coeffs(std::span<const std::uint64_t> c) const;
    /// The class of t in F_p[t]/(m); the prime field returns 1's image, Q is unsupported.
    FieldElement generator() const;
    /// Element whose base-p digits (lowest first) are the coefficients; bijection [0, q) -> F_q.
    FieldElement element_at(std::uint64_t index) const;
    std::uint64_t index_of(const FieldElement& e) const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.d_ == b.d_; }

private:
    explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
};

class FieldElement {
public:
    using Coeffs = detail::Coeffs;

    FieldElement() = default; // rational zero

    FieldElement(FieldSpec spec, Coeffs c) : spec_(std::move(spec)), c_(std::move(c)) {}
    FieldElement(FieldSpec spec, Rational q) : spec_(std::move(spec)), q_(std::move(q)) {}

    const FieldSpec& spec() const { return spec_; }
    const Coeffs& coeffs() const { return c_; }
    const Rational& rational() const { return q_; }

    bool is_zero() const
    {
        if (!spec_.is_finite())
            return q_ == 0;
        return std::all_of(c_.begin(), c_.end(), [](auto v) { return v == 0; });
    }

    bool is_one() const
    {
        if (!spec_.is_finite())
            return q_ == 1;
        if (c_[0] != 1)
            return false;
        return std::all_of(c_.begin() + 1, c_.end(), [](auto v) { return v == 0; });
    }

    /// True when the element lies in the prime subfield (always true for Q).
    bool in_prime_field() const
    {
        if (!spec_.is_finite())
            return true;
        return std::all_of(c_.begin() + 1, c_.end(), [](auto v) { return v == 0; });
    }

    FieldElement operator+(const FieldElement& o) const
    {
        check(o);
        if (!spec_.is_finite())
            return {spec_, Rational(q_ + o.q_)};
        const auto p = spec_.characteristic();
        Coeffs r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            auto s = c_[i] + o.c_[i];
            r[i] = s >= p || s < c_[i] ? s - p : s;
        }
        return {spec_, std::move(r)};
    }

    FieldElement operator-() const
    {
        if (!spec_.is_finite())
            return {spec_, Rational(-q_)};
        const auto p = spec_.characteristic();
        Coeffs r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            r[i] = c_[i] == 0 ? 0 : p - c_[i];
        return {spec_, std::move(r)};
    }

    FieldElement operator-(const FieldElement& o) const { return *this + (-o); }

    FieldElement operator*(const FieldElement& o) const
    {
        check(o);
        if (!spec_.is_finite())
            return {spec_, Rational(q_ * o.q_)};
        const auto& F = spec_.data();
        const auto p = F.p;
        if (F.kind == FieldKind::prime)
            return {spec_, Coeffs{nt::mul_mod(c_[0], o.c_[0], p)}};
        return {spec_, ext_mul(F, c_, o.c_)};
    }

    FieldElement inverse() const
    {
        if (is_zero())
            throw Error(ErrorCode::divide_by_zero, "inverse of zero");
        if (!spec_.is_finite())
            return {spec_, Rational(1 / q_)};
        const auto& F = spec_.data();
        if (F.kind == FieldKind::prime)
            return {spec_, Coeffs{detail::zp::inv(c_[0], F.p)}};
        detail::zp::Poly a(c_.begin(), c_.end());
        detail::zp::trim(a);
        auto r = detail::zp::inv_mod(a, F.modulus, F.p);
        Coeffs out(F.degree, 0);
        std::copy(r.begin(), r.end(), out.begin());
        return {spec_, std::move(out)};
    }

    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement pow(BigInt e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        FieldElement r = spec_.one(), b = *this;
        while (e > 0) {
            if (boost::multiprecision::bit_test(e, 0))
                r *= b;
            e >>= 1;
            if (e > 0)
                b *= b;
        }
        return r;
    }

    FieldElement pow(std::uint64_t e) const { return pow(BigInt(e)); }

    friend bool operator==(const FieldElement& a, const FieldElement& b)
    {
        if (!(a.spec_ == b.spec_))
            return false;
        if (!a.spec_.is_finite())
            return a.q_ == b.q_;
        return a.c_ == b.c_;
    }

    /// Canonical total order: coefficient vectors compared from the top coefficient down; rationals by value.
    friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b)
    {
        if (a.spec_.id() != b.spec_.id())
            return a.spec_.id() <=> b.spec_.id();
        if (!a.spec_.is_finite()) {
            if (a.q_ < b.q_)
                return std::strong_ordering::less;
            if (b.q_ < a.q_)
                return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        }
        for (std::size_t i = a.c_.size(); i-- > 0;) {
            if (a.c_[i] != b.c_[i])
                return a.c_[i] <=> b.c_[i];
        }
        return std::strong_ordering::equal;
    }

    std::size_t hash() const
    {
        if (!spec_.is_finite())
            return std::hash<std::string>{}(q_.str());
        std::uint64_t h = spec_.id();
        for (auto v : c_)
            h = nt::mix64(h ^ v);
        return static_cast<std::size_t>(h);
    }

private:
    void check(const FieldElement& o) const
    {
        if (!(spec_ == o.spec_))
            throw Error(ErrorCode::incompatible_fields, "arithmetic between elements of different fields");
    }

    static Coeffs ext_mul(const detail::FieldData& F, const Coeffs& a, const Coeffs& b)
    {
        const std::size_t n = F.degree;
        const auto p = F.p;
        boost::container::small_vector<std::uint64_t, 16> t(2 * n - 1, 0);
        if (p == 2) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!a[i])
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    t[i + j] ^= b[j];
            }
            for (std::size_t k = 2 * n - 1; k-- > n;) {
                if (!t[k])
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    t[k - n + j] ^= F.modulus[j];
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                if (!a[i])
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    t[i + j] = (t[i + j] + nt::mul_mod(a[i], b[j], p)) % p;
            }
            for (std::size_t k = 2 * n - 1; k-- > n;) {
                const auto c = t[k];
                if (!c)
                    continue;
                const auto neg = p - c;
                for (std::size_t j = 0; j < n; ++j)
                    t[k - n + j] = (t[k - n + j] + nt::mul_mod(neg, F.modulus[j], p)) % p;
            }
        }
        return Coeffs(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n));
    }

    FieldSpec spec_;
    Coeffs c_;
    Rational q_;
};

struct FieldElementHash {
    std::size_t operator()(const FieldElement& e) const { return e.hash(); }
};

inline FieldElement FieldSpec::zero() const { return from_int(0); }
inline FieldElement FieldSpec::one() const { return from_int(1); }

inline FieldElement FieldSpec::from_int(const BigInt& v) const
{
    if (!is_finite())
        return FieldElement(*this, Rational(v));
    BigInt r = v % BigInt(d_->p);
    if (r < 0)
        r += d_->p;
    detail::Coeffs c(d_->degree, 0);
    c[0] = r.convert_to<std::uint64_t>();
    return FieldElement(*this, std::move(c));
}

inline FieldElement FieldSpec::from_rational(const Rational& v) const
{
    if (!is_finite())
        return FieldElement(*this, v);
    auto den = from_int(boost::multiprecision::denominator(v));
    if (den.is_zero())
        throw Error(ErrorCode::divide_by_zero, "denominator divisible by the characteristic");
    return from_int(boost::multiprecision::numerator(v)) / den;
}

inline FieldElement FieldSpec::from_coeffs(std::span<const std::uint64_t> c) const
{
    if (!is_finite())
        throw Error(ErrorCode::unsupported, "coefficient vectors are for finite fields");
    if (c.size() > d_->degree)
        throw Error(ErrorCode::invalid_params, "coefficient vector longer than extension degree");
    detail::Coeffs v(d_->degree, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        v[i] = c[i] % d_->p;
    return FieldElement(*this, std::move(v));
}

inline FieldElement FieldSpec::generator() const
{
    if (!is_finite())
        throw Error(ErrorCode::unsupported, "Q has no extension generator");
    if (d_->kind == FieldKind::prime)
        return one();
    detail::Coeffs v(d_->degree, 0);
    v[1] = 1;
    return FieldElement(*this, std::move(v));
}

inline FieldElement FieldSpec::element_at(std::uint64_t index) const
{
    if (!is_finite())
        throw Error(ErrorCode::unsupported, "enumeration of Q");
    detail::Coeffs v(d_->degree, 0);
    for (std::size_t i = 0; i < d_->degree && index; ++i) {
        v[i] = index % d_->p;
        index /= d_->p;
    }
    return FieldElement(*this, std::move(v));
}

inline std::uint64_t FieldSpec::index_of(const FieldElement& e) const
{
    std::uint64_t idx = 0;
    const auto& c = e.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        idx = idx * d_->p + c[i];
    return idx;
}

/// Seeded deterministic search for a monic irreducible modulus of degree n over F_p.
/// Degree 1 yields the prime field itself.
inline FieldSpec make_extension(std::uint64_t p, std::size_t n, std::uint64_t seed = 0)
{
    if (!nt::is_prime(p))
        throw Error(ErrorCode::invalid_field, "characteristic " + std::to_string(p) + " is not prime");
    if (n == 0)
        throw Error(ErrorCode::invalid_field, "extension degree must be positive");
    if (n == 1)
        return FieldSpec::prime(p);
    for (std::uint64_t counter = 0;; ++counter) {
        std::vector<std::uint64_t> m(n + 1, 0);
        m[n] = 1;
        const std::uint64_t base = nt::mix64(seed ^ nt::mix64(counter + 0x51ed270b27a3f3d1ull));
        for (std::size_t i = 0; i < n; ++i)
            m[i] = nt::mix64(base + i) % p;
        if (m[0] == 0)
            continue;
        if (detail::zp::is_irreducible(m, p))
            return FieldSpec::with_modulus(p, std::move(m));
    }
}

/// e^{p^k}.
inline FieldElement frobenius(const FieldElement& e, std::size_t k)
{
    if (!e.spec().is_finite()) {
        if (k == 0)
            return e;
        throw Error(ErrorCode::unsupported, "Frobenius over Q");
    }
    const auto& F = e.spec();
    k %= F.degree();
    FieldElement r = e;
    const BigInt p = F.characteristic();
    for (std::size_t i = 0; i < k; ++i)
        r = r.pow(p);
    return r;
}

/// Degree of F_p(e) over F_p: least d with e^{p^d} = e.
inline std::size_t element_degree(const FieldElement& e)
{
    if (!e.spec().is_finite())
        throw Error(ErrorCode::unsupported, "element degree over Q");
    const auto n = e.spec().degree();
    if (e.in_prime_field())
        return 1;
    for (auto d : nt::divisors(n)) {
        if (d == 1)
            continue;
        if (frobenius(e, d) == e)
            return d;
    }
    return n;
}

} // namespace ccomp
