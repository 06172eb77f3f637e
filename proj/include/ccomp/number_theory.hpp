#pragma once

/**
 * @file number_theory.hpp
 * @brief Word-size integer utilities: modular powers, primality, factoring,
 * multiplicative orders, divisor lists and a counter-based hash.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace ccomp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace nt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 pow_mod(u64 base, u64 exp, u64 m)
{
    if (m == 1)
        return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0)
            return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        u64 x = pow_mod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_rho(u64 n)
{
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n)
            return d;
    }
}

inline void factor_into(u64 n, std::map<u64, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Prime factorization as (prime, exponent) in increasing prime order.
inline std::map<u64, unsigned> factorize(u64 n)
{
    std::map<u64, unsigned> out;
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1)
        detail::factor_into(n, out);
    return out;
}

inline std::vector<u64> prime_factors(u64 n)
{
    std::vector<u64> ps;
    for (auto [p, e] : factorize(n))
        ps.push_back(p);
    return ps;
}

/// All positive divisors of n in increasing order.
inline std::vector<u64> divisors(u64 n)
{
    std::vector<u64> ds{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = ds.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i)
                ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline u64 euler_phi(u64 n)
{
    u64 r = n;
    for (auto [p, e] : factorize(n))
        r = r / p * (p - 1);
    return r;
}

/// Least d >= 1 with a^d = 1 mod n. Requires gcd(a, n) = 1.
inline u64 multiplicative_order(u64 a, u64 n)
{
    if (n == 0 || std::gcd(a % n, n) != 1)
        throw Error(ErrorCode::invalid_params, "multiplicative order needs gcd(a, n) = 1");
    if (n == 1)
        return 1;
    u64 order = euler_phi(n);
    for (auto [p, e] : factorize(order)) {
        for (unsigned k = 0; k < e; ++k) {
            if (pow_mod(a, order / p, n) == 1)
                order /= p;
            else
                break;
        }
    }
    return order;
}

inline u64 lcm(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

/// splitmix64 finalizer; used for counter-based deterministic streams.
inline u64 mix64(u64 z)
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline BigInt big_pow(u64 base, u64 exp)
{
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1)
            r *= b;
        exp >>= 1;
        if (exp)
            b *= b;
    }
    return r;
}

} // namespace nt
} // namespace ccomp
