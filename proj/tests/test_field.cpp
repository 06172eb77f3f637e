#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ccomp;
using namespace testutil;

namespace {

template <class F>
ErrorCode code_of(F&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no Error thrown";
    return ErrorCode::io_error;
}

} // namespace

TEST(NumberTheory, PrimalityMatchesTrialDivision)
{
    for (std::uint64_t n = 0; n < 20000; ++n)
        ASSERT_EQ(nt::is_prime(n), oracle::is_prime(n)) << n;
    EXPECT_TRUE(nt::is_prime(1000000007ULL));
    EXPECT_TRUE(nt::is_prime(18446744073709551557ULL));
    EXPECT_FALSE(nt::is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(NumberTheory, OrderPhiDivisors)
{
    for (std::uint64_t n = 2; n < 300; ++n) {
        std::uint64_t phi = 0;
        std::vector<std::uint64_t> divs;
        for (std::uint64_t a = 1; a <= n; ++a) {
            if (std::gcd(a, n) == 1)
                ++phi;
            if (n % a == 0)
                divs.push_back(a);
        }
        EXPECT_EQ(nt::euler_phi(n), phi);
        EXPECT_EQ(nt::divisors(n), divs);
        for (std::uint64_t a = 1; a < n; ++a) {
            if (std::gcd(a, n) == 1)
                ASSERT_EQ(nt::multiplicative_order(a, n), oracle::order_mod(a, n)) << a << " mod " << n;
        }
    }
    EXPECT_EQ(nt::multiplicative_order(2, 143), 60u);
    EXPECT_EQ(code_of([] { nt::multiplicative_order(2, 4); }), ErrorCode::invalid_params);
    std::uint64_t prod = 1;
    for (auto [p, e] : nt::factorize(2ULL * 2 * 3 * 1447 * 1451))
        for (unsigned i = 0; i < e; ++i)
            prod *= p;
    EXPECT_EQ(prod, 2ULL * 2 * 3 * 1447 * 1451);
}

TEST(PrimeField, AxiomsExhaustive)
{
    for (std::uint64_t p : {2, 3, 5, 7, 13}) {
        const FieldSpec F = FieldSpec::prime(p);
        for (std::uint64_t a = 0; a < p; ++a) {
            for (std::uint64_t b = 0; b < p; ++b) {
                const auto x = F.element_at(a), y = F.element_at(b);
                EXPECT_EQ(F.index_of(x + y), (a + b) % p);
                EXPECT_EQ(F.index_of(x * y), (a * b) % p);
                EXPECT_EQ(F.index_of(x - y), (a + p - b) % p);
                if (b)
                    EXPECT_EQ((x / y) * y, x);
            }
        }
    }
}

TEST(ExtensionField, MultiplicationMatchesOracle)
{
    struct Case {
        std::uint64_t p;
        std::vector<std::uint64_t> m;
    };
    for (const auto& c : std::vector<Case>{{2, {1, 1, 1}}, {2, {1, 1, 0, 1}}, {3, {1, 0, 1}}, {5, {2, 0, 1}}, {3, {1, 2, 0, 1}}}) {
        const FieldSpec F = FieldSpec::with_modulus(c.p, c.m);
        const oracle::ExtField O(c.p, c.m);
        for (std::uint64_t a = 0; a < O.q; ++a) {
            for (std::uint64_t b = 0; b < O.q; ++b) {
                const auto x = F.element_at(a), y = F.element_at(b);
                ASSERT_EQ(F.index_of(x * y), O.mul(a, b));
                ASSERT_EQ(F.index_of(x + y), O.add(a, b));
            }
            const auto x = F.element_at(a);
            if (a) {
                EXPECT_TRUE((x * x.inverse()).is_one());
                EXPECT_TRUE(x.pow(O.q - 1).is_one());
            }
            EXPECT_EQ(F.index_of(x.pow(std::uint64_t{5})), O.pow(a, 5));
        }
    }
}

TEST(ExtensionField, FieldAxiomsOnSamples)
{
    std::mt19937_64 rng(11);
    for (const FieldSpec& F : {make_extension(2, 8), make_extension(3, 5), make_extension(7, 3), make_extension(2, 61)}) {
        for (int i = 0; i < 200; ++i) {
            const auto a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
            ASSERT_EQ((a + b) * c, a * c + b * c);
            ASSERT_EQ(a * (b * c), (a * b) * c);
            ASSERT_EQ(a + b, b + a);
            ASSERT_EQ(a - a, F.zero());
            if (!b.is_zero())
                ASSERT_EQ(a / b * b, a);
            // Frobenius is additive and multiplicative
            ASSERT_EQ(frobenius(a + b, 1), frobenius(a, 1) + frobenius(b, 1));
            ASSERT_EQ(frobenius(a * b, 1), frobenius(a, 1) * frobenius(b, 1));
            ASSERT_EQ(frobenius(a, F.degree()), a);
        }
    }
}

TEST(ExtensionField, ElementDegreeMatchesFrobeniusOrbit)
{
    const FieldSpec F = make_extension(2, 12);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_element(F, rng);
        std::size_t k = 1;
        while (!(frobenius(a, k) == a))
            ++k;
        EXPECT_EQ(element_degree(a), k);
        EXPECT_EQ(F.degree() % k, 0u);
    }
    EXPECT_EQ(element_degree(F.one()), 1u);
}

TEST(ExtensionField, SeededModuliAreIrreducibleAndDeterministic)
{
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::size_t n = 2; n <= 6; ++n) {
            for (std::uint64_t seed : {0, 1, 99}) {
                const FieldSpec F = make_extension(p, n, seed);
                const oracle::Poly m(F.modulus().begin(), F.modulus().end());
                EXPECT_TRUE(oracle::irreducible(m, p)) << p << "^" << n;
                EXPECT_EQ(F, make_extension(p, n, seed));
            }
        }
    }
    EXPECT_EQ(code_of([] { FieldSpec::with_modulus(2, {1, 0, 1}); }), ErrorCode::invalid_field);
    EXPECT_EQ(code_of([] { FieldSpec::prime(9); }), ErrorCode::invalid_field);
}

TEST(ExtensionField, KnownIrreducibleModuli)
{
    // psi = x^14+x^10+x^9+x^8+x^7+x^6+x^4+x+1 and w^10+w^9+w^4+w^2+1
    const std::vector<std::uint64_t> psi{1, 1, 0, 0, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 1};
    EXPECT_NO_THROW(FieldSpec::with_modulus(2, psi));
    EXPECT_EQ(FieldSpec::with_modulus(2, psi).degree(), 14u);
    EXPECT_NO_THROW(FieldSpec::with_modulus(2, {1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1}));
}

TEST(FieldErrors, MixingAndDivision)
{
    const FieldSpec F2 = FieldSpec::prime(2), F3 = FieldSpec::prime(3);
    EXPECT_EQ(code_of([&] { (void)(F2.one() + F3.one()); }), ErrorCode::incompatible_fields);
    EXPECT_EQ(code_of([&] { (void)F3.zero().inverse(); }), ErrorCode::divide_by_zero);
    EXPECT_EQ(code_of([] { (void)FieldSpec::rationals().zero().inverse(); }), ErrorCode::divide_by_zero);
}

TEST(Rationals, Arithmetic)
{
    const FieldSpec Q = FieldSpec::rationals();
    const auto a = Q.from_rational(Rational(3, 4)), b = Q.from_int(-2);
    EXPECT_EQ(a * b, Q.from_rational(Rational(-3, 2)));
    EXPECT_EQ(a / b, Q.from_rational(Rational(-3, 8)));
    EXPECT_EQ(b.pow(std::uint64_t{5}), Q.from_int(-32));
    EXPECT_FALSE(Q.is_finite());
    EXPECT_EQ(Q.characteristic(), 0u);
}

TEST(Embedding, HomomorphismAndChains)
{
    const FieldSpec F4 = make_extension(2, 2), F16 = make_extension(2, 4), F256 = make_extension(2, 8);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_element(F4, rng), b = random_element(F4, rng);
        EXPECT_EQ(embed(a * b, F16), embed(a, F16) * embed(b, F16));
        EXPECT_EQ(embed(a + b, F256), embed(a, F256) + embed(b, F256));
        // F4 -> F16 -> F256 agrees with F4 -> F256
        EXPECT_EQ(embed(embed(a, F16), F256), embed(a, F256));
        EXPECT_EQ(restrict_to(embed(a, F256), F4), a);
    }
    const auto g = F256.generator();
    EXPECT_FALSE(restrict_to(g, F16).has_value());
    EXPECT_FALSE(embeds_into(make_extension(2, 3), F16));
    EXPECT_EQ(code_of([&] { embed(make_extension(2, 3).generator(), F16); }), ErrorCode::incompatible_fields);
}

TEST(Embedding, TwinModuliAgree)
{
    // two different moduli for F_9 embed consistently into F_{3^4}
    const FieldSpec A = FieldSpec::with_modulus(3, {1, 0, 1});
    const FieldSpec B = FieldSpec::with_modulus(3, {2, 1, 1});
    const FieldSpec big = make_extension(3, 4);
    ASSERT_TRUE(embeds_into(A, B));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_element(A, rng);
        EXPECT_EQ(embed(embed(a, B), big), embed(a, big));
    }
}
