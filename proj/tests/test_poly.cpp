#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ccomp;
using namespace testutil;

namespace {

ErrorCode parse_error(const std::string& text, const FieldSpec& F, std::size_t* pos = nullptr)
{
    try {
        parse_poly(text, F);
    } catch (const Error& e) {
        if (pos)
            *pos = e.position().value_or(999);
        return e.code();
    }
    ADD_FAILURE() << "parsed: " << text;
    return ErrorCode::io_error;
}

} // namespace

TEST(Polynomial, ArithmeticMatchesOracle)
{
    std::mt19937_64 rng(1);
    for (std::uint64_t p : {2, 3, 7}) {
        const FieldSpec F = FieldSpec::prime(p);
        for (int i = 0; i < 200; ++i) {
            const auto a = oracle::random_poly(rng, rng() % 7, p);
            const auto b = oracle::random_poly(rng, 1 + rng() % 4, p);
            const Polynomial A = to_lib(a, F), B = to_lib(b, F);
            ASSERT_EQ(from_lib(A * B), oracle::mul(a, b, p));
            ASSERT_EQ(from_lib(A + B), oracle::add(a, b, p));
            ASSERT_EQ(from_lib(compose(A, B)), oracle::compose(a, b, p));
            ASSERT_EQ(from_lib(A % B), oracle::rem(a, b, p));
            auto [q, r] = divrem(A, B);
            ASSERT_EQ(q * B + r, A);
            ASSERT_LT(r.degree(), B.degree());
            for (std::uint64_t x = 0; x < p; ++x)
                ASSERT_EQ(F.index_of(eval(A, F.from_int(x))), oracle::eval(a, x, p));
        }
    }
}

TEST(Polynomial, CompositionIsAssociativeOverExtensions)
{
    std::mt19937_64 rng(2);
    for (const FieldSpec& F : {make_extension(3, 2), make_extension(2, 5), FieldSpec::rationals()}) {
        for (int i = 0; i < 30; ++i) {
            const auto a = random_poly(F, rng, 2), b = random_poly(F, rng, 2), c = random_poly(F, rng, 3);
            ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
            const auto x = random_element(F, rng);
            ASSERT_EQ(eval(compose(a, b), x), eval(a, eval(b, x)));
        }
    }
}

TEST(Polynomial, DerivativeGcdNormalize)
{
    std::mt19937_64 rng(4);
    const FieldSpec F = make_extension(5, 2);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_poly(F, rng, 4), b = random_poly(F, rng, 3), c = random_poly(F, rng, 2);
        EXPECT_EQ(derivative(a * b), derivative(a) * b + a * derivative(b));
        const auto g = gcd_monic(a * c, b * c);
        EXPECT_TRUE((a * c % g).is_zero());
        EXPECT_TRUE((b * c % g).is_zero());
        EXPECT_TRUE((g % monic(c)).is_zero());
        const auto n = normalize(a);
        EXPECT_TRUE(n.is_monic());
        EXPECT_TRUE(n.constant_term().is_zero());
    }
    const FieldSpec F2 = FieldSpec::prime(2);
    EXPECT_TRUE(in_Kxp(P("x^4 + x^2 + 1", F2)));
    EXPECT_FALSE(in_Kxp(P("x^4 + x", F2)));
    EXPECT_FALSE(in_Kxp(P("x^2", FieldSpec::rationals())));
}

TEST(Polynomial, PrintParseRoundTrip)
{
    std::mt19937_64 rng(6);
    for (const FieldSpec& F :
         {FieldSpec::prime(2), FieldSpec::prime(7), make_extension(3, 2), make_extension(2, 4), FieldSpec::rationals()}) {
        for (int i = 0; i < 100; ++i) {
            const auto f = random_poly(F, rng, static_cast<int>(rng() % 8));
            const std::string s = to_string(f);
            ASSERT_EQ(parse_poly(s, F), f) << s;
        }
        EXPECT_EQ(parse_field(to_string(F)), F);
    }
}

TEST(Parser, Grammar)
{
    const FieldSpec F3 = FieldSpec::prime(3), Q = FieldSpec::rationals();
    EXPECT_EQ(P("(x+1)^2 - 2*x", F3), P("x^2 + 1", F3));
    EXPECT_EQ(P("x^3+x^2+x", F3), Polynomial::from_ints(F3, {0, 1, 1, 1}));
    EXPECT_EQ(P("-x^2 + 4", F3), P("2*x^2 + 1", F3));
    EXPECT_EQ(P("x/2 + 3/4", Q), Polynomial(Q, {Q.from_rational(Rational(3, 4)), Q.from_rational(Rational(1, 2))}));
    EXPECT_EQ(to_string(P("x^3 - 3*x", Q)), "x^3 - 3*x");
    const FieldSpec F9 = parse_field("GF(3^2; m=t^2+1)");
    const auto w = F9.generator();
    EXPECT_EQ(P("x - w", F9), Polynomial::x(F9) - Polynomial::constant(w));
    EXPECT_EQ(P("(w+1)*x", F9), Polynomial::x(F9) * (w + F9.one()));
    EXPECT_EQ(parse_field("GF(9; m=t^2+1)"), F9);
}

TEST(Parser, Errors)
{
    const FieldSpec F2 = FieldSpec::prime(2);
    std::size_t pos = 0;
    EXPECT_EQ(parse_error("2x", F2, &pos), ErrorCode::syntax_error);
    EXPECT_EQ(pos, 1u);
    EXPECT_EQ(parse_error("x x", F2), ErrorCode::syntax_error);
    EXPECT_EQ(parse_error("x^", F2), ErrorCode::syntax_error);
    EXPECT_EQ(parse_error("(x+1", F2), ErrorCode::syntax_error);
    EXPECT_EQ(parse_error("y+1", F2), ErrorCode::unknown_symbol);
    EXPECT_EQ(parse_error("w+1", F2), ErrorCode::unknown_symbol);
    EXPECT_EQ(parse_error("x/0", FieldSpec::prime(5)), ErrorCode::divide_by_zero);
    EXPECT_EQ(parse_error("1/x", FieldSpec::prime(5)), ErrorCode::syntax_error);
    auto field_error = [](const char* s) {
        try {
            parse_field(s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::io_error;
    };
    EXPECT_EQ(field_error("GF(6)"), ErrorCode::invalid_field);
    EXPECT_EQ(field_error("GF(2^3; m=t^3+t^2+t+1)"), ErrorCode::invalid_field);
    EXPECT_EQ(field_error("R"), ErrorCode::invalid_field);
}

TEST(Roots, MatchBruteForceScan)
{
    std::mt19937_64 rng(9);
    for (const FieldSpec& F : {FieldSpec::prime(5), make_extension(2, 4), make_extension(3, 3), make_extension(2, 11)}) {
        for (int i = 0; i < 20; ++i) {
            // plant some roots with multiplicity
            Polynomial f = Polynomial::constant(random_element(F, rng) + F.one());
            if (f.is_zero())
                f = Polynomial::constant(F.one());
            std::map<std::uint64_t, unsigned> planted;
            for (int k = 0; k < 3; ++k) {
                const auto r = random_element(F, rng);
                const unsigned m = 1 + rng() % 3;
                f = f * pow(Polynomial::x(F) - Polynomial::constant(r), m);
                planted[F.index_of(r)] += m;
            }
            f = f * random_poly(F, rng, 2);
            auto roots = roots_in(f, F, i);
            std::map<std::uint64_t, unsigned> got;
            for (const auto& r : roots) {
                EXPECT_TRUE(eval(f, r.root).is_zero());
                got[F.index_of(r.root)] = r.multiplicity;
            }
            for (auto [idx, m] : planted)
                EXPECT_GE(got[idx], m);
            if (F.small_order() <= 4096) {
                std::size_t zeros = 0;
                for (std::uint64_t j = 0; j < F.small_order(); ++j)
                    zeros += eval(f, F.element_at(j)).is_zero();
                EXPECT_EQ(zeros, roots.size());
            }
            for (const auto& r : roots) {
                // multiplicity by repeated division
                Polynomial g = f;
                unsigned m = 0;
                const Polynomial lin = Polynomial::x(F) - Polynomial::constant(r.root);
                while ((g % lin).is_zero()) {
                    g = divrem(g, lin).first;
                    ++m;
                }
                EXPECT_EQ(m, r.multiplicity);
            }
        }
    }
}

TEST(Roots, InExtensionAndOverQ)
{
    const FieldSpec F2 = FieldSpec::prime(2);
    const auto r = roots_in(P("x^2 + x + 1", F2), make_extension(2, 4));
    EXPECT_EQ(r.size(), 2u);
    EXPECT_TRUE(roots_in(P("x^2 + x + 1", F2), make_extension(2, 3)).empty());
    const FieldSpec Q = FieldSpec::rationals();
    const auto q = roots_in(P("(2*x - 1)^2*(x + 3)*(x^2 + 1)", Q), Q);
    ASSERT_EQ(q.size(), 2u);
    std::map<Rational, unsigned> m;
    for (const auto& x : q)
        m[x.root.rational()] = x.multiplicity;
    EXPECT_EQ(m[Rational(1, 2)], 2u);
    EXPECT_EQ(m[Rational(-3)], 1u);
}

TEST(Factor, DegreePatternAndRadical)
{
    const FieldSpec F2 = FieldSpec::prime(2);
    const auto psi = P("x^14+x^10+x^9+x^8+x^7+x^6+x^4+x+1", F2);
    EXPECT_EQ(factor_degrees(psi), (std::map<std::size_t, std::size_t>{{14, 1}}));
    EXPECT_EQ(factor_degrees(P("x^3 - 1", F2)), (std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}}));
    const FieldSpec F3 = FieldSpec::prime(3);
    EXPECT_EQ(radical(P("(x^2+1)^3*(x+1)^2", F3)), P("(x^2+1)*(x+1)", F3));
    // irreducible per oracle <=> factor_degrees == {n: 1}
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        auto a = oracle::random_poly(rng, 2 + rng() % 5, 3);
        a = oracle::scale(a, oracle::inv(a.back(), 3), 3);
        const auto fd = factor_degrees(to_lib(a, F3));
        const bool irr = fd.size() == 1 && fd.begin()->first == a.size() - 1 && fd.begin()->second == 1;
        std::size_t total = 0;
        for (auto [d, c] : fd)
            total += d * c;
        EXPECT_EQ(total, radical(to_lib(a, F3)).degree());
        EXPECT_EQ(irr, oracle::irreducible(a, 3));
    }
}
