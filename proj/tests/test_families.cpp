#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ccomp;
using namespace testutil;

namespace {

void expect_composite_of(const Polynomial& h, const Polynomial& f1, const Polynomial& f2)
{
    EXPECT_TRUE(extract_cofactor(h, f1).has_value()) << to_string(h) << " over " << to_string(f1);
    EXPECT_TRUE(extract_cofactor(h, f2).has_value()) << to_string(h) << " over " << to_string(f2);
}

/// Searching exactly at the claimed degree finds it, and nothing is found below.
void expect_least_degree(const FamilyInstance& fi)
{
    const auto d = fi.expected_min_degree.value().convert_to<std::size_t>();
    const auto hit = search_lin(fi.f1, fi.f2, d);
    ASSERT_EQ(hit.status, SearchStatus::found) << fi.params;
    EXPECT_EQ(static_cast<std::size_t>(hit.certificate->h.degree()), d) << fi.params;
    if (fi.expected_h)
        EXPECT_EQ(hit.certificate->h, *fi.expected_h) << fi.params;
    const std::size_t lower = std::lcm(fi.f1.degree(), fi.f2.degree());
    if (d > lower)
        EXPECT_EQ(search_lin(fi.f1, fi.f2, d - 1).status, SearchStatus::none_below) << fi.params;
}

} // namespace

TEST(Dickson, RecurrenceMatchesClosedForm)
{
    std::mt19937_64 rng(5);
    for (const FieldSpec& F : {FieldSpec::prime(2), FieldSpec::prime(3), make_extension(5, 2), FieldSpec::rationals()}) {
        for (std::uint64_t n = 0; n <= 14; ++n) {
            const auto a = F.is_finite() ? random_element(F, rng) : F.from_int(static_cast<long long>(n) - 3);
            EXPECT_EQ(dickson(n, a), dickson_closed_form(n, a)) << n;
        }
    }
    const FieldSpec Q = FieldSpec::rationals();
    EXPECT_EQ(to_string(dickson(3, Q.one())), "x^3 - 3*x");
    EXPECT_EQ(dickson(0, Q.one()), Polynomial::constant(Q.from_int(2)));
}

TEST(Dickson, FunctionalEquation)
{
    std::mt19937_64 rng(6);
    const FieldSpec F = make_extension(7, 3);
    for (int i = 0; i < 100; ++i) {
        const auto alpha = random_element(F, rng);
        auto y = random_element(F, rng);
        if (y.is_zero())
            y = F.one();
        const std::uint64_t n = 1 + rng() % 12;
        const auto z = alpha / y;
        EXPECT_EQ(eval(dickson(n, alpha), y + z), y.pow(n) + z.pow(n));
    }
}

TEST(Dickson, CompositionLaw)
{
    std::mt19937_64 rng(7);
    for (const FieldSpec& F : {FieldSpec::prime(5), make_extension(3, 2), FieldSpec::rationals()}) {
        for (std::uint64_t m = 1; m <= 4; ++m) {
            for (std::uint64_t n = 1; n <= 4; ++n) {
                const auto a = F.is_finite() ? random_element(F, rng) : F.from_int(2);
                EXPECT_EQ(compose(dickson(m, a.pow(n)), dickson(n, a)), dickson(m * n, a));
            }
        }
    }
}

TEST(CyclicFamilies, AdditiveExpectedComposite)
{
    const auto fi = additive_family(3, 2, 1);
    EXPECT_EQ(fi.order, 2u);
    EXPECT_EQ(fi.expected_min_degree.str(), "3*2^2");
    ASSERT_TRUE(fi.expected_h.has_value());
    EXPECT_EQ(*fi.expected_h, P("(x^4 + x)^3", FieldSpec::prime(2)));
    expect_composite_of(*fi.expected_h, fi.f1, fi.f2);
    expect_least_degree(fi);
    for (auto [n, p, r] : std::vector<std::array<std::uint64_t, 3>>{{5, 2, 1}, {4, 3, 1}, {2, 5, 1}, {7, 2, 1}}) {
        const auto g = additive_family(n, p, r);
        ASSERT_TRUE(g.expected_h.has_value());
        expect_composite_of(*g.expected_h, g.f1, g.f2);
        expect_least_degree(g);
    }
}

TEST(CyclicFamilies, ShiftedExpectedComposite)
{
    for (auto [n, m, p] : std::vector<std::array<std::uint64_t, 3>>{{2, 3, 7}, {3, 2, 13}, {2, 3, 5}, {3, 4, 13}}) {
        const auto fi = shifted_family(n, m, p);
        ASSERT_TRUE(fi.expected_h.has_value());
        expect_composite_of(*fi.expected_h, fi.f1, fi.f2);
        expect_least_degree(fi);
    }
}

TEST(CyclicFamilies, LargeDegreesBySymbolicFormula)
{
    const auto a = shifted_family(11, 13, 2);
    EXPECT_EQ(a.order, 60u);
    EXPECT_EQ(a.expected_min_degree.str(), "143*2^60");
    EXPECT_FALSE(a.expected_h.has_value());
    const auto b = shifted_family(1447, 1451, 2);
    EXPECT_EQ(b.order, 1048350u);
    EXPECT_THROW(b.expected_min_degree.value(), Error);
    EXPECT_THROW(additive_family(4, 2, 1), Error);
    EXPECT_THROW(shifted_family(2, 3, 4), Error);
}

TEST(Deg2, BothConstructionsGiveTheLeastComposite)
{
    std::mt19937_64 rng(9);
    for (const FieldSpec& F : {FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5), FieldSpec::prime(7),
                               make_extension(2, 2), make_extension(3, 2)}) {
        for (int i = 0; i < 6; ++i) {
            const auto a = random_element(F, rng), b = random_element(F, rng);
            const auto fi = deg2_pair(a, b);
            const auto orbit = deg2_orbit_composite(fi.f1, fi.f2);
            ASSERT_TRUE(fi.expected_h.has_value());
            expect_composite_of(orbit, fi.f1, fi.f2);
            expect_composite_of(*fi.expected_h, fi.f1, fi.f2);
            const int want = a == b ? 2 : 2 * static_cast<int>(F.characteristic());
            EXPECT_EQ(fi.expected_h->degree(), want);
            EXPECT_EQ(orbit, *fi.expected_h);
            expect_least_degree(fi);
        }
    }
    // general quadratics, not only the normal form
    const FieldSpec F5 = FieldSpec::prime(5);
    const auto f1 = P("2*x^2 + x + 3", F5), f2 = P("3*x^2 + 4", F5);
    const auto h = deg2_explicit_composite(f1, f2);
    expect_composite_of(h, f1, f2);
    EXPECT_EQ(h, deg2_orbit_composite(f1, f2));
    EXPECT_THROW(deg2_pair(FieldSpec::rationals().one(), FieldSpec::rationals().zero()), Error);
}

TEST(TameFamilies, CyclicAndDickson)
{
    const FieldSpec F5 = FieldSpec::prime(5), F7 = FieldSpec::prime(7);
    const auto c = tame_cyclic(P("x + 1", F5), P("2*x", F5), P("x^2 + x", F5), P("x + 2", F5), 1, 2);
    EXPECT_EQ(c.expected_min_degree.str(), "12");
    expect_composite_of(*c.expected_h, c.f1, c.f2);
    expect_least_degree(c);

    const auto d = tame_dickson(P("3*x + 1", F7), P("x + 5", F7), P("x^2 + 2*x", F7), F7.from_int(3), 2, 3);
    expect_composite_of(*d.expected_h, d.f1, d.f2);
    expect_least_degree(d);

    const FieldSpec F3 = FieldSpec::prime(3);
    EXPECT_THROW(tame_cyclic(P("x", F3), P("x", F3), P("x", F3), P("1", F3), 1, 3), Error);
    EXPECT_THROW(tame_dickson(P("x", F3), P("x", F3), P("x", F3), F3.one(), 3, 2), Error);
    EXPECT_THROW(tame_cyclic(P("x", F5), P("x", F5), P("x", F5), P("1", F5), 2, 4), Error);
}

TEST(RightComponents, RecoverSharedInnerPolynomial)
{
    std::mt19937_64 rng(10);
    const FieldSpec F = FieldSpec::prime(5);
    for (int i = 0; i < 30; ++i) {
        const auto r = normalize(random_poly(F, rng, 2));
        const auto g1 = random_poly(F, rng, 2), g2 = random_poly(F, rng, 3);
        const auto f1 = compose(g1, r), f2 = compose(g2, r);
        const auto t = tame_right_component(f1, 2);
        ASSERT_TRUE(t.has_value());
        EXPECT_EQ(t->second, r);
        EXPECT_EQ(compose(t->first, t->second), f1);
        const auto c = common_right_component(f1, f2);
        ASSERT_TRUE(c.has_value());
        EXPECT_EQ(*c, r);
    }
    const auto u = P("x^2 + x", F), v = P("x^2 + 2*x", F);
    EXPECT_FALSE(common_right_component(u, v).has_value());
    EXPECT_EQ(*common_right_component(P("x^2", F), P("x^3 + 1", F)), Polynomial::x(F));
    EXPECT_FALSE(tame_right_component(P("x^4 + x", F), 2).has_value());
}
