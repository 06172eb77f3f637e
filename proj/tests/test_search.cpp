#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ccomp;
using namespace testutil;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

} // namespace

TEST(SearchLin, ExampleOverF3)
{
    const auto f1 = P("x^2", F3), f2 = P("x^3+x^2+x", F3);
    const auto out = search_lin(f1, f2, 18);
    ASSERT_EQ(out.status, SearchStatus::found);
    const auto& c = *out.certificate;
    EXPECT_EQ(c.h, P("x^18 - x^14 - x^6 + x^2", F3));
    EXPECT_EQ(compose(c.g1, f1), c.h);
    EXPECT_EQ(compose(c.g2, f2), c.h);
    EXPECT_TRUE(verify_certificate(c).ok);
    EXPECT_EQ(search_lin(f1, f2, 17).status, SearchStatus::none_below);
}

TEST(FiberIterate, ExampleTraceOverF3)
{
    const auto out = fiber_iterate(P("x^2", F3), P("x^3+x^2+x", F3), 18);
    ASSERT_EQ(out.status, SearchStatus::found);
    const std::vector<Polynomial> want{P("x^2", F3), P("x^6-x^5-x^3+x^2", F3), P("x^10-x^8-x^4+x^2", F3),
                                       P("x^18-x^14-x^6+x^2", F3)};
    EXPECT_EQ(out.trace, want);
    EXPECT_EQ(minimal_poly_mod(P("x^3+x^2+x", F3), P("x^2", F3)), P("x^2", F3));
}

TEST(FiberIterate, DoublingTraceWhenNoComposite)
{
    const auto out = fiber_iterate(P("x^2-x", F2), P("x^3-x^2", F2), 64);
    EXPECT_EQ(out.status, SearchStatus::cap_exceeded);
    std::vector<int> degs;
    for (const auto& r : out.trace)
        degs.push_back(r.degree());
    EXPECT_EQ(degs, (std::vector<int>{2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64}));
    for (std::size_t j = 3; j < out.trace.size(); j += 2)
        EXPECT_EQ(out.trace[j].degree(), 2 * out.trace[j - 2].degree());
}

TEST(SearchLin, AgreesWithBruteForceOverF2AndF3)
{
    std::mt19937_64 rng(21);
    int found = 0, none = 0;
    for (std::uint64_t p : {2, 3}) {
        const FieldSpec F = FieldSpec::prime(p);
        for (int i = 0; i < 60; ++i) {
            const auto a = oracle::random_poly(rng, 2 + rng() % 2, p);
            const auto b = oracle::random_poly(rng, 2 + rng() % 2, p);
            const std::size_t bound = p == 2 ? 24 : 18;
            const auto want = oracle::least_composite_degree(a, b, p, bound);
            const auto got = search_lin(to_lib(a, F), to_lib(b, F), bound);
            if (want) {
                ++found;
                ASSERT_EQ(got.status, SearchStatus::found) << to_string(to_lib(a, F)) << " / " << to_string(to_lib(b, F));
                EXPECT_EQ(static_cast<std::size_t>(got.certificate->h.degree()), *want);
                EXPECT_TRUE(verify_certificate(*got.certificate).ok);
                const auto fib = fiber_iterate(to_lib(a, F), to_lib(b, F), bound);
                ASSERT_EQ(fib.status, SearchStatus::found);
                EXPECT_EQ(fib.certificate->h, got.certificate->h);
            } else {
                ++none;
                EXPECT_EQ(got.status, SearchStatus::none_below);
                EXPECT_NE(fiber_iterate(to_lib(a, F), to_lib(b, F), bound).status, SearchStatus::found);
            }
        }
    }
    EXPECT_GT(found, 0);
    EXPECT_GT(none, 0);
}

TEST(SearchLin, TrivialAndRationalCases)
{
    const auto f = P("x^3 + x + 1", F3);
    const auto same = search_lin(f, f, 3);
    ASSERT_EQ(same.status, SearchStatus::found);
    EXPECT_EQ(same.certificate->h.degree(), 3);
    const FieldSpec Q = FieldSpec::rationals();
    const auto q = search_lin(P("x^3 + x", Q), P("x^2", Q), 6);
    ASSERT_EQ(q.status, SearchStatus::found);
    EXPECT_EQ(q.certificate->h.degree(), 6);
    EXPECT_EQ(search_lin(P("x^2 + x", Q), P("x^3", Q), 30).status, SearchStatus::none_below);
    EXPECT_EQ(default_bound(P("x^2", F3), P("x^3", F3)), 4u * 6 * 9);
    EXPECT_EQ(default_bound(P("x^2", Q), P("x^3", Q)), 6u);
}

TEST(SearchLin, ErrorCodes)
{
    auto code = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::io_error;
    };
    EXPECT_EQ(code([] { search_lin(P("x^3", F2), P("x^2", F2), 2); }), ErrorCode::invalid_bound);
    EXPECT_EQ(code([] { fiber_iterate(P("x^3", F2), P("x^2", F2), 2); }), ErrorCode::invalid_cap);
    EXPECT_EQ(code([] { search_lin(P("x^3", F2), P("x^2", F3), 20); }), ErrorCode::incompatible_fields);
    EXPECT_EQ(code([] { search_lin(P("1", F2), P("x^2", F2), 20); }), ErrorCode::invalid_params);
}

TEST(Certificate, VerifyRejectsTampering)
{
    auto c = *search_lin(P("x^2", F3), P("x^3+x^2+x", F3), 18).certificate;
    auto bad = c;
    bad.g1 = bad.g1 + Polynomial::x(F3);
    EXPECT_EQ(verify_certificate(bad).reason, "G1ComposeMismatch");
    bad = c;
    bad.g2 = bad.g2 + Polynomial::constant(F3.one());
    EXPECT_EQ(verify_certificate(bad).reason, "G2ComposeMismatch");
    // a valid composite of twice the minimal degree claimed minimal
    bad = c;
    bad.h = c.h * c.h;
    bad.g1 = c.g1 * c.g1;
    bad.g2 = c.g2 * c.g2;
    EXPECT_EQ(verify_certificate(bad).reason, "NotMinimal");
    bad.minimal = false;
    EXPECT_TRUE(verify_certificate(bad).ok);
    bad = c;
    bad.h = c.h + Polynomial::constant(F3.one());
    bad.g1 = c.g1 + Polynomial::constant(F3.one());
    bad.g2 = c.g2 + Polynomial::constant(F3.one());
    EXPECT_EQ(verify_certificate(bad).reason, "NotNormalized");
}

TEST(ExtractCofactor, RecoversOuterPolynomial)
{
    std::mt19937_64 rng(3);
    for (const FieldSpec& F : {F3, make_extension(2, 3), FieldSpec::rationals()}) {
        for (int i = 0; i < 40; ++i) {
            const auto g = random_poly(F, rng, 1 + static_cast<int>(rng() % 4));
            const auto f = random_poly(F, rng, 1 + static_cast<int>(rng() % 3));
            const auto h = compose(g, f);
            const auto got = extract_cofactor(h, f);
            ASSERT_TRUE(got.has_value());
            EXPECT_EQ(*got, g);
        }
    }
    EXPECT_FALSE(extract_cofactor(P("x^4 + x", F3), P("x^2", F3)).has_value());
}

TEST(Descend, ExtensionResultRestrictsToBase)
{
    const auto r = descend_check(P("x^2", F3), P("x^3+x^2+x", F3), make_extension(3, 2), 18);
    EXPECT_TRUE(r.ok);
}

TEST(NormalizationInvariance, DegreeOneLeftFactorsDoNotChangeTheMinimum)
{
    std::mt19937_64 rng(17);
    const FieldSpec F = FieldSpec::prime(5);
    for (int i = 0; i < 20; ++i) {
        const auto f1 = random_poly(F, rng, 2), f2 = random_poly(F, rng, 3);
        const auto l = random_poly(F, rng, 1);
        const auto a = search_lin(f1, f2, 60), b = search_lin(compose(l, f1), f2, 60);
        ASSERT_EQ(a.status, b.status);
        if (a.status == SearchStatus::found)
            EXPECT_EQ(a.certificate->h, b.certificate->h);
    }
}
