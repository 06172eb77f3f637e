#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ccomp;
using namespace testutil;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);
const FieldSpec Q = FieldSpec::rationals();

std::vector<ClosurePoint> points_of(const Polynomial& f1, const Polynomial& f2, const std::vector<FieldElement>& v)
{
    std::vector<ClosurePoint> out;
    for (const auto& a : v)
        out.push_back({a, multiplicity(f1 - Polynomial::constant(eval(embed(f1, a.spec()), a)), a),
                       multiplicity(f2 - Polynomial::constant(eval(embed(f2, a.spec()), a)), a), std::nullopt});
    return out;
}

/// Closed under both fibers, checked by scanning the whole ambient field.
void expect_closed_by_scan(const Polynomial& f1, const Polynomial& f2, const CompatibleSet& A)
{
    const FieldSpec& K = A.ambient;
    ASSERT_LE(K.small_order(), 1u << 16);
    std::set<std::uint64_t> in;
    for (const auto& p : A.points)
        in.insert(K.index_of(p.value));
    const auto g1 = embed(f1, K), g2 = embed(f2, K);
    for (const auto& p : A.points) {
        const auto v1 = eval(g1, p.value), v2 = eval(g2, p.value);
        for (std::uint64_t j = 0; j < K.small_order(); ++j) {
            const auto b = K.element_at(j);
            if (eval(g1, b) == v1 || eval(g2, b) == v2)
                EXPECT_TRUE(in.count(j)) << "missing " << to_string(b);
        }
    }
}

} // namespace

TEST(Fiber, MatchesScan)
{
    const auto f = P("x^4 + x^3 + x", F2);
    for (std::uint64_t v = 0; v < 2; ++v) {
        auto [roots, amb] = fiber(f, F2.from_int(v), F2, 20);
        std::size_t total = 0;
        for (const auto& r : roots) {
            EXPECT_EQ(eval(embed(f, amb), r.root), amb.from_int(v));
            total += r.multiplicity;
        }
        EXPECT_EQ(total, 4u); // the ambient splits the fiber completely
        std::size_t count = 0;
        for (std::uint64_t j = 0; j < amb.small_order(); ++j)
            count += eval(embed(f, amb), amb.element_at(j)) == amb.from_int(v);
        EXPECT_EQ(count, roots.size());
    }
    EXPECT_THROW(fiber(P("x^3", Q), Q.one(), Q, 10), Error);
    EXPECT_EQ(fiber(P("x^2 + 1", Q), Q.zero(), Q, 10).first.at(0).multiplicity, 2u);
}

TEST(Closure, ExampleIsClosedAndLabelled)
{
    const auto f1 = P("x^2", F3), f2 = P("x^3+x^2+x", F3);
    const auto res = compatible_closure(f1, f2, F3.zero());
    ASSERT_TRUE(res.set.closed);
    expect_closed_by_scan(f1, f2, res.set);
    const auto cons = consistency_solve(res.set.points, f1, f2);
    ASSERT_TRUE(cons.consistent);
    const auto built = build_composite_from_set(res.set, cons.labels, f1, f2);
    EXPECT_TRUE(verify_certificate(built.certificate).ok);
    EXPECT_EQ(built.label_sum, 18u);
    EXPECT_EQ(built.certificate.h.degree(), 18);
}

TEST(Consistency, InconsistentPairOverF2AndQ)
{
    for (const FieldSpec& K : {F2, Q}) {
        const auto f1 = P("x^2 - x", K), f2 = P("x^3 - x^2", K);
        const auto pts = points_of(f1, f2, {K.zero(), K.one()});
        const auto cons = consistency_solve(pts, f1, f2);
        ASSERT_FALSE(cons.consistent);
        ASSERT_TRUE(cons.certificate.has_value());
        EXPECT_EQ(cons.certificate->product, Rational(1, 2));
    }
}

TEST(Consistency, InconsistentSetInF9)
{
    const FieldSpec F9 = parse_field("GF(3^2; m=t^2+1)");
    const auto i = F9.generator();
    const auto f1 = P("x^3 + x + 1", F9), f2 = P("x^4 + x + 1", F9);
    const auto pts = points_of(f1, f2, {F9.zero(), -F9.one(), i, i - F9.one()});
    const auto cons = consistency_solve(pts, f1, f2);
    ASSERT_FALSE(cons.consistent);
    const Rational prod = cons.certificate->product;
    EXPECT_TRUE(prod == 3 || prod == Rational(1, 3));
    EXPECT_EQ(multiplicity_product(cons.certificate->cycle), prod);
}

TEST(Consistency, LabelsAreMinimalIntegerSolutions)
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const FieldSpec F = t % 2 ? F2 : F3;
        const auto f1 = random_poly(F, rng, 2 + static_cast<int>(rng() % 2));
        const auto f2 = random_poly(F, rng, 2 + static_cast<int>(rng() % 2));
        const auto s = search_lin(f1, f2, 36);
        if (s.status != SearchStatus::found)
            continue;
        const auto res = compatible_closure(f1, f2, F.element_at(rng() % F.characteristic()));
        if (!res.set.closed)
            continue;
        const auto cons = consistency_solve(res.set.points, f1, f2);
        ASSERT_TRUE(cons.consistent);
        // l(b)/m_i(b) is constant along each fiber and integral
        for (std::size_t a = 0; a < res.set.points.size(); ++a) {
            for (std::size_t b = 0; b < res.set.points.size(); ++b) {
                const auto& pa = res.set.points[a];
                const auto& pb = res.set.points[b];
                const auto amb = pa.value.spec();
                if (eval(embed(f1, amb), pa.value) == eval(embed(f1, amb), pb.value)) {
                    EXPECT_EQ(Rational(cons.labels[a], pa.m1), Rational(cons.labels[b], pb.m1));
                }
                if (eval(embed(f2, amb), pa.value) == eval(embed(f2, amb), pb.value)) {
                    EXPECT_EQ(Rational(cons.labels[a], pa.m2), Rational(cons.labels[b], pb.m2));
                }
            }
            EXPECT_EQ(cons.labels[a] % res.set.points[a].m1, 0u);
            EXPECT_EQ(cons.labels[a] % res.set.points[a].m2, 0u);
        }
        const auto built = build_composite_from_set(res.set, cons.labels, f1, f2);
        EXPECT_TRUE(verify_certificate(built.certificate).ok);
        EXPECT_LE(res.set.points.size(), static_cast<std::size_t>(s.certificate->h.degree()));
    }
}

TEST(BuildComposite, RejectsBadLabels)
{
    const auto f1 = P("x^2", F3), f2 = P("x^3+x^2+x", F3);
    const auto res = compatible_closure(f1, f2, F3.zero());
    auto labels = consistency_solve(res.set.points, f1, f2).labels;
    labels[0] += 1;
    try {
        build_composite_from_set(res.set, labels, f1, f2);
        ADD_FAILURE() << "accepted inconsistent labels";
    } catch (const Error& e) {
        EXPECT_TRUE(e.code() == ErrorCode::not_consistent || e.code() == ErrorCode::not_compatible);
    }
}

TEST(Analyze, Verdicts)
{
    const auto ex = analyze(P("x^2", F3), P("x^3+x^2+x", F3), {F3.zero()});
    EXPECT_EQ(ex.verdict, Verdict::exists);
    ASSERT_TRUE(ex.certificate.has_value());
    EXPECT_TRUE(verify_certificate(*ex.certificate).ok);

    const auto no = analyze(P("x^2 - x", F2), P("x^3 - x^2", F2), {F2.zero()});
    EXPECT_EQ(no.verdict, Verdict::not_exists);
    ASSERT_TRUE(no.refutation.has_value());
    const auto cert = from_inconsistency(*no.refutation, F2);
    EXPECT_TRUE(verify_refutation(P("x^2 - x", F2), P("x^3 - x^2", F2), cert).ok);

    const auto noq = analyze(P("x^2 - x", Q), P("x^3 - x^2", Q), {Q.zero()});
    EXPECT_EQ(noq.verdict, Verdict::not_exists);
}

TEST(Analyze, InconclusiveOverQReportsTranslationOrbit)
{
    ClosureCaps caps;
    caps.max_size = 40;
    const auto rep = analyze(P("x^2", Q), P("(x-1)^2", Q), {Q.from_int(3)}, caps);
    EXPECT_EQ(rep.verdict, Verdict::inconclusive);
    ASSERT_EQ(rep.seeds.size(), 1u);
    EXPECT_EQ(rep.seeds[0].closure.cap_fired, "max_size");
    ASSERT_FALSE(rep.seeds[0].closure.evidence.empty());
    EXPECT_NE(rep.seeds[0].closure.evidence[0].find("translation"), std::string::npos);
}

TEST(Closure, ExtensionCapReported)
{
    ClosureCaps caps;
    caps.max_ext = 2;
    const auto res = compatible_closure(P("x^5 + x^2 + 1", F2), P("x^3 + x + 1", F2), F2.one(), caps);
    EXPECT_FALSE(res.set.closed);
    EXPECT_EQ(res.cap_fired, "max_ext");
}
