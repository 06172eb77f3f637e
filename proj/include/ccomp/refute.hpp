#pragma once

/**
 * @file refute.hpp
 * @brief Nonexistence certificates from alternating fiber cycles.
 *
 * A fiber cycle c_1, ..., c_{2d} has f1(c_{2i-1}) = f1(c_{2i}) and
 * f2(c_{2i}) = f2(c_{2i+1}) (indices mod 2d). Two tests turn such a cycle into
 * a refutation: the multiplicity product must equal 1 whenever a common
 * composite exists, and, when [K(c_1):K] has a prime factor larger than both
 * degrees, the two derivative products must agree.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fiber.hpp"

namespace ccomp {

struct FiberCycle {
    std::vector<FieldElement> points;
    FieldSpec ambient;
};

enum class RefutationKind { multiplicity_cycle, derivative_cycle, inconsistent_set };

inline const char* refutation_kind_name(RefutationKind k)
{
    switch (k) {
    case RefutationKind::multiplicity_cycle: return "MultiplicityCycle";
    case RefutationKind::derivative_cycle: return "DerivativeCycle";
    case RefutationKind::inconsistent_set: return "InconsistentSet";
    }
    return "?";
}

struct RefutationCertificate {
    RefutationKind kind = RefutationKind::multiplicity_cycle;
    FieldSpec ambient;
    std::vector<FieldElement> points;
    Rational product = 1;                       ///< multiplicity product (cycle kinds)
    std::optional<FieldElement> lhs, rhs;       ///< derivative products (DerivativeCycle)
    std::size_t element_degree = 0;             ///< [K(c_1):K] (DerivativeCycle)
    std::uint64_t prime = 0;                    ///< prime factor of element_degree above max degree
};

struct CycleSearchOptions {
    std::size_t max_cycles = 10000;             ///< per (d, ambient)
    std::uint64_t max_steps = 50'000'000;       ///< DFS step budget per (d, ambient)
    std::uint64_t enumeration_limit = 1u << 16; ///< largest ambient field enumerated
};

namespace detail {

inline void validate_cycle(const Polynomial& f1, const Polynomial& f2, const std::vector<FieldElement>& c)
{
    if (c.empty() || c.size() % 2 != 0)
        throw Error(ErrorCode::invalid_cycle, "cycle must have even positive length");
    const FieldSpec& amb = c[0].spec();
    for (const auto& e : c) {
        if (!(e.spec() == amb))
            throw Error(ErrorCode::invalid_cycle, "cycle points from different fields");
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (c[i] == c[j])
                throw Error(ErrorCode::invalid_cycle, "cycle points are not distinct");
        }
    }
    const Polynomial g1 = embed(f1, amb), g2 = embed(f2, amb);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Polynomial& g = i % 2 == 0 ? g1 : g2;
        if (!(eval(g, c[i]) == eval(g, c[(i + 1) % c.size()])))
            throw Error(ErrorCode::invalid_cycle, "consecutive points do not share the required value");
    }
}

inline std::vector<ClosurePoint> with_multiplicities(const Polynomial& f1, const Polynomial& f2,
                                                     const std::vector<FieldElement>& c)
{
    std::vector<ClosurePoint> out;
    for (const auto& e : c)
        out.push_back({e, multiplicity(f1, e), multiplicity(f2, e), std::nullopt});
    return out;
}

inline std::pair<FieldElement, FieldElement> derivative_products(const Polynomial& f1, const Polynomial& f2,
                                                                 const std::vector<FieldElement>& c)
{
    const FieldSpec& amb = c[0].spec();
    const Polynomial d1 = embed(derivative(f1), amb), d2 = embed(derivative(f2), amb);
    FieldElement lhs = amb.one(), rhs = amb.one();
    for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
        lhs *= eval(d1, c[i]) * eval(d2, c[i + 1]);
        rhs *= eval(d2, c[i]) * eval(d1, c[i + 1]);
    }
    return {lhs, rhs};
}

/// [K(e):K] for K the coefficient field.
inline std::size_t degree_over(const FieldElement& e, const FieldSpec& K)
{
    const std::size_t dp = element_degree(e);
    return static_cast<std::size_t>(nt::lcm(dp, K.degree()) / K.degree());
}

} // namespace detail

/// Certificate when the multiplicity product over the cycle differs from 1.
inline std::optional<RefutationCertificate> multiplicity_cycle_test(const Polynomial& f1, const Polynomial& f2,
                                                                    const FiberCycle& cycle)
{
    detail::validate_cycle(f1, f2, cycle.points);
    Rational prod = multiplicity_product(detail::with_multiplicities(f1, f2, cycle.points));
    if (prod == 1)
        return std::nullopt;
    RefutationCertificate c;
    c.kind = RefutationKind::multiplicity_cycle;
    c.ambient = cycle.points[0].spec();
    c.points = cycle.points;
    c.product = prod;
    return c;
}

struct DerivativeTest {
    std::optional<RefutationCertificate> certificate;
    std::string reason; ///< "Certificate", "ProductsEqual" or "HypothesisNotMet"
};

/// Unequal derivative products refute a composite when [K(c_1):K] has a prime factor > max degree.
inline DerivativeTest derivative_cycle_test(const Polynomial& f1, const Polynomial& f2, const FiberCycle& cycle)
{
    if (!f1.spec().is_finite())
        throw Error(ErrorCode::unsupported, "derivative cycle test needs a finite field");
    if (in_Kxp(f1) || in_Kxp(f2))
        throw Error(ErrorCode::f_in_kxp, "f1 or f2 lies in K[x^p]");
    detail::validate_cycle(f1, f2, cycle.points);
    DerivativeTest out;
    auto [lhs, rhs] = detail::derivative_products(f1, f2, cycle.points);
    const std::size_t deg = detail::degree_over(cycle.points[0], f1.spec());
    const auto dmax = static_cast<std::uint64_t>(std::max(f1.degree(), f2.degree()));
    std::uint64_t prime = 0;
    for (auto q : nt::prime_factors(deg)) {
        if (q > dmax)
            prime = q;
    }
    if (prime == 0) {
        out.reason = "HypothesisNotMet";
        return out;
    }
    if (lhs == rhs) {
        out.reason = "ProductsEqual";
        return out;
    }
    RefutationCertificate c;
    c.kind = RefutationKind::derivative_cycle;
    c.ambient = cycle.points[0].spec();
    c.points = cycle.points;
    c.product = multiplicity_product(detail::with_multiplicities(f1, f2, cycle.points));
    c.lhs = lhs;
    c.rhs = rhs;
    c.element_degree = deg;
    c.prime = prime;
    out.certificate = std::move(c);
    out.reason = "Certificate";
    return out;
}

/// Canonical representative of a cycle: least point first, oriented so the first edge shares the f1-value.
inline std::vector<FieldElement> canonicalize(std::vector<FieldElement> c)
{
    if (c.empty())
        return c;
    const std::size_t n = c.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (c[i] < c[best])
            best = i;
    }
    // in an alternating cycle, even positions start f1-edges
    std::vector<FieldElement> out;
    if (best % 2 == 0) {
        for (std::size_t k = 0; k < n; ++k)
            out.push_back(c[(best + k) % n]);
    } else {
        for (std::size_t k = 0; k < n; ++k)
            out.push_back(c[(best + n - k) % n]);
    }
    return out;
}

struct CycleSearchResult {
    std::vector<FiberCycle> cycles;
    bool truncated = false; ///< a cycle or step budget fired
};

/// All alternating cycles of distinct points in `ambient` with 2 <= 2d <= 2 max_d, each reported once.
inline CycleSearchResult cycle_search(const Polynomial& f1, const Polynomial& f2, std::size_t max_d,
                                      const FieldSpec& ambient, const CycleSearchOptions& opts = {})
{
    detail::require_pair(f1, f2);
    if (!ambient.is_finite())
        throw Error(ErrorCode::unsupported, "cycle search needs a finite field");
    if (!embeds_into(f1.spec(), ambient))
        throw Error(ErrorCode::incompatible_fields, "ambient does not contain the coefficient field");
    const std::uint64_t q = ambient.small_order();
    if (q == 0 || q > opts.enumeration_limit)
        throw Error(ErrorCode::extension_cap_exceeded, "ambient field too large to enumerate");
    const Polynomial g[2] = {embed(f1, ambient), embed(f2, ambient)};
    // fibers as index lists
    std::vector<std::vector<std::uint32_t>> fib[2];
    std::vector<std::uint32_t> group[2];
    for (int w = 0; w < 2; ++w) {
        std::vector<std::pair<std::uint64_t, std::uint32_t>> vals(q);
        for (std::uint64_t i = 0; i < q; ++i)
            vals[i] = {ambient.index_of(eval(g[w], ambient.element_at(i))), static_cast<std::uint32_t>(i)};
        std::sort(vals.begin(), vals.end());
        group[w].assign(q, 0);
        for (std::size_t i = 0; i < vals.size();) {
            std::size_t j = i;
            while (j < vals.size() && vals[j].first == vals[i].first)
                ++j;
            if (j - i > 1) {
                fib[w].emplace_back();
                for (std::size_t k = i; k < j; ++k) {
                    fib[w].back().push_back(vals[k].second);
                    group[w][vals[k].second] = static_cast<std::uint32_t>(fib[w].size());
                }
            }
            i = j;
        }
    }
    // group id 0 means a singleton fiber
    CycleSearchResult res;
    std::vector<std::uint32_t> path;
    std::vector<char> used(q, 0);
    for (std::size_t d = 1; d <= max_d; ++d) {
        std::vector<std::vector<std::uint32_t>> found;
        std::uint64_t steps = 0;
        bool stop = false;
        const std::size_t len = 2 * d;
        auto dfs = [&](auto&& self, std::uint32_t cur) -> void {
            if (stop)
                return;
            if (++steps > opts.max_steps) {
                stop = true;
                res.truncated = true;
                return;
            }
            const std::size_t pos = path.size(); // index of the next point
            const int w = (pos - 1) % 2 == 0 ? 0 : 1; // edge type path[pos-1] -> next
            const std::uint32_t gid = group[w][cur];
            if (gid == 0)
                return;
            const std::uint32_t first = path[0];
            for (std::uint32_t nxt : fib[w][gid - 1]) {
                if (nxt <= first || used[nxt])
                    continue;
                if (pos == len - 1) {
                    // closing point must share the f2-value with c_1
                    if (group[1][nxt] == 0 || group[1][nxt] != group[1][first])
                        continue;
                    path.push_back(nxt);
                    found.push_back(path);
                    path.pop_back();
                    if (found.size() >= opts.max_cycles) {
                        stop = true;
                        res.truncated = true;
                        return;
                    }
                    continue;
                }
                used[nxt] = 1;
                path.push_back(nxt);
                self(self, nxt);
                path.pop_back();
                used[nxt] = 0;
                if (stop)
                    return;
            }
        };
        for (std::uint32_t s = 0; s < q && !stop; ++s) {
            if (group[0][s] == 0 || group[1][s] == 0)
                continue;
            path.assign(1, s);
            used[s] = 1;
            dfs(dfs, s);
            used[s] = 0;
        }
        std::sort(found.begin(), found.end());
        for (auto& f : found) {
            FiberCycle fc;
            fc.ambient = ambient;
            for (auto i : f)
                fc.points.push_back(ambient.element_at(i));
            res.cycles.push_back(std::move(fc));
        }
    }
    return res;
}

struct RefuteResult {
    std::optional<RefutationCertificate> certificate;
    std::vector<std::string> log;
};

/// Searches cycles over growing ambients F_{p^{k n}} and applies both tests; first certificate wins.
inline RefuteResult refute(const Polynomial& f1, const Polynomial& f2, std::size_t max_d, std::size_t max_ext,
                           const CycleSearchOptions& opts = {})
{
    detail::require_pair(f1, f2);
    RefuteResult out;
    const FieldSpec& K = f1.spec();
    if (!K.is_finite()) {
        out.log.push_back("cycle search is only available over finite fields");
        return out;
    }
    const bool derivative_ok = !in_Kxp(f1) && !in_Kxp(f2);
    if (!derivative_ok)
        out.log.push_back("f1 or f2 lies in K[x^p]; derivative test disabled");
    const std::size_t n = K.degree();
    bool hypothesis_noted = false;
    for (std::size_t k = 1; k * n <= max_ext; ++k) {
        const std::size_t deg = k * n;
        if (nt::big_pow(K.characteristic(), deg) > BigInt(opts.enumeration_limit)) {
            out.log.push_back("stopped before degree " + std::to_string(deg) + ": field too large to enumerate");
            break;
        }
        FieldSpec amb = deg == n ? K : make_extension(K.characteristic(), deg, 0);
        auto found = cycle_search(f1, f2, max_d, amb, opts);
        if (found.truncated)
            out.log.push_back("cycle budget reached in degree " + std::to_string(deg));
        for (const auto& cyc : found.cycles) {
            std::uint64_t L = n;
            for (const auto& e : cyc.points)
                L = nt::lcm(L, element_degree(e));
            if (L < deg)
                continue; // already seen in a smaller ambient
            if (auto c = multiplicity_cycle_test(f1, f2, cyc)) {
                out.certificate = std::move(c);
                return out;
            }
            if (derivative_ok) {
                auto t = derivative_cycle_test(f1, f2, cyc);
                if (t.certificate) {
                    out.certificate = std::move(t.certificate);
                    return out;
                }
                if (t.reason == "HypothesisNotMet" && !hypothesis_noted) {
                    auto [lhs, rhs] = detail::derivative_products(f1, f2, cyc.points);
                    if (!(lhs == rhs)) {
                        out.log.push_back("derivative products differ on a cycle in degree " + std::to_string(deg) +
                                          " but the prime-degree hypothesis fails");
                        hypothesis_noted = true;
                    }
                }
            }
        }
    }
    return out;
}

/// Re-derives every witness value of a refutation certificate from f1, f2 and the points.
inline VerifyResult verify_refutation(const Polynomial& f1, const Polynomial& f2, const RefutationCertificate& c)
{
    try {
        detail::validate_cycle(f1, f2, c.points);
    } catch (const Error& e) {
        return {false, std::string("InvalidCycle: ") + e.what()};
    }
    const Rational prod = multiplicity_product(detail::with_multiplicities(f1, f2, c.points));
    if (c.kind != RefutationKind::derivative_cycle) {
        if (prod != c.product)
            return {false, "ProductMismatch"};
        if (prod == 1)
            return {false, "ProductIsOne"};
        return {true, "ok"};
    }
    if (in_Kxp(f1) || in_Kxp(f2))
        return {false, "FInKxp"};
    auto [lhs, rhs] = detail::derivative_products(f1, f2, c.points);
    if (c.lhs && !(*c.lhs == lhs))
        return {false, "LhsMismatch"};
    if (c.rhs && !(*c.rhs == rhs))
        return {false, "RhsMismatch"};
    if (lhs == rhs)
        return {false, "ProductsEqual"};
    const std::size_t deg = detail::degree_over(c.points[0], f1.spec());
    if (c.element_degree != 0 && c.element_degree != deg)
        return {false, "ElementDegreeMismatch"};
    const auto dmax = static_cast<std::uint64_t>(std::max(f1.degree(), f2.degree()));
    if (c.prime <= dmax || !nt::is_prime(c.prime) || deg % c.prime != 0)
        return {false, "HypothesisNotMet"};
    return {true, "ok"};
}

/// Moves the points into the smallest ambient containing them and the base field K.
inline void shrink_ambient(RefutationCertificate& c, const FieldSpec& K)
{
    if (!K.is_finite() || c.points.empty())
        return;
    std::uint64_t L = K.degree();
    for (const auto& e : c.points)
        L = nt::lcm(L, element_degree(e));
    if (L == c.ambient.degree())
        return;
    const FieldSpec small = L == K.degree() ? K : make_extension(K.characteristic(), L, 0);
    std::vector<FieldElement> pts;
    for (const auto& e : c.points) {
        auto r = restrict_to(e, small);
        if (!r)
            return;
        pts.push_back(*r);
    }
    std::optional<FieldElement> lhs, rhs;
    if (c.lhs) {
        lhs = restrict_to(*c.lhs, small);
        if (!lhs)
            return;
    }
    if (c.rhs) {
        rhs = restrict_to(*c.rhs, small);
        if (!rhs)
            return;
    }
    c.ambient = small;
    c.points = std::move(pts);
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
}

/// Wraps an inconsistency found by the closure solver, over base field K.
inline RefutationCertificate from_inconsistency(const InconsistencyCertificate& ic, const FieldSpec& K)
{
    RefutationCertificate c;
    c.kind = RefutationKind::inconsistent_set;
    c.ambient = ic.cycle.at(0).value.spec();
    for (const auto& p : ic.cycle)
        c.points.push_back(p.value);
    c.product = ic.product;
    shrink_ambient(c, K);
    return c;
}

} // namespace ccomp
