#pragma once

/**
 * @file search.hpp
 * @brief Constructive search for common composites h = g1(f1) = g2(f2).
 *
 * search_lin looks for the first linear dependence among 1, f1, f2, f1^2, ...
 * ordered by degree; fiber_iterate runs the alternating minimal-polynomial
 * iteration r_{j+1} = m(f) with m the minimal polynomial of f modulo r_j.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "embed.hpp"

namespace ccomp {

struct CompositeCertificate {
    Polynomial f1, f2, h, g1, g2;
    bool minimal = false;
    bool normalized = false;
};

enum class SearchStatus { found, none_below, cap_exceeded };

inline const char* status_name(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found: return "Found";
    case SearchStatus::none_below: return "NoneBelow";
    case SearchStatus::cap_exceeded: return "CapExceeded";
    }
    return "?";
}

struct SearchOutcome {
    SearchStatus status = SearchStatus::none_below;
    std::optional<CompositeCertificate> certificate;
    std::uint64_t bound = 0;         ///< NoneBelow bound, or the cap for CapExceeded
    std::vector<Polynomial> trace;   ///< r_1, r_2, ... for fiber_iterate
};

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

namespace detail {

/// Incremental Gaussian elimination that reports the first vector lying in the span of its predecessors.
class LinearDependence {
public:
    LinearDependence(FieldSpec F, std::size_t dim) : F_(std::move(F)), dim_(dim) {}

    /// Adds v; if v depends on earlier vectors returns coefficients c with sum c_i v_i = 0 and c_last = 1.
    std::optional<std::vector<FieldElement>> add(std::vector<FieldElement> v)
    {
        v.resize(dim_, F_.zero());
        std::vector<FieldElement> comb(count_ + 1, F_.zero());
        comb[count_] = F_.one();
        ++count_;
        for (std::size_t d = dim_; d-- > 0;) {
            if (v[d].is_zero())
                continue;
            auto it = rows_.find(d);
            if (it == rows_.end()) {
                FieldElement inv = v[d].inverse();
                for (auto& a : v)
                    a *= inv;
                for (auto& a : comb)
                    a *= inv;
                rows_.emplace(d, Row{std::move(v), std::move(comb)});
                return std::nullopt;
            }
            const FieldElement c = v[d];
            const Row& r = it->second;
            for (std::size_t k = 0; k <= d; ++k) {
                if (!r.v[k].is_zero())
                    v[k] -= c * r.v[k];
            }
            for (std::size_t k = 0; k < r.comb.size(); ++k) {
                if (!r.comb[k].is_zero())
                    comb[k] -= c * r.comb[k];
            }
        }
        return comb;
    }

private:
    struct Row {
        std::vector<FieldElement> v;
        std::vector<FieldElement> comb;
    };
    FieldSpec F_;
    std::size_t dim_;
    std::size_t count_ = 0;
    std::map<std::size_t, Row> rows_;
};

inline void require_pair(const Polynomial& f1, const Polynomial& f2)
{
    if (!(f1.spec() == f2.spec()))
        throw Error(ErrorCode::incompatible_fields, "f1 and f2 are over different fields");
    if (f1.is_constant() || f2.is_constant())
        throw Error(ErrorCode::invalid_params, "f1 and f2 must be nonconstant");
}

inline Polynomial from_values(const FieldSpec& F, std::vector<FieldElement> c) { return Polynomial(F, std::move(c)); }

} // namespace detail

/// Default search bound: 4 lcm(deg f1, deg f2) p^2, or the lcm itself in characteristic 0.
inline std::uint64_t default_bound(const Polynomial& f1, const Polynomial& f2)
{
    const std::uint64_t l = nt::lcm(static_cast<std::uint64_t>(f1.degree()), static_cast<std::uint64_t>(f2.degree()));
    const std::uint64_t p = f1.spec().characteristic();
    return p == 0 ? l : 4 * l * p * p;
}

/// The unique g with g(f) = h, if any (f-adic expansion with constant digits).
inline std::optional<Polynomial> extract_cofactor(const Polynomial& h, const Polynomial& f)
{
    if (!(h.spec() == f.spec()) || f.is_constant())
        return std::nullopt;
    if (h.is_zero())
        return Polynomial(h.spec());
    if (h.degree() % f.degree() != 0)
        return std::nullopt;
    std::vector<FieldElement> g;
    Polynomial rest = h;
    while (!rest.is_zero()) {
        auto [q, r] = divrem(rest, f);
        if (r.degree() > 0)
            return std::nullopt;
        g.push_back(r.constant_term());
        rest = std::move(q);
    }
    return Polynomial(h.spec(), std::move(g));
}

/// Rescales a certificate so that h is monic with zero constant term.
inline CompositeCertificate normalize_certificate(CompositeCertificate c)
{
    const FieldElement h0 = c.h.constant_term();
    const FieldElement lc_inv = c.h.leading().inverse();
    const Polynomial shift = Polynomial::constant(h0);
    c.h = (c.h - shift) * lc_inv;
    c.g1 = (c.g1 - shift) * lc_inv;
    c.g2 = (c.g2 - shift) * lc_inv;
    c.normalized = true;
    return c;
}

/// Least-degree common composite of degree <= bound via linear dependence of powers.
inline SearchOutcome search_lin(const Polynomial& f1, const Polynomial& f2, std::uint64_t bound)
{
    detail::require_pair(f1, f2);
    const auto d1 = static_cast<std::uint64_t>(f1.degree());
    const auto d2 = static_cast<std::uint64_t>(f2.degree());
    if (bound < std::max(d1, d2))
        throw Error(ErrorCode::invalid_bound, "bound must be at least max(deg f1, deg f2)");
    const FieldSpec& F = f1.spec();

    struct Item {
        std::uint64_t degree;
        int which; // 0 = constant, 1 = f1 power, 2 = f2 power
        std::uint64_t power;
    };
    std::vector<Item> items{{0, 0, 0}};
    for (std::uint64_t j = 1; j * d1 <= bound; ++j)
        items.push_back({j * d1, 1, j});
    for (std::uint64_t k = 1; k * d2 <= bound; ++k)
        items.push_back({k * d2, 2, k});
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.which < b.which;
    });

    detail::LinearDependence dep(F, static_cast<std::size_t>(bound) + 1);
    Polynomial pw1 = Polynomial::constant(F.one()), pw2 = pw1;
    std::uint64_t e1 = 0, e2 = 0;
    for (std::size_t idx = 0; idx < items.size(); ++idx) {
        const Item& it = items[idx];
        Polynomial v = Polynomial::constant(F.one());
        if (it.which == 1) {
            while (e1 < it.power) {
                pw1 *= f1;
                ++e1;
            }
            v = pw1;
        } else if (it.which == 2) {
            while (e2 < it.power) {
                pw2 *= f2;
                ++e2;
            }
            v = pw2;
        }
        auto rel = dep.add(v.coeffs());
        if (!rel)
            continue;
        std::vector<FieldElement> g1c(static_cast<std::size_t>(bound / d1) + 1, F.zero());
        std::vector<FieldElement> g2c(static_cast<std::size_t>(bound / d2) + 1, F.zero());
        for (std::size_t i = 0; i < rel->size(); ++i) {
            const Item& t = items[i];
            if (t.which == 1)
                g1c[t.power] += (*rel)[i];
            else if (t.which == 2)
                g2c[t.power] -= (*rel)[i];
            else
                g2c[0] -= (*rel)[i];
        }
        CompositeCertificate c;
        c.f1 = f1;
        c.f2 = f2;
        c.g1 = Polynomial(F, std::move(g1c));
        c.g2 = Polynomial(F, std::move(g2c));
        c.h = compose(c.g1, f1);
        c.minimal = true;
        c = normalize_certificate(std::move(c));
        SearchOutcome out;
        out.status = SearchStatus::found;
        out.bound = bound;
        out.certificate = std::move(c);
        return out;
    }
    SearchOutcome out;
    out.status = SearchStatus::none_below;
    out.bound = bound;
    return out;
}

/// Monic m of least degree with r | m(f).
inline Polynomial minimal_poly_mod(const Polynomial& f, const Polynomial& r)
{
    if (!(f.spec() == r.spec()))
        throw Error(ErrorCode::incompatible_fields, "f and r are over different fields");
    if (r.is_constant())
        throw Error(ErrorCode::invalid_params, "modulus must be nonconstant");
    const FieldSpec& F = f.spec();
    const std::size_t dim = static_cast<std::size_t>(r.degree());
    detail::LinearDependence dep(F, dim);
    const Polynomial fr = f % r;
    Polynomial pw = Polynomial::constant(F.one()) % r;
    for (std::size_t k = 0;; ++k) {
        if (auto rel = dep.add(pw.coeffs()))
            return Polynomial(F, std::move(*rel));
        pw = (pw * fr) % r;
    }
}

/// Alternating minimal-polynomial iteration; Found on stabilization, CapExceeded once deg r_j > cap.
inline SearchOutcome fiber_iterate(const Polynomial& f1, const Polynomial& f2, std::uint64_t degree_cap)
{
    detail::require_pair(f1, f2);
    if (degree_cap < static_cast<std::uint64_t>(std::max(f1.degree(), f2.degree())))
        throw Error(ErrorCode::invalid_cap, "degree cap below max(deg f1, deg f2)");
    const Polynomial u1 = normalize(f1), u2 = normalize(f2);
    SearchOutcome out;
    out.bound = degree_cap;
    out.trace.push_back(u1);
    for (std::size_t j = 1;; ++j) {
        const Polynomial& next = j % 2 == 1 ? u2 : u1;
        const Polynomial& r = out.trace.back();
        Polynomial m = minimal_poly_mod(next, r);
        Polynomial r_next = compose(m, next);
        if (r_next == r) {
            CompositeCertificate c;
            c.f1 = f1;
            c.f2 = f2;
            c.h = r;
            c.g1 = *extract_cofactor(r, f1);
            c.g2 = *extract_cofactor(r, f2);
            c.minimal = true;
            c.normalized = true;
            out.status = SearchStatus::found;
            out.certificate = std::move(c);
            return out;
        }
        if (static_cast<std::uint64_t>(r_next.degree()) > degree_cap) {
            out.status = SearchStatus::cap_exceeded;
            return out;
        }
        out.trace.push_back(std::move(r_next));
    }
}

/// Re-checks a certificate by direct composition and, for minimal ones, by a bounded search below deg h.
inline VerifyResult verify_certificate(const CompositeCertificate& c)
{
    const FieldSpec& F = c.h.spec();
    for (const Polynomial* p : {&c.f1, &c.f2, &c.g1, &c.g2}) {
        if (!(p->spec() == F))
            return {false, "IncompatibleFields"};
    }
    if (c.f1.is_constant() || c.f2.is_constant())
        return {false, "ConstantInput"};
    if (c.g1.is_constant() || c.g2.is_constant())
        return {false, "ConstantCofactor"};
    if (!(compose(c.g1, c.f1) == c.h))
        return {false, "G1ComposeMismatch"};
    if (!(compose(c.g2, c.f2) == c.h))
        return {false, "G2ComposeMismatch"};
    if (c.normalized && !(c.h.is_monic() && c.h.constant_term().is_zero()))
        return {false, "NotNormalized"};
    if (c.minimal) {
        const auto dh = static_cast<std::uint64_t>(c.h.degree());
        const auto dmax = static_cast<std::uint64_t>(std::max(c.f1.degree(), c.f2.degree()));
        if (dh > dmax) {
            auto lower = search_lin(c.f1, c.f2, dh - 1);
            if (lower.status == SearchStatus::found)
                return {false, "NotMinimal"};
        }
    }
    return {true, "ok"};
}

struct DescendReport {
    bool ok = false;
    SearchOutcome base;
    SearchOutcome extended;
    bool coefficients_in_base = false;
    std::string reason;
};

/// Compares the least composite over the base field with the one found over an extension.
inline DescendReport descend_check(const Polynomial& f1, const Polynomial& f2, const FieldSpec& ext, std::uint64_t bound)
{
    DescendReport rep;
    rep.base = search_lin(f1, f2, bound);
    rep.extended = search_lin(embed(f1, ext), embed(f2, ext), bound);
    if (rep.base.status != rep.extended.status) {
        rep.reason = "status differs";
        return rep;
    }
    if (rep.base.status != SearchStatus::found) {
        rep.ok = true;
        rep.coefficients_in_base = true;
        rep.reason = "no composite below bound over either field";
        return rep;
    }
    const Polynomial& hb = rep.base.certificate->h;
    const Polynomial& he = rep.extended.certificate->h;
    if (hb.degree() != he.degree()) {
        rep.reason = "minimal degrees differ";
        return rep;
    }
    auto back = restrict_to(he, f1.spec());
    rep.coefficients_in_base = back.has_value();
    if (!back) {
        rep.reason = "extension composite has coefficients outside the base field";
        return rep;
    }
    if (!(*back == hb)) {
        rep.reason = "normalized composites differ";
        return rep;
    }
    rep.ok = true;
    rep.reason = "ok";
    return rep;
}

} // namespace ccomp
