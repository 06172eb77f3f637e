#pragma once

/**
 * @file fiber.hpp
 * @brief Compatible sets, consistent labelings and composites built from them.
 *
 * A compatible set is a finite set of points of the algebraic closure that is
 * a union of f1-fibers and of f2-fibers. Points live in an ambient finite
 * field that grows (by default moduli, seed 0) as fibers demand; over Q only
 * rational fibers are supported.
 */

#include <deque>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "roots.hpp"
#include "search.hpp"
#include "text.hpp"

namespace ccomp {

struct ClosurePoint {
    FieldElement value;
    unsigned m1 = 1;
    unsigned m2 = 1;
    std::optional<std::uint64_t> label;
};

struct CompatibleSet {
    std::vector<ClosurePoint> points;
    FieldSpec ambient;
    FieldElement seed;
    bool closed = false;
};

struct ClosureCaps {
    std::size_t max_size = 4096;
    std::size_t max_ext = 60;
};

struct ClosureResult {
    CompatibleSet set;            ///< closed set, or the partial orbit when a cap fired
    std::string cap_fired;        ///< empty, "max_size" or "max_ext"
    std::vector<std::string> evidence;
};

/// c_1, ..., c_{2d} with f1(c_{2i-1}) = f1(c_{2i}) and f2(c_{2i}) = f2(c_{2i+1}).
struct InconsistencyCertificate {
    std::vector<ClosurePoint> cycle;
    Rational product;
};

struct ConsistencyResult {
    bool consistent = false;
    std::vector<std::uint64_t> labels; ///< minimal labeling, indexed like the input points
    std::optional<InconsistencyCertificate> certificate;
};

namespace detail {

inline FieldSpec grown_ambient(const FieldSpec& ambient, std::size_t degree)
{
    if (degree == ambient.degree())
        return ambient;
    return make_extension(ambient.characteristic(), degree, 0);
}

} // namespace detail

/// All roots of f(x) - f(a) in the algebraic closure, growing the ambient field as needed.
inline std::pair<std::vector<RootWithMultiplicity>, FieldSpec> fiber(const Polynomial& f, const FieldElement& a,
                                                                     const FieldSpec& ambient, std::size_t max_ext)
{
    if (f.is_constant())
        throw Error(ErrorCode::invalid_params, "fiber of a constant polynomial");
    FieldElement at = embed(a, ambient);
    Polynomial g = embed(f, ambient);
    g -= Polynomial::constant(eval(g, at));
    if (!ambient.is_finite()) {
        auto roots = roots_in_own_field(g);
        unsigned total = 0;
        for (const auto& r : roots)
            total += r.multiplicity;
        if (total != static_cast<unsigned>(f.degree()))
            throw Error(ErrorCode::unsupported_algebraic_extension,
                        "fiber of " + to_string(f) + " at " + to_string(a) + " has irrational points");
        return {roots, ambient};
    }
    std::uint64_t need = 1;
    for (auto [d, cnt] : factor_degrees(g))
        need = nt::lcm(need, d);
    const std::uint64_t target = ambient.degree() * need;
    if (target > max_ext)
        throw Error(ErrorCode::extension_cap_exceeded,
                    "fiber needs extension degree " + std::to_string(target) + " > " + std::to_string(max_ext));
    FieldSpec amb = detail::grown_ambient(ambient, static_cast<std::size_t>(target));
    auto roots = roots_in(g, amb);
    return {roots, amb};
}

namespace detail {

/// The translation x -> x + (s1 - s2) produced by the two root-sum involutions of degree-2 maps over Q.
inline std::optional<Rational> involution_translation(const Polynomial& f1, const Polynomial& f2)
{
    if (f1.spec().is_finite() || f1.degree() != 2 || f2.degree() != 2)
        return std::nullopt;
    Rational s1 = -(f1.coeff(1).rational() / f1.coeff(2).rational());
    Rational s2 = -(f2.coeff(1).rational() / f2.coeff(2).rational());
    if (s1 == s2)
        return std::nullopt;
    return s1 - s2;
}

inline std::vector<std::string> translation_evidence(const Polynomial& f1, const Polynomial& f2,
                                                     const std::vector<ClosurePoint>& pts)
{
    std::vector<std::string> out;
    auto delta = involution_translation(f1, f2);
    if (!delta)
        return out;
    std::vector<Rational> vals;
    for (const auto& p : pts)
        vals.push_back(p.value.rational());
    std::sort(vals.begin(), vals.end());
    auto has = [&](const Rational& v) { return std::binary_search(vals.begin(), vals.end(), v); };
    for (const auto& a : vals) {
        if (has(a + *delta) && has(a + 2 * *delta)) {
            out.push_back("translation orbit: the fiber involutions compose to x -> x " +
                          (*delta < 0 ? "- " + Rational(-*delta).str() : "+ " + Rational(*delta).str()) +
                          "; progression " + a.str() + ", " + Rational(a + *delta).str() + ", " +
                          Rational(a + 2 * *delta).str() + " lies in the closure");
            break;
        }
    }
    return out;
}

} // namespace detail

/// Least compatible set containing `seed`, or the partial orbit when a cap fires.
inline ClosureResult compatible_closure(const Polynomial& f1, const Polynomial& f2, const FieldElement& seed,
                                        const ClosureCaps& caps = {})
{
    detail::require_pair(f1, f2);
    if (caps.max_size == 0 || caps.max_ext == 0)
        throw Error(ErrorCode::invalid_cap, "caps must be positive");
    FieldSpec ambient = seed.spec();
    if (!embeds_into(f1.spec(), ambient))
        throw Error(ErrorCode::incompatible_fields, "seed does not lie over the coefficient field");

    ClosureResult res;
    std::vector<ClosurePoint> pts;
    std::vector<std::array<bool, 2>> done;
    std::unordered_map<FieldElement, std::size_t, FieldElementHash> index;

    auto reembed = [&](const FieldSpec& amb) {
        if (amb == ambient)
            return;
        ambient = amb;
        index.clear();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            pts[i].value = embed(pts[i].value, ambient);
            index.emplace(pts[i].value, i);
        }
    };
    auto insert = [&](const FieldElement& v, unsigned m1, unsigned m2) {
        auto [it, fresh] = index.emplace(v, pts.size());
        if (fresh) {
            pts.push_back({v, m1, m2, std::nullopt});
            done.push_back({false, false});
        }
        return it->second;
    };

    insert(seed, multiplicity(f1, seed), multiplicity(f2, seed));
    const Polynomial* fs[2] = {&f1, &f2};
    std::size_t next = 0;
    bool closed = true;
    try {
        while (next < pts.size()) {
            for (int which = 0; which < 2; ++which) {
                if (done[next][which])
                    continue;
                auto [roots, amb] = fiber(*fs[which], pts[next].value, ambient, caps.max_ext);
                reembed(amb);
                for (const auto& r : roots) {
                    std::size_t idx;
                    auto it = index.find(r.root);
                    if (it == index.end()) {
                        unsigned m1 = which == 0 ? r.multiplicity : multiplicity(f1, r.root);
                        unsigned m2 = which == 1 ? r.multiplicity : multiplicity(f2, r.root);
                        idx = insert(r.root, m1, m2);
                    } else {
                        idx = it->second;
                    }
                    done[idx][which] = true;
                }
                if (pts.size() > caps.max_size) {
                    res.cap_fired = "max_size";
                    closed = false;
                    break;
                }
            }
            if (!closed)
                break;
            ++next;
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::extension_cap_exceeded)
            throw;
        res.cap_fired = "max_ext";
        closed = false;
    }
    res.set.points = std::move(pts);
    res.set.ambient = ambient;
    res.set.seed = embed(seed, ambient);
    res.set.closed = closed;
    if (!closed)
        res.evidence = detail::translation_evidence(f1, f2, res.set.points);
    return res;
}

/// Multiplicity product over an alternating cycle (first edge shares the f1-value).
inline Rational multiplicity_product(const std::vector<ClosurePoint>& cycle)
{
    Rational prod = 1;
    for (std::size_t i = 0; i + 1 < cycle.size(); i += 2) {
        const auto& a = cycle[i];
        const auto& b = cycle[i + 1];
        prod *= Rational(a.m1, a.m2);
        prod *= Rational(b.m2, b.m1);
    }
    return prod;
}

namespace detail {

struct Edge {
    std::size_t to;
    int which;
};

/// Removes interior points of same-type runs so edge types alternate, then rotates to an f1-edge start.
inline std::vector<std::size_t> alternate_cycle(std::vector<std::size_t> cyc, std::vector<int> types,
                                                const std::vector<ClosurePoint>& pts)
{
    // types[k] is the type of the edge cyc[k] -> cyc[k+1 mod n]
    bool changed = true;
    while (changed && cyc.size() > 2) {
        changed = false;
        for (std::size_t k = 0; k < cyc.size() && cyc.size() > 2; ++k) {
            std::size_t nxt = (k + 1) % cyc.size();
            if (types[k] == types[nxt]) {
                cyc.erase(cyc.begin() + static_cast<std::ptrdiff_t>(nxt));
                types.erase(types.begin() + static_cast<std::ptrdiff_t>(nxt));
                changed = true;
                break;
            }
        }
    }
    // among starts with an f1 edge, pick the canonically least point
    std::size_t best = cyc.size();
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        if (types[k] != 0)
            continue;
        if (best == cyc.size() || pts[cyc[k]].value < pts[cyc[best]].value)
            best = k;
    }
    std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(best), cyc.end());
    return cyc;
}

} // namespace detail

/// Minimal consistent labeling of the points, or a cycle whose multiplicity product is not 1.
inline ConsistencyResult consistency_solve(const std::vector<ClosurePoint>& pts, const Polynomial& f1,
                                           const Polynomial& f2)
{
    ConsistencyResult res;
    const std::size_t n = pts.size();
    if (n == 0) {
        res.consistent = true;
        return res;
    }
    const FieldSpec& amb = pts[0].value.spec();
    const Polynomial g[2] = {embed(f1, amb), embed(f2, amb)};
    std::vector<std::vector<detail::Edge>> adj(n);
    std::vector<std::array<std::size_t, 3>> edges; // a, b, type
    for (int which = 0; which < 2; ++which) {
        std::unordered_map<FieldElement, std::size_t, FieldElementHash> last;
        for (std::size_t i = 0; i < n; ++i) {
            FieldElement v = eval(g[which], pts[i].value);
            auto it = last.find(v);
            if (it != last.end()) {
                adj[it->second].push_back({i, which});
                adj[i].push_back({it->second, which});
                edges.push_back({it->second, i, static_cast<std::size_t>(which)});
                it->second = i;
            } else {
                last.emplace(v, i);
            }
        }
    }
    auto m = [&](std::size_t i, int which) { return which == 0 ? pts[i].m1 : pts[i].m2; };

    std::vector<Rational> w(n, 0);
    std::vector<std::size_t> comp(n, n), parent(n, n), depth(n, 0);
    std::vector<int> parent_type(n, -1);
    std::vector<std::size_t> roots;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != n)
            continue;
        roots.push_back(s);
        comp[s] = s;
        w[s] = 1;
        std::queue<std::size_t> q;
        q.push(s);
        while (!q.empty()) {
            std::size_t a = q.front();
            q.pop();
            for (const auto& e : adj[a]) {
                if (comp[e.to] != n)
                    continue;
                comp[e.to] = s;
                parent[e.to] = a;
                parent_type[e.to] = e.which;
                depth[e.to] = depth[a] + 1;
                w[e.to] = w[a] * Rational(m(e.to, e.which), m(a, e.which));
                q.push(e.to);
            }
        }
    }
    for (const auto& [a, b, t] : edges) {
        const int which = static_cast<int>(t);
        if (w[b] * m(a, which) == w[a] * m(b, which))
            continue;
        // cycle: a -> ... -> lca <- ... <- b, closed by the edge b -> a
        std::vector<std::size_t> up_a{a}, up_b{b};
        std::vector<int> ta, tb;
        std::size_t x = a, y = b;
        while (depth[x] > depth[y]) {
            ta.push_back(parent_type[x]);
            x = parent[x];
            up_a.push_back(x);
        }
        while (depth[y] > depth[x]) {
            tb.push_back(parent_type[y]);
            y = parent[y];
            up_b.push_back(y);
        }
        while (x != y) {
            ta.push_back(parent_type[x]);
            x = parent[x];
            up_a.push_back(x);
            tb.push_back(parent_type[y]);
            y = parent[y];
            up_b.push_back(y);
        }
        std::vector<std::size_t> cyc = up_a; // a .. lca
        std::vector<int> types = ta;
        for (std::size_t k = up_b.size() - 1; k-- > 0;) {
            types.push_back(tb[k]);
            cyc.push_back(up_b[k]);
        }
        types.push_back(which); // b -> a
        auto alt = detail::alternate_cycle(cyc, types, pts);
        InconsistencyCertificate cert;
        for (auto i : alt)
            cert.cycle.push_back(pts[i]);
        cert.product = multiplicity_product(cert.cycle);
        res.certificate = std::move(cert);
        return res;
    }
    res.consistent = true;
    res.labels.assign(n, 0);
    for (auto r : roots) {
        BigInt L = 1, G = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (comp[i] != r)
                continue;
            for (int which = 0; which < 2; ++which) {
                Rational q = w[i] / m(i, which);
                L = boost::multiprecision::lcm(L, BigInt(boost::multiprecision::denominator(q)));
                G = boost::multiprecision::gcd(G, BigInt(boost::multiprecision::numerator(q)));
            }
        }
        Rational t(L, G);
        for (std::size_t i = 0; i < n; ++i) {
            if (comp[i] == r)
                res.labels[i] = static_cast<std::uint64_t>(Rational(t * w[i]).convert_to<BigInt>());
        }
    }
    return res;
}

/// True when h2 = mu(h1) for a degree-one mu.
inline bool related_by_degree_one(const Polynomial& h1, const Polynomial& h2)
{
    if (!(h1.spec() == h2.spec()) || h1.degree() != h2.degree() || h1.is_constant())
        return false;
    return normalize(h1) == normalize(h2);
}

struct BuiltComposite {
    CompositeCertificate certificate; ///< over the base field when `descends`, else over the ambient
    bool descends = false;
    std::uint64_t label_sum = 0;
};

/// h = prod (x - a)^l(a) from a closed compatible set with a consistent labeling; re-validates both.
inline BuiltComposite build_composite_from_set(const CompatibleSet& A, const std::vector<std::uint64_t>& labels,
                                               const Polynomial& f1, const Polynomial& f2)
{
    const FieldSpec& amb = A.ambient;
    const std::size_t n = A.points.size();
    if (labels.size() != n || n == 0)
        throw Error(ErrorCode::not_consistent, "labeling does not match the point set");
    const Polynomial g[2] = {embed(f1, amb), embed(f2, amb)};
    std::unordered_map<FieldElement, std::size_t, FieldElementHash> index;
    for (std::size_t i = 0; i < n; ++i)
        index.emplace(A.points[i].value, i);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = A.points[i];
        const unsigned mi[2] = {multiplicity(f1, a.value), multiplicity(f2, a.value)};
        if (mi[0] != a.m1 || mi[1] != a.m2)
            throw Error(ErrorCode::not_consistent, "recorded multiplicities are wrong");
        if (labels[i] == 0 || labels[i] % mi[0] != 0 || labels[i] % mi[1] != 0)
            throw Error(ErrorCode::not_consistent, "label is not a positive multiple of both multiplicities");
        for (int which = 0; which < 2; ++which) {
            Polynomial fib = g[which] - Polynomial::constant(eval(g[which], a.value));
            auto roots = roots_in_own_field(fib);
            unsigned total = 0;
            for (const auto& r : roots) {
                total += r.multiplicity;
                auto it = index.find(r.root);
                if (it == index.end())
                    throw Error(ErrorCode::not_compatible, "set is not a union of fibers");
                const std::size_t j = it->second;
                if (Rational(labels[i], mi[which]) != Rational(labels[j], r.multiplicity))
                    throw Error(ErrorCode::not_consistent, "l/m differs across a fiber");
            }
            if (total != static_cast<unsigned>(g[which].degree()))
                throw Error(ErrorCode::not_compatible, "fiber not contained in the ambient field");
        }
    }
    Polynomial hh = Polynomial::constant(amb.one());
    BuiltComposite out;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial lin = Polynomial::x(amb) - Polynomial::constant(A.points[i].value);
        hh *= pow(lin, labels[i]);
        out.label_sum += labels[i];
    }
    Polynomial h = hh - Polynomial::constant(hh.constant_term());
    auto base = restrict_to(h, f1.spec());
    CompositeCertificate c;
    if (base) {
        out.descends = true;
        c.f1 = f1;
        c.f2 = f2;
        c.h = *base;
    } else {
        c.f1 = g[0];
        c.f2 = g[1];
        c.h = h;
    }
    auto g1 = extract_cofactor(c.h, c.f1);
    auto g2 = extract_cofactor(c.h, c.f2);
    if (!g1 || !g2)
        throw Error(ErrorCode::not_compatible, "product over the set is not a common composite");
    c.g1 = *g1;
    c.g2 = *g2;
    c.minimal = false;
    c.normalized = true;
    out.certificate = std::move(c);
    return out;
}

enum class Verdict { exists, not_exists, inconclusive };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::exists: return "Exists";
    case Verdict::not_exists: return "NotExists";
    case Verdict::inconclusive: return "Inconclusive";
    }
    return "?";
}

struct SeedReport {
    FieldElement seed;
    ClosureResult closure;
    std::optional<InconsistencyCertificate> inconsistency;
    std::vector<std::uint64_t> labels;
    std::optional<BuiltComposite> composite;
    std::string note;
};

struct AnalysisReport {
    Verdict verdict = Verdict::inconclusive;
    std::vector<SeedReport> seeds;
    std::optional<CompositeCertificate> certificate;
    std::optional<InconsistencyCertificate> refutation;
};

/// Closure, consistency and construction for each seed; the first decisive seed fixes the verdict.
inline AnalysisReport analyze(const Polynomial& f1, const Polynomial& f2, const std::vector<FieldElement>& seeds,
                              const ClosureCaps& caps = {})
{
    detail::require_pair(f1, f2);
    AnalysisReport rep;
    for (const auto& s : seeds) {
        SeedReport sr;
        sr.seed = s;
        try {
            sr.closure = compatible_closure(f1, f2, s, caps);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::unsupported_algebraic_extension)
                throw;
            sr.note = e.what();
            rep.seeds.push_back(std::move(sr));
            continue;
        }
        auto cons = consistency_solve(sr.closure.set.points, f1, f2);
        if (!cons.consistent) {
            sr.inconsistency = cons.certificate;
            if (rep.verdict == Verdict::inconclusive) {
                rep.verdict = Verdict::not_exists;
                rep.refutation = cons.certificate;
            }
        } else if (sr.closure.set.closed) {
            sr.labels = cons.labels;
            for (std::size_t i = 0; i < sr.labels.size(); ++i)
                sr.closure.set.points[i].label = sr.labels[i];
            sr.composite = build_composite_from_set(sr.closure.set, sr.labels, f1, f2);
            if (rep.verdict == Verdict::inconclusive && sr.composite->descends &&
                verify_certificate(sr.composite->certificate).ok) {
                rep.verdict = Verdict::exists;
                rep.certificate = sr.composite->certificate;
            }
        } else {
            sr.note = "cap fired: " + sr.closure.cap_fired;
        }
        rep.seeds.push_back(std::move(sr));
    }
    return rep;
}

} // namespace ccomp
