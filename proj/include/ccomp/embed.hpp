#pragma once

/**
 * @file embed.hpp
 * @brief Compatible embeddings between finite fields of the same characteristic.
 *
 * A process-wide registry fixes, for every pair of registered fields F, G with
 * [F:F_p] | [G:F_p], the image of F's generator in G. Choices are made so that
 * every triangle commutes: embedding F -> G -> H equals embedding F -> H, and
 * maps between equal-degree fields are mutually inverse. Before a field is
 * registered, the default fields (seed 0) of all its proper divisor degrees are
 * registered first; this pins the choice through common subfields.
 */

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "factor.hpp"

namespace ccomp {

namespace detail {

class EmbeddingRegistry {
public:
    static EmbeddingRegistry& instance()
    {
        static EmbeddingRegistry reg;
        return reg;
    }

    /// Image of `src`'s generator in `dst`; registers both fields.
    FieldElement generator_image(const FieldSpec& src, const FieldSpec& dst)
    {
        std::lock_guard lock(mu_);
        add(src);
        add(dst);
        auto it = maps_.find({src.id(), dst.id()});
        if (it == maps_.end())
            throw Error(ErrorCode::incompatible_fields, "no embedding between fields of these degrees");
        return it->second;
    }

    void ensure(const FieldSpec& F)
    {
        std::lock_guard lock(mu_);
        add(F);
    }

private:
    using Key = std::pair<std::uint64_t, std::uint64_t>;

    static bool divides(const FieldSpec& a, const FieldSpec& b) { return b.degree() % a.degree() == 0; }

    bool defined(const FieldSpec& a, const FieldSpec& b) const
    {
        return a == b || maps_.count({a.id(), b.id()}) != 0;
    }

    /// Applies the registered map a -> b (identity when a == b) to e.
    FieldElement apply(const FieldSpec& a, const FieldSpec& b, const FieldElement& e) const
    {
        if (a == b)
            return e;
        return apply_with(maps_.at({a.id(), b.id()}), e);
    }

    /// Maps e (an element of a field with generator t) to sum c_i r^i.
    static FieldElement apply_with(const FieldElement& r, const FieldElement& e)
    {
        const FieldSpec& T = r.spec();
        FieldElement acc = T.zero();
        const auto& c = e.coeffs();
        for (std::size_t i = c.size(); i-- > 0;)
            acc = acc * r + T.from_int(c[i]);
        return acc;
    }

    bool consistent(const FieldSpec& S, const FieldSpec& T, const FieldElement& r) const
    {
        const FieldElement gS = S.generator();
        for (const auto& X : fields_) {
            if (X.characteristic() != S.characteristic())
                continue;
            if (defined(S, X) && defined(X, T) && !(X == S) && !(X == T)) {
                if (!(apply(X, T, apply(S, X, gS)) == r))
                    return false;
            }
            if (defined(T, X) && defined(S, X) && !(X == T)) {
                if (!(apply(T, X, r) == apply(S, X, gS)))
                    return false;
            }
            if (defined(X, S) && defined(X, T) && !(X == S) && !(X == T)) {
                if (!(apply_with(r, apply(X, S, X.generator())) == apply(X, T, X.generator())))
                    return false;
            }
        }
        return true;
    }

    void choose(const FieldSpec& S, const FieldSpec& T)
    {
        // candidate images: roots of S's modulus in T
        std::vector<FieldElement> m;
        for (auto c : S.modulus())
            m.push_back(T.from_int(c));
        auto roots = roots_in_own_field(Polynomial(T, std::move(m)), 0);
        for (const auto& rt : roots) {
            if (consistent(S, T, rt.root)) {
                maps_.emplace(Key{S.id(), T.id()}, rt.root);
                return;
            }
        }
        throw Error(ErrorCode::incompatible_fields, "no consistent embedding found");
    }

    void add(const FieldSpec& F)
    {
        if (F.kind() != FieldKind::extension)
            return;
        for (const auto& G : fields_) {
            if (G == F)
                return;
        }
        const auto p = F.characteristic();
        const auto n = F.degree();
        for (auto d : nt::divisors(n)) {
            if (d > 1 && d < n)
                add(make_extension(p, d, 0));
        }
        for (const auto& G : fields_) {
            if (G == F)
                return; // registered while adding divisor fields
        }
        std::vector<FieldSpec> related;
        for (const auto& G : fields_) {
            if (G.characteristic() == p && (divides(G, F) || divides(F, G)))
                related.push_back(G);
        }
        fields_.push_back(F);
        std::stable_sort(related.begin(), related.end(),
                         [](const FieldSpec& a, const FieldSpec& b) { return a.degree() < b.degree(); });
        for (const auto& G : related) {
            if (G.degree() < n)
                choose(G, F);
        }
        for (const auto& G : related) {
            if (G.degree() >= n) {
                choose(F, G);
                if (G.degree() == n)
                    choose(G, F);
            }
        }
    }

    std::recursive_mutex mu_;
    std::vector<FieldSpec> fields_;
    std::map<Key, FieldElement> maps_;
};

} // namespace detail

/// True when elements of `src` can be embedded into `dst`.
inline bool embeds_into(const FieldSpec& src, const FieldSpec& dst)
{
    if (src == dst)
        return true;
    if (!src.is_finite() || !dst.is_finite())
        return false;
    return src.characteristic() == dst.characteristic() && dst.degree() % src.degree() == 0;
}

inline FieldElement embed(const FieldElement& e, const FieldSpec& target)
{
    const FieldSpec& S = e.spec();
    if (S == target)
        return e;
    if (!embeds_into(S, target))
        throw Error(ErrorCode::incompatible_fields, "cannot embed element into the target field");
    if (S.kind() == FieldKind::prime)
        return target.from_int(e.coeffs()[0]);
    FieldElement r = detail::EmbeddingRegistry::instance().generator_image(S, target);
    FieldElement acc = target.zero();
    const auto& c = e.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * r + target.from_int(c[i]);
    return acc;
}

inline Polynomial embed(const Polynomial& f, const FieldSpec& target)
{
    if (f.spec() == target)
        return f;
    return map_coefficients(f, target, [&](const FieldElement& a) { return embed(a, target); });
}

/// The preimage of e under embed(., sub), if e lies in the image of sub.
inline std::optional<FieldElement> restrict_to(const FieldElement& e, const FieldSpec& sub)
{
    const FieldSpec& T = e.spec();
    if (T == sub)
        return e;
    if (!embeds_into(sub, T))
        throw Error(ErrorCode::incompatible_fields, "restriction target is not a subfield");
    if (sub.kind() == FieldKind::prime) {
        if (!e.in_prime_field())
            return std::nullopt;
        return sub.from_int(e.coeffs()[0]);
    }
    // Solve sum_j s_j r^j = e over F_p, r the image of sub's generator.
    const auto p = T.characteristic();
    const std::size_t n = T.degree(), m = sub.degree();
    FieldElement r = detail::EmbeddingRegistry::instance().generator_image(sub, T);
    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(m + 1, 0));
    FieldElement pw = T.one();
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            rows[i][j] = pw.coeffs()[i];
        pw *= r;
    }
    for (std::size_t i = 0; i < n; ++i)
        rows[i][m] = e.coeffs()[i];
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && rows[piv][col] == 0)
            ++piv;
        if (piv == n)
            continue;
        std::swap(rows[piv], rows[rank]);
        const auto inv = detail::zp::inv(rows[rank][col], p);
        for (auto& v : rows[rank])
            v = nt::mul_mod(v, inv, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || rows[i][col] == 0)
                continue;
            const auto f = rows[i][col];
            for (std::size_t k = 0; k <= m; ++k)
                rows[i][k] = (rows[i][k] + p - nt::mul_mod(f, rows[rank][k], p)) % p;
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < n; ++i) {
        if (rows[i][m] != 0)
            return std::nullopt;
    }
    std::vector<std::uint64_t> s(m, 0);
    for (std::size_t i = 0; i < rank; ++i)
        s[pivot_col[i]] = rows[i][m];
    return sub.from_coeffs(s);
}

/// The polynomial with every coefficient restricted to `sub`, if all coefficients lie there.
inline std::optional<Polynomial> restrict_to(const Polynomial& f, const FieldSpec& sub)
{
    std::vector<FieldElement> c;
    for (const auto& a : f.coeffs()) {
        auto r = restrict_to(a, sub);
        if (!r)
            return std::nullopt;
        c.push_back(*r);
    }
    return Polynomial(sub, std::move(c));
}

} // namespace ccomp
