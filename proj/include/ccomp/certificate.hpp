#pragma once

/**
 * @file certificate.hpp
 * @brief Line-oriented key=value certificate files and their offline verification.
 *
 * Composite and refutation certificates pin every field by its modulus so a
 * fresh process can rebuild the same elements. Points are coefficient vectors
 * in the ambient field; when the base field is itself an extension, the image
 * of its generator in the ambient is recorded too.
 */

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "refute.hpp"
#include "text.hpp"

namespace ccomp {

/// Ordered key=value lines. Keys may repeat; blank lines and lines starting with '#' are ignored.
class KeyValueDoc {
public:
    void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::optional<std::string> get(std::string_view key) const
    {
        for (const auto& [k, v] : entries_) {
            if (k == key)
                return v;
        }
        return std::nullopt;
    }

    std::string require(std::string_view key) const
    {
        auto v = get(key);
        if (!v)
            throw Error(ErrorCode::syntax_error, "missing key '" + std::string(key) + "'");
        return *v;
    }

    std::vector<std::string> get_all(std::string_view key) const
    {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries_) {
            if (k == key)
                out.push_back(v);
        }
        return out;
    }

    /// Entries whose key starts with `prefix`, with the prefix removed.
    KeyValueDoc section(std::string_view prefix) const
    {
        KeyValueDoc d;
        for (const auto& [k, v] : entries_) {
            if (k.size() > prefix.size() && k.compare(0, prefix.size(), prefix) == 0)
                d.add(k.substr(prefix.size()), v);
        }
        return d;
    }

    void append(const KeyValueDoc& other, const std::string& prefix = "")
    {
        for (const auto& [k, v] : other.entries_)
            add(prefix + k, v);
    }

    std::string str() const
    {
        std::string s;
        for (const auto& [k, v] : entries_)
            s += k + "=" + v + "\n";
        return s;
    }

    static KeyValueDoc parse(std::string_view text)
    {
        KeyValueDoc d;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            const std::string t = detail::trim_copy(line);
            if (t.empty() || t[0] == '#')
                continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos || eq == 0)
                throw Error(ErrorCode::syntax_error, "line " + std::to_string(lineno) + ": expected key=value");
            d.add(detail::trim_copy(t.substr(0, eq)), detail::trim_copy(t.substr(eq + 1)));
        }
        return d;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

namespace detail {

inline std::string modulus_string(const FieldSpec& F)
{
    if (F.kind() != FieldKind::extension)
        return "-";
    const FieldSpec P = FieldSpec::prime(F.characteristic());
    std::vector<FieldElement> m;
    for (auto c : F.modulus())
        m.push_back(P.from_int(c));
    return print_poly_in(Polynomial(P, std::move(m)), "t");
}

inline FieldSpec read_field(const KeyValueDoc& d, const std::string& field_key, const std::string& modulus_key)
{
    FieldSpec F;
    try {
        F = parse_field(d.require(field_key));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::syntax_error && !d.get(field_key))
            throw;
        throw Error(ErrorCode::invalid_field, e.what());
    }
    if (auto m = d.get(modulus_key); m && *m != modulus_string(F))
        throw Error(ErrorCode::invalid_field, "'" + modulus_key + "' disagrees with '" + field_key + "'");
    return F;
}

inline bool parse_bool(const std::string& s)
{
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw Error(ErrorCode::syntax_error, "expected true/false, got '" + s + "'");
}

inline std::uint64_t parse_u64(const std::string& s)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::syntax_error, "expected a nonnegative integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw Error(ErrorCode::syntax_error, "integer out of range: '" + s + "'");
    }
}

} // namespace detail

inline KeyValueDoc serialize(const CompositeCertificate& c, std::uint64_t seed = 0)
{
    const FieldSpec& F = c.h.spec();
    KeyValueDoc d;
    d.add("kind", "CompositeCertificate");
    d.add("field", to_string(F));
    d.add("modulus", detail::modulus_string(F));
    d.add("seed", std::to_string(seed));
    d.add("f1", to_string(c.f1));
    d.add("f2", to_string(c.f2));
    d.add("h", to_string(c.h));
    d.add("g1", to_string(c.g1));
    d.add("g2", to_string(c.g2));
    d.add("degree", std::to_string(c.h.degree()));
    d.add("minimal", c.minimal ? "true" : "false");
    d.add("normalized", c.normalized ? "true" : "false");
    return d;
}

inline CompositeCertificate parse_composite(const KeyValueDoc& d)
{
    if (d.require("kind") != "CompositeCertificate")
        throw Error(ErrorCode::syntax_error, "not a CompositeCertificate");
    const FieldSpec F = detail::read_field(d, "field", "modulus");
    CompositeCertificate c;
    c.f1 = parse_poly(d.require("f1"), F);
    c.f2 = parse_poly(d.require("f2"), F);
    c.h = parse_poly(d.require("h"), F);
    c.g1 = parse_poly(d.require("g1"), F);
    c.g2 = parse_poly(d.require("g2"), F);
    c.minimal = detail::parse_bool(d.get("minimal").value_or("false"));
    c.normalized = detail::parse_bool(d.get("normalized").value_or("true"));
    if (auto deg = d.get("degree"); deg && detail::parse_u64(*deg) != static_cast<std::uint64_t>(c.h.degree()))
        throw Error(ErrorCode::syntax_error, "'degree' disagrees with h");
    return c;
}

/// A refutation certificate together with the pair it refutes.
struct RefutationRecord {
    Polynomial f1, f2;
    RefutationCertificate certificate;
};

inline KeyValueDoc serialize(const Polynomial& f1, const Polynomial& f2, const RefutationCertificate& c,
                             std::uint64_t seed = 0)
{
    const FieldSpec& K = f1.spec();
    KeyValueDoc d;
    d.add("kind", "RefutationCertificate");
    d.add("refutation", refutation_kind_name(c.kind));
    d.add("field", to_string(K));
    d.add("modulus", detail::modulus_string(K));
    d.add("seed", std::to_string(seed));
    d.add("f1", to_string(f1));
    d.add("f2", to_string(f2));
    d.add("ambient", to_string(c.ambient));
    d.add("ambient_modulus", detail::modulus_string(c.ambient));
    if (K.kind() == FieldKind::extension)
        d.add("embedding", to_vector_string(embed(K.generator(), c.ambient)));
    d.add("length", std::to_string(c.points.size()));
    for (const auto& p : c.points)
        d.add("point", to_vector_string(p));
    d.add("product", c.product.str());
    if (c.lhs)
        d.add("lhs", to_vector_string(*c.lhs));
    if (c.rhs)
        d.add("rhs", to_vector_string(*c.rhs));
    if (c.kind == RefutationKind::derivative_cycle) {
        d.add("element_degree", std::to_string(c.element_degree));
        d.add("prime", std::to_string(c.prime));
    }
    return d;
}

/// Rebuilds the record; points are moved along the Frobenius so they match this process's embedding of K.
inline RefutationRecord parse_refutation(const KeyValueDoc& d)
{
    if (d.require("kind") != "RefutationCertificate")
        throw Error(ErrorCode::syntax_error, "not a RefutationCertificate");
    const FieldSpec K = detail::read_field(d, "field", "modulus");
    const FieldSpec A = detail::read_field(d, "ambient", "ambient_modulus");
    if (!embeds_into(K, A))
        throw Error(ErrorCode::not_compatible, "base field does not embed into the ambient");
    RefutationRecord r;
    r.f1 = parse_poly(d.require("f1"), K);
    r.f2 = parse_poly(d.require("f2"), K);
    auto& c = r.certificate;
    const std::string kind = d.require("refutation");
    if (kind == "MultiplicityCycle")
        c.kind = RefutationKind::multiplicity_cycle;
    else if (kind == "DerivativeCycle")
        c.kind = RefutationKind::derivative_cycle;
    else if (kind == "InconsistentSet")
        c.kind = RefutationKind::inconsistent_set;
    else
        throw Error(ErrorCode::syntax_error, "unknown refutation kind '" + kind + "'");
    c.ambient = A;

    std::size_t shift = 0;
    if (K.kind() == FieldKind::extension) {
        const FieldElement image = parse_vector(d.require("embedding"), A);
        std::vector<FieldElement> m;
        for (auto v : K.modulus())
            m.push_back(A.from_int(v));
        if (!eval(Polynomial(A, std::move(m)), image).is_zero())
            throw Error(ErrorCode::not_compatible, "embedding image is not a root of the base modulus");
        const FieldElement ours = embed(K.generator(), A);
        while (shift < A.degree() && !(frobenius(image, shift) == ours))
            ++shift;
        if (shift == A.degree())
            throw Error(ErrorCode::not_compatible, "embedding image not conjugate to the registered embedding");
    }
    auto move_point = [&](const std::string& s) { return frobenius(parse_vector(s, A), shift); };

    const auto pts = d.get_all("point");
    if (auto len = d.get("length"); len && detail::parse_u64(*len) != pts.size())
        throw Error(ErrorCode::syntax_error, "'length' disagrees with the number of points");
    for (const auto& s : pts)
        c.points.push_back(move_point(s));
    const std::string product = d.require("product");
    try {
        c.product = Rational(product);
    } catch (const std::exception&) {
        throw Error(ErrorCode::syntax_error, "bad product value");
    }
    if (auto v = d.get("lhs"))
        c.lhs = move_point(*v);
    if (auto v = d.get("rhs"))
        c.rhs = move_point(*v);
    if (auto v = d.get("element_degree"))
        c.element_degree = detail::parse_u64(*v);
    if (auto v = d.get("prime"))
        c.prime = detail::parse_u64(*v);
    return r;
}

struct FileVerification {
    bool ok = false;
    std::string kind;
    std::string reason;
    std::vector<std::pair<std::string, std::string>> witnesses; ///< re-derived values
};

inline FileVerification verify_composite_doc(const KeyValueDoc& d)
{
    FileVerification out;
    out.kind = "CompositeCertificate";
    const CompositeCertificate c = parse_composite(d);
    const auto v = verify_certificate(c);
    out.ok = v.ok;
    out.reason = v.reason;
    out.witnesses.emplace_back("g1(f1)", to_string(compose(c.g1, c.f1)));
    out.witnesses.emplace_back("g2(f2)", to_string(compose(c.g2, c.f2)));
    out.witnesses.emplace_back("degree", std::to_string(c.h.degree()));
    return out;
}

inline FileVerification verify_refutation_doc(const KeyValueDoc& d)
{
    FileVerification out;
    out.kind = "RefutationCertificate";
    const RefutationRecord r = parse_refutation(d);
    const auto& c = r.certificate;
    const auto v = verify_refutation(r.f1, r.f2, c);
    out.ok = v.ok;
    out.reason = v.reason;
    try {
        detail::validate_cycle(r.f1, r.f2, c.points);
        out.witnesses.emplace_back(
            "product", multiplicity_product(detail::with_multiplicities(r.f1, r.f2, c.points)).str());
        if (c.kind == RefutationKind::derivative_cycle) {
            auto [lhs, rhs] = detail::derivative_products(r.f1, r.f2, c.points);
            out.witnesses.emplace_back("lhs", to_vector_string(lhs));
            out.witnesses.emplace_back("rhs", to_vector_string(rhs));
            out.witnesses.emplace_back("element_degree",
                                       std::to_string(detail::degree_over(c.points[0], r.f1.spec())));
        }
    } catch (const Error&) {
        // the reason from verify_refutation already names the failure
    }
    return out;
}

/// Verifies a certificate file or an analysis report (whose certificate sits under "certificate.").
inline FileVerification verify_document(const KeyValueDoc& d)
{
    const std::string kind = d.require("kind");
    if (kind == "CompositeCertificate")
        return verify_composite_doc(d);
    if (kind == "RefutationCertificate")
        return verify_refutation_doc(d);
    if (kind == "AnalysisReport" || kind == "SearchReport") {
        const KeyValueDoc inner = d.section("certificate.");
        if (!inner.get("kind")) {
            FileVerification out;
            out.kind = kind;
            out.reason = "NoCertificate";
            return out;
        }
        return verify_document(inner);
    }
    throw Error(ErrorCode::syntax_error, "unknown document kind '" + kind + "'");
}

} // namespace ccomp
