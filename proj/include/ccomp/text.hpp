#pragma once

/**
 * @file text.hpp
 * @brief Parsing and canonical printing of fields, elements and polynomials.
 *
 * Polynomial grammar (whitespace ignored):
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary (('*' | '/') unary)*
 *     unary   := ('-' | '+') unary | power
 *     power   := primary ('^' INT)?
 *     primary := INT | VAR | 'w' | '(' expr ')'
 *
 * VAR is `x` (or `t` for moduli); `w` is the extension generator and only
 * exists in extension fields. Division is allowed by nonzero constants only.
 * Juxtaposition such as `2x` is rejected.
 *
 * Field grammar: `GF(p)`, `GF(p^n)`, `GF(p^n; m=<poly in t>)`, `QQ`.
 */

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace ccomp {

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const FieldSpec& spec, char var)
        : s_(text), spec_(spec), var_(var)
    {
    }

    Polynomial parse()
    {
        skip();
        if (pos_ >= s_.size())
            throw Error(ErrorCode::syntax_error, "empty expression", pos_);
        Polynomial r = expr();
        skip();
        if (pos_ < s_.size())
            throw Error(ErrorCode::syntax_error, std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool starts_factor(char c) const
    {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    Polynomial expr()
    {
        Polynomial r = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                r += term();
            } else if (c == '-') {
                ++pos_;
                r -= term();
            } else {
                return r;
            }
        }
    }

    Polynomial term()
    {
        Polynomial r = unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                r *= unary();
            } else if (c == '/') {
                const std::size_t at = ++pos_;
                Polynomial d = unary();
                if (!d.is_constant())
                    throw Error(ErrorCode::syntax_error, "division is only allowed by constants", at);
                if (d.is_zero())
                    throw Error(ErrorCode::divide_by_zero, "division by zero", at);
                r = r * d.leading().inverse();
            } else if (starts_factor(c)) {
                throw Error(ErrorCode::syntax_error, "implicit multiplication; write '*'", pos_);
            } else {
                return r;
            }
        }
    }

    Polynomial unary()
    {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (peek() == '^') {
            ++pos_;
            skip();
            const std::size_t at = pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw Error(ErrorCode::syntax_error, "exponent must be a nonnegative integer", at);
            BigInt e = integer();
            if (e > 1000000)
                throw Error(ErrorCode::syntax_error, "exponent too large", at);
            return pow(base, e.convert_to<std::uint64_t>());
        }
        return base;
    }

    BigInt integer()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return BigInt(std::string(s_.substr(start, pos_ - start)));
    }

    Polynomial primary()
    {
        char c = peek();
        const std::size_t at = pos_;
        if (c == '\0')
            throw Error(ErrorCode::syntax_error, "unexpected end of input", at);
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(spec_.from_int(integer()));
        if (c == '(') {
            ++pos_;
            Polynomial r = expr();
            if (peek() != ')')
                throw Error(ErrorCode::syntax_error, "expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                ++end;
            std::string name(s_.substr(pos_, end - pos_));
            if (name.size() == 1 && name[0] == var_) {
                pos_ = end;
                return Polynomial::x(spec_);
            }
            if (name == "w" && spec_.kind() == FieldKind::extension) {
                pos_ = end;
                return Polynomial::constant(spec_.generator());
            }
            throw Error(ErrorCode::unknown_symbol, "unknown symbol '" + name + "'", at);
        }
        throw Error(ErrorCode::syntax_error, std::string("unexpected '") + c + "'", at);
    }

    std::string_view s_;
    FieldSpec spec_;
    char var_;
    std::size_t pos_ = 0;
};

/// Signed representative of a prime-field residue: v, or -(p - v) when v > p/2.
inline std::pair<bool, std::uint64_t> signed_residue(std::uint64_t v, std::uint64_t p)
{
    if (p > 2 && v > p / 2)
        return {true, p - v};
    return {false, v};
}

inline std::string print_poly_in(const Polynomial& f, const std::string& var);

/// Coefficient as (negative?, magnitude text, is_unit_magnitude, needs_parens).
struct CoeffText {
    bool negative = false;
    std::string text;
    bool unit = false;
    bool compound = false;
};

inline CoeffText coeff_text(const FieldElement& c)
{
    const FieldSpec& F = c.spec();
    CoeffText out;
    if (!F.is_finite()) {
        Rational q = c.rational();
        out.negative = q < 0;
        if (out.negative)
            q = -q;
        out.unit = q == 1;
        out.text = q.str();
        return out;
    }
    if (c.in_prime_field()) {
        auto [neg, mag] = signed_residue(c.coeffs()[0], F.characteristic());
        out.negative = neg;
        out.unit = mag == 1;
        out.text = std::to_string(mag);
        return out;
    }
    // polynomial in w over the prime field
    const FieldSpec P = FieldSpec::prime(F.characteristic());
    std::vector<FieldElement> v;
    for (auto a : c.coeffs())
        v.push_back(P.from_int(a));
    out.text = print_poly_in(Polynomial(P, std::move(v)), "w");
    out.compound = out.text.find_first_of("+-") != std::string::npos || out.text.find('*') != std::string::npos;
    return out;
}

inline std::string print_poly_in(const Polynomial& f, const std::string& var)
{
    if (f.is_zero())
        return "0";
    std::string out;
    bool first = true;
    const auto& c = f.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k].is_zero())
            continue;
        CoeffText ct = coeff_text(c[k]);
        if (first)
            out += ct.negative ? "-" : "";
        else
            out += ct.negative ? " - " : " + ";
        first = false;
        std::string mono;
        if (k >= 1)
            mono = k == 1 ? var : var + "^" + std::to_string(k);
        if (k == 0) {
            out += ct.compound ? "(" + ct.text + ")" : ct.text;
        } else if (ct.unit) {
            out += mono;
        } else {
            out += (ct.compound ? "(" + ct.text + ")" : ct.text) + "*" + mono;
        }
    }
    return out;
}

inline std::string trim_copy(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

} // namespace detail

inline Polynomial parse_poly(std::string_view text, const FieldSpec& spec, char var = 'x')
{
    return detail::PolyParser(text, spec, var).parse();
}

inline std::string to_string(const Polynomial& f) { return detail::print_poly_in(f, "x"); }

/// Element as a polynomial in w (or a residue / fraction).
inline std::string to_string(const FieldElement& e)
{
    return detail::print_poly_in(Polynomial::constant(e), "w");
}

/// Coefficient vector form "[a0,a1,...]" used in reports; rationals as p/q.
inline std::string to_vector_string(const FieldElement& e)
{
    if (!e.spec().is_finite())
        return "[" + e.rational().str() + "]";
    std::string s = "[";
    for (std::size_t i = 0; i < e.coeffs().size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(e.coeffs()[i]);
    }
    return s + "]";
}

inline FieldElement parse_vector(std::string_view text, const FieldSpec& F)
{
    std::string s = detail::trim_copy(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw Error(ErrorCode::syntax_error, "expected '[...]' element vector");
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(detail::trim_copy(item));
    if (!F.is_finite()) {
        if (parts.size() != 1)
            throw Error(ErrorCode::syntax_error, "rational element needs one entry");
        try {
            return F.from_rational(Rational(parts[0]));
        } catch (const std::exception&) {
            throw Error(ErrorCode::syntax_error, "bad rational '" + parts[0] + "'");
        }
    }
    if (parts.size() != F.degree())
        throw Error(ErrorCode::syntax_error, "element vector has wrong length");
    std::vector<std::uint64_t> c;
    for (const auto& p : parts) {
        if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::syntax_error, "bad coefficient '" + p + "'");
        c.push_back(std::stoull(p));
    }
    return F.from_coeffs(c);
}

inline std::string to_string(const FieldSpec& F)
{
    switch (F.kind()) {
    case FieldKind::rationals:
        return "QQ";
    case FieldKind::prime:
        return "GF(" + std::to_string(F.characteristic()) + ")";
    case FieldKind::extension: {
        const FieldSpec P = FieldSpec::prime(F.characteristic());
        std::vector<FieldElement> m;
        for (auto c : F.modulus())
            m.push_back(P.from_int(c));
        return "GF(" + std::to_string(F.characteristic()) + "^" + std::to_string(F.degree()) +
               "; m=" + detail::print_poly_in(Polynomial(P, std::move(m)), "t") + ")";
    }
    }
    return "?";
}

/// Parses a field string; `GF(p^n)` without a modulus uses make_extension(p, n, seed).
inline FieldSpec parse_field(std::string_view text, std::uint64_t seed = 0)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    }
    if (s == "QQ" || s == "Q")
        return FieldSpec::rationals();
    if (s.size() < 5 || s.compare(0, 3, "GF(") != 0 || s.back() != ')')
        throw Error(ErrorCode::invalid_field, "unrecognized field '" + std::string(text) + "'");
    std::string body = s.substr(3, s.size() - 4);
    std::string modulus_text;
    if (auto semi = body.find(';'); semi != std::string::npos) {
        modulus_text = body.substr(semi + 1);
        body = body.substr(0, semi);
        if (modulus_text.compare(0, 2, "m=") != 0)
            throw Error(ErrorCode::invalid_field, "expected 'm=' after ';'");
        modulus_text = modulus_text.substr(2);
    }
    std::uint64_t p = 0, n = 1;
    try {
        std::size_t used = 0;
        auto caret = body.find('^');
        std::string ps = body.substr(0, caret);
        if (ps.empty() || ps.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("p");
        p = std::stoull(ps, &used);
        if (caret != std::string::npos) {
            std::string ns = body.substr(caret + 1);
            if (ns.empty() || ns.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("n");
            n = std::stoull(ns);
        }
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_field, "bad field parameters in '" + std::string(text) + "'");
    }
    if (!nt::is_prime(p)) {
        // GF(q) with q a prime power
        const auto f = p > 1 ? nt::factorize(p) : decltype(nt::factorize(p)){};
        if (f.size() != 1 || n != 1)
            throw Error(ErrorCode::invalid_field, std::to_string(p) + " is not a prime power");
        p = f.begin()->first;
        n = f.begin()->second;
    }
    if (n == 0 || n > 4096)
        throw Error(ErrorCode::invalid_field, "extension degree out of range");
    if (modulus_text.empty())
        return make_extension(p, n, seed);
    const FieldSpec P = FieldSpec::prime(p);
    Polynomial m = parse_poly(modulus_text, P, 't');
    if (m.degree() != static_cast<int>(n))
        throw Error(ErrorCode::invalid_field, "modulus degree does not match n");
    std::vector<std::uint64_t> mc;
    for (const auto& c : m.coeffs())
        mc.push_back(c.coeffs()[0]);
    return FieldSpec::with_modulus(p, std::move(mc));
}

} // namespace ccomp
