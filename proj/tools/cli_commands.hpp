#pragma once

// Command implementations for the ccomp tool. Each command returns its exit
// status and rendered output so the test suite can call it in-process.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccomp/ccomp.hpp"

namespace ccomp::cli {

enum ExitCode : int {
    exit_ok = 0,         // Found / Exists / certificate valid
    exit_negative = 1,   // NoneBelow / NotExists / certificate invalid
    exit_cap = 2,        // CapExceeded / Inconclusive
    exit_usage = 3,      // bad flags or unparsable input
    exit_field = 4,      // field errors
    exit_io = 5,
    exit_internal = 6,
};

enum class Format { text, machine };

struct RunConfig {
    std::string field;
    std::string f1, f2;
    std::vector<std::string> points;
    std::uint64_t bound = 0; // 0 = module default
    std::size_t max_d = 6;
    std::size_t max_size = 4096;
    std::size_t max_ext = 60;
    std::uint64_t seed = 0;
    std::string output;
    Format format = Format::text;
    std::string method = "both"; // search: lin, fiber or both
};

struct CommandResult {
    int status = exit_ok;
    std::string text; ///< what goes to stdout (or the output file)
};

inline int exit_for(const Error& e)
{
    switch (e.code()) {
    case ErrorCode::syntax_error:
    case ErrorCode::unknown_symbol:
    case ErrorCode::invalid_bound:
    case ErrorCode::invalid_cap:
    case ErrorCode::invalid_params:
    case ErrorCode::invalid_cycle:
    case ErrorCode::f_in_kxp:
    case ErrorCode::divide_by_zero:
        return exit_usage;
    case ErrorCode::invalid_field:
    case ErrorCode::incompatible_fields:
    case ErrorCode::not_compatible:
    case ErrorCode::unsupported_algebraic_extension:
        return exit_field;
    case ErrorCode::extension_cap_exceeded:
        return exit_cap;
    case ErrorCode::io_error:
        return exit_io;
    default:
        return exit_internal;
    }
}

/// Applies key=value lines from a config file to every field not set on the command line.
inline void apply_config(RunConfig& cfg, const KeyValueDoc& doc, const std::vector<std::string>& explicit_keys)
{
    auto is_explicit = [&](const std::string& k) {
        return std::find(explicit_keys.begin(), explicit_keys.end(), k) != explicit_keys.end();
    };
    for (const auto& [k, v] : doc.entries()) {
        if (is_explicit(k))
            continue;
        if (k == "field")
            cfg.field = v;
        else if (k == "f1")
            cfg.f1 = v;
        else if (k == "f2")
            cfg.f2 = v;
        else if (k == "point")
            cfg.points.push_back(v);
        else if (k == "bound")
            cfg.bound = ccomp::detail::parse_u64(v);
        else if (k == "max-d" || k == "max_d")
            cfg.max_d = ccomp::detail::parse_u64(v);
        else if (k == "max-size" || k == "max_size")
            cfg.max_size = ccomp::detail::parse_u64(v);
        else if (k == "max-ext" || k == "max_ext")
            cfg.max_ext = ccomp::detail::parse_u64(v);
        else if (k == "seed")
            cfg.seed = ccomp::detail::parse_u64(v);
        else if (k == "output")
            cfg.output = v;
        else if (k == "method")
            cfg.method = v;
        else if (k == "format") {
            if (v != "text" && v != "machine")
                throw Error(ErrorCode::syntax_error, "format must be text or machine");
            cfg.format = v == "machine" ? Format::machine : Format::text;
        } else
            throw Error(ErrorCode::syntax_error, "unknown config key '" + k + "'");
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes via a temporary file and rename so readers never see a partial file.
inline void write_file_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::io_error, "cannot write '" + tmp + "'");
        out << content;
        if (!out)
            throw Error(ErrorCode::io_error, "write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error(ErrorCode::io_error, "cannot rename onto '" + path + "': " + ec.message());
}

namespace detail {

struct Inputs {
    FieldSpec field;
    Polynomial f1, f2;
};

inline FieldSpec require_field(const RunConfig& cfg)
{
    if (cfg.field.empty())
        throw Error(ErrorCode::syntax_error, "--field is required");
    return parse_field(cfg.field, cfg.seed);
}

inline Polynomial require_poly(const std::string& text, const char* name, const FieldSpec& F)
{
    if (text.empty())
        throw Error(ErrorCode::syntax_error, std::string("--") + name + " is required");
    return parse_poly(text, F);
}

inline Inputs read_pair(const RunConfig& cfg)
{
    Inputs in;
    in.field = require_field(cfg);
    in.f1 = require_poly(cfg.f1, "f1", in.field);
    in.f2 = require_poly(cfg.f2, "f2", in.field);
    return in;
}

inline FieldElement parse_point(const std::string& text, const FieldSpec& F)
{
    const Polynomial p = parse_poly(text, F);
    if (!p.is_constant())
        throw Error(ErrorCode::syntax_error, "point '" + text + "' must be a field constant");
    return p.is_zero() ? F.zero() : p.coeff(0);
}

/// Human-readable rendering of a key=value document.
inline std::string as_text(const KeyValueDoc& d)
{
    std::string s;
    for (const auto& [k, v] : d.entries())
        s += k + ": " + v + "\n";
    return s;
}

inline std::string render(const RunConfig& cfg, const KeyValueDoc& d)
{
    return cfg.format == Format::machine ? d.str() : as_text(d);
}

inline void add_header(KeyValueDoc& d, const std::string& kind, const Inputs& in, const RunConfig& cfg)
{
    d.add("kind", kind);
    d.add("field", to_string(in.field));
    d.add("modulus", ccomp::detail::modulus_string(in.field));
    d.add("seed", std::to_string(cfg.seed));
    d.add("f1", to_string(in.f1));
    d.add("f2", to_string(in.f2));
}

inline std::string points_string(const std::vector<ClosurePoint>& pts)
{
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            s += " ";
        s += to_vector_string(pts[i].value);
    }
    return s;
}

} // namespace detail

/// Bounded composite search: fiber iteration and linear-dependence search, cross-checked.
inline CommandResult cmd_search(const RunConfig& cfg)
{
    const auto in = detail::read_pair(cfg);
    if (cfg.method != "both" && cfg.method != "lin" && cfg.method != "fiber")
        throw Error(ErrorCode::syntax_error, "method must be lin, fiber or both");
    const std::uint64_t bound = cfg.bound ? cfg.bound : default_bound(in.f1, in.f2);

    std::optional<SearchOutcome> fib, lin;
    if (cfg.method != "lin")
        fib = fiber_iterate(in.f1, in.f2, bound);
    if (cfg.method != "fiber")
        lin = search_lin(in.f1, in.f2, bound);

    KeyValueDoc d;
    detail::add_header(d, "SearchReport", in, cfg);
    d.add("bound", std::to_string(bound));
    d.add("method", cfg.method);

    const SearchOutcome* primary = nullptr;
    if (fib && fib->status == SearchStatus::found)
        primary = &*fib;
    else if (lin && lin->status == SearchStatus::found)
        primary = &*lin;
    else if (fib)
        primary = &*fib;
    else
        primary = &*lin;

    std::string cross = "single";
    if (fib && lin) {
        const bool ff = fib->status == SearchStatus::found, lf = lin->status == SearchStatus::found;
        if (ff && lf)
            cross = fib->certificate->h == lin->certificate->h ? "agree" : "disagree";
        else if (ff != lf)
            cross = "disagree";
        else
            cross = "agree";
    }
    d.add("status", status_name(primary->status));
    if (fib)
        d.add("fiber_status", status_name(fib->status));
    if (lin)
        d.add("linear_status", status_name(lin->status));
    d.add("cross_check", cross);
    if (fib) {
        for (std::size_t i = 0; i < fib->trace.size(); ++i)
            d.add("trace." + std::to_string(i), to_string(fib->trace[i]));
    }
    if (primary->certificate) {
        d.add("degree", std::to_string(primary->certificate->h.degree()));
        d.append(serialize(*primary->certificate, cfg.seed), "certificate.");
    }
    CommandResult r;
    r.text = detail::render(cfg, d);
    if (cross == "disagree")
        r.status = exit_internal;
    else if (primary->status == SearchStatus::found)
        r.status = exit_ok;
    else if (primary->status == SearchStatus::none_below)
        r.status = exit_negative;
    else
        r.status = exit_cap;
    return r;
}

/// Full decision: search, closure per seed, cycle refutation.
inline CommandResult cmd_analyze(const RunConfig& cfg)
{
    const auto in = detail::read_pair(cfg);
    DecisionOptions opt;
    opt.bound = cfg.bound;
    opt.caps.max_size = cfg.max_size;
    opt.caps.max_ext = cfg.max_ext;
    opt.max_d = cfg.max_d;
    opt.max_ext = std::min<std::size_t>(cfg.max_ext, 16);
    for (const auto& p : cfg.points)
        opt.seeds.push_back(detail::parse_point(p, in.field));
    if (cfg.max_size == 0 || cfg.max_ext == 0 || cfg.max_d == 0)
        throw Error(ErrorCode::invalid_cap, "caps must be positive");
    const Decision dec = decide(in.f1, in.f2, opt);

    KeyValueDoc d;
    detail::add_header(d, "AnalysisReport", in, cfg);
    d.add("verdict", verdict_name(dec.verdict));
    d.add("stage", dec.stage.empty() ? "-" : dec.stage);
    d.add("search_status", status_name(dec.search.status));
    d.add("search_bound", std::to_string(dec.search.bound));
    for (std::size_t i = 0; i < dec.analysis.seeds.size(); ++i) {
        const auto& s = dec.analysis.seeds[i];
        const std::string k = "seed." + std::to_string(i) + ".";
        d.add(k + "point", to_vector_string(s.seed));
        d.add(k + "ambient", to_string(s.closure.set.ambient));
        d.add(k + "size", std::to_string(s.closure.set.points.size()));
        d.add(k + "closed", s.closure.set.closed ? "true" : "false");
        if (!s.closure.cap_fired.empty())
            d.add(k + "cap", s.closure.cap_fired);
        d.add(k + "points", detail::points_string(s.closure.set.points));
        if (!s.labels.empty()) {
            std::string lab;
            for (std::size_t j = 0; j < s.labels.size(); ++j)
                lab += (j ? " " : "") + std::to_string(s.labels[j]);
            d.add(k + "labels", lab);
        }
        if (s.inconsistency)
            d.add(k + "inconsistent_product", s.inconsistency->product.str());
        if (!s.note.empty())
            d.add(k + "note", s.note);
        for (const auto& e : s.closure.evidence)
            d.add(k + "evidence", e);
    }
    for (const auto& line : dec.log)
        d.add("log", line);
    if (dec.composite)
        d.append(serialize(*dec.composite, cfg.seed), "certificate.");
    else if (dec.refutation)
        d.append(serialize(in.f1, in.f2, *dec.refutation, cfg.seed), "certificate.");

    CommandResult r;
    r.text = detail::render(cfg, d);
    r.status = dec.verdict == Verdict::exists ? exit_ok : dec.verdict == Verdict::not_exists ? exit_negative : exit_cap;
    return r;
}

/// Cycle search plus multiplicity and derivative tests; emits a RefutationCertificate file.
inline CommandResult cmd_refute(const RunConfig& cfg)
{
    const auto in = detail::read_pair(cfg);
    if (cfg.max_d == 0 || cfg.max_ext == 0)
        throw Error(ErrorCode::invalid_cap, "caps must be positive");
    auto res = refute(in.f1, in.f2, cfg.max_d, cfg.max_ext);
    KeyValueDoc d;
    CommandResult r;
    if (res.certificate) {
        d = serialize(in.f1, in.f2, *res.certificate, cfg.seed);
        r.status = exit_negative;
    } else {
        detail::add_header(d, "RefuteReport", in, cfg);
        d.add("result", "NoCertificate");
        r.status = exit_cap;
    }
    d.add("max_d", std::to_string(cfg.max_d));
    d.add("max_ext", std::to_string(cfg.max_ext));
    for (const auto& line : res.log)
        d.add("log", line);
    r.text = detail::render(cfg, d);
    return r;
}

/// Fiber of f1 over each point, or with --f2 the compatible closure from each point.
inline CommandResult cmd_fiber(const RunConfig& cfg)
{
    const FieldSpec F = detail::require_field(cfg);
    const Polynomial f1 = detail::require_poly(cfg.f1, "f1", F);
    if (cfg.points.empty())
        throw Error(ErrorCode::syntax_error, "--point is required");
    KeyValueDoc d;
    d.add("kind", "FiberReport");
    d.add("field", to_string(F));
    d.add("f1", to_string(f1));
    CommandResult r;
    if (cfg.f2.empty()) {
        for (std::size_t i = 0; i < cfg.points.size(); ++i) {
            const FieldElement a = detail::parse_point(cfg.points[i], F);
            auto [roots, amb] = fiber(f1, a, F, cfg.max_ext);
            const std::string k = "fiber." + std::to_string(i) + ".";
            d.add(k + "value", to_vector_string(a));
            d.add(k + "ambient", to_string(amb));
            for (const auto& rt : roots)
                d.add(k + "root", to_vector_string(rt.root) + " m=" + std::to_string(rt.multiplicity));
        }
    } else {
        const Polynomial f2 = detail::require_poly(cfg.f2, "f2", F);
        d.add("f2", to_string(f2));
        ClosureCaps caps;
        caps.max_size = cfg.max_size;
        caps.max_ext = cfg.max_ext;
        for (std::size_t i = 0; i < cfg.points.size(); ++i) {
            const FieldElement a = detail::parse_point(cfg.points[i], F);
            auto cl = compatible_closure(f1, f2, a, caps);
            const std::string k = "closure." + std::to_string(i) + ".";
            d.add(k + "seed", to_vector_string(a));
            d.add(k + "ambient", to_string(cl.set.ambient));
            d.add(k + "size", std::to_string(cl.set.points.size()));
            d.add(k + "closed", cl.set.closed ? "true" : "false");
            if (!cl.cap_fired.empty()) {
                d.add(k + "cap", cl.cap_fired);
                r.status = exit_cap;
            }
            for (const auto& p : cl.set.points)
                d.add(k + "point", to_vector_string(p.value) + " m1=" + std::to_string(p.m1) +
                                       " m2=" + std::to_string(p.m2));
            for (const auto& e : cl.evidence)
                d.add(k + "evidence", e);
        }
    }
    r.text = detail::render(cfg, d);
    return r;
}

/// Re-validates a certificate or report file and prints the re-derived witness values.
inline CommandResult cmd_verify(const std::string& path, const RunConfig& cfg)
{
    const KeyValueDoc doc = KeyValueDoc::parse(read_file(path));
    FileVerification v;
    try {
        v = verify_document(doc);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::io_error)
            throw;
        v.ok = false;
        v.kind = doc.get("kind").value_or("?");
        v.reason = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    KeyValueDoc d;
    d.add("kind", "Verification");
    d.add("document", v.kind);
    d.add("valid", v.ok ? "true" : "false");
    d.add("reason", v.reason);
    for (const auto& [k, val] : v.witnesses)
        d.add("witness." + k, val);
    CommandResult r;
    r.text = detail::render(cfg, d);
    r.status = v.ok ? exit_ok : exit_negative;
    return r;
}

/// D_n(x, alpha) over the configured field (default QQ).
inline CommandResult cmd_dickson(std::uint64_t n, const std::string& alpha, const RunConfig& cfg)
{
    const FieldSpec F = cfg.field.empty() ? FieldSpec::rationals() : parse_field(cfg.field, cfg.seed);
    const FieldElement a = detail::parse_point(alpha, F);
    if (n > 100000)
        throw Error(ErrorCode::invalid_params, "n too large");
    const Polynomial D = dickson(n, a);
    CommandResult r;
    if (cfg.format == Format::machine) {
        KeyValueDoc d;
        d.add("kind", "Dickson");
        d.add("field", to_string(F));
        d.add("n", std::to_string(n));
        d.add("alpha", to_string(a));
        d.add("D", to_string(D));
        r.text = d.str();
    } else {
        r.text = to_string(D) + "\n";
    }
    return r;
}

/// Deterministic corpus of family instances with their expected least-composite degrees.
inline CommandResult cmd_gen_corpus(const std::string& family, std::size_t count, const RunConfig& cfg)
{
    if (family != "all" && family != "additive" && family != "shifted" && family != "deg2" && family != "tame")
        throw Error(ErrorCode::syntax_error, "family must be all, additive, shifted, deg2 or tame");
    std::vector<FamilyInstance> out;
    std::uint64_t state = cfg.seed;
    auto next = [&](std::uint64_t mod) { return nt::mix64(++state) % mod; };
    const std::uint64_t primes[] = {2, 3, 5, 7};
    auto want = [&](const char* f) { return family == "all" || family == f; };
    std::size_t guard = 0;
    while (out.size() < count && guard++ < 100 * (count + 1)) {
        const std::uint64_t p = primes[next(4)];
        try {
            if (want("additive") && out.size() < count) {
                const std::uint64_t n = 2 + next(7);
                if (n % p != 0)
                    out.push_back(additive_family(n, p, 1));
            }
            if (want("shifted") && out.size() < count) {
                const std::uint64_t n = 2 + next(5), m = 2 + next(5);
                if (n % p != 0 && m % p != 0) {
                    auto fi = shifted_family(n, m, p);
                    if (fi.expected_h)
                        out.push_back(std::move(fi));
                }
            }
            if (want("deg2") && out.size() < count) {
                const FieldSpec F = FieldSpec::prime(p);
                out.push_back(deg2_pair(F.element_at(next(p)), F.element_at(next(p))));
            }
            if (want("tame") && out.size() < count) {
                const FieldSpec F = FieldSpec::prime(7);
                const Polynomial x = Polynomial::x(F);
                const Polynomial h = x * x + x * F.from_int(static_cast<long long>(next(7)));
                const auto m = 2 + next(2), n = 2 + next(2);
                if (m != n)
                    out.push_back(tame_dickson(x, x + Polynomial::constant(F.one()), h,
                                               F.from_int(static_cast<long long>(1 + next(6))), m, n));
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::invalid_params)
                throw;
        }
    }
    KeyValueDoc d;
    d.add("kind", "Corpus");
    d.add("seed", std::to_string(cfg.seed));
    d.add("count", std::to_string(out.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& fi = out[i];
        const std::string k = "instance." + std::to_string(i) + ".";
        d.add(k + "family", family_tag_name(fi.tag));
        d.add(k + "params", fi.params);
        d.add(k + "field", to_string(fi.f1.spec()));
        d.add(k + "f1", to_string(fi.f1));
        d.add(k + "f2", to_string(fi.f2));
        d.add(k + "expected_degree", fi.expected_min_degree.str());
        if (fi.expected_h)
            d.add(k + "expected_h", to_string(*fi.expected_h));
    }
    CommandResult r;
    r.text = detail::render(cfg, d);
    return r;
}

} // namespace ccomp::cli
