#pragma once

/**
 * @file decide.hpp
 * @brief One-call decision: bounded search, then fiber closure, then cycle refutation.
 */

#include <string>
#include <vector>

#include "fiber.hpp"
#include "refute.hpp"
#include "search.hpp"

namespace ccomp {

struct DecisionOptions {
    std::uint64_t bound = 0; ///< 0 selects default_bound
    std::vector<FieldElement> seeds; ///< empty selects the single seed 0
    ClosureCaps caps;
    std::size_t max_d = 6;
    std::size_t max_ext = 16;
    CycleSearchOptions cycles;
};

struct Decision {
    Verdict verdict = Verdict::inconclusive;
    std::string stage; ///< "search", "closure", "refute" or "" when inconclusive
    SearchOutcome search;
    AnalysisReport analysis;
    std::optional<CompositeCertificate> composite;
    std::optional<RefutationCertificate> refutation;
    std::vector<std::string> log;
};

/// Runs the three stages in order and stops at the first decisive one.
inline Decision decide(const Polynomial& f1, const Polynomial& f2, const DecisionOptions& opt = {})
{
    detail::require_pair(f1, f2);
    Decision d;
    const std::uint64_t bound = opt.bound ? opt.bound : default_bound(f1, f2);
    d.search = search_lin(f1, f2, bound);
    if (d.search.status == SearchStatus::found) {
        d.verdict = Verdict::exists;
        d.stage = "search";
        d.composite = d.search.certificate;
        return d;
    }
    d.log.push_back("no composite of degree <= " + std::to_string(bound));

    std::vector<FieldElement> seeds = opt.seeds;
    if (seeds.empty())
        seeds.push_back(f1.spec().zero());
    d.analysis = analyze(f1, f2, seeds, opt.caps);
    if (d.analysis.verdict == Verdict::exists) {
        d.verdict = Verdict::exists;
        d.stage = "closure";
        d.composite = d.analysis.certificate;
        return d;
    }
    if (d.analysis.verdict == Verdict::not_exists) {
        d.verdict = Verdict::not_exists;
        d.stage = "closure";
        d.refutation = from_inconsistency(*d.analysis.refutation, f1.spec());
        return d;
    }
    for (const auto& s : d.analysis.seeds) {
        if (!s.note.empty())
            d.log.push_back("closure: " + s.note);
        for (const auto& e : s.closure.evidence)
            d.log.push_back("closure: " + e);
    }

    auto r = refute(f1, f2, opt.max_d, opt.max_ext, opt.cycles);
    for (auto& line : r.log)
        d.log.push_back("refute: " + line);
    if (r.certificate) {
        d.verdict = Verdict::not_exists;
        d.stage = "refute";
        d.refutation = std::move(r.certificate);
    }
    return d;
}

} // namespace ccomp
