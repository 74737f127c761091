#include "cmm/match.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmm {

namespace {

struct Constraint {
    Position offset;                   // pattern position j as offset j-1
    const std::vector<Position>* set;  // text positions of the pattern symbol at j
};

const std::vector<Position> kEmptySet;

/// Builds the constraint list (one entry per pattern position) and checks
/// that every pattern position 1..L is covered by some set.
bool collect_constraints(const SymbolIndexSets& pattern_sets, const SymbolIndexSets& text_sets,
                         Position pattern_length, std::vector<Constraint>& out) {
    BitVector covered(pattern_length);
    for (std::size_t c = 0; c < pattern_sets.sets.size(); ++c) {
        const auto* text_set = text_sets.find(pattern_sets.symbols[c]);
        for (const Position j : pattern_sets.sets[c]) {
            if (j < 1 || j > pattern_length)
                throw std::invalid_argument("pattern set position " + std::to_string(j) +
                                            " outside pattern of length " +
                                            std::to_string(pattern_length));
            covered.set(j - 1);
            out.push_back({j - 1, text_set ? text_set : &kEmptySet});
        }
    }
    return covered.popcount() == pattern_length;
}

MatchStrategy resolve_strategy(MatchStrategy strategy, const std::vector<Constraint>& cons,
                               Position text_length) {
    if (strategy != MatchStrategy::kAuto) return strategy;
    std::size_t merge_cost = 0;
    for (const auto& c : cons) merge_cost += c.set->size();
    const std::size_t bit_cost = (cons.size() + 1) * (words_for_bits(text_length) + 1);
    return merge_cost > 4 * bit_cost ? MatchStrategy::kBitBlock : MatchStrategy::kSortedMerge;
}

std::vector<Position> run_sorted_merge(std::vector<Constraint> cons, Position pattern_length,
                                       Position text_length, bool rarest_first) {
    if (rarest_first)
        std::stable_sort(cons.begin(), cons.end(), [](const Constraint& a, const Constraint& b) {
            return a.set->size() < b.set->size();
        });
    else
        std::stable_sort(cons.begin(), cons.end(), [](const Constraint& a, const Constraint& b) {
            return a.offset < b.offset;
        });

    const Position last_start = text_length - pattern_length + 1;

    // Seed candidates from the first constraint, then refine; each merge
    // only discards, so |candidates| is non-increasing.
    std::vector<Position> cand;
    {
        const auto& first = cons.front();
        cand.reserve(first.set->size());
        for (const Position q : *first.set)
            if (q > first.offset && q - first.offset <= last_start)
                cand.push_back(q - first.offset);
    }

    for (std::size_t k = 1; k < cons.size() && !cand.empty(); ++k) {
        const auto& set = *cons[k].set;
        const Position off = cons[k].offset;
        std::vector<Position> kept;
        kept.reserve(std::min(cand.size(), set.size()));
        std::size_t i = 0, j = 0;
        while (i < cand.size() && j < set.size()) {
            const Position target = cand[i] + off;
            if (set[j] < target)
                ++j;
            else if (set[j] > target)
                ++i;
            else {
                kept.push_back(cand[i]);
                ++i;
                ++j;
            }
        }
        cand = std::move(kept);
    }
    return cand;
}

std::vector<Position> run_bit_block(const std::vector<Constraint>& cons,
                                    const SymbolIndexSets& text_sets, Position text_length,
                                    Execution exec) {
    // One packed position bitset per distinct pattern symbol; symbols with
    // no text set share the trailing empty slot.
    std::vector<BitVector> symbol_bits(text_sets.sets.size() + 1);
    auto bits_for = [&](const Constraint& c) -> const BitVector& {
        std::size_t slot = symbol_bits.size() - 1;
        if (c.set != &kEmptySet)
            slot = static_cast<std::size_t>(c.set - text_sets.sets.data());
        BitVector& bv = symbol_bits[slot];
        if (bv.size() != text_length) {
            bv = BitVector(text_length);
            for (const Position q : *c.set) bv.set(q - 1);
        }
        return bv;
    };

    BitVector acc(text_length);
    acc.fill_all();
    const std::size_t words = acc.word_count();
    const bool par = use_parallel(exec, words);
    (void)par;

    for (const auto& c : cons) {
        const auto src = bits_for(c).words();
        auto dst = acc.words();
        const std::size_t shift = c.offset;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
        for (std::int64_t w = 0; w < static_cast<std::int64_t>(words); ++w)
            dst[static_cast<std::size_t>(w)] &=
                shifted_word(src, static_cast<std::size_t>(w), shift);
    }

    std::vector<Position> starts;
    starts.reserve(acc.popcount());
    acc.for_each_set([&](std::size_t p) { starts.push_back(static_cast<Position>(p) + 1); });
    return starts;
}

}  // namespace

OccurrenceList locate(const SymbolIndexSets& pattern_sets, const SymbolIndexSets& text_sets,
                      Position pattern_length, MatchStrategy strategy, Execution exec) {
    if (pattern_length == 0) throw std::invalid_argument("empty pattern");
    if (pattern_sets.sequence_length != pattern_length)
        throw std::invalid_argument("pattern sets describe length " +
                                    std::to_string(pattern_sets.sequence_length) +
                                    ", expected " + std::to_string(pattern_length));

    OccurrenceList out;
    out.pattern_length = pattern_length;
    out.text_length = text_sets.sequence_length;
    if (pattern_length > text_sets.sequence_length) return out;

    std::vector<Constraint> cons;
    if (!collect_constraints(pattern_sets, text_sets, pattern_length, cons))
        return out;  // a pattern position holds an unknown symbol

    switch (resolve_strategy(strategy, cons, out.text_length)) {
        case MatchStrategy::kSortedMerge:
            out.starts = run_sorted_merge(std::move(cons), pattern_length, out.text_length, false);
            break;
        case MatchStrategy::kSortedMergeRarest:
            out.starts = run_sorted_merge(std::move(cons), pattern_length, out.text_length, true);
            break;
        case MatchStrategy::kBitBlock:
            out.starts = run_bit_block(cons, text_sets, out.text_length, exec);
            break;
        case MatchStrategy::kAuto:
            break;  // resolved above
    }
    return out;
}

OccurrenceList naive_search(std::string_view text, std::string_view pattern) {
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    if (text.size() > std::numeric_limits<Position>::max())
        throw std::invalid_argument("text longer than 2^32-1 positions is not supported");

    OccurrenceList out;
    out.pattern_length = static_cast<Position>(pattern.size());
    out.text_length = static_cast<Position>(text.size());
    for (std::size_t from = 0;;) {
        const std::size_t p = text.find(pattern, from);
        if (p == std::string_view::npos) break;
        out.starts.push_back(static_cast<Position>(p) + 1);
        from = p + 1;  // overlapping occurrences are reported
    }
    return out;
}

std::vector<std::vector<Position>> occurrences_as_tuples(const OccurrenceList& occ) {
    std::vector<std::vector<Position>> tuples;
    tuples.reserve(occ.starts.size());
    for (const Position p : occ.starts) {
        std::vector<Position> t(occ.pattern_length);
        for (Position j = 0; j < occ.pattern_length; ++j) t[j] = p + j;
        tuples.push_back(std::move(t));
    }
    return tuples;
}

std::string format_tuples(const OccurrenceList& occ) {
    std::string out;
    for (std::size_t i = 0; i < occ.starts.size(); ++i) {
        if (i != 0) out += ';';
        out += '(';
        for (Position j = 0; j < occ.pattern_length; ++j) {
            if (j != 0) out += ',';
            out += std::to_string(occ.starts[i] + j);
        }
        out += ')';
    }
    return out;
}

OccurrenceList locate_in_text(std::string_view text, std::string_view pattern, const Codebook& cb,
                              MatchStrategy strategy, Execution exec) {
    const ReferenceMatrix d = build_reference_matrix(cb);
    const SymbolIndexSets text_sets =
        extract_index_sets(transform(encode_sequence(text, cb, UnknownPolicy::kZeroColumn, exec),
                                     d, exec));
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    const SymbolIndexSets pattern_sets = extract_index_sets(
        transform(encode_sequence(pattern, cb, UnknownPolicy::kZeroColumn, exec), d, exec));
    return locate(pattern_sets, text_sets, static_cast<Position>(pattern.size()), strategy, exec);
}

}  // namespace cmm
