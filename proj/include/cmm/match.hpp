#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cmm/encoding.hpp"

namespace cmm {

/// All (overlapping) occurrences of a pattern in a text; a start p covers
/// positions p .. p+pattern_length-1, 1-based.
struct OccurrenceList {
    Position pattern_length = 0;
    Position text_length = 0;
    std::vector<Position> starts;  // strictly increasing

    std::size_t count() const { return starts.size(); }

    friend bool operator==(const OccurrenceList&, const OccurrenceList&) = default;
};

/// Candidate-set intersection strategy for locate(). Auto picks
/// kSortedMerge for sparse sets and kBitBlock for dense texts; every
/// strategy produces identical output.
enum class MatchStrategy {
    kAuto,
    kSortedMerge,        // two-pointer merges, pattern positions 1..L
    kSortedMergeRarest,  // same merges, rarest symbol's set first
    kBitBlock,           // packed AND with shift over 64-bit blocks
};

/// Matches the pattern's per-symbol index sets against the text's:
/// start p is reported iff p+j-1 lies in the text set of the pattern
/// symbol at j, for every pattern position j. A pattern position covered
/// by no set (unknown symbol) makes the result empty. Throws
/// std::invalid_argument for pattern_length == 0; a pattern longer than
/// the text yields an empty list.
OccurrenceList locate(const SymbolIndexSets& pattern_sets, const SymbolIndexSets& text_sets,
                      Position pattern_length, MatchStrategy strategy = MatchStrategy::kAuto,
                      Execution exec = Execution::kAuto);

/// Sliding-window exact comparison; the verification oracle for locate().
/// Throws std::invalid_argument for an empty pattern.
OccurrenceList naive_search(std::string_view text, std::string_view pattern);

/// Expands starts to full position tuples: start 4 with length 3 becomes
/// (4,5,6).
std::vector<std::vector<Position>> occurrences_as_tuples(const OccurrenceList& occ);

/// "(1,2,3);(5,6,7);(8,9,10)"; an empty list renders as an empty string.
std::string format_tuples(const OccurrenceList& occ);

/// Full pipeline in one call: encode pattern and text, transform both
/// through D, extract index sets, then locate.
OccurrenceList locate_in_text(std::string_view text, std::string_view pattern, const Codebook& cb,
                              MatchStrategy strategy = MatchStrategy::kAuto,
                              Execution exec = Execution::kAuto);

}  // namespace cmm
