#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cmm {

/// One FASTA record; the sequence is stored unwrapped and uppercased.
struct FastaRecord {
    std::string accession;    // first token of the header line
    std::string description;  // remainder of the header, trimmed
    std::string sequence;

    friend bool operator==(const FastaRecord&, const FastaRecord&) = default;
};

/// 1-based inclusive coordinate range; start <= stop enforced on
/// construction.
struct SequenceRange {
    std::uint32_t start = 1;
    std::uint32_t stop = 1;

    SequenceRange(std::uint32_t start_pos, std::uint32_t stop_pos);
    std::uint32_t length() const { return stop - start + 1; }
    std::string to_string() const;  // "1:700"

    friend bool operator==(const SequenceRange&, const SequenceRange&) = default;
};

/// Parses "A:B" (e.g. "1:700"). Throws std::invalid_argument on malformed
/// input or an inverted range.
SequenceRange parse_range(std::string_view text);

/// Parses FASTA text: '>' headers followed by wrapped sequence lines.
/// Sequence lines are concatenated, whitespace-stripped and uppercased.
/// Empty input yields an empty list; sequence data before any header
/// throws std::runtime_error with the offending line number.
std::vector<FastaRecord> parse_fasta(std::istream& in);
std::vector<FastaRecord> parse_fasta(std::string_view text);

std::vector<FastaRecord> read_fasta_file(const std::string& path);

/// Renders a record with sequence lines wrapped at line_width columns.
std::string to_fasta(const FastaRecord& rec, std::size_t line_width = 70);
void write_fasta(std::ostream& out, const FastaRecord& rec, std::size_t line_width = 70);

/// Positions start..stop of the record's sequence, 1-based inclusive.
/// Throws std::out_of_range when the range exceeds the sequence, stating
/// both lengths.
std::string slice_range(const FastaRecord& rec, SequenceRange range);

}  // namespace cmm
