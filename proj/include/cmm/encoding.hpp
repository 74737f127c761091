#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmm/bits.hpp"
#include "cmm/codebook.hpp"
#include "cmm/execution.hpp"

namespace cmm {

/// 1-based sequence position as used in index sets and occurrence output.
using Position = std::uint32_t;

enum class UnknownPolicy { kZeroColumn, kReject };

/// code_width x length binary matrix, one column per sequence position.
/// Stored as code_width packed bit rows over positions, so column j holds
/// the one-hot code of the j-th symbol (all-zero for unknown symbols).
class InputBitMatrix {
public:
    InputBitMatrix(int code_width, std::size_t length);

    int code_width() const { return static_cast<int>(rows_.size()); }
    std::size_t length() const { return length_; }
    std::size_t words_per_row() const { return length_ == 0 ? 0 : rows_[0].word_count(); }

    /// Bit at code row `row`, sequence column `col` (0-based; position col+1).
    bool bit(int row, std::size_t col) const {
        return rows_[static_cast<std::size_t>(row)].test(col);
    }

    std::span<const std::uint64_t> row_words(int row) const {
        return rows_[static_cast<std::size_t>(row)].words();
    }
    BitVector& row(int r) { return rows_[static_cast<std::size_t>(r)]; }
    const BitVector& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }

    /// One-hot code of the column as a word (bit r = code row r).
    std::uint64_t column_code(std::size_t col) const;

    friend bool operator==(const InputBitMatrix&, const InputBitMatrix&) = default;

private:
    std::size_t length_;
    std::vector<BitVector> rows_;
};

/// m x n binary matrix mapping code bits (rows) to symbol channels
/// (columns); built from a one-hot codebook it is a permutation matrix.
/// Row r is kept as a channel mask word (n <= 64).
class ReferenceMatrix {
public:
    ReferenceMatrix(int rows, int cols, std::string channel_labels);

    int rows() const { return static_cast<int>(row_masks_.size()); }
    int cols() const { return cols_; }

    bool bit(int row, int col) const {
        return (row_masks_[static_cast<std::size_t>(row)] >> col) & 1u;
    }
    std::uint64_t row_mask(int row) const { return row_masks_[static_cast<std::size_t>(row)]; }
    void set(int row, int col) {
        row_masks_[static_cast<std::size_t>(row)] |= std::uint64_t{1} << col;
    }

    /// Symbol labelling channel c (the tables' w, x, y, z).
    char channel_label(int col) const { return channel_labels_[static_cast<std::size_t>(col)]; }
    std::string_view channel_labels() const { return channel_labels_; }

    /// True when every row and every column holds exactly one 1.
    bool is_permutation() const;

private:
    int cols_;
    std::string channel_labels_;
    std::vector<std::uint64_t> row_masks_;
};

/// length x alphabet_size binary matrix; row i marks the channel of the
/// symbol at position i+1. Stored channel-major as packed position bitsets
/// so per-symbol index sets and block intersections read one array each.
class IncidenceMatrix {
public:
    IncidenceMatrix(std::size_t row_count, std::string channel_labels);

    std::size_t rows() const { return row_count_; }
    int channels() const { return static_cast<int>(channel_labels_.size()); }
    char channel_label(int c) const { return channel_labels_[static_cast<std::size_t>(c)]; }
    std::string_view channel_labels() const { return channel_labels_; }

    bool bit(std::size_t row, int channel) const {
        return channel_bits_[static_cast<std::size_t>(channel)].test(row);
    }

    /// Row i gathered into a word: bit c set iff channel c marks position i+1.
    std::uint64_t row_mask(std::size_t row) const;

    const BitVector& channel(int c) const { return channel_bits_[static_cast<std::size_t>(c)]; }
    BitVector& channel(int c) { return channel_bits_[static_cast<std::size_t>(c)]; }

    friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;

private:
    std::size_t row_count_;
    std::string channel_labels_;
    std::vector<BitVector> channel_bits_;
};

/// Per-symbol sorted lists of 1-based positions, e.g. for CTCACTCCTC:
/// A(4); T(2,6,9); C(1,3,5,7,8,10).
struct SymbolIndexSets {
    std::string symbols;                         // channel order
    std::vector<std::vector<Position>> sets;     // aligned with symbols, ascending
    Position sequence_length = 0;

    const std::vector<Position>* find(char symbol) const;
    std::size_t total_size() const;

    friend bool operator==(const SymbolIndexSets&, const SymbolIndexSets&) = default;
};

/// Encodes a sequence into its one-hot column matrix. Unknown symbols
/// become all-zero columns; with UnknownPolicy::kReject they raise
/// std::invalid_argument naming the symbol and its 1-based position.
InputBitMatrix encode_sequence(std::string_view seq, const Codebook& cb,
                               UnknownPolicy policy = UnknownPolicy::kZeroColumn,
                               Execution exec = Execution::kAuto);

/// Reference matrix D: D[r][c] = 1 iff channel c's symbol has its code bit
/// at row r. Channels are ordered by alphabet ordinal.
ReferenceMatrix build_reference_matrix(const Codebook& cb);

/// Boolean product O = I^T . D (AND as multiply, OR as accumulate):
/// O[i][c] = OR_r I[r][i] & D[r][c]. Throws std::invalid_argument when
/// input.code_width != d.rows().
IncidenceMatrix transform(const InputBitMatrix& input, const ReferenceMatrix& d,
                          Execution exec = Execution::kAuto);

/// Reads each channel's set positions (1-based, ascending) off the
/// incidence matrix.
SymbolIndexSets extract_index_sets(const IncidenceMatrix& o);

namespace ref {
/// Position-at-a-time reference implementations, kept as test oracles for
/// the blockwise kernels above.
InputBitMatrix encode_sequence(std::string_view seq, const Codebook& cb,
                               UnknownPolicy policy = UnknownPolicy::kZeroColumn);
IncidenceMatrix transform(const InputBitMatrix& input, const ReferenceMatrix& d);
}  // namespace ref

// Table-style renderings used by golden tests.

/// Input matrix rows top-down from highest code bit to bit 0, each a
/// '0'/'1' string over positions 1..n ("1010101101" for the C row).
std::vector<std::string> display_input_rows(const InputBitMatrix& m);

/// D rows top-down from highest code bit to bit 0, channels left to right
/// ("0001", "0010", "0100", "1000" for the ATGC codebook).
std::vector<std::string> display_reference_rows(const ReferenceMatrix& d);

/// Incidence rows in position order 1..n, channels left to right
/// (C -> "0001", T -> "0100", A -> "1000" under ATGC).
std::vector<std::string> display_incidence_rows(const IncidenceMatrix& o);

/// "A(4); T(2,6,9); C(1,3,5,7,8,10)", with empty sets omitted.
std::string format_index_sets(const SymbolIndexSets& s);

}  // namespace cmm
