#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmm {

/// Bijection between alphabet symbols and one-hot bit codes of width k
/// (k = alphabet size). The default assignment gives the symbol at ordinal
/// i the code with bit i set, where bit 0 is the least significant
/// (rightmost) bit of the rendered code string: alphabet "ATGC" yields
/// A=0001, T=0010, G=0100, C=1000.
class Codebook {
public:
    /// Canonical codebook: symbol at ordinal i gets code bit i.
    /// Throws std::invalid_argument for an empty alphabet, a duplicate
    /// symbol, or more than 64 symbols.
    static Codebook from_alphabet(std::string_view alphabet);

    /// Codebook with an explicit bit assignment: symbol at ordinal i gets
    /// code bit bit_of_symbol[i]. The assignment must be a permutation of
    /// 0..k-1. Used to exercise non-canonical (relabelled) codebooks.
    static Codebook with_bit_assignment(std::string_view alphabet,
                                        std::span<const int> bit_of_symbol);

    int width() const { return static_cast<int>(symbols_.size()); }
    int alphabet_size() const { return static_cast<int>(symbols_.size()); }
    std::string_view alphabet() const { return symbols_; }

    bool contains(char symbol) const { return ordinal_of(symbol) >= 0; }

    /// Ordinal of the symbol in the alphabet order, -1 if absent.
    int ordinal_of(char symbol) const {
        return ordinal_[static_cast<unsigned char>(symbol)];
    }

    /// Index of the single set bit in the symbol's code, -1 if absent.
    int code_bit_of(char symbol) const {
        const int o = ordinal_of(symbol);
        return o < 0 ? -1 : bit_of_[static_cast<std::size_t>(o)];
    }

    /// One-hot code as a word (0 for symbols outside the alphabet).
    std::uint64_t code_of(char symbol) const {
        const int b = code_bit_of(symbol);
        return b < 0 ? 0 : std::uint64_t{1} << b;
    }

    char symbol_at(int ordinal) const { return symbols_[static_cast<std::size_t>(ordinal)]; }

    /// Symbol owning a given code bit.
    char symbol_for_bit(int bit) const {
        return symbols_[static_cast<std::size_t>(ordinal_for_bit_[static_cast<std::size_t>(bit)])];
    }

    /// Code rendered as a width-k bit string, bit 0 rightmost ("0001").
    std::string code_string(char symbol) const;

private:
    Codebook() = default;

    std::string symbols_;                 // alphabet in ordinal order
    std::array<int16_t, 256> ordinal_{};  // symbol -> ordinal, -1 if absent
    std::vector<int> bit_of_;             // ordinal -> code bit
    std::vector<int> ordinal_for_bit_;    // code bit -> ordinal
};

/// Alphabet of the worked examples, in code order: A=0001 .. C=1000.
inline constexpr std::string_view kDnaAlphabet = "ATGC";

Codebook build_codebook(std::string_view alphabet);

}  // namespace cmm
