#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cmm {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t bit_count) {
    return (bit_count + kWordBits - 1) / kWordBits;
}

/// Fixed-length bitset packed into 64-bit words; bit i lives in word i/64.
/// Bits at positions >= size() are always zero (kept clear by every mutator).
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t bit_count)
        : size_(bit_count), words_(words_for_bits(bit_count), 0) {}

    std::size_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }

    void set(std::size_t i) { words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits); }
    bool test(std::size_t i) const {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }

    void fill_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        clear_tail();
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// Visits set bit indices in ascending order.
    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w != 0) {
                const int b = std::countr_zero(w);
                f(k * kWordBits + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    void clear_tail() {
        const std::size_t rem = size_ % kWordBits;
        if (rem != 0 && !words_.empty()) words_.back() &= (~std::uint64_t{0}) >> (kWordBits - rem);
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Reads word w of (src >> shift) where src is a word array of `count` words.
/// Words past the end are treated as zero.
inline std::uint64_t shifted_word(std::span<const std::uint64_t> src, std::size_t w,
                                  std::size_t shift) {
    const std::size_t q = shift / kWordBits;
    const std::size_t r = shift % kWordBits;
    const std::size_t lo = w + q;
    std::uint64_t out = lo < src.size() ? src[lo] >> r : 0;
    if (r != 0 && lo + 1 < src.size()) out |= src[lo + 1] << (kWordBits - r);
    return out;
}

}  // namespace cmm
