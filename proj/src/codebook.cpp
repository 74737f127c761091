#include "cmm/codebook.hpp"

#include <numeric>
#include <stdexcept>

namespace cmm {

static void check_alphabet(std::string_view alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("empty alphabet");
    if (alphabet.size() > 64)
        throw std::invalid_argument("alphabet larger than 64 symbols is not supported");
}

Codebook Codebook::from_alphabet(std::string_view alphabet) {
    std::vector<int> identity(alphabet.size());
    std::iota(identity.begin(), identity.end(), 0);
    return with_bit_assignment(alphabet, identity);
}

Codebook Codebook::with_bit_assignment(std::string_view alphabet,
                                       std::span<const int> bit_of_symbol) {
    check_alphabet(alphabet);
    if (bit_of_symbol.size() != alphabet.size())
        throw std::invalid_argument("bit assignment size does not match alphabet size");

    Codebook cb;
    cb.symbols_.assign(alphabet);
    cb.ordinal_.fill(-1);
    cb.bit_of_.assign(bit_of_symbol.begin(), bit_of_symbol.end());
    cb.ordinal_for_bit_.assign(alphabet.size(), -1);

    const int k = static_cast<int>(alphabet.size());
    for (int i = 0; i < k; ++i) {
        const unsigned char sym = static_cast<unsigned char>(alphabet[static_cast<std::size_t>(i)]);
        if (cb.ordinal_[sym] != -1)
            throw std::invalid_argument(std::string("duplicate alphabet symbol '") +
                                        static_cast<char>(sym) + "'");
        cb.ordinal_[sym] = static_cast<int16_t>(i);

        const int bit = bit_of_symbol[static_cast<std::size_t>(i)];
        if (bit < 0 || bit >= k)
            throw std::invalid_argument("code bit out of range for alphabet size");
        if (cb.ordinal_for_bit_[static_cast<std::size_t>(bit)] != -1)
            throw std::invalid_argument("bit assignment is not a permutation");
        cb.ordinal_for_bit_[static_cast<std::size_t>(bit)] = i;
    }
    return cb;
}

std::string Codebook::code_string(char symbol) const {
    const int k = width();
    std::string out(static_cast<std::size_t>(k), '0');
    const int bit = code_bit_of(symbol);
    // bit 0 is the rightmost character of the rendered string
    if (bit >= 0) out[static_cast<std::size_t>(k - 1 - bit)] = '1';
    return out;
}

Codebook build_codebook(std::string_view alphabet) { return Codebook::from_alphabet(alphabet); }

}  // namespace cmm
