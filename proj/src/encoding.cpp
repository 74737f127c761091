#include "cmm/encoding.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmm {

InputBitMatrix::InputBitMatrix(int code_width, std::size_t length)
    : length_(length), rows_(static_cast<std::size_t>(code_width), BitVector(length)) {}

std::uint64_t InputBitMatrix::column_code(std::size_t col) const {
    std::uint64_t code = 0;
    for (int r = 0; r < code_width(); ++r)
        if (bit(r, col)) code |= std::uint64_t{1} << r;
    return code;
}

ReferenceMatrix::ReferenceMatrix(int rows, int cols, std::string channel_labels)
    : cols_(cols), channel_labels_(std::move(channel_labels)),
      row_masks_(static_cast<std::size_t>(rows), 0) {
    if (cols_ < 0 || cols_ > 64)
        throw std::invalid_argument("reference matrix wider than 64 channels is not supported");
}

bool ReferenceMatrix::is_permutation() const {
    if (rows() != cols_) return false;
    std::uint64_t column_cover = 0;
    for (int r = 0; r < rows(); ++r) {
        const std::uint64_t mask = row_mask(r);
        if (std::popcount(mask) != 1) return false;
        if (column_cover & mask) return false;
        column_cover |= mask;
    }
    return column_cover == (cols_ == 64 ? ~std::uint64_t{0}
                                        : (std::uint64_t{1} << cols_) - 1);
}

IncidenceMatrix::IncidenceMatrix(std::size_t row_count, std::string channel_labels)
    : row_count_(row_count), channel_labels_(std::move(channel_labels)),
      channel_bits_(channel_labels_.size(), BitVector(row_count)) {}

std::uint64_t IncidenceMatrix::row_mask(std::size_t row) const {
    std::uint64_t mask = 0;
    for (int c = 0; c < channels(); ++c)
        if (bit(row, c)) mask |= std::uint64_t{1} << c;
    return mask;
}

const std::vector<Position>* SymbolIndexSets::find(char symbol) const {
    const auto at = symbols.find(symbol);
    return at == std::string::npos ? nullptr : &sets[at];
}

std::size_t SymbolIndexSets::total_size() const {
    std::size_t n = 0;
    for (const auto& s : sets) n += s.size();
    return n;
}

namespace {

std::array<int, 256> code_bit_table(const Codebook& cb) {
    std::array<int, 256> table;
    table.fill(-1);
    for (int i = 0; i < cb.width(); ++i) {
        const char sym = cb.symbol_at(i);
        table[static_cast<unsigned char>(sym)] = cb.code_bit_of(sym);
    }
    return table;
}

void check_length_fits(std::size_t length) {
    if (length > std::numeric_limits<Position>::max())
        throw std::invalid_argument("sequence longer than 2^32-1 positions is not supported");
}

}  // namespace

InputBitMatrix encode_sequence(std::string_view seq, const Codebook& cb, UnknownPolicy policy,
                               Execution exec) {
    check_length_fits(seq.size());
    const auto table = code_bit_table(cb);

    if (policy == UnknownPolicy::kReject) {
        for (std::size_t p = 0; p < seq.size(); ++p)
            if (table[static_cast<unsigned char>(seq[p])] < 0)
                throw std::invalid_argument(std::string("unknown symbol '") + seq[p] +
                                            "' at position " + std::to_string(p + 1));
    }

    InputBitMatrix out(cb.width(), seq.size());
    const std::size_t n = seq.size();
    const std::size_t words = words_for_bits(n);
    const int m = cb.width();
    const bool par = use_parallel(exec, words);
    (void)par;

    // One thread owns word w of every row, so rows can be written race-free.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::int64_t w = 0; w < static_cast<std::int64_t>(words); ++w) {
        std::uint64_t local[64] = {};
        const std::size_t base = static_cast<std::size_t>(w) * kWordBits;
        const std::size_t end = std::min(base + kWordBits, n);
        for (std::size_t p = base; p < end; ++p) {
            const int b = table[static_cast<unsigned char>(seq[p])];
            if (b >= 0) local[b] |= std::uint64_t{1} << (p - base);
        }
        for (int r = 0; r < m; ++r) out.row(r).words()[static_cast<std::size_t>(w)] = local[r];
    }
    return out;
}

ReferenceMatrix build_reference_matrix(const Codebook& cb) {
    ReferenceMatrix d(cb.width(), cb.alphabet_size(), std::string(cb.alphabet()));
    for (int c = 0; c < cb.alphabet_size(); ++c)
        d.set(cb.code_bit_of(cb.symbol_at(c)), c);
    return d;
}

IncidenceMatrix transform(const InputBitMatrix& input, const ReferenceMatrix& d, Execution exec) {
    if (input.code_width() != d.rows())
        throw std::invalid_argument("input code width " + std::to_string(input.code_width()) +
                                    " does not match reference matrix rows " +
                                    std::to_string(d.rows()));

    IncidenceMatrix out(input.length(), std::string(d.channel_labels()));
    const std::size_t words = input.words_per_row();
    const bool par = use_parallel(exec, words);
    (void)par;

    for (int c = 0; c < d.cols(); ++c) {
        // rows of I contributing to channel c, i.e. rows r with D[r][c] = 1
        std::vector<std::span<const std::uint64_t>> sources;
        for (int r = 0; r < d.rows(); ++r)
            if (d.bit(r, c)) sources.push_back(input.row_words(r));

        auto dst = out.channel(c).words();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
        for (std::int64_t w = 0; w < static_cast<std::int64_t>(words); ++w) {
            std::uint64_t acc = 0;
            for (const auto& src : sources) acc |= src[static_cast<std::size_t>(w)];
            dst[static_cast<std::size_t>(w)] = acc;
        }
    }
    return out;
}

SymbolIndexSets extract_index_sets(const IncidenceMatrix& o) {
    check_length_fits(o.rows());
    SymbolIndexSets s;
    s.symbols.assign(o.channel_labels());
    s.sequence_length = static_cast<Position>(o.rows());
    s.sets.resize(s.symbols.size());
    for (int c = 0; c < o.channels(); ++c) {
        auto& set = s.sets[static_cast<std::size_t>(c)];
        set.reserve(o.channel(c).popcount());
        o.channel(c).for_each_set(
            [&](std::size_t i) { set.push_back(static_cast<Position>(i) + 1); });
    }
    return s;
}

namespace ref {

InputBitMatrix encode_sequence(std::string_view seq, const Codebook& cb, UnknownPolicy policy) {
    check_length_fits(seq.size());
    InputBitMatrix out(cb.width(), seq.size());
    for (std::size_t p = 0; p < seq.size(); ++p) {
        const int b = cb.code_bit_of(seq[p]);
        if (b < 0) {
            if (policy == UnknownPolicy::kReject)
                throw std::invalid_argument(std::string("unknown symbol '") + seq[p] +
                                            "' at position " + std::to_string(p + 1));
            continue;
        }
        out.row(b).set(p);
    }
    return out;
}

IncidenceMatrix transform(const InputBitMatrix& input, const ReferenceMatrix& d) {
    if (input.code_width() != d.rows())
        throw std::invalid_argument("input code width " + std::to_string(input.code_width()) +
                                    " does not match reference matrix rows " +
                                    std::to_string(d.rows()));
    IncidenceMatrix out(input.length(), std::string(d.channel_labels()));
    for (std::size_t i = 0; i < input.length(); ++i) {
        for (int c = 0; c < d.cols(); ++c) {
            bool set = false;
            for (int r = 0; r < d.rows() && !set; ++r) set = input.bit(r, i) && d.bit(r, c);
            if (set) out.channel(c).set(i);
        }
    }
    return out;
}

}  // namespace ref

std::vector<std::string> display_input_rows(const InputBitMatrix& m) {
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(m.code_width()));
    for (int r = m.code_width() - 1; r >= 0; --r) {
        std::string line(m.length(), '0');
        for (std::size_t j = 0; j < m.length(); ++j)
            if (m.bit(r, j)) line[j] = '1';
        rows.push_back(std::move(line));
    }
    return rows;
}

std::vector<std::string> display_reference_rows(const ReferenceMatrix& d) {
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(d.rows()));
    for (int r = d.rows() - 1; r >= 0; --r) {
        std::string line(static_cast<std::size_t>(d.cols()), '0');
        for (int c = 0; c < d.cols(); ++c)
            if (d.bit(r, c)) line[static_cast<std::size_t>(c)] = '1';
        rows.push_back(std::move(line));
    }
    return rows;
}

std::vector<std::string> display_incidence_rows(const IncidenceMatrix& o) {
    std::vector<std::string> rows;
    rows.reserve(o.rows());
    for (std::size_t i = 0; i < o.rows(); ++i) {
        std::string line(static_cast<std::size_t>(o.channels()), '0');
        for (int c = 0; c < o.channels(); ++c)
            if (o.bit(i, c)) line[static_cast<std::size_t>(c)] = '1';
        rows.push_back(std::move(line));
    }
    return rows;
}

std::string format_index_sets(const SymbolIndexSets& s) {
    std::string out;
    for (std::size_t c = 0; c < s.sets.size(); ++c) {
        if (s.sets[c].empty()) continue;
        if (!out.empty()) out += "; ";
        out += s.symbols[c];
        out += '(';
        for (std::size_t i = 0; i < s.sets[c].size(); ++i) {
            if (i != 0) out += ',';
            out += std::to_string(s.sets[c][i]);
        }
        out += ')';
    }
    return out;
}

}  // namespace cmm
