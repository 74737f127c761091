#include "cmm/fasta.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cmm {

SequenceRange::SequenceRange(std::uint32_t start_pos, std::uint32_t stop_pos)
    : start(start_pos), stop(stop_pos) {
    if (start < 1) throw std::invalid_argument("range start must be >= 1");
    if (start > stop)
        throw std::invalid_argument("range start " + std::to_string(start) +
                                    " exceeds stop " + std::to_string(stop));
}

std::string SequenceRange::to_string() const {
    return std::to_string(start) + ":" + std::to_string(stop);
}

SequenceRange parse_range(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("range must be of the form A:B, got '" + std::string(text) +
                                    "'");
    auto parse_part = [&](std::string_view part) {
        std::uint32_t value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size())
            throw std::invalid_argument("range must be of the form A:B, got '" +
                                        std::string(text) + "'");
        return value;
    };
    return SequenceRange(parse_part(text.substr(0, colon)), parse_part(text.substr(colon + 1)));
}

static std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<FastaRecord> parse_fasta(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool have_record = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (line.front() == '>') {
            FastaRecord rec;
            const std::string header = trim(std::string_view(line).substr(1));
            const auto space = header.find_first_of(" \t");
            if (space == std::string::npos) {
                rec.accession = header;
            } else {
                rec.accession = header.substr(0, space);
                rec.description = trim(std::string_view(header).substr(space + 1));
            }
            records.push_back(std::move(rec));
            have_record = true;
            continue;
        }

        if (!have_record)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": sequence data before any FASTA header");

        auto& seq = records.back().sequence;
        for (const char ch : line) {
            if (std::isspace(static_cast<unsigned char>(ch))) continue;
            seq += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        }
    }
    return records;
}

std::vector<FastaRecord> parse_fasta(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_fasta(in);
}

std::vector<FastaRecord> read_fasta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open FASTA file: " + path);
    return parse_fasta(in);
}

void write_fasta(std::ostream& out, const FastaRecord& rec, std::size_t line_width) {
    out << '>' << rec.accession;
    if (!rec.description.empty()) out << ' ' << rec.description;
    out << '\n';
    for (std::size_t i = 0; i < rec.sequence.size(); i += line_width)
        out << std::string_view(rec.sequence).substr(i, line_width) << '\n';
}

std::string to_fasta(const FastaRecord& rec, std::size_t line_width) {
    std::ostringstream out;
    write_fasta(out, rec, line_width);
    return out.str();
}

std::string slice_range(const FastaRecord& rec, SequenceRange range) {
    if (range.stop > rec.sequence.size())
        throw std::out_of_range("range " + range.to_string() + " exceeds sequence length " +
                                std::to_string(rec.sequence.size()) + " of " + rec.accession);
    return rec.sequence.substr(range.start - 1, range.length());
}

}  // namespace cmm
