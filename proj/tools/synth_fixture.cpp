// synth_fixture: builds a deterministic test sequence that contains a
// motif at exactly the starts listed in a pin file, and nowhere else.
// Output is a FASTA file named like a cache entry plus a metadata sidecar
// recording how it was made, so a fixture directory can stand in for the
// fetch cache in offline runs.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cmm/fasta.hpp"
#include "cmm/match.hpp"
#include "cmm/ncbi.hpp"

namespace {

std::vector<cmm::Position> read_starts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read starts file " + path);
    std::vector<cmm::Position> starts;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        for (auto& c : line)
            if (c == ',') c = ' ';
        std::istringstream fields(line);
        cmm::Position p = 0;
        while (fields >> p) starts.push_back(p);
    }
    std::sort(starts.begin(), starts.end());
    if (starts.empty()) throw std::runtime_error("no starts in " + path);
    if (std::adjacent_find(starts.begin(), starts.end()) != starts.end())
        throw std::runtime_error("duplicate start in " + path);
    return starts;
}

std::string build_sequence(std::size_t length, const std::string& motif,
                           const std::vector<cmm::Position>& starts, std::uint32_t seed) {
    static const std::string bases = "ACGT";
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, 3);

    std::string seq(length, 'A');
    for (auto& c : seq) c = bases[static_cast<std::size_t>(pick(rng))];

    // Stamp the motif; overlapping stamps must agree on shared positions.
    std::vector<bool> pinned(length, false);
    for (const auto s : starts) {
        if (s < 1 || s + motif.size() - 1 > length)
            throw std::runtime_error("start " + std::to_string(s) + " does not fit in length " +
                                     std::to_string(length));
        for (std::size_t j = 0; j < motif.size(); ++j) {
            const std::size_t at = s - 1 + j;
            if (pinned[at] && seq[at] != motif[j])
                throw std::runtime_error("conflicting stamps at position " +
                                         std::to_string(at + 1));
            seq[at] = motif[j];
            pinned[at] = true;
        }
    }

    // Knock out accidental occurrences: rewrite an unpinned base inside
    // each one until the naive scan finds exactly the pinned starts.
    const std::set<cmm::Position> wanted(starts.begin(), starts.end());
    for (int round = 0; round < 1000; ++round) {
        bool clean = true;
        for (const auto s : cmm::naive_search(seq, motif).starts) {
            if (wanted.count(s)) continue;
            clean = false;
            bool repaired = false;
            for (std::size_t j = 0; j < motif.size() && !repaired; ++j) {
                const std::size_t at = s - 1 + j;
                if (pinned[at]) continue;
                char replacement = seq[at];
                while (replacement == seq[at])
                    replacement = bases[static_cast<std::size_t>(pick(rng))];
                seq[at] = replacement;
                repaired = true;
            }
            if (!repaired)
                throw std::runtime_error("occurrence at " + std::to_string(s) +
                                         " lies entirely inside pinned stamps");
        }
        if (clean) {
            if (cmm::naive_search(seq, motif).starts !=
                std::vector<cmm::Position>(wanted.begin(), wanted.end()))
                throw std::runtime_error("verification failed after repair");
            return seq;
        }
    }
    throw std::runtime_error("could not eliminate accidental occurrences");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate a pinned-occurrence FASTA fixture"};

    std::string accession, range_str, motif, starts_path, out_dir = ".", description;
    std::uint32_t seed = 1;
    app.add_option("--accession", accession)->required();
    app.add_option("--range", range_str, "1-based inclusive range A:B")->required();
    app.add_option("--motif", motif)->required();
    app.add_option("--starts", starts_path, "File of 1-based motif starts")->required();
    app.add_option("--seed", seed, "Filler RNG seed");
    app.add_option("--out-dir", out_dir);
    app.add_option("--description", description, "FASTA header description");

    CLI11_PARSE(app, argc, argv);

    try {
        const cmm::SequenceRange range = cmm::parse_range(range_str);
        const std::size_t length = range.stop - range.start + 1;
        const auto starts = read_starts_file(starts_path);
        const std::string seq = build_sequence(length, motif, starts, seed);

        const std::string key = cmm::NcbiClient::cache_key(accession, range);
        cmm::FastaRecord rec;
        rec.accession = accession + ":" + range.to_string();
        rec.description = description;
        rec.sequence = seq;

        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        {
            std::ofstream out(dir / (key + ".fasta"), std::ios::binary);
            if (!out) throw std::runtime_error("cannot write fixture FASTA");
            cmm::write_fasta(out, rec);
        }
        {
            std::ofstream meta(dir / (key + ".meta"));
            if (!meta) throw std::runtime_error("cannot write fixture metadata");
            meta << "accession=" << accession << "\n"
                 << "seq_start=" << range.start << "\n"
                 << "seq_stop=" << range.stop << "\n"
                 << "source=synthetic\n"
                 << "generator=synth_fixture\n"
                 << "seed=" << seed << "\n"
                 << "motif=" << motif << "\n"
                 << "motif_count=" << starts.size() << "\n";
        }
        std::cout << key << ": " << length << " bases, " << starts.size() << " x " << motif
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
