// cmmlocate: locate exact pattern occurrences in symbol sequences via the
// one-hot / reference-matrix / index-set pipeline. Subcommands: fetch,
// locate, verify.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cmm/codebook.hpp"
#include "cmm/encoding.hpp"
#include "cmm/fasta.hpp"
#include "cmm/match.hpp"
#include "cmm/ncbi.hpp"

namespace {

using cmm::OccurrenceList;
using cmm::SequenceRange;

struct CommonOptions {
    std::string alphabet = "ATGC";
    std::string cache_dir;
    std::string api_key;
    bool offline = false;
};

struct LocateReport {
    std::string input_label;
    std::string pattern;
    std::optional<SequenceRange> range;
    OccurrenceList occurrences;
    double elapsed_ms = 0.0;
};

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v != nullptr ? std::string(v) : fallback;
}

std::filesystem::path resolve_cache_dir(const CommonOptions& opt) {
    if (!opt.cache_dir.empty()) return opt.cache_dir;
    const std::string env = env_or("CMMLOCATE_CACHE_DIR", "");
    if (!env.empty()) return env;
    const std::string home = env_or("HOME", "");
    if (!home.empty()) return std::filesystem::path(home) / ".cache" / "cmmlocate";
    return ".cmmlocate-cache";
}

cmm::NcbiClient make_client(const CommonOptions& opt) {
    cmm::FetchOptions fo;
    fo.cache_dir = resolve_cache_dir(opt);
    fo.offline = opt.offline;
    fo.api_key = !opt.api_key.empty() ? opt.api_key : env_or("NCBI_API_KEY", "");
    return cmm::NcbiClient(std::move(fo));
}

/// Loads the effective text: existing files are read as FASTA (first
/// record), anything else is fetched as an accession. A range slices file
/// input client-side; accession input is range-fetched server-side.
std::string load_text(const std::string& input, const std::optional<SequenceRange>& range,
                      const CommonOptions& opt) {
    if (std::filesystem::exists(input)) {
        const auto records = cmm::read_fasta_file(input);
        if (records.empty()) throw std::runtime_error("no FASTA records in " + input);
        const auto& rec = records.front();
        return range ? cmm::slice_range(rec, *range) : rec.sequence;
    }
    auto client = make_client(opt);
    const auto rec = client.fetch(input, range);
    std::cerr << "source: " << (client.last_source() == cmm::NcbiClient::Source::kCache
                                    ? "cache" : "network")
              << "\n";
    return rec.sequence;
}

/// Maps lowercase input onto uppercase alphabet symbols, leaves everything
/// else untouched; validation happens afterwards.
std::string normalize_pattern(std::string pattern, const cmm::Codebook& cb) {
    for (auto& c : pattern) {
        if (cb.contains(c)) continue;
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (cb.contains(up)) c = up;
    }
    return pattern;
}

void check_pattern(const std::string& pattern, const cmm::Codebook& cb) {
    if (pattern.empty()) throw std::runtime_error("empty pattern");
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (!cb.contains(pattern[i]))
            throw std::runtime_error(std::string("pattern symbol '") + pattern[i] +
                                     "' at position " + std::to_string(i + 1) +
                                     " is not in alphabet " + std::string(cb.alphabet()));
}

cmm::MatchStrategy parse_strategy(const std::string& name) {
    if (name == "auto") return cmm::MatchStrategy::kAuto;
    if (name == "sorted") return cmm::MatchStrategy::kSortedMerge;
    if (name == "sorted-rarest") return cmm::MatchStrategy::kSortedMergeRarest;
    if (name == "bitblock") return cmm::MatchStrategy::kBitBlock;
    throw std::runtime_error("unknown strategy: " + name);
}

void render_report(std::ostream& out, const LocateReport& report, const std::string& format) {
    if (format == "tuples") {
        if (!report.occurrences.starts.empty())
            out << cmm::format_tuples(report.occurrences) << "\n";
    } else if (format == "starts") {
        for (const auto p : report.occurrences.starts) out << p << "\n";
    } else if (format == "json-lines") {
        for (const auto p : report.occurrences.starts) {
            nlohmann::ordered_json j;
            j["start"] = p;
            j["end"] = p + report.occurrences.pattern_length - 1;
            j["pattern"] = report.pattern;
            out << j.dump() << "\n";
        }
    } else {
        throw std::runtime_error("unknown format: " + format);
    }
}

int run_fetch(const std::string& accession, const std::string& range_str,
              const std::string& out_path, const CommonOptions& opt) {
    const SequenceRange range = cmm::parse_range(range_str);
    auto client = make_client(opt);
    const std::string raw = client.fetch_raw(accession, range);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    std::cerr << "source: " << (client.last_source() == cmm::NcbiClient::Source::kCache
                                    ? "cache" : "network")
              << "\n";
    return 0;
}

int run_locate(const std::string& input, std::string pattern, const std::string& range_str,
               const std::string& format, const std::string& strategy_name,
               const CommonOptions& opt) {
    const auto cb = cmm::build_codebook(opt.alphabet);
    pattern = normalize_pattern(std::move(pattern), cb);
    check_pattern(pattern, cb);

    std::optional<SequenceRange> range;
    if (!range_str.empty()) range = cmm::parse_range(range_str);
    const std::string text = load_text(input, range, opt);

    LocateReport report;
    report.input_label = input;
    report.pattern = pattern;
    report.range = range;

    const auto t0 = std::chrono::steady_clock::now();
    report.occurrences = cmm::locate_in_text(text, pattern, cb, parse_strategy(strategy_name));
    const auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    render_report(std::cout, report, format);
    std::cerr << "occurrences: " << report.occurrences.count()
              << "  elapsed: " << report.elapsed_ms << " ms\n";
    return 0;
}

int run_verify(const std::string& input, std::string pattern, const std::string& range_str,
               bool corrupt_sets, const CommonOptions& opt) {
    const auto cb = cmm::build_codebook(opt.alphabet);
    pattern = normalize_pattern(std::move(pattern), cb);
    check_pattern(pattern, cb);

    std::optional<SequenceRange> range;
    if (!range_str.empty()) range = cmm::parse_range(range_str);
    const std::string text = load_text(input, range, opt);

    const auto d = cmm::build_reference_matrix(cb);
    auto text_sets = cmm::extract_index_sets(cmm::transform(cmm::encode_sequence(text, cb), d));
    const auto pattern_sets =
        cmm::extract_index_sets(cmm::transform(cmm::encode_sequence(pattern, cb), d));

    if (corrupt_sets) {
        // fault-injection hook: drop the first position of every set
        for (auto& set : text_sets.sets)
            if (!set.empty()) set.erase(set.begin());
    }

    const auto via_cmm =
        cmm::locate(pattern_sets, text_sets, static_cast<cmm::Position>(pattern.size()));
    const auto via_naive = cmm::naive_search(text, pattern);

    if (via_cmm.starts == via_naive.starts) {
        std::cout << "OK, " << via_cmm.count() << " occurrences\n";
        return 0;
    }

    std::size_t k = 0;
    while (k < via_cmm.starts.size() && k < via_naive.starts.size() &&
           via_cmm.starts[k] == via_naive.starts[k])
        ++k;
    auto at = [](const std::vector<cmm::Position>& v, std::size_t i) {
        return i < v.size() ? std::to_string(v[i]) : std::string("<none>");
    };
    std::cout << "MISMATCH at occurrence #" << (k + 1) << ": cmm=" << at(via_cmm.starts, k)
              << " naive=" << at(via_naive.starts, k) << "\n";
    auto dump = [](const char* label, const std::vector<cmm::Position>& v) {
        std::cout << label;
        for (const auto p : v) std::cout << " " << p;
        std::cout << "\n";
    };
    dump("cmm starts:", via_cmm.starts);
    dump("naive starts:", via_naive.starts);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact pattern location in symbol sequences via one-hot codes, a binary "
                 "reference-matrix transform, and per-symbol index-set matching"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* cmd, bool with_alphabet) {
        cmd->add_option("--cache-dir", common.cache_dir, "Cache directory for fetched records");
        cmd->add_flag("--offline", common.offline, "Never touch the network; cache only");
        cmd->add_option("--api-key", common.api_key,
                        "E-utilities API key (default: $NCBI_API_KEY)");
        if (with_alphabet)
            cmd->add_option("--alphabet", common.alphabet,
                            "Ordered symbol alphabet (default ATGC)");
    };

    std::string accession, out_path, input, pattern, range_str;
    std::string format = "tuples", strategy = "auto";
    bool corrupt_sets = false;

    auto* fetch = app.add_subcommand("fetch", "Fetch a nucleotide record range and write FASTA");
    fetch->add_option("accession", accession, "Accession, e.g. NM_000044")->required();
    fetch->add_option("--range", range_str, "1-based inclusive range A:B")->required();
    fetch->add_option("--out", out_path, "Output FASTA path")->required();
    add_common(fetch, false);

    auto* locate = app.add_subcommand("locate", "Locate all occurrences of a pattern");
    locate->add_option("input", input, "FASTA file path or accession")->required();
    locate->add_option("--pattern", pattern, "Pattern to locate")->required();
    locate->add_option("--range", range_str, "1-based inclusive range A:B");
    locate->add_option("--format", format, "Output format: tuples|starts|json-lines");
    locate->add_option("--strategy", strategy,
                       "Intersection strategy: auto|sorted|sorted-rarest|bitblock");
    add_common(locate, true);

    auto* verify = app.add_subcommand("verify", "Cross-check the pipeline against naive search");
    verify->add_option("input", input, "FASTA file path or accession")->required();
    verify->add_option("--pattern", pattern, "Pattern to locate")->required();
    verify->add_option("--range", range_str, "1-based inclusive range A:B");
    verify->add_flag("--corrupt-sets", corrupt_sets)->group("");  // test hook, hidden
    add_common(verify, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fetch->parsed()) return run_fetch(accession, range_str, out_path, common);
        if (locate->parsed())
            return run_locate(input, pattern, range_str, format, strategy, common);
        if (verify->parsed())
            return run_verify(input, pattern, range_str, corrupt_sets, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
