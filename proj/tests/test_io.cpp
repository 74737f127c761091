#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "cmm/fasta.hpp"
#include "cmm/ncbi.hpp"

using namespace cmm;

namespace {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::mt19937_64 rng(std::random_device{}());
        path = std::filesystem::temp_directory_path() /
               ("cmm_test_" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

const std::string kFastaBody =
    ">NM_999999:1-40 synthetic example record\n"
    "ACGTACGTACGTACGTACGT\n"
    "acgtacgtacgtacgtacgt\n";

HttpGet fixed_transport(int status, std::string body, int* calls = nullptr,
                        std::string* seen_url = nullptr) {
    return [=](const std::string& url) -> HttpResponse {
        if (calls != nullptr) ++*calls;
        if (seen_url != nullptr) *seen_url = url;
        return {status, body, status == 0 ? "simulated transport failure" : ""};
    };
}

}  // namespace

TEST_CASE("FASTA parsing splits header, uppercases and joins sequence lines") {
    const auto records = parse_fasta(kFastaBody);
    REQUIRE(records.size() == 1);
    CHECK(records[0].accession == "NM_999999:1-40");
    CHECK(records[0].description == "synthetic example record");
    CHECK(records[0].sequence == "ACGTACGTACGTACGTACGTACGTACGTACGTACGTACGT");
}

TEST_CASE("FASTA parsing handles CRLF, blank lines and several records") {
    const std::string body = ">a one\r\nAC GT\r\n\r\n>b\nTT\nCC\n";
    const auto records = parse_fasta(body);
    REQUIRE(records.size() == 2);
    CHECK(records[0].accession == "a");
    CHECK(records[0].description == "one");
    CHECK(records[0].sequence == "ACGT");
    CHECK(records[1].accession == "b");
    CHECK(records[1].description.empty());
    CHECK(records[1].sequence == "TTCC");
}

TEST_CASE("sequence data before any header is an error") {
    CHECK_THROWS_WITH_AS((void)parse_fasta("ACGT\n>late\nAC\n"),
                         "line 1: sequence data before any FASTA header",
                         std::runtime_error);
}

TEST_CASE("FASTA writing wraps at the line width and round-trips") {
    FastaRecord rec;
    rec.accession = "X1";
    rec.description = "wrap test";
    rec.sequence = std::string(150, 'A');
    const auto text = to_fasta(rec, 70);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == ">X1 wrap test");
    std::getline(lines, line);
    CHECK(line.size() == 70);
    const auto back = parse_fasta(text);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == rec);
}

TEST_CASE("range parsing accepts A:B and rejects malformed input") {
    const auto r = parse_range("1:700");
    CHECK(r.start == 1);
    CHECK(r.stop == 700);
    CHECK(r.to_string() == "1:700");
    CHECK(parse_range("510:510") == SequenceRange(510, 510));
    for (const auto* bad : {"", "5", "5:", ":7", "a:b", "0:5", "9:2", "1:700:9"})
        CHECK_THROWS_AS((void)parse_range(bad), std::invalid_argument);
}

TEST_CASE("slicing respects 1-based inclusive bounds") {
    FastaRecord rec;
    rec.accession = "X1";
    rec.sequence = "ABCDEFGHIJ";
    CHECK(slice_range(rec, SequenceRange(1, 10)) == "ABCDEFGHIJ");
    CHECK(slice_range(rec, SequenceRange(2, 4)) == "BCD");
    CHECK(slice_range(rec, SequenceRange(10, 10)) == "J");
    CHECK_THROWS_AS((void)slice_range(rec, SequenceRange(5, 11)), std::out_of_range);
}

TEST_CASE("FASTA files round-trip through the filesystem") {
    TempDir dir;
    const auto file = dir.path / "rec.fasta";
    {
        std::ofstream out(file);
        out << kFastaBody;
    }
    const auto records = read_fasta_file(file.string());
    REQUIRE(records.size() == 1);
    CHECK(records[0].sequence.size() == 40);
    CHECK_THROWS_AS((void)read_fasta_file((dir.path / "absent.fasta").string()),
                    std::runtime_error);
}

TEST_CASE("efetch URLs carry range and API key parameters") {
    CHECK(NcbiClient::efetch_url("NM_000044", SequenceRange(1, 700), "") ==
          "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi"
          "?db=nuccore&id=NM_000044&rettype=fasta&retmode=text&seq_start=1&seq_stop=700");
    CHECK(NcbiClient::efetch_url("X", std::nullopt, "k e y") ==
          "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi"
          "?db=nuccore&id=X&rettype=fasta&retmode=text&api_key=k%20e%20y");
}

TEST_CASE("cache keys sanitize accessions and encode the range") {
    CHECK(NcbiClient::cache_key("NM_000044", SequenceRange(1, 700)) == "NM_000044_1-700");
    CHECK(NcbiClient::cache_key("AH003505S1", SequenceRange(1, 2465)) == "AH003505S1_1-2465");
    CHECK(NcbiClient::cache_key("NM_000044", std::nullopt) == "NM_000044_full");
    CHECK(NcbiClient::cache_key("odd/acc name", std::nullopt) == "odd_acc_name_full");
}

TEST_CASE("fetch caches the raw response and replays it without the network") {
    TempDir dir;
    int calls = 0;
    std::string seen_url;
    FetchOptions opt;
    opt.cache_dir = dir.path;
    opt.api_key = "demo";

    NcbiClient client(opt, fixed_transport(200, kFastaBody, &calls, &seen_url));
    const auto rec = client.fetch("NM_999999", SequenceRange(1, 40));
    CHECK(client.last_source() == NcbiClient::Source::kNetwork);
    CHECK(calls == 1);
    CHECK(seen_url == NcbiClient::efetch_url("NM_999999", SequenceRange(1, 40), "demo"));
    CHECK(rec.sequence.size() == 40);
    CHECK(std::filesystem::exists(dir.path / "NM_999999_1-40.fasta"));

    const auto meta = read_metadata(dir.path / "NM_999999_1-40.meta");
    CHECK(meta.at("accession") == "NM_999999");
    CHECK(meta.at("seq_start") == "1");
    CHECK(meta.at("seq_stop") == "40");
    CHECK(meta.at("source") == "network");
    CHECK(meta.count("retrieved") == 1);

    // second client gets a dead transport; the cache must answer
    NcbiClient cached(opt, fixed_transport(0, "", &calls));
    const auto again = cached.fetch("NM_999999", SequenceRange(1, 40));
    CHECK(cached.last_source() == NcbiClient::Source::kCache);
    CHECK(calls == 1);
    CHECK(again == rec);
    CHECK(cached.fetch_raw("NM_999999", SequenceRange(1, 40)) == kFastaBody);
}

TEST_CASE("HTTP failures surface their status and cache nothing") {
    TempDir dir;
    FetchOptions opt;
    opt.cache_dir = dir.path;
    NcbiClient client(opt, fixed_transport(404, "not found"));
    CHECK_THROWS_WITH_AS((void)client.fetch("NR_0", std::nullopt),
                         "efetch HTTP 404 for NR_0", std::runtime_error);
    CHECK_FALSE(std::filesystem::exists(dir.path / "NR_0_full.fasta"));
}

TEST_CASE("transport failures and garbage bodies are not cached") {
    TempDir dir;
    FetchOptions opt;
    opt.cache_dir = dir.path;

    NcbiClient dead(opt, fixed_transport(0, ""));
    CHECK_THROWS_AS((void)dead.fetch("X1", std::nullopt), std::runtime_error);

    NcbiClient garbage(opt, fixed_transport(200, "<html>maintenance</html>"));
    CHECK_THROWS_AS((void)garbage.fetch("X1", std::nullopt), std::runtime_error);
    CHECK_FALSE(std::filesystem::exists(dir.path / "X1_full.fasta"));
}

TEST_CASE("offline mode serves the cache and refuses the network") {
    TempDir dir;
    FetchOptions opt;
    opt.cache_dir = dir.path;
    opt.offline = true;

    int calls = 0;
    NcbiClient client(opt, fixed_transport(200, kFastaBody, &calls));
    CHECK_THROWS_AS((void)client.fetch("NM_999999", SequenceRange(1, 40)),
                    std::runtime_error);
    CHECK(calls == 0);

    // seed the cache the way a fixture directory would
    {
        std::ofstream out(dir.path / "NM_999999_1-40.fasta", std::ios::binary);
        out << kFastaBody;
    }
    const auto rec = client.fetch("NM_999999", SequenceRange(1, 40));
    CHECK(client.last_source() == NcbiClient::Source::kCache);
    CHECK(rec.sequence.size() == 40);
    CHECK(calls == 0);
}
