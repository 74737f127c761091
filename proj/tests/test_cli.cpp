#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the installed CLI binary, capturing stdout; stderr is dropped
// unless the caller redirects it.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CMMLOCATE_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult result;
    if (pipe == nullptr) return result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::mt19937_64 rng(std::random_device{}());
        path = std::filesystem::temp_directory_path() /
               ("cmm_cli_" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        const auto file = path / name;
        std::ofstream out(file, std::ios::binary);
        out << content;
        return file;
    }
};

const std::string kExampleFasta = ">demo worked example\nCTCACTCCTC\n";

}  // namespace

TEST_CASE("locate prints occurrence tuples by default") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto r = run_cli("locate " + file.string() + " --pattern CTC");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "(1,2,3);(5,6,7);(8,9,10)\n");
}

TEST_CASE("lowercase patterns are mapped onto the uppercase alphabet") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto r = run_cli("locate " + file.string() + " --pattern ctc");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "(1,2,3);(5,6,7);(8,9,10)\n");
}

TEST_CASE("locate start and json-lines formats") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);

    const auto starts = run_cli("locate " + file.string() + " --pattern CTC --format starts");
    CHECK(starts.exit_code == 0);
    CHECK(starts.out == "1\n5\n8\n");

    const auto jsonl = run_cli("locate " + file.string() + " --pattern CTC --format json-lines");
    CHECK(jsonl.exit_code == 0);
    CHECK(jsonl.out ==
          "{\"start\":1,\"end\":3,\"pattern\":\"CTC\"}\n"
          "{\"start\":5,\"end\":7,\"pattern\":\"CTC\"}\n"
          "{\"start\":8,\"end\":10,\"pattern\":\"CTC\"}\n");
}

TEST_CASE("zero matches exit cleanly with empty output") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto r = run_cli("locate " + file.string() + " --pattern GG");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
}

TEST_CASE("locate output is byte-identical across runs") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto a = run_cli("locate " + file.string() + " --pattern CTC --format json-lines");
    const auto b = run_cli("locate " + file.string() + " --pattern CTC --format json-lines");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("every strategy flag yields the same output") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto want = run_cli("locate " + file.string() + " --pattern CTC --strategy sorted");
    for (const std::string strat : {"auto", "sorted-rarest", "bitblock"}) {
        const auto r = run_cli("locate " + file.string() + " --pattern CTC --strategy " + strat);
        CHECK(r.exit_code == 0);
        CHECK(r.out == want.out);
    }
}

TEST_CASE("locate honours --range on file input") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto r = run_cli("locate " + file.string() + " --pattern CTC --range 4:10 --format starts");
    CHECK(r.exit_code == 0);
    // slice ACTCCTC: CTC sits at slice positions 2 and 5
    CHECK(r.out == "2\n5\n");
}

TEST_CASE("locate supports alternative alphabets") {
    TempDir dir;
    const auto file = dir.write("bits.fasta", ">bits\n0101101\n");
    const auto r = run_cli("locate " + file.string() +
                           " --pattern 01 --alphabet 01 --format starts");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n3\n6\n");
}

TEST_CASE("distinct CLI errors exit nonzero") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);

    CHECK(run_cli("locate " + file.string() + " --pattern \"\"").exit_code == 1);
    CHECK(run_cli("locate " + file.string() + " --pattern CTXC").exit_code == 1);
    CHECK(run_cli("locate " + file.string() + " --pattern CTC --range 1:999").exit_code == 1);
    CHECK(run_cli("locate " + file.string() + " --pattern CTC --range 9:1").exit_code == 1);
    CHECK(run_cli("locate " + file.string() + " --pattern CTC --format nope").exit_code == 1);
    // missing required --pattern is a usage error from the parser
    CHECK(run_cli("locate " + file.string()).exit_code != 0);
    // unknown accession, offline, empty cache
    CHECK(run_cli("locate NOPE123 --pattern CTC --offline --cache-dir " +
                  (dir.path / "empty").string())
              .exit_code == 1);
    const auto bad = dir.write("bad.fasta", "no header here\n");
    CHECK(run_cli("locate " + bad.string() + " --pattern CTC").exit_code == 1);
}

TEST_CASE("verify reports agreement with the naive scan") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto ok = run_cli("verify " + file.string() + " --pattern CTC");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "OK, 3 occurrences\n");

    const auto none = run_cli("verify " + file.string() + " --pattern GGG");
    CHECK(none.exit_code == 0);
    CHECK(none.out == "OK, 0 occurrences\n");
}

TEST_CASE("verify detects corrupted index sets") {
    TempDir dir;
    const auto file = dir.write("demo.fasta", kExampleFasta);
    const auto r = run_cli("verify " + file.string() + " --pattern CTC --corrupt-sets");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("MISMATCH") != std::string::npos);
    CHECK(r.out.find("naive starts: 1 5 8") != std::string::npos);
}

TEST_CASE("fetch writes cached bytes and repeats identically") {
    TempDir cache;
    TempDir outdir;
    // seed the cache as a fixture directory would
    const std::string body = ">NM_999999:1-40 seeded\nACGTACGTACGTACGTACGTACGTACGTACGTACGTACGT\n";
    cache.write("NM_999999_1-40.fasta", body);

    const auto out1 = (outdir.path / "a.fasta").string();
    const auto r1 = run_cli("fetch NM_999999 --range 1:40 --out " + out1 + " --offline --cache-dir " +
                            cache.path.string());
    CHECK(r1.exit_code == 0);
    std::ifstream in1(out1, std::ios::binary);
    std::string got1((std::istreambuf_iterator<char>(in1)), std::istreambuf_iterator<char>());
    CHECK(got1 == body);

    const auto out2 = (outdir.path / "b.fasta").string();
    const auto r2 = run_cli("fetch NM_999999 --range 1:40 --out " + out2 + " --offline --cache-dir " +
                            cache.path.string());
    CHECK(r2.exit_code == 0);
    std::ifstream in2(out2, std::ios::binary);
    std::string got2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
    CHECK(got2 == got1);

    // unknown record in offline mode: fail, write nothing
    const auto out3 = (outdir.path / "c.fasta").string();
    const auto r3 = run_cli("fetch NOPE123 --range 1:40 --out " + out3 + " --offline --cache-dir " +
                            cache.path.string());
    CHECK(r3.exit_code == 1);
    CHECK_FALSE(std::filesystem::exists(out3));
}

TEST_CASE("locate resolves accessions through the cache directory") {
    TempDir cache;
    const std::string body = ">NM_999999:1-40 seeded\nACGTACGTACGTACGTACGTACGTACGTACGTACGTACGT\n";
    cache.write("NM_999999_1-40.fasta", body);
    const auto r = run_cli("locate NM_999999 --range 1:40 --pattern ACGT --offline --cache-dir " +
                           cache.path.string() + " --format starts");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n5\n9\n13\n17\n21\n25\n29\n33\n37\n");
}
