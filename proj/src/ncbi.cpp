#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "cmm/ncbi.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cmm {

namespace {

constexpr const char* kEutilsHost = "https://eutils.ncbi.nlm.nih.gov";
constexpr const char* kEfetchPath = "/entrez/eutils/efetch.fcgi";

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (const char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += c;
        } else {
            out += '%';
            out += hex[u >> 4];
            out += hex[u & 0xF];
        }
    }
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Serializes cache operations per key; distinct keys proceed concurrently.
std::mutex& mutex_for_key(const std::string& key) {
    static std::mutex registry_mutex;
    static std::unordered_map<std::string, std::mutex> registry;
    std::lock_guard lock(registry_mutex);
    return registry[key];
}

void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write cache file: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

NcbiClient::NcbiClient(FetchOptions options, HttpGet transport)
    : options_(std::move(options)), transport_(std::move(transport)) {}

std::string NcbiClient::efetch_url(const std::string& accession,
                                   std::optional<SequenceRange> range,
                                   const std::string& api_key) {
    std::string url = std::string(kEutilsHost) + kEfetchPath +
                      "?db=nuccore&id=" + url_encode(accession) +
                      "&rettype=fasta&retmode=text";
    if (range) {
        url += "&seq_start=" + std::to_string(range->start);
        url += "&seq_stop=" + std::to_string(range->stop);
    }
    if (!api_key.empty()) url += "&api_key=" + url_encode(api_key);
    return url;
}

std::string NcbiClient::cache_key(const std::string& accession,
                                  std::optional<SequenceRange> range) {
    std::string key;
    for (const char c : accession) {
        const auto u = static_cast<unsigned char>(c);
        key += (std::isalnum(u) || c == '.' || c == '_' || c == '-') ? c : '_';
    }
    if (range)
        key += "_" + std::to_string(range->start) + "-" + std::to_string(range->stop);
    else
        key += "_full";
    return key;
}

std::filesystem::path NcbiClient::fasta_path(const std::string& accession,
                                             std::optional<SequenceRange> range) const {
    return options_.cache_dir / (cache_key(accession, range) + ".fasta");
}

std::filesystem::path NcbiClient::meta_path(const std::string& accession,
                                            std::optional<SequenceRange> range) const {
    return options_.cache_dir / (cache_key(accession, range) + ".meta");
}

std::string NcbiClient::fetch_raw(const std::string& accession,
                                  std::optional<SequenceRange> range) {
    const std::string key = cache_key(accession, range);
    std::lock_guard lock(mutex_for_key(key));

    const std::filesystem::path fasta = fasta_path(accession, range);
    if (std::filesystem::exists(fasta)) {
        last_source_ = Source::kCache;
        return read_file(fasta);
    }

    if (options_.offline)
        throw std::runtime_error("offline mode and no cached copy of " + accession +
                                 (range ? " range " + range->to_string() : std::string()));

    const std::string url = efetch_url(accession, range, options_.api_key);
    const HttpResponse resp = transport_(url);
    if (resp.status == 0)
        throw std::runtime_error("efetch transport failure for " + accession + ": " + resp.error);
    if (resp.status != 200)
        throw std::runtime_error("efetch HTTP " + std::to_string(resp.status) + " for " +
                                 accession);

    // Validate before caching so failures are retried, not replayed.
    const auto records = parse_fasta(resp.body);
    if (records.empty() || records.front().sequence.empty())
        throw std::runtime_error("efetch response for " + accession +
                                 " does not parse as a FASTA record");

    std::filesystem::create_directories(options_.cache_dir);
    atomic_write(fasta, resp.body);

    std::string meta = "accession=" + accession + "\n";
    if (range) {
        meta += "seq_start=" + std::to_string(range->start) + "\n";
        meta += "seq_stop=" + std::to_string(range->stop) + "\n";
    }
    meta += "url=" + url + "\n";
    meta += "retrieved=" + utc_timestamp() + "\n";
    meta += "source=network\n";
    atomic_write(meta_path(accession, range), meta);

    last_source_ = Source::kNetwork;
    return resp.body;
}

FastaRecord NcbiClient::fetch(const std::string& accession, std::optional<SequenceRange> range) {
    const std::string raw = fetch_raw(accession, range);
    auto records = parse_fasta(raw);
    if (records.empty())
        throw std::runtime_error("cached entry for " + accession +
                                 " does not parse as a FASTA record");
    return std::move(records.front());
}

HttpGet NcbiClient::default_transport() {
    return [](const std::string& url) -> HttpResponse {
        const auto path_at = url.find('/', url.find("//") + 2);
        const std::string host = url.substr(0, path_at);
        const std::string path = url.substr(path_at);
        httplib::Client client(host);
        client.set_connection_timeout(15);
        client.set_read_timeout(30);
        client.set_follow_location(true);
        auto result = client.Get(path);
        if (!result) return {0, "", httplib::to_string(result.error())};
        return {result->status, result->body, ""};
    };
}

std::map<std::string, std::string> read_metadata(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open metadata file: " + path.string());
    std::map<std::string, std::string> meta;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        meta[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return meta;
}

}  // namespace cmm
