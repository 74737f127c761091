#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "cmm/fasta.hpp"

namespace cmm {

struct HttpResponse {
    int status = 0;     // 0 means the transport itself failed
    std::string body;
    std::string error;  // transport failure detail
};

/// GET transport; injectable so tests run without network.
using HttpGet = std::function<HttpResponse(const std::string& url)>;

struct FetchOptions {
    std::filesystem::path cache_dir;
    bool offline = false;     // never touch the network, cache only
    std::string api_key;      // appended as api_key= when non-empty
};

/// E-utilities efetch client with a local file cache. Responses are
/// cached as raw bytes plus a key=value metadata sidecar; subsequent
/// fetches of the same (accession, range) are served from the cache
/// byte-identically without network I/O.
class NcbiClient {
public:
    enum class Source { kCache, kNetwork };

    explicit NcbiClient(FetchOptions options, HttpGet transport = default_transport());

    /// Fetches one nucleotide record, optionally restricted to a 1-based
    /// coordinate range (server-side slice). Throws std::runtime_error on
    /// network failure with an empty cache, or when the response does not
    /// parse as FASTA.
    FastaRecord fetch(const std::string& accession, std::optional<SequenceRange> range);

    /// Where the last successful fetch came from.
    Source last_source() const { return last_source_; }

    /// Raw cached response bytes for a key (fetches on miss).
    std::string fetch_raw(const std::string& accession, std::optional<SequenceRange> range);

    static std::string efetch_url(const std::string& accession,
                                  std::optional<SequenceRange> range, const std::string& api_key);

    /// Cache file layout, exposed so fixtures can double as a seeded cache.
    static std::string cache_key(const std::string& accession,
                                 std::optional<SequenceRange> range);
    std::filesystem::path fasta_path(const std::string& accession,
                                     std::optional<SequenceRange> range) const;
    std::filesystem::path meta_path(const std::string& accession,
                                    std::optional<SequenceRange> range) const;

    static HttpGet default_transport();

private:
    FetchOptions options_;
    HttpGet transport_;
    Source last_source_ = Source::kCache;
};

/// Reads a line-oriented key=value metadata sidecar.
std::map<std::string, std::string> read_metadata(const std::filesystem::path& path);

}  // namespace cmm
