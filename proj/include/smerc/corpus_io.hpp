#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smerc/ap_cluster.hpp"
#include "smerc/types.hpp"

namespace smerc {

enum class CorpusFormat { jsonl };

struct LoadOptions {
    CorpusFormat format = CorpusFormat::jsonl;
    // Number of malformed lines tolerated before loading fails.
    int max_malformed_lines = 0;
};

struct LoadStats {
    int lines_read = 0;
    int malformed_lines = 0;
    std::vector<std::string> malformed_messages;
};

/// Load a JSON Lines corpus: one object per line with fields `id`
/// (string), `created_at` (integer epoch seconds or ISO-8601 string),
/// `text` (string) and optional `event_label` (string). Timestamps are
/// truncated to whole seconds. The result is sorted by (timestamp, id).
Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options = {},
                   LoadStats* stats = nullptr);

/// Write a corpus back out as JSON Lines with epoch-second timestamps.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Partition into half-open windows [t0 + k*w, t0 + (k+1)*w) anchored at
/// the earliest timestamp; empty windows are omitted.
std::vector<Corpus> split_windows(const Corpus& corpus, std::int64_t window_seconds);

/// Parse an ISO-8601 timestamp ("2017-09-22T09:54:11Z", optional
/// fractional seconds and +HH:MM offsets) to epoch seconds.
std::int64_t parse_iso8601(const std::string& value);

struct ReportCounters {
    int collected_tweets = 0;
    int spam_tweets_removed = 0;
    int excluded_tweets = 0;
    int clusters_before = 0;
    int clusters_after = 0;
    int windows = 1;
};

struct ReportManifest {
    std::vector<std::filesystem::path> files;
    std::filesystem::path manifest_path;
};

/// Emit clusters.csv (cluster_id, exemplar_id, tweet_id, timestamp, text),
/// summary.json (run counters plus `extra`), and manifest.json listing the
/// written files. `cluster_ids` optionally names each cluster; default is
/// its position. Clustering member indices refer into `corpus`.
ReportManifest write_report(const Clustering& clusters, const Corpus& corpus,
                            const std::filesystem::path& directory,
                            const ReportCounters& counters = {},
                            const nlohmann::json& extra = nlohmann::json::object(),
                            const std::vector<int>* cluster_ids = nullptr);

/// RFC 4180 style field quoting.
std::string csv_escape(const std::string& field);

}  // namespace smerc
