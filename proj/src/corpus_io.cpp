#include "smerc/corpus_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <unordered_set>

namespace smerc {

using nlohmann::json;

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t timestamp_from_json(const json& value, int line) {
    if (value.is_number_integer()) return value.get<std::int64_t>();
    if (value.is_number_float())
        return static_cast<std::int64_t>(value.get<double>());  // truncate to seconds
    if (value.is_string()) {
        const std::string& s = value.get_ref<const std::string&>();
        if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos)
            return std::stoll(s);
        return parse_iso8601(s);
    }
    throw input_error("line " + std::to_string(line) +
                      ": field 'created_at' must be an integer or string");
}

}  // namespace

std::int64_t parse_iso8601(const std::string& value) {
    int year = 0;
    unsigned month = 0, day = 0, hour = 0, minute = 0, second = 0;
    char sep = 0;
    int consumed = 0;
    if (std::sscanf(value.c_str(), "%4d-%2u-%2u%c%2u:%2u:%2u%n", &year, &month, &day, &sep,
                    &hour, &minute, &second, &consumed) != 7 ||
        (sep != 'T' && sep != ' '))
        throw input_error("invalid ISO-8601 timestamp: " + value);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
        second > 60)
        throw input_error("invalid ISO-8601 timestamp: " + value);

    std::size_t pos = static_cast<std::size_t>(consumed);
    if (pos < value.size() && value[pos] == '.') {  // drop fractional seconds
        ++pos;
        while (pos < value.size() && std::isdigit(static_cast<unsigned char>(value[pos]))) ++pos;
    }

    std::int64_t offset = 0;
    if (pos < value.size()) {
        char c = value[pos];
        if (c == 'Z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            unsigned oh = 0, om = 0;
            int n = 0;
            if (std::sscanf(value.c_str() + pos + 1, "%2u:%2u%n", &oh, &om, &n) == 2 && n == 5)
                pos += 6;
            else if (std::sscanf(value.c_str() + pos + 1, "%2u%2u%n", &oh, &om, &n) == 2 && n == 4)
                pos += 5;
            else
                throw input_error("invalid ISO-8601 offset: " + value);
            offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
            if (c == '-') offset = -offset;
        }
    }
    if (pos != value.size()) throw input_error("invalid ISO-8601 timestamp: " + value);

    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second -
           offset;
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options,
                   LoadStats* stats) {
    if (options.format != CorpusFormat::jsonl)
        throw input_error("unsupported corpus format");
    std::ifstream in(path);
    if (!in) throw input_error("cannot open corpus file: " + path.string());

    Corpus corpus;
    corpus.source_name = path.filename().string();
    LoadStats local;
    std::unordered_set<std::string> seen_ids;

    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        ++local.lines_read;

        try {
            json record = json::parse(line, nullptr, true);
            if (!record.is_object())
                throw input_error("line " + std::to_string(line_number) +
                                  ": expected a JSON object");
            for (const char* field : {"id", "created_at", "text"}) {
                if (!record.contains(field))
                    throw input_error("line " + std::to_string(line_number) +
                                      ": missing required field '" + field + "'");
            }
            Tweet tweet;
            if (!record["id"].is_string())
                throw input_error("line " + std::to_string(line_number) +
                                  ": field 'id' must be a string");
            tweet.id = record["id"].get<std::string>();
            tweet.timestamp = timestamp_from_json(record["created_at"], line_number);
            if (tweet.timestamp < 0)
                throw input_error("line " + std::to_string(line_number) +
                                  ": field 'created_at' must be >= 0");
            if (!record["text"].is_string())
                throw input_error("line " + std::to_string(line_number) +
                                  ": field 'text' must be a string");
            tweet.text = record["text"].get<std::string>();
            if (tweet.text.empty())
                throw input_error("line " + std::to_string(line_number) +
                                  ": field 'text' must be non-empty");
            if (record.contains("event_label") && !record["event_label"].is_null()) {
                if (!record["event_label"].is_string())
                    throw input_error("line " + std::to_string(line_number) +
                                      ": field 'event_label' must be a string");
                tweet.event_label = record["event_label"].get<std::string>();
            }
            if (!seen_ids.insert(tweet.id).second)
                throw input_error("line " + std::to_string(line_number) + ": duplicate id '" +
                                  tweet.id + "'");
            corpus.tweets.push_back(std::move(tweet));
        } catch (const json::parse_error& e) {
            ++local.malformed_lines;
            local.malformed_messages.push_back("line " + std::to_string(line_number) + ": " +
                                               e.what());
        } catch (const input_error& e) {
            if (std::string_view(e.what()).find("duplicate id") != std::string_view::npos)
                throw;  // a duplicate id poisons the corpus, not just the line
            ++local.malformed_lines;
            local.malformed_messages.push_back(e.what());
        }
        if (local.malformed_lines > options.max_malformed_lines)
            throw input_error(local.malformed_messages.back() + " (" +
                              std::to_string(local.malformed_lines) +
                              " malformed, tolerance " +
                              std::to_string(options.max_malformed_lines) + ")");
    }

    if (corpus.tweets.empty()) throw input_error("empty corpus: " + path.string());

    std::stable_sort(corpus.tweets.begin(), corpus.tweets.end(),
                     [](const Tweet& a, const Tweet& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.id < b.id;
                     });
    if (stats) *stats = std::move(local);
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write corpus file: " + path.string());
    for (const Tweet& tweet : corpus.tweets) {
        json record = {{"id", tweet.id}, {"created_at", tweet.timestamp}, {"text", tweet.text}};
        if (tweet.event_label) record["event_label"] = *tweet.event_label;
        out << record.dump() << '\n';
    }
    if (!out) throw input_error("failed writing corpus file: " + path.string());
}

std::vector<Corpus> split_windows(const Corpus& corpus, std::int64_t window_seconds) {
    if (window_seconds <= 0) throw input_error("window_seconds must be > 0");
    std::vector<Corpus> windows;
    if (corpus.empty()) return windows;

    const std::int64_t t0 = corpus.tweets.front().timestamp;
    std::int64_t current = -1;
    for (const Tweet& tweet : corpus.tweets) {
        std::int64_t k = (tweet.timestamp - t0) / window_seconds;
        if (k != current) {
            windows.emplace_back();
            windows.back().source_name = corpus.source_name;
            current = k;
        }
        windows.back().tweets.push_back(tweet);
    }
    return windows;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

ReportManifest write_report(const Clustering& clusters, const Corpus& corpus,
                            const std::filesystem::path& directory,
                            const ReportCounters& counters, const json& extra,
                            const std::vector<int>* cluster_ids) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec && !std::filesystem::is_directory(directory))
        throw input_error("cannot create output directory: " + directory.string());

    ReportManifest manifest;

    const auto csv_path = directory / "clusters.csv";
    {
        std::ofstream out(csv_path);
        if (!out) throw input_error("cannot write " + csv_path.string());
        out << "cluster_id,exemplar_id,tweet_id,timestamp,text\n";
        for (std::size_t ci = 0; ci < clusters.clusters.size(); ++ci) {
            const ClusterGroup& group = clusters.clusters[ci];
            const int id = cluster_ids ? (*cluster_ids)[ci] : static_cast<int>(ci);
            const Tweet& exemplar = corpus.tweets[static_cast<std::size_t>(group.exemplar)];
            for (Index member : group.members) {
                const Tweet& tweet = corpus.tweets[static_cast<std::size_t>(member)];
                out << id << ',' << csv_escape(exemplar.id) << ',' << csv_escape(tweet.id)
                    << ',' << tweet.timestamp << ',' << csv_escape(tweet.text) << '\n';
            }
        }
        if (!out) throw input_error("failed writing " + csv_path.string());
    }
    manifest.files.push_back(csv_path);

    const auto summary_path = directory / "summary.json";
    {
        json summary = extra.is_object() ? extra : json::object();
        summary["source"] = corpus.source_name;
        summary["collected_tweets"] = counters.collected_tweets;
        summary["spam_tweets_removed"] = counters.spam_tweets_removed;
        summary["excluded_tweets"] = counters.excluded_tweets;
        summary["clusters_before_filtering"] = counters.clusters_before;
        summary["clusters_after_filtering"] = counters.clusters_after;
        summary["windows"] = counters.windows;
        json sizes = json::array();
        for (const ClusterGroup& group : clusters.clusters)
            sizes.push_back(group.members.size());
        summary["cluster_sizes"] = sizes;

        std::ofstream out(summary_path);
        if (!out) throw input_error("cannot write " + summary_path.string());
        out << summary.dump(2) << '\n';
        if (!out) throw input_error("failed writing " + summary_path.string());
    }
    manifest.files.push_back(summary_path);

    manifest.manifest_path = directory / "manifest.json";
    {
        json listing = json::object();
        json files = json::array();
        for (const auto& file : manifest.files) files.push_back(file.filename().string());
        listing["files"] = files;
        std::ofstream out(manifest.manifest_path);
        if (!out) throw input_error("cannot write " + manifest.manifest_path.string());
        out << listing.dump(2) << '\n';
    }
    return manifest;
}

}  // namespace smerc
