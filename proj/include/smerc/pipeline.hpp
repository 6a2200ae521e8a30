#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smerc/affinity.hpp"
#include "smerc/ap_cluster.hpp"
#include "smerc/cluster_filter.hpp"
#include "smerc/stopwords.hpp"
#include "smerc/types.hpp"

namespace smerc {

struct ExcludedTweet {
    std::string id;
    std::string reason;  // "empty_after_cleaning" or "zero_tfidf_vector"
};

/// One clustered window. Member indices refer into `corpus`, the tweets
/// that survived spam removal and cleaning exclusions, in corpus order.
struct WindowResult {
    Corpus corpus;
    std::int64_t window_start = 0;
    std::int64_t window_end = 0;
    AffinityMatrix combined;
    Clustering raw;
    Clustering filtered;
    FilterReport filter_report;
};

struct PipelineResult {
    RunConfig config;
    int collected_tweets = 0;
    std::vector<WindowResult> windows;
    std::vector<Tweet> spam_removed;
    std::vector<ExcludedTweet> excluded;

    // Merged view across windows, for reporting and evaluation.
    Corpus clustered_corpus;            // concatenated window corpora
    Clustering merged;                  // surviving clusters, global indices
    std::vector<int> merged_cluster_ids;  // pre-filter ids of surviving clusters
    FilterReport totals;
};

/// Full clustering run: spam removal, cleaning, TF-IDF, cosine and decay
/// affinities, affinity propagation, and delta filtering; per window when
/// config.window_seconds is set.
PipelineResult run_cluster_pipeline(const Corpus& corpus, const RunConfig& config,
                                    const StopwordSet& stopwords);

}  // namespace smerc
