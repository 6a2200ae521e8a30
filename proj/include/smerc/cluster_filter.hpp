#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smerc/ap_cluster.hpp"
#include "smerc/stopwords.hpp"
#include "smerc/types.hpp"

namespace smerc {

struct RemovedCluster {
    int cluster_id = 0;
    double average_affinity = 0.0;
    std::string reason;  // "low_affinity" or "below_min_size"
};

struct FilterReport {
    int spam_tweets_removed = 0;
    std::vector<std::string> spam_example_texts;
    int clusters_before = 0;
    int clusters_after = 0;
    std::vector<RemovedCluster> removed_clusters;
};

/// Drop every tweet whose cleaned stem sequence is shared by at least
/// `duplicate_threshold` tweets (the whole group goes). Tweets cleaning
/// to nothing are never treated as duplicates of each other. Order is
/// preserved. Requires threshold >= 2.
std::pair<Corpus, std::vector<Tweet>> remove_spam(const Corpus& corpus,
                                                  int duplicate_threshold,
                                                  const StopwordSet& stopwords);

/// Mean combined affinity over unordered member pairs; singletons score 1.
double average_internal_affinity(const std::vector<Index>& members, const AffinityMatrix& c);

/// Keep clusters whose average internal affinity is >= delta and whose
/// size is >= min_cluster_size. Surviving clusters are untouched; dropped
/// members get assignment kUnassigned. Cluster ids in the report are the
/// positions in `clusters.clusters`.
std::pair<Clustering, FilterReport> filter_clusters(const Clustering& clusters,
                                                    const AffinityMatrix& c, double delta,
                                                    int min_cluster_size = 1);

}  // namespace smerc
