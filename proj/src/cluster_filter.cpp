#include "smerc/cluster_filter.hpp"

#include <map>

#include "smerc/text_pipeline.hpp"

namespace smerc {

std::pair<Corpus, std::vector<Tweet>> remove_spam(const Corpus& corpus,
                                                  int duplicate_threshold,
                                                  const StopwordSet& stopwords) {
    if (duplicate_threshold < 2) throw input_error("spam_duplicate_threshold must be >= 2");

    std::map<std::string, int> group_sizes;
    std::vector<std::string> keys;
    keys.reserve(corpus.size());
    for (const auto& tweet : corpus.tweets) {
        std::string key;
        for (const auto& stem : clean(tweet.text, stopwords)) {
            key += stem;
            key += ' ';
        }
        keys.push_back(key);
        if (!key.empty()) ++group_sizes[key];
    }

    Corpus kept;
    kept.source_name = corpus.source_name;
    std::vector<Tweet> removed;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const std::string& key = keys[i];
        if (!key.empty() && group_sizes[key] >= duplicate_threshold)
            removed.push_back(corpus.tweets[i]);
        else
            kept.tweets.push_back(corpus.tweets[i]);
    }
    return {std::move(kept), std::move(removed)};
}

double average_internal_affinity(const std::vector<Index>& members, const AffinityMatrix& c) {
    if (members.empty()) throw input_error("cluster has no members");
    if (members.size() == 1) return 1.0;
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            sum += c.values(members[i], members[j]);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

std::pair<Clustering, FilterReport> filter_clusters(const Clustering& clusters,
                                                    const AffinityMatrix& c, double delta,
                                                    int min_cluster_size) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw input_error("delta must be in [0, 1]");
    if (min_cluster_size < 1) throw input_error("min_cluster_size must be >= 1");

    Clustering kept;
    kept.converged = clusters.converged;
    kept.iterations_used = clusters.iterations_used;
    kept.assignment.assign(clusters.assignment.size(), Clustering::kUnassigned);

    FilterReport report;
    report.clusters_before = static_cast<int>(clusters.clusters.size());

    for (std::size_t id = 0; id < clusters.clusters.size(); ++id) {
        const ClusterGroup& group = clusters.clusters[id];
        double score = average_internal_affinity(group.members, c);
        if (score >= delta && static_cast<int>(group.members.size()) >= min_cluster_size) {
            kept.exemplars.push_back(group.exemplar);
            kept.clusters.push_back(group);
            for (Index member : group.members)
                kept.assignment[static_cast<std::size_t>(member)] = group.exemplar;
        } else {
            const char* reason = score >= delta ? "below_min_size" : "low_affinity";
            report.removed_clusters.push_back({static_cast<int>(id), score, reason});
        }
    }
    report.clusters_after = static_cast<int>(kept.clusters.size());
    return {std::move(kept), std::move(report)};
}

}  // namespace smerc
