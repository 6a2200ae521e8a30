#include "smerc/pipeline.hpp"

#include <algorithm>

#include "smerc/corpus_io.hpp"
#include "smerc/text_pipeline.hpp"

namespace smerc {
namespace {

WindowResult run_window(const Corpus& window, const RunConfig& config,
                        const StopwordSet& stopwords, std::vector<Tweet>& spam_out,
                        std::vector<ExcludedTweet>& excluded_out) {
    WindowResult result;

    auto [kept, spam] = remove_spam(window, config.spam_duplicate_threshold, stopwords);
    spam_out.insert(spam_out.end(), spam.begin(), spam.end());

    std::vector<std::vector<std::string>> stems(kept.size());
    std::vector<std::size_t> included;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        stems[i] = clean(kept.tweets[i].text, stopwords);
        if (stems[i].empty())
            excluded_out.push_back({kept.tweets[i].id, "empty_after_cleaning"});
        else
            included.push_back(i);
    }

    // A row whose every stem occurs in all included tweets weighs zero and
    // has no usable direction; drop such rows and re-vectorize until stable.
    TfIdfMatrix matrix;
    while (!included.empty()) {
        std::vector<CleanedTweet> cleaned(included.size());
        for (std::size_t r = 0; r < included.size(); ++r) {
            cleaned[r].tweet_index = included[r];
            cleaned[r].stems = stems[included[r]];
        }
        matrix = tfidf(cleaned, build_vocabulary(cleaned));

        std::vector<std::size_t> survivors;
        for (std::size_t r = 0; r < included.size(); ++r) {
            const SparseRow& row = matrix.rows[r];
            bool nonzero = std::any_of(row.begin(), row.end(),
                                       [](const auto& e) { return e.second > 0.0; });
            if (nonzero)
                survivors.push_back(included[r]);
            else
                excluded_out.push_back({kept.tweets[included[r]].id, "zero_tfidf_vector"});
        }
        if (survivors.size() == included.size()) break;
        included = std::move(survivors);
    }

    result.corpus.source_name = window.source_name;
    for (std::size_t i : included) result.corpus.tweets.push_back(kept.tweets[i]);

    if (included.empty()) {
        result.raw.converged = true;
        result.filtered.converged = true;
        return result;
    }

    AffinityMatrix cosine = cosine_matrix(matrix);
    std::vector<std::int64_t> timestamps;
    timestamps.reserve(result.corpus.size());
    for (const Tweet& tweet : result.corpus.tweets) timestamps.push_back(tweet.timestamp);
    AffinityMatrix decay = config.no_decay
                               ? unit_decay_matrix<double>(static_cast<Index>(timestamps.size()))
                               : decay_matrix<double>(timestamps, config.t_p);
    result.combined = hadamard(cosine, decay);

    ApParams params;
    params.preference = config.preference;
    params.damping = config.damping;
    params.max_iterations = config.max_iterations;
    params.stable_iterations = config.stable_iterations;
    result.raw = affinity_propagation(result.combined, params);

    std::tie(result.filtered, result.filter_report) =
        filter_clusters(result.raw, result.combined, config.delta, config.min_cluster_size);
    return result;
}

}  // namespace

PipelineResult run_cluster_pipeline(const Corpus& corpus, const RunConfig& config,
                                    const StopwordSet& stopwords) {
    validate(config);

    PipelineResult result;
    result.config = config;
    result.collected_tweets = static_cast<int>(corpus.size());
    result.clustered_corpus.source_name = corpus.source_name;

    std::vector<Corpus> windows;
    if (config.window_seconds)
        windows = split_windows(corpus, *config.window_seconds);
    else
        windows.push_back(corpus);

    const std::int64_t t0 = corpus.empty() ? 0 : corpus.tweets.front().timestamp;
    result.merged.converged = true;
    int next_cluster_id = 0;
    Index base = 0;
    for (const Corpus& window : windows) {
        WindowResult wr =
            run_window(window, config, stopwords, result.spam_removed, result.excluded);
        if (config.window_seconds && !window.empty()) {
            std::int64_t k = (window.tweets.front().timestamp - t0) / *config.window_seconds;
            wr.window_start = t0 + k * *config.window_seconds;
            wr.window_end = wr.window_start + *config.window_seconds;
        } else if (!window.empty()) {
            wr.window_start = window.tweets.front().timestamp;
            wr.window_end = window.tweets.back().timestamp + 1;
        }

        // Fold this window into the merged, globally indexed view.
        result.clustered_corpus.tweets.insert(result.clustered_corpus.tweets.end(),
                                              wr.corpus.tweets.begin(), wr.corpus.tweets.end());
        for (Index exemplar : wr.filtered.exemplars)
            result.merged.exemplars.push_back(exemplar + base);
        for (const ClusterGroup& group : wr.filtered.clusters) {
            ClusterGroup shifted;
            shifted.exemplar = group.exemplar + base;
            for (Index member : group.members) shifted.members.push_back(member + base);
            result.merged.clusters.push_back(std::move(shifted));
        }
        for (Index assigned : wr.filtered.assignment)
            result.merged.assignment.push_back(
                assigned == Clustering::kUnassigned ? Clustering::kUnassigned : assigned + base);

        // Global pre-filter cluster ids: position across all windows.
        std::vector<char> removed(wr.raw.clusters.size(), 0);
        for (const RemovedCluster& rc : wr.filter_report.removed_clusters) {
            removed[static_cast<std::size_t>(rc.cluster_id)] = 1;
            RemovedCluster shifted = rc;
            shifted.cluster_id += next_cluster_id;
            result.totals.removed_clusters.push_back(shifted);
        }
        for (std::size_t ci = 0; ci < wr.raw.clusters.size(); ++ci)
            if (!removed[ci]) result.merged_cluster_ids.push_back(next_cluster_id + static_cast<int>(ci));
        next_cluster_id += static_cast<int>(wr.raw.clusters.size());

        result.totals.clusters_before += wr.filter_report.clusters_before;
        result.totals.clusters_after += wr.filter_report.clusters_after;
        result.merged.converged = result.merged.converged && wr.filtered.converged;
        result.merged.iterations_used =
            std::max(result.merged.iterations_used, wr.filtered.iterations_used);
        base += static_cast<Index>(wr.corpus.size());
        result.windows.push_back(std::move(wr));
    }

    result.totals.spam_tweets_removed = static_cast<int>(result.spam_removed.size());
    for (const Tweet& tweet : result.spam_removed) {
        if (result.totals.spam_example_texts.size() >= 5) break;
        if (std::find(result.totals.spam_example_texts.begin(),
                      result.totals.spam_example_texts.end(),
                      tweet.text) == result.totals.spam_example_texts.end())
            result.totals.spam_example_texts.push_back(tweet.text);
    }
    return result;
}

}  // namespace smerc
