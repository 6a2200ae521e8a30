#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smerc/ap_cluster.hpp"
#include "smerc/stopwords.hpp"
#include "smerc/types.hpp"

namespace smerc {

struct EventGroundTruth {
    std::vector<std::string> events;  // distinct labels, sorted

    static EventGroundTruth from_corpus(const Corpus& corpus);
};

struct MetricCounts {
    int clusters_linked = 0;
    int clusters_total = 0;
    int events_detected = 0;
    int events_missed = 0;
};

struct EvalResult {
    double precision = 0.0;  // clusters_linked / clusters_total
    bool precision_defined = true;
    double recall = 0.0;  // events_detected / (events_detected + events_missed)
    double f1 = 0.0;
    double quality_mean = 0.0;
    int clusters_linked = 0;
    int clusters_total = 0;
    int events_detected = 0;
    int events_missed = 0;
};

/// Precision/recall/F1 from raw counts.
EvalResult precision_recall(const MetricCounts& counts);

/// A cluster links to event e when it has at least one labeled member and
/// at least purity_floor of its labeled members carry e. purity_floor
/// must be in (0.5, 1], so at most one event can qualify.
std::vector<std::optional<std::string>> link_clusters_to_events(const Clustering& clusters,
                                                                const Corpus& corpus,
                                                                double purity_floor);

/// Derive counts from per-cluster links and score them.
EvalResult precision_recall(const std::vector<std::optional<std::string>>& links,
                            const EventGroundTruth& truth);

struct QualityResult {
    std::vector<std::optional<double>> per_cluster;  // undefined without labeled members
    double mean = 0.0;                               // unweighted over defined clusters
    int clusters_scored = 0;
};

/// Cluster quality: fraction of members carrying the cluster's topic, the
/// majority label among labeled members (ties to the lexicographically
/// smallest label). Throws when no cluster has a labeled member.
QualityResult cluster_quality(const Clustering& clusters, const Corpus& corpus);

struct SynthSpec {
    int event_count = 2;
    int tweets_per_event = 100;
    double vocab_overlap = 0.0;          // fraction of each event pool shared by all events
    double inter_event_spacing = 1200.0;  // seconds between event times
    double background_rate = 0.0;        // unlabeled tweets per second over the span
    double lambda_response = 1.0 / 94.5;  // response delay rate, per second
    std::uint64_t seed = 42;
    int pool_size = 30;   // stems per keyword pool
    int min_words = 5;    // words per tweet, inclusive bounds
    int max_words = 12;
    double span_padding = 0.0;  // extra background span past the last event
};

/// Deterministic synthetic corpus: event e happens at (e + 0.5) * spacing;
/// its responses arrive after exponential delays with rate lambda_response
/// and draw words from an event pool sharing `vocab_overlap` of its words
/// with every other event. Background tweets are unlabeled, uniform over
/// the span, with a disjoint pool.
Corpus generate_synthetic(const SynthSpec& spec);

struct SweepRow {
    double delta = 0.0;
    int clusters_total = 0;
    int clusters_linked = 0;
    int events_detected = 0;
    int events_missed = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Run the full clustering pipeline once per delta on a labeled corpus
/// and score each run.
std::vector<SweepRow> sweep_delta(const Corpus& corpus, const RunConfig& config,
                                  const std::vector<double>& deltas,
                                  const StopwordSet& stopwords);

}  // namespace smerc
