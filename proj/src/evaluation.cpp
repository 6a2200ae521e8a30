#include "smerc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "smerc/pipeline.hpp"

namespace smerc {

EventGroundTruth EventGroundTruth::from_corpus(const Corpus& corpus) {
    std::set<std::string> labels;
    for (const Tweet& tweet : corpus.tweets)
        if (tweet.event_label) labels.insert(*tweet.event_label);
    EventGroundTruth truth;
    truth.events.assign(labels.begin(), labels.end());
    return truth;
}

EvalResult precision_recall(const MetricCounts& counts) {
    EvalResult result;
    result.clusters_linked = counts.clusters_linked;
    result.clusters_total = counts.clusters_total;
    result.events_detected = counts.events_detected;
    result.events_missed = counts.events_missed;

    if (counts.clusters_total > 0) {
        result.precision =
            static_cast<double>(counts.clusters_linked) / counts.clusters_total;
    } else {
        result.precision = 0.0;
        result.precision_defined = false;
    }
    const int true_events = counts.events_detected + counts.events_missed;
    result.recall =
        true_events > 0 ? static_cast<double>(counts.events_detected) / true_events : 0.0;
    const double pr = result.precision + result.recall;
    result.f1 = pr > 0.0 ? 2.0 * result.precision * result.recall / pr : 0.0;
    return result;
}

std::vector<std::optional<std::string>> link_clusters_to_events(const Clustering& clusters,
                                                                const Corpus& corpus,
                                                                double purity_floor) {
    if (!(purity_floor > 0.5 && purity_floor <= 1.0))
        throw input_error("purity_floor must be in (0.5, 1]");

    std::vector<std::optional<std::string>> links;
    links.reserve(clusters.clusters.size());
    for (const ClusterGroup& group : clusters.clusters) {
        std::map<std::string, int> label_counts;
        int labeled = 0;
        for (Index member : group.members) {
            const auto& label = corpus.tweets[static_cast<std::size_t>(member)].event_label;
            if (label) {
                ++label_counts[*label];
                ++labeled;
            }
        }
        std::optional<std::string> link;
        for (const auto& [label, count] : label_counts) {
            if (static_cast<double>(count) >= purity_floor * labeled) {
                link = label;
                break;  // purity_floor > 0.5: at most one label can qualify
            }
        }
        links.push_back(std::move(link));
    }
    return links;
}

EvalResult precision_recall(const std::vector<std::optional<std::string>>& links,
                            const EventGroundTruth& truth) {
    MetricCounts counts;
    counts.clusters_total = static_cast<int>(links.size());
    std::unordered_set<std::string> detected;
    for (const auto& link : links) {
        if (!link) continue;
        ++counts.clusters_linked;
        detected.insert(*link);
    }
    counts.events_detected = static_cast<int>(detected.size());
    counts.events_missed = static_cast<int>(truth.events.size()) - counts.events_detected;
    return precision_recall(counts);
}

QualityResult cluster_quality(const Clustering& clusters, const Corpus& corpus) {
    QualityResult result;
    double sum = 0.0;
    for (const ClusterGroup& group : clusters.clusters) {
        std::map<std::string, int> label_counts;
        for (Index member : group.members) {
            const auto& label = corpus.tweets[static_cast<std::size_t>(member)].event_label;
            if (label) ++label_counts[*label];
        }
        if (label_counts.empty()) {
            result.per_cluster.push_back(std::nullopt);
            continue;
        }
        // Majority label; std::map order makes ties pick the smallest label.
        int best = 0;
        for (const auto& [label, count] : label_counts) best = std::max(best, count);
        int topic_count = 0;
        for (const auto& [label, count] : label_counts) {
            if (count == best) {
                topic_count = count;
                break;
            }
        }
        double quality = static_cast<double>(topic_count) / static_cast<double>(group.members.size());
        result.per_cluster.push_back(quality);
        sum += quality;
        ++result.clusters_scored;
    }
    if (result.clusters_scored == 0)
        throw input_error("cluster quality needs at least one labeled cluster member");
    result.mean = sum / result.clusters_scored;
    return result;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& rng, double lambda) {
    return -std::log1p(-uniform01(rng)) / lambda;
}

// Alternating consonant/vowel words; these are fixed points of the
// stemmer, so generated words survive cleaning unchanged.
std::string synth_word(std::mt19937_64& rng) {
    static constexpr char consonants[] = "bdgkmptz";
    static constexpr char vowels[] = "aiou";
    std::string word(7, ' ');
    for (int i = 0; i < 7; ++i) {
        if (i % 2 == 0)
            word[static_cast<std::size_t>(i)] = consonants[rng() % 8];
        else
            word[static_cast<std::size_t>(i)] = vowels[rng() % 4];
    }
    return word;
}

std::vector<std::string> fresh_words(std::mt19937_64& rng, int count,
                                     std::unordered_set<std::string>& used) {
    std::vector<std::string> words;
    words.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(words.size()) < count) {
        std::string word = synth_word(rng);
        if (used.insert(word).second) words.push_back(std::move(word));
    }
    return words;
}

std::string compose_text(std::mt19937_64& rng, const std::vector<std::string>& pool,
                         int min_words, int max_words) {
    const int span = max_words - min_words + 1;
    const int count = min_words + static_cast<int>(rng() % static_cast<std::uint64_t>(span));
    std::string text;
    for (int w = 0; w < count; ++w) {
        if (!text.empty()) text += ' ';
        text += pool[rng() % pool.size()];
    }
    return text;
}

}  // namespace

Corpus generate_synthetic(const SynthSpec& spec) {
    if (spec.event_count < 1) throw input_error("event_count must be >= 1");
    if (spec.tweets_per_event < 1) throw input_error("tweets_per_event must be >= 1");
    if (!(spec.vocab_overlap >= 0.0 && spec.vocab_overlap <= 1.0))
        throw input_error("vocab_overlap must be in [0, 1]");
    if (!(spec.inter_event_spacing > 0.0)) throw input_error("inter_event_spacing must be > 0");
    if (spec.background_rate < 0.0) throw input_error("background_rate must be >= 0");
    if (!(spec.lambda_response > 0.0)) throw input_error("lambda_response must be > 0");
    if (spec.pool_size < 1) throw input_error("pool_size must be >= 1");
    if (spec.min_words < 1 || spec.max_words < spec.min_words)
        throw input_error("word count bounds must satisfy 1 <= min_words <= max_words");
    if (spec.span_padding < 0.0) throw input_error("span_padding must be >= 0");

    std::mt19937_64 rng(spec.seed);
    std::unordered_set<std::string> used;

    const int shared_count =
        static_cast<int>(std::lround(spec.vocab_overlap * spec.pool_size));
    std::vector<std::string> shared = fresh_words(rng, shared_count, used);

    std::vector<std::vector<std::string>> pools(static_cast<std::size_t>(spec.event_count));
    for (auto& pool : pools) {
        pool = shared;
        auto unique = fresh_words(rng, spec.pool_size - shared_count, used);
        pool.insert(pool.end(), unique.begin(), unique.end());
    }
    std::vector<std::string> background_pool = fresh_words(rng, spec.pool_size, used);

    const double span = spec.inter_event_spacing * spec.event_count + spec.span_padding;
    Corpus corpus;
    corpus.source_name = "synthetic";
    int sequence = 0;
    auto next_id = [&sequence]() {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "syn-%06d", sequence++);
        return std::string(buf);
    };

    for (int e = 0; e < spec.event_count; ++e) {
        const double event_time = (e + 0.5) * spec.inter_event_spacing;
        for (int i = 0; i < spec.tweets_per_event; ++i) {
            Tweet tweet;
            tweet.id = next_id();
            tweet.timestamp = static_cast<std::int64_t>(
                event_time + exponential(rng, spec.lambda_response));
            tweet.text = compose_text(rng, pools[static_cast<std::size_t>(e)], spec.min_words,
                                      spec.max_words);
            tweet.event_label = "event-" + std::to_string(e);
            corpus.tweets.push_back(std::move(tweet));
        }
    }

    const auto background_count = static_cast<long>(spec.background_rate * span);
    for (long i = 0; i < background_count; ++i) {
        Tweet tweet;
        tweet.id = next_id();
        tweet.timestamp = static_cast<std::int64_t>(uniform01(rng) * span);
        tweet.text = compose_text(rng, background_pool, spec.min_words, spec.max_words);
        corpus.tweets.push_back(std::move(tweet));
    }

    std::stable_sort(corpus.tweets.begin(), corpus.tweets.end(),
                     [](const Tweet& a, const Tweet& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.id < b.id;
                     });
    return corpus;
}

std::vector<SweepRow> sweep_delta(const Corpus& corpus, const RunConfig& config,
                                  const std::vector<double>& deltas,
                                  const StopwordSet& stopwords) {
    EventGroundTruth truth = EventGroundTruth::from_corpus(corpus);
    if (truth.events.empty()) throw input_error("delta sweep needs a labeled corpus");

    std::vector<SweepRow> rows;
    rows.reserve(deltas.size());
    for (double delta : deltas) {
        RunConfig run = config;
        run.delta = delta;
        PipelineResult pipeline = run_cluster_pipeline(corpus, run, stopwords);
        auto links =
            link_clusters_to_events(pipeline.merged, pipeline.clustered_corpus, run.purity_floor);
        EvalResult eval = precision_recall(links, truth);
        rows.push_back({delta, eval.clusters_total, eval.clusters_linked, eval.events_detected,
                        eval.events_missed, eval.precision, eval.recall, eval.f1});
    }
    return rows;
}

}  // namespace smerc
