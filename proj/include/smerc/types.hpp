#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace smerc {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Matrixd = DenseMatrix<double>;
using Index = Eigen::Index;

/// Raised for problems with user-supplied input (files, flags, config).
/// The CLI maps these to exit code 1; anything else is an internal failure.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One timestamped message. `event_label` carries ground truth when the
/// corpus is labeled; absent means unlabeled/background.
struct Tweet {
    std::string id;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    std::string text;
    std::optional<std::string> event_label;
};

/// Tweets sorted ascending by (timestamp, id), unique ids.
struct Corpus {
    std::vector<Tweet> tweets;
    std::string source_name;

    std::size_t size() const { return tweets.size(); }
    bool empty() const { return tweets.empty(); }
};

/// All tunables for a run. Defaults are restated in every JSON summary.
struct RunConfig {
    double t_p = 120.0;                   // decay time constant, seconds
    double delta = 0.25;                  // min average internal affinity
    std::optional<double> preference;     // nullopt = median of off-diagonals
    double damping = 0.7;
    int max_iterations = 400;
    int stable_iterations = 25;
    std::optional<std::int64_t> window_seconds;
    double bucket_width = 10.0;           // gap-analysis bucket, seconds
    double max_gap = 600.0;               // gap-analysis cutoff, seconds
    int min_pairs_per_bucket = 20;
    int spam_duplicate_threshold = 3;
    std::uint64_t rng_seed = 42;
    int min_cluster_size = 2;             // singletons dropped by default
    double purity_floor = 0.6;            // cluster-to-event linking
    bool no_decay = false;                // force E = 1 everywhere
};

/// Throws input_error naming the first field whose bound is violated.
void validate(const RunConfig& config);

}  // namespace smerc
