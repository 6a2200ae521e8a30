#include "smerc/types.hpp"

namespace smerc {

void validate(const RunConfig& config) {
    if (!(config.t_p > 0.0)) throw input_error("t_p must be > 0");
    if (!(config.delta >= 0.0 && config.delta <= 1.0))
        throw input_error("delta must be in [0, 1]");
    if (!(config.damping >= 0.5 && config.damping < 1.0))
        throw input_error("damping must be in [0.5, 1)");
    if (config.max_iterations < 1) throw input_error("max_iterations must be >= 1");
    if (config.stable_iterations < 1) throw input_error("stable_iterations must be >= 1");
    if (config.window_seconds && *config.window_seconds <= 0)
        throw input_error("window_seconds must be > 0");
    if (!(config.bucket_width > 0.0)) throw input_error("bucket_width must be > 0");
    if (!(config.max_gap > 0.0)) throw input_error("max_gap must be > 0");
    if (config.min_pairs_per_bucket < 1) throw input_error("min_pairs_per_bucket must be >= 1");
    if (config.spam_duplicate_threshold < 2)
        throw input_error("spam_duplicate_threshold must be >= 2");
    if (config.min_cluster_size < 1) throw input_error("min_cluster_size must be >= 1");
    if (!(config.purity_floor > 0.5 && config.purity_floor <= 1.0))
        throw input_error("purity_floor must be in (0.5, 1]");
}

}  // namespace smerc
