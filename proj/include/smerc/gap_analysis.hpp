#pragma once

#include <optional>
#include <vector>

#include "smerc/types.hpp"

namespace smerc {

/// Time gaps of tweet pairs: related pairs share an event label,
/// unrelated pairs have exactly one labeled tweet.
struct GapSample {
    std::vector<double> related_gaps;
    std::vector<double> unrelated_gaps;
};

struct Bucket {
    double center = 0.0;
    long related_count = 0;
    long unrelated_count = 0;
    std::optional<double> p_related;  // undefined when the bucket is empty
};

struct BucketCurve {
    double bucket_width = 0.0;
    std::vector<Bucket> buckets;
};

/// Log-linear fit of the per-bucket relatedness probability. The model is
/// p(dt) = exp(intercept) * exp(slope * dt); a negative slope means the
/// probability decays with rate -slope, giving t_p = -1/slope.
struct DecayFit {
    double slope = 0.0;      // per second
    double intercept = 0.0;  // ln scale
    double r_squared = 0.0;
    int buckets_used = 0;
};

struct DensityCurve {
    std::vector<double> t;
    std::vector<double> density;
    double bandwidth = 0.0;
};

/// Enumerate unordered tweet pairs in corpus order. Pairs where both
/// tweets are unlabeled, or both are labeled with different events, fall
/// into neither category; pairs with a gap above max_gap are dropped.
/// Throws input_error when the corpus has no labeled tweet.
GapSample extract_gaps(const Corpus& corpus, double max_gap);

/// Half-open buckets [k*w, (k+1)*w) covering [0, max_gap).
BucketCurve bucketize(const GapSample& gaps, double width, double max_gap);

/// Unweighted OLS of ln(p_related) against bucket center over buckets
/// with total pairs >= min_pairs and p_related > 0. Requires at least 3
/// eligible buckets.
DecayFit fit_loglinear(const BucketCurve& curve, int min_pairs);

/// Gaussian kernel density estimate on a 512-point grid over
/// [0, max_gap]. bandwidth = nullopt selects Scott's rule,
/// n^(-1/5) * sample standard deviation. Requires >= 2 samples with
/// nonzero variance.
DensityCurve kde_density(const std::vector<double>& gaps, std::optional<double> bandwidth,
                         double max_gap, int grid_points = 512);

/// t_p = -1 / slope. Throws input_error when the fit shows no decay.
double calibrate_tp(const DecayFit& fit);

}  // namespace smerc
