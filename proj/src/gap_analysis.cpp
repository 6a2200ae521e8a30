#include "smerc/gap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace smerc {

GapSample extract_gaps(const Corpus& corpus, double max_gap) {
    if (!(max_gap > 0.0)) throw input_error("max_gap must be > 0");
    bool any_labeled = std::any_of(corpus.tweets.begin(), corpus.tweets.end(),
                                   [](const Tweet& t) { return t.event_label.has_value(); });
    if (!any_labeled) throw input_error("gap analysis needs a labeled corpus");

    GapSample sample;
    const auto& tweets = corpus.tweets;
    for (std::size_t i = 0; i < tweets.size(); ++i) {
        for (std::size_t j = i + 1; j < tweets.size(); ++j) {
            double gap = static_cast<double>(std::llabs(tweets[i].timestamp - tweets[j].timestamp));
            if (gap > max_gap) continue;
            const auto& a = tweets[i].event_label;
            const auto& b = tweets[j].event_label;
            if (a && b) {
                if (*a == *b) sample.related_gaps.push_back(gap);
                // both labeled with different events: neither category
            } else if (a || b) {
                sample.unrelated_gaps.push_back(gap);
            }
        }
    }
    return sample;
}

BucketCurve bucketize(const GapSample& gaps, double width, double max_gap) {
    if (!(width > 0.0)) throw input_error("bucket_width must be > 0");
    if (!(max_gap > 0.0)) throw input_error("max_gap must be > 0");

    BucketCurve curve;
    curve.bucket_width = width;
    const auto bucket_count = static_cast<std::size_t>(std::ceil(max_gap / width));
    curve.buckets.resize(bucket_count);
    for (std::size_t k = 0; k < bucket_count; ++k)
        curve.buckets[k].center = (static_cast<double>(k) + 0.5) * width;

    auto tally = [&](const std::vector<double>& values, bool related) {
        for (double gap : values) {
            if (gap >= max_gap) continue;
            auto k = static_cast<std::size_t>(gap / width);
            if (k >= bucket_count) continue;
            if (related)
                ++curve.buckets[k].related_count;
            else
                ++curve.buckets[k].unrelated_count;
        }
    };
    tally(gaps.related_gaps, true);
    tally(gaps.unrelated_gaps, false);

    for (Bucket& bucket : curve.buckets) {
        long total = bucket.related_count + bucket.unrelated_count;
        if (total > 0)
            bucket.p_related = static_cast<double>(bucket.related_count) / static_cast<double>(total);
    }
    return curve;
}

DecayFit fit_loglinear(const BucketCurve& curve, int min_pairs) {
    std::vector<double> x, y;
    for (const Bucket& bucket : curve.buckets) {
        long total = bucket.related_count + bucket.unrelated_count;
        if (total < min_pairs || !bucket.p_related || !(*bucket.p_related > 0.0)) continue;
        x.push_back(bucket.center);
        y.push_back(std::log(*bucket.p_related));
    }
    if (x.size() < 3)
        throw input_error("log-linear fit needs at least 3 eligible buckets, have " +
                          std::to_string(x.size()));

    const auto n = static_cast<double>(x.size());
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw input_error("log-linear fit: bucket centers are degenerate");

    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.buckets_used = static_cast<int>(x.size());
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += r * r;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    } else {
        fit.r_squared = 1.0;  // constant data, perfectly fit by the flat line
    }
    return fit;
}

DensityCurve kde_density(const std::vector<double>& gaps, std::optional<double> bandwidth,
                         double max_gap, int grid_points) {
    if (gaps.size() < 2) throw input_error("density estimate needs at least 2 samples");
    if (grid_points < 2) throw input_error("grid_points must be >= 2");
    if (!(max_gap > 0.0)) throw input_error("max_gap must be > 0");

    const auto n = static_cast<double>(gaps.size());
    double h;
    if (bandwidth) {
        h = *bandwidth;
        if (!(h > 0.0)) throw input_error("bandwidth must be > 0");
    } else {
        const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / n;
        double ss = 0.0;
        for (double g : gaps) ss += (g - mean) * (g - mean);
        const double sd = std::sqrt(ss / (n - 1.0));
        if (!(sd > 0.0)) throw input_error("density estimate needs nonzero sample variance");
        h = sd * std::pow(n, -0.2);
    }

    DensityCurve curve;
    curve.bandwidth = h;
    curve.t.resize(static_cast<std::size_t>(grid_points));
    curve.density.resize(static_cast<std::size_t>(grid_points));
    const double step = max_gap / static_cast<double>(grid_points - 1);
    const double norm = 1.0 / (n * h * std::sqrt(2.0 * std::numbers::pi));
    for (int g = 0; g < grid_points; ++g) {
        const double t = static_cast<double>(g) * step;
        double sum = 0.0;
        for (double gap : gaps) {
            const double z = (t - gap) / h;
            sum += std::exp(-0.5 * z * z);
        }
        curve.t[static_cast<std::size_t>(g)] = t;
        curve.density[static_cast<std::size_t>(g)] = norm * sum;
    }
    return curve;
}

double calibrate_tp(const DecayFit& fit) {
    if (!(fit.slope < 0.0))
        throw input_error("no decay detected: fitted slope is " + std::to_string(fit.slope));
    return -1.0 / fit.slope;
}

}  // namespace smerc
