#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "smerc/affinity.hpp"
#include "smerc/types.hpp"

namespace smerc {

struct ApParams {
    std::optional<double> preference;  // nullopt: median of off-diagonal affinities
    double damping = 0.7;              // in [0.5, 1)
    int max_iterations = 400;
    int stable_iterations = 25;
};

struct ClusterGroup {
    Index exemplar = 0;
    std::vector<Index> members;  // ascending, includes the exemplar
};

/// Result of exemplar-based clustering. After delta-filtering, members of
/// removed clusters carry assignment kUnassigned.
struct Clustering {
    static constexpr Index kUnassigned = -1;

    std::vector<Index> assignment;
    std::vector<Index> exemplars;        // ascending
    std::vector<ClusterGroup> clusters;  // ordered by exemplar
    bool converged = false;
    int iterations_used = 0;
};

/// Median of the off-diagonal entries; even count takes the mean of the
/// two central order statistics. Requires order >= 2.
template <typename Scalar>
Scalar median_preference(const AffinityMatrixT<Scalar>& c) {
    const Index m = c.order();
    if (m < 2) throw input_error("median preference needs at least 2 points");
    std::vector<Scalar> offdiag;
    offdiag.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
    for (Index i = 0; i < m; ++i)
        for (Index j = i + 1; j < m; ++j) offdiag.push_back(c.values(i, j));
    const std::size_t n = offdiag.size();
    auto mid = offdiag.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(offdiag.begin(), mid, offdiag.end());
    Scalar upper = *mid;
    if (n % 2 == 1) return upper;
    auto lo = offdiag.begin() + static_cast<std::ptrdiff_t>(n / 2 - 1);
    std::nth_element(offdiag.begin(), lo, mid);
    return (*lo + upper) / Scalar(2);
}

/// Affinity propagation over a pre-defined affinity matrix.
///
/// The diagonal of the working similarity matrix is replaced by the
/// preference; responsibility and availability messages are updated with
/// damping until the exemplar set (points that are their own argmax of
/// a + r, ties to the lowest index) is unchanged for stable_iterations
/// consecutive iterations, or max_iterations is reached. Non-exemplars
/// are finally assigned to the exemplar of highest combined affinity,
/// ties to the lowest index. Deterministic: fixed iteration order, fixed
/// tie-breaking, no noise injection.
template <typename Scalar>
Clustering affinity_propagation(const AffinityMatrixT<Scalar>& c, const ApParams& params) {
    using Matrix = DenseMatrix<Scalar>;
    using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

    if (!(params.damping >= 0.5 && params.damping < 1.0))
        throw input_error("damping must be in [0.5, 1)");
    if (params.max_iterations < 1) throw input_error("max_iterations must be >= 1");
    if (params.stable_iterations < 1) throw input_error("stable_iterations must be >= 1");

    const Index m = c.order();
    if (m == 0) throw input_error("cannot cluster an empty affinity matrix");

    Clustering result;
    if (m == 1) {
        result.assignment = {0};
        result.exemplars = {0};
        result.clusters = {{0, {0}}};
        result.converged = true;
        result.iterations_used = 0;
        return result;
    }

    const Scalar pref = params.preference ? static_cast<Scalar>(*params.preference)
                                          : median_preference(c);
    const Scalar damp = static_cast<Scalar>(params.damping);
    const Scalar lowest = std::numeric_limits<Scalar>::lowest();

    Matrix s = c.values;
    s.diagonal().setConstant(pref);
    Matrix r = Matrix::Zero(m, m);
    Matrix a = Matrix::Zero(m, m);
    Matrix tmp(m, m);

    Vector max1(m), max2(m);
    std::vector<Index> argmax1(static_cast<std::size_t>(m));
    std::vector<char> exemplar_flag(static_cast<std::size_t>(m), 0);
    std::vector<char> prev_flag;
    std::vector<Index> row_best(static_cast<std::size_t>(m));

    int unchanged = 0;
    for (int it = 0; it < params.max_iterations; ++it) {
        result.iterations_used = it + 1;

        // Responsibilities: r(i,k) <- s(i,k) - max_{k' != k} (a(i,k') + s(i,k')).
        tmp = a + s;
        max1.setConstant(lowest);
        max2.setConstant(lowest);
        for (Index k = 0; k < m; ++k) {
            for (Index i = 0; i < m; ++i) {
                Scalar v = tmp(i, k);
                if (v > max1(i)) {
                    max2(i) = max1(i);
                    max1(i) = v;
                    argmax1[static_cast<std::size_t>(i)] = k;
                } else if (v > max2(i)) {
                    max2(i) = v;
                }
            }
        }
        tmp = s;
        tmp.colwise() -= max1;
        for (Index i = 0; i < m; ++i) {
            Index k = argmax1[static_cast<std::size_t>(i)];
            tmp(i, k) = s(i, k) - max2(i);
        }
        r = damp * r + (Scalar(1) - damp) * tmp;

        // Availabilities: a(i,k) <- min(0, r(k,k) + sum_{i' != i,k} max(0, r(i',k))),
        // a(k,k) <- sum_{i' != k} max(0, r(i',k)).
        tmp = r.cwiseMax(Scalar(0));
        tmp.diagonal() = r.diagonal();
        Vector colsum = tmp.colwise().sum();
        tmp = (-tmp).rowwise() + colsum.transpose();
        Vector diag_new = tmp.diagonal();
        tmp = tmp.cwiseMin(Scalar(0));
        tmp.diagonal() = diag_new;
        a = damp * a + (Scalar(1) - damp) * tmp;

        // Current exemplar estimate: row argmax of a + r.
        tmp = a + r;
        max1.setConstant(lowest);
        for (Index k = 0; k < m; ++k) {
            for (Index i = 0; i < m; ++i) {
                Scalar v = tmp(i, k);
                if (v > max1(i)) {
                    max1(i) = v;
                    row_best[static_cast<std::size_t>(i)] = k;
                }
            }
        }
        bool any_exemplar = false;
        for (Index i = 0; i < m; ++i) {
            exemplar_flag[static_cast<std::size_t>(i)] = (row_best[static_cast<std::size_t>(i)] == i);
            any_exemplar |= exemplar_flag[static_cast<std::size_t>(i)] != 0;
        }

        // Stability only counts once at least one point elects itself.
        if (any_exemplar && !prev_flag.empty() && exemplar_flag == prev_flag) {
            if (++unchanged >= params.stable_iterations) {
                result.converged = true;
                break;
            }
        } else {
            unchanged = 0;
        }
        prev_flag = exemplar_flag;
    }

    for (Index i = 0; i < m; ++i)
        if (exemplar_flag[static_cast<std::size_t>(i)]) result.exemplars.push_back(i);

    if (result.exemplars.empty()) {
        // No point elected itself; fall back to the single strongest candidate.
        Index best = 0;
        Scalar best_v = a(0, 0) + r(0, 0);
        for (Index i = 1; i < m; ++i) {
            Scalar v = a(i, i) + r(i, i);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        result.exemplars = {best};
        std::fill(exemplar_flag.begin(), exemplar_flag.end(), 0);
        exemplar_flag[static_cast<std::size_t>(best)] = 1;
    }

    result.assignment.resize(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
        if (exemplar_flag[static_cast<std::size_t>(i)]) {
            result.assignment[static_cast<std::size_t>(i)] = i;
            continue;
        }
        Index best = result.exemplars.front();
        Scalar best_v = c.values(i, best);
        for (Index e : result.exemplars) {
            Scalar v = c.values(i, e);
            if (v > best_v) {
                best_v = v;
                best = e;
            }
        }
        result.assignment[static_cast<std::size_t>(i)] = best;
    }

    result.clusters.reserve(result.exemplars.size());
    for (Index e : result.exemplars) result.clusters.push_back({e, {}});
    for (Index i = 0; i < m; ++i) {
        Index e = result.assignment[static_cast<std::size_t>(i)];
        auto it = std::lower_bound(result.exemplars.begin(), result.exemplars.end(), e);
        result.clusters[static_cast<std::size_t>(it - result.exemplars.begin())].members.push_back(i);
    }
    return result;
}

}  // namespace smerc
