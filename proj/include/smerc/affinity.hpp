#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "smerc/text_pipeline.hpp"
#include "smerc/types.hpp"

namespace smerc {

enum class AffinityKind { cosine, decay, combined };

/// Dense symmetric pairwise affinity matrix with unit diagonal.
/// Entries are computed once per unordered pair and mirrored, so
/// symmetry is exact.
template <typename Scalar>
struct AffinityMatrixT {
    DenseMatrix<Scalar> values;
    AffinityKind kind = AffinityKind::combined;

    Index order() const { return values.rows(); }
};

using AffinityMatrix = AffinityMatrixT<double>;

/// Pairwise cosine similarity of TF-IDF rows. Throws if any row has
/// zero norm; upstream cleaning is expected to have excluded those.
AffinityMatrix cosine_matrix(const TfIdfMatrix& x);

/// E(i, j) = exp(-|t_i - t_j| / t_p).
template <typename Scalar>
AffinityMatrixT<Scalar> decay_matrix(const std::vector<std::int64_t>& timestamps, Scalar t_p) {
    if (!(t_p > Scalar(0))) throw input_error("t_p must be > 0");
    const Index m = static_cast<Index>(timestamps.size());
    AffinityMatrixT<Scalar> e;
    e.kind = AffinityKind::decay;
    e.values.setOnes(m, m);
    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 1; j < m; ++j) {
            Scalar dt = static_cast<Scalar>(std::llabs(timestamps[static_cast<std::size_t>(i)] -
                                                       timestamps[static_cast<std::size_t>(j)]));
            Scalar v = std::exp(-dt / t_p);
            e.values(i, j) = v;
            e.values(j, i) = v;
        }
    }
    return e;
}

/// C = D .* E, the combined textual/temporal affinity.
template <typename Scalar>
AffinityMatrixT<Scalar> hadamard(const AffinityMatrixT<Scalar>& d, const AffinityMatrixT<Scalar>& e) {
    if (d.order() != e.order())
        throw input_error("affinity matrix order mismatch: " + std::to_string(d.order()) +
                          " vs " + std::to_string(e.order()));
    AffinityMatrixT<Scalar> c;
    c.kind = AffinityKind::combined;
    c.values = d.values.cwiseProduct(e.values);
    return c;
}

/// An all-ones decay matrix: the no-decay (t_p -> infinity) limit.
template <typename Scalar>
AffinityMatrixT<Scalar> unit_decay_matrix(Index m) {
    AffinityMatrixT<Scalar> e;
    e.kind = AffinityKind::decay;
    e.values.setOnes(m, m);
    return e;
}

}  // namespace smerc
