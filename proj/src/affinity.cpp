#include "smerc/affinity.hpp"

#include <string>

namespace smerc {
namespace {

double sparse_dot(const SparseRow& a, const SparseRow& b) {
    double sum = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) ++ia;
        else if (ib->first < ia->first) ++ib;
        else {
            sum += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

}  // namespace

AffinityMatrix cosine_matrix(const TfIdfMatrix& x) {
    const Index m = static_cast<Index>(x.row_count());
    std::vector<double> norms(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
        const auto& row = x.rows[static_cast<std::size_t>(i)];
        double norm = std::sqrt(sparse_dot(row, row));
        if (!(norm > 0.0))
            throw std::logic_error("tfidf row " + std::to_string(i) +
                                   " has zero norm; empty rows must be excluded upstream");
        norms[static_cast<std::size_t>(i)] = norm;
    }

    AffinityMatrix d;
    d.kind = AffinityKind::cosine;
    d.values.setOnes(m, m);
    for (Index i = 0; i < m; ++i) {
        const auto& ri = x.rows[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < m; ++j) {
            double v = sparse_dot(ri, x.rows[static_cast<std::size_t>(j)]) /
                       (norms[static_cast<std::size_t>(i)] * norms[static_cast<std::size_t>(j)]);
            d.values(i, j) = v;
            d.values(j, i) = v;
        }
    }
    return d;
}

}  // namespace smerc
