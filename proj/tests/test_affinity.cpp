#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "smerc/affinity.hpp"
#include "smerc/stopwords.hpp"
#include "smerc/text_pipeline.hpp"
#include "test_support.hpp"

using namespace smerc;

namespace {

TfIdfMatrix matrix_from_rows(std::vector<SparseRow> rows) {
    TfIdfMatrix matrix;
    matrix.rows = std::move(rows);
    return matrix;
}

TfIdfMatrix corpus_tfidf(const Corpus& corpus) {
    std::vector<CleanedTweet> cleaned;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        cleaned.push_back({i, clean(corpus.tweets[i].text, default_stopwords())});
    return tfidf(cleaned, build_vocabulary(cleaned));
}

}  // namespace

TEST_SUITE("affinity_matrix") {

TEST_CASE("cosine of identical, disjoint and overlapping rows") {
    TfIdfMatrix matrix = matrix_from_rows({
        {{0, 1.0}, {1, 1.0}},  // (1,1,0)
        {{0, 1.0}, {1, 1.0}},  // identical
        {{2, 2.5}},            // disjoint support
        {{0, 1.0}},            // (1,0,0)
    });
    AffinityMatrix d = cosine_matrix(matrix);
    CHECK(d.kind == AffinityKind::cosine);
    CHECK(d.values(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.values(0, 2) == 0.0);
    CHECK(d.values(0, 3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(d.values(0, 3) == doctest::Approx(0.707107).epsilon(1e-6));
    for (Index i = 0; i < 4; ++i) CHECK(d.values(i, i) == 1.0);
}

TEST_CASE("cosine rejects zero-norm rows") {
    TfIdfMatrix matrix = matrix_from_rows({{{0, 1.0}}, {}});
    CHECK_THROWS_AS(cosine_matrix(matrix), std::logic_error);
}

TEST_CASE("decay matrix follows exp(-dt/t_p)") {
    std::vector<std::int64_t> timestamps = {100, 100, 195};
    AffinityMatrix e = decay_matrix(timestamps, 95.0);
    CHECK(e.values(0, 1) == 1.0);  // dt = 0
    CHECK(e.values(0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));  // dt = t_p
    CHECK(e.values(0, 2) == doctest::Approx(0.367879).epsilon(1e-6));

    // t_p calibrated from a decay rate of 0.01058/s, gap of one minute.
    AffinityMatrix cal = decay_matrix<double>({0, 60}, 1.0 / 0.01058);
    CHECK(cal.values(0, 1) == doctest::Approx(std::exp(-60.0 * 0.01058)).epsilon(1e-12));
    CHECK(cal.values(0, 1) == doctest::Approx(0.530057).epsilon(1e-6));
    CHECK_THROWS_AS(decay_matrix(timestamps, 0.0), input_error);
}

TEST_CASE("decay is monotone in gap and in t_p") {
    std::vector<std::int64_t> timestamps = {0, 10, 50, 400};
    AffinityMatrix narrow = decay_matrix(timestamps, 60.0);
    AffinityMatrix wide = decay_matrix(timestamps, 300.0);
    CHECK(narrow.values(0, 1) > narrow.values(0, 2));
    CHECK(narrow.values(0, 2) > narrow.values(0, 3));
    for (Index i = 0; i < 4; ++i)
        for (Index j = i + 1; j < 4; ++j) CHECK(wide.values(i, j) > narrow.values(i, j));
}

TEST_CASE("hadamard combines entrywise") {
    AffinityMatrix d;
    d.kind = AffinityKind::cosine;
    d.values.resize(2, 2);
    d.values << 1.0, 0.8, 0.8, 1.0;
    AffinityMatrix e;
    e.kind = AffinityKind::decay;
    e.values.resize(2, 2);
    e.values << 1.0, 0.5, 0.5, 1.0;
    AffinityMatrix c = hadamard(d, e);
    CHECK(c.values(0, 1) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(c.values(0, 0) == 1.0);

    d.values(0, 1) = d.values(1, 0) = 0.0;
    CHECK(hadamard(d, e).values(0, 1) == 0.0);  // zero absorbs

    AffinityMatrix wrong;
    wrong.values.setOnes(3, 3);
    CHECK_THROWS_AS(hadamard(d, wrong), input_error);
}

TEST_CASE("huge t_p approaches the identity scaling") {
    std::vector<std::int64_t> timestamps = {0, 20, 45, 99};
    AffinityMatrix d;
    d.kind = AffinityKind::cosine;
    d.values.resize(4, 4);
    d.values.setConstant(0.6);
    d.values.diagonal().setOnes();
    AffinityMatrix e = decay_matrix(timestamps, 1e15);
    AffinityMatrix c = hadamard(d, e);
    CHECK((c.values - d.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("matrix invariants and oracle equivalence on random corpora") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        Corpus corpus = testing::random_stem_corpus(rng);
        TfIdfMatrix matrix = corpus_tfidf(corpus);
        const Index m = static_cast<Index>(matrix.row_count());

        std::vector<std::int64_t> timestamps;
        for (const auto& tweet : corpus.tweets) timestamps.push_back(tweet.timestamp);

        AffinityMatrix d = cosine_matrix(matrix);
        AffinityMatrix e = decay_matrix(timestamps, 120.0);
        AffinityMatrix c = hadamard(d, e);

        // Exact symmetry, unit diagonals, entry ranges, C bounded by D.
        for (Index i = 0; i < m; ++i) {
            CHECK(d.values(i, i) == 1.0);
            CHECK(e.values(i, i) == 1.0);
            CHECK(c.values(i, i) == 1.0);
            for (Index j = 0; j < m; ++j) {
                CHECK(d.values(i, j) == d.values(j, i));
                CHECK(e.values(i, j) == e.values(j, i));
                CHECK(c.values(i, j) == c.values(j, i));
                CHECK(d.values(i, j) >= 0.0);
                CHECK(d.values(i, j) <= 1.0 + 1e-15);
                CHECK(e.values(i, j) > 0.0);
                CHECK(e.values(i, j) <= 1.0);
                CHECK(c.values(i, j) <= d.values(i, j) + 1e-15);
            }
        }

        // Dense double-loop recomputation of D and E.
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, matrix.vocab.size());
        for (Index i = 0; i < m; ++i)
            for (const auto& [col, w] : matrix.rows[static_cast<std::size_t>(i)])
                dense(i, col) = w;
        Eigen::MatrixXd d_expected = oracle::naive_cosine(dense);
        CHECK((d.values - d_expected).cwiseAbs().maxCoeff() <= 1e-12);
        for (Index i = 0; i < m; ++i) {
            for (Index j = 0; j < m; ++j) {
                double dt = std::abs(static_cast<double>(timestamps[static_cast<std::size_t>(i)] -
                                                         timestamps[static_cast<std::size_t>(j)]));
                CHECK(e.values(i, j) ==
                      doctest::Approx(std::exp(-dt / 120.0)).epsilon(1e-12));
            }
        }
    }
}

}  // TEST_SUITE
