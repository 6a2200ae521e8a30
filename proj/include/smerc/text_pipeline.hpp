#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smerc/stopwords.hpp"
#include "smerc/types.hpp"

namespace smerc {

/// Ordered multiset of stems surviving the cleaning of one tweet.
struct CleanedTweet {
    std::size_t tweet_index = 0;
    std::vector<std::string> stems;
};

/// Distinct stems in first-occurrence order, with a stem -> column map.
struct Vocabulary {
    std::vector<std::string> stems;
    std::unordered_map<std::string, int> index;

    int size() const { return static_cast<int>(stems.size()); }
};

/// Sparse entry: (vocabulary column, weight).
using SparseRow = std::vector<std::pair<int, double>>;

struct TfIdfMatrix {
    std::vector<SparseRow> rows;   // one per tweet, columns ascending
    Vocabulary vocab;
    std::vector<int> doc_frequency;  // n_j per column

    std::size_t row_count() const { return rows.size(); }
};

/// Tokenize and normalize one message: lowercase, drop URL tokens
/// (http://, https://, www. prefixes), strip one leading '#' or '@',
/// split on non-alphanumeric characters, drop tokens shorter than two
/// characters and purely numeric tokens, remove stop words, Porter-stem.
/// Token order is preserved; the result may be empty.
std::vector<std::string> clean(std::string_view text, const StopwordSet& stopwords);

/// Distinct stems across all tweets, ordered by first occurrence.
Vocabulary build_vocabulary(const std::vector<CleanedTweet>& cleaned);

/// Augmented TF-IDF: weight(j, i) = (0.5 + 0.5 * f_ji / max_k f_ki) * ln(m / n_j)
/// for f_ji > 0, else 0. Natural logarithm. Throws input_error when no
/// tweet has any stem.
TfIdfMatrix tfidf(const std::vector<CleanedTweet>& cleaned, const Vocabulary& vocab);

}  // namespace smerc
