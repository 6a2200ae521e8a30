#include "smerc/text_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "smerc/porter_stemmer.hpp"

namespace smerc {
namespace {

bool is_token_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

bool is_url(std::string_view token) {
    return token.starts_with("http://") || token.starts_with("https://") ||
           token.starts_with("www.");
}

bool purely_numeric(std::string_view token) {
    return std::all_of(token.begin(), token.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::vector<std::string> clean(std::string_view text, const StopwordSet& stopwords) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return std::tolower(c); });

    std::vector<std::string> stems;
    std::size_t pos = 0;
    while (pos < lowered.size()) {
        while (pos < lowered.size() && std::isspace(static_cast<unsigned char>(lowered[pos])))
            ++pos;
        std::size_t end = pos;
        while (end < lowered.size() && !std::isspace(static_cast<unsigned char>(lowered[end])))
            ++end;
        if (end == pos) break;
        std::string_view word(lowered.data() + pos, end - pos);
        pos = end;

        if (is_url(word)) continue;
        if (!word.empty() && (word.front() == '#' || word.front() == '@'))
            word.remove_prefix(1);

        // Split the whitespace token on anything outside [a-z0-9].
        std::size_t i = 0;
        while (i < word.size()) {
            while (i < word.size() && !is_token_char(word[i])) ++i;
            std::size_t j = i;
            while (j < word.size() && is_token_char(word[j])) ++j;
            std::string_view token = word.substr(i, j - i);
            i = j;
            if (token.size() < 2 || purely_numeric(token)) continue;
            if (stopwords.contains(std::string(token))) continue;
            stems.push_back(porter_stem(token));
        }
    }
    return stems;
}

Vocabulary build_vocabulary(const std::vector<CleanedTweet>& cleaned) {
    Vocabulary vocab;
    for (const auto& tweet : cleaned) {
        for (const auto& stem : tweet.stems) {
            auto [it, inserted] = vocab.index.try_emplace(stem, vocab.size());
            if (inserted) vocab.stems.push_back(stem);
        }
    }
    return vocab;
}

TfIdfMatrix tfidf(const std::vector<CleanedTweet>& cleaned, const Vocabulary& vocab) {
    const auto m = cleaned.size();
    const int n = vocab.size();

    // Per-tweet raw counts, columns ascending.
    std::vector<std::vector<std::pair<int, int>>> counts(m);
    std::vector<int> doc_frequency(n, 0);
    bool any_stem = false;
    for (std::size_t i = 0; i < m; ++i) {
        std::map<int, int> row;
        for (const auto& stem : cleaned[i].stems) {
            auto it = vocab.index.find(stem);
            if (it == vocab.index.end())
                throw input_error("stem not in vocabulary: " + stem);
            ++row[it->second];
        }
        counts[i].assign(row.begin(), row.end());
        for (const auto& [col, cnt] : counts[i]) {
            (void)cnt;
            ++doc_frequency[col];
        }
        if (!row.empty()) any_stem = true;
    }
    if (!any_stem) throw input_error("corpus has no stems after cleaning");

    TfIdfMatrix result;
    result.vocab = vocab;
    result.doc_frequency = std::move(doc_frequency);
    result.rows.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        int max_count = 0;
        for (const auto& [col, cnt] : counts[i]) max_count = std::max(max_count, cnt);
        if (max_count == 0) continue;
        SparseRow& row = result.rows[i];
        row.reserve(counts[i].size());
        for (const auto& [col, cnt] : counts[i]) {
            double tf = 0.5 + 0.5 * static_cast<double>(cnt) / max_count;
            double idf = std::log(static_cast<double>(m) / result.doc_frequency[col]);
            row.emplace_back(col, tf * idf);
        }
    }
    return result;
}

}  // namespace smerc
