#pragma once

#include <string>
#include <string_view>

namespace smerc {

/// Porter stemming algorithm, original 1980 rule set.
/// Expects a lowercase token; returns its stem. Tokens shorter than
/// three characters are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace smerc
