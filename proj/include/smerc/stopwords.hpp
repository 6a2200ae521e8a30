#pragma once

#include <filesystem>
#include <string>
#include <unordered_set>

namespace smerc {

using StopwordSet = std::unordered_set<std::string>;

/// The bundled 127-word English stop word list.
const StopwordSet& default_stopwords();

/// Load a stop word file: UTF-8, one word per line, lines starting
/// with `#` ignored. Words are lowercased.
StopwordSet load_stopwords(const std::filesystem::path& path);

}  // namespace smerc
