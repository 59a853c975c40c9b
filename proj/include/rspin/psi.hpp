#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rspin/rational.hpp"

namespace rspin {

/// <tau_{d_1} ... tau_{d_n}>_g on the moduli space of stable curves.
/// Zero off dimension (sum d != 3g - 3 + n); throws std::invalid_argument for
/// unstable (g, n) or negative entries. Memoized, thread-safe.
Rat psi_intersection(int g, const std::vector<int>& d);

/// Format tag written at the top of the cache file.
inline constexpr const char* kPsiCacheFormat = "rspin-psi-v1";

/// Writes every memoized value as JSON {format, entries: [{g, d, value}]}.
void save_psi_cache(const std::string& path);

/// Loads a cache file into the memo. Returns the number of records read.
/// A missing file reads zero records; a format mismatch or malformed file
/// throws std::runtime_error and leaves the memo untouched.
std::size_t load_psi_cache(const std::string& path);

/// Number of memoized entries (for diagnostics).
std::size_t psi_cache_size();

}  // namespace rspin
