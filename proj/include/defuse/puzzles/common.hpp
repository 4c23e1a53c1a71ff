#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "defuse/rng.hpp"
#include "defuse/types.hpp"
#include "json.hpp"

namespace defuse {

using ordered_json = nlohmann::ordered_json;

/// Linear search helper for token -> index lookups.
inline int index_of(const std::vector<std::string>& v, std::string_view s) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == s) return static_cast<int>(i);
  return -1;
}

} // namespace defuse
