#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace famcorr {

// Transparent hash so unordered maps keyed by std::string accept
// string_view lookups without allocating.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
  std::size_t operator()(const std::string& s) const {
    return std::hash<std::string_view>{}(s);
  }
};

}  // namespace famcorr
