#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>

#include "famcorr/string_hash.hpp"

namespace famcorr {

// Surface form -> standard form. Unmapped surfaces fall through unchanged,
// so an empty map is the identity.
class LemmaMap {
 public:
  LemmaMap() = default;

  // Throws Error on empty surface/lemma or duplicate surface.
  void insert(std::string surface, std::string lemma);

  std::string_view apply(std::string_view surface) const {
    auto it = entries_.find(surface);
    return it == entries_.end() ? surface : std::string_view(it->second);
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::unordered_map<std::string, std::string, StringHash, std::equal_to<>> entries_;
};

// TSV `surface<TAB>lemma`, UTF-8, `#` comment lines ignored.
LemmaMap load_lemma_map(const std::filesystem::path& path);

}  // namespace famcorr
