#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "famcorr/histogram.hpp"
#include "famcorr/string_hash.hpp"

namespace famcorr {

// Psycholinguistic norm table: word -> familiarity rating on the published
// 1.0..7.0 scale (7.0 most familiar).
class FamiliarityList {
 public:
  static constexpr double kMinRating = 1.0;
  static constexpr double kMaxRating = 7.0;

  // Throws Error on duplicate word, empty/whitespace word, or rating
  // outside [1.0, 7.0].
  void insert(std::string word, double rating);

  std::optional<double> rating(std::string_view word) const {
    auto it = entries_.find(word);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view word) const { return entries_.contains(word); }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const auto& entries() const { return entries_; }

  // Descending rating, ties by ascending word — the "top N" order.
  std::vector<std::pair<std::string_view, double>> by_rating() const;

 private:
  std::unordered_map<std::string, double, StringHash, std::equal_to<>> entries_;
};

// TSV `word<TAB>rating`, `#` comments ignored. Raw ratings are divided by
// scale_divisor before validation (100.0 for raw MRC exports, 1.0 otherwise).
FamiliarityList load_famlist(const std::filesystem::path& path, double scale_divisor = 1.0);

// Ascending word order; ratings as shortest round-trip decimals.
void save_famlist(const FamiliarityList& list, std::ostream& out);
void save_famlist(const FamiliarityList& list, const std::filesystem::path& path);

// Equal-width bins over the fixed [1.0, 7.0] scale; the top bin is closed.
Histogram rating_histogram(const FamiliarityList& list, int bins);

// The n highest-rated entries (ties by ascending word); whole list if
// n >= size.
FamiliarityList top_n_by_rating(const FamiliarityList& list, std::size_t n);

}  // namespace famcorr
