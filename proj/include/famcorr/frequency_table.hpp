#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "famcorr/lemma_map.hpp"
#include "famcorr/string_hash.hpp"

namespace famcorr {

// Word -> occurrence count. Counts are 64-bit: web-scale corpora reach
// ~10^11 tokens. Zero-count entries are never stored, so
// sum(counts) == total_tokens and map size == total_types by construction.
class FrequencyTable {
 public:
  using Map = std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>>;

  FrequencyTable() = default;

  // Throws ArithmeticError on 64-bit overflow.
  void add(std::string_view word, std::uint64_t n = 1);

  std::uint64_t count(std::string_view word) const {
    auto it = counts_.find(word);
    return it == counts_.end() ? 0 : it->second;
  }
  bool contains(std::string_view word) const { return counts_.contains(word); }

  std::uint64_t total_tokens() const { return total_tokens_; }
  std::uint64_t total_types() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  const Map& counts() const { return counts_; }

  // Descending count, then ascending word — the canonical rank order.
  std::vector<std::pair<std::string_view, std::uint64_t>> entries_by_count() const;

  void reserve(std::size_t n) { counts_.reserve(n); }

 private:
  Map counts_;
  std::uint64_t total_tokens_ = 0;
};

// Per-key sums; commutative and associative, so shard tables can merge in
// any order.
FrequencyTable merge_tables(const FrequencyTable& a, const FrequencyTable& b);

FrequencyTable count_corpus(std::span<const std::string> tokens, const LemmaMap& lemmas);

// Count of the first min(n, tokens.size()) tokens.
FrequencyTable prefix_table(std::span<const std::string> tokens, const LemmaMap& lemmas,
                            std::uint64_t n);

// TSV `word<TAB>count` in rank order, preceded by
// `# total_tokens=N` and `# total_types=M`.
void save_frequency_table(const FrequencyTable& table, std::ostream& out);
void save_frequency_table(const FrequencyTable& table, const std::filesystem::path& path);
FrequencyTable load_frequency_table(const std::filesystem::path& path);

}  // namespace famcorr
