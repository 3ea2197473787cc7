#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "famcorr/counting.hpp"
#include "famcorr/famlist.hpp"
#include "famcorr/frequency_table.hpp"
#include "famcorr/lemma_map.hpp"

namespace famcorr {

// Familiarity-like scores derived from corpus log-frequency, min-max
// calibrated onto the published 1.0..7.0 scale. Ratings are non-decreasing
// in source frequency by construction.
struct PseudoFamiliarityList {
  FamiliarityList ratings;
  std::string source;   // identity of the source table
  double log_base = 10.0;
  double log_min = 0.0;  // log-frequency mapped to 1.0
  double log_max = 0.0;  // log-frequency mapped to 7.0
};

// rating(w) = 1 + 6 * (log f(w) - log_min) / (log_max - log_min). A table
// whose counts are all equal has no spread to calibrate; every word scores
// the scale midpoint 4.0. Throws Error on an empty table.
PseudoFamiliarityList score(const FrequencyTable& freq, double log_base = 10.0,
                            std::string source = "");

// The `size` highest-scored words, ties by ascending word (Dale-Chall-style
// basic list; 3000 is the classic size).
std::vector<std::string> basic_word_list(const PseudoFamiliarityList& pf, std::size_t size);

struct ReadabilityReport {
  std::uint64_t total_tokens = 0;
  std::uint64_t hard_tokens = 0;
  double hard_fraction = 0.0;  // 0 when the text is empty
  double threshold = 0.0;
};

std::string to_json(const ReadabilityReport& report);

// Counts tokens whose lemma scores below the threshold; words absent from
// the scorer count as rating 1.0 (never seen in the source corpus).
ReadabilityReport assess(TokenStream& tokens, const PseudoFamiliarityList& pf,
                         const LemmaMap& lemmas, double threshold);
ReadabilityReport assess(std::span<const std::string> tokens, const PseudoFamiliarityList& pf,
                         const LemmaMap& lemmas, double threshold);

// Familiarity-list TSV plus `# source=`, `# log_base=`, `# log_min=`,
// `# log_max=` provenance headers.
void save_pseudofam(const PseudoFamiliarityList& pf, std::ostream& out);
void save_pseudofam(const PseudoFamiliarityList& pf, const std::filesystem::path& path);
PseudoFamiliarityList load_pseudofam(const std::filesystem::path& path);

}  // namespace famcorr
