#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "famcorr/correlation.hpp"
#include "famcorr/counting.hpp"
#include "famcorr/famlist.hpp"
#include "famcorr/frequency_table.hpp"
#include "famcorr/histogram.hpp"
#include "famcorr/lemma_map.hpp"

namespace famcorr {

// Ordered (x, correlation) points for growth / top-N / reversal plots.
struct ExperimentCurve {
  std::string label;
  std::vector<std::pair<double, double>> points;  // x strictly increasing
};

// TSV `x<TAB>correlation`.
void save_curve(const ExperimentCurve& curve, std::ostream& out);

// Ranks a copy of the list by rating (ties by ascending word), then applies
// max_swaps uniformly random adjacent transpositions to the copy, recording
// after each swap the Spearman correlation between the copy's order and the
// original order. Swaps accumulate and may overlap. Point 0 is (0, 1.0).
ExperimentCurve reversal_curve(const FamiliarityList& fam, std::uint64_t max_swaps,
                               std::uint64_t seed);

struct SwapSearch {
  bool reached = false;
  std::uint64_t swaps = 0;      // first swap count at or below target, or the cap
  double correlation = 1.0;     // correlation at `swaps`
};

// Smallest swap count at which the reversal correlation first drops to
// <= target; stops at `cap` swaps if never reached.
SwapSearch swaps_to_reach(const FamiliarityList& fam, double target, std::uint64_t seed,
                          std::uint64_t cap = 1'000'000);

enum class CurveCoef { pearson, spearman };

// Correlation of growing corpus prefixes against the list. Sizes must be
// strictly ascending; empty means powers of ten up to the corpus length.
// Sizes past the corpus length saturate to one final full-corpus point.
// Prefix reports with an undefined coefficient are skipped, not fabricated.
ExperimentCurve growth_curve(TokenStream& tokens, const LemmaMap& lemmas,
                             const FamiliarityList& fam, std::span<const std::uint64_t> sizes,
                             CurveCoef coef, double log_base = 10.0,
                             MissingMode mode = MissingMode::rank_bottom);

enum class SampleMode { prefix, random };

struct CorpusResult {
  std::string label;
  std::optional<CorrelationReport> report;
  std::string error;  // set when the corpus could not be processed
};

struct FixedKInput {
  std::string label;
  TokenStream* tokens = nullptr;
};

// Same-quantity comparison: from each corpus take K tokens (deterministic
// prefix, or a seeded uniform sample of token positions), correlate against
// the top N rated words. A corpus shorter than K yields an error entry;
// the others are still processed. n == 0 means the whole list.
std::vector<CorpusResult> fixed_k_compare(std::span<const FixedKInput> corpora,
                                          const LemmaMap& lemmas, const FamiliarityList& fam,
                                          std::uint64_t k, std::size_t n,
                                          double log_base = 10.0,
                                          SampleMode mode = SampleMode::prefix,
                                          std::uint64_t seed = 0,
                                          MissingMode missing = MissingMode::rank_bottom);

// Correlation as a function of the familiarity-list size N. The grid must be
// ascending; values past the list size saturate to one final point.
ExperimentCurve topn_curve(const FrequencyTable& freq, const FamiliarityList& fam,
                           std::span<const std::uint64_t> n_grid, CurveCoef coef,
                           double log_base = 10.0,
                           MissingMode mode = MissingMode::rank_bottom);

// One word common to the corpus and the list, with its two rankings.
// Rank 1 = most frequent / most familiar; ties carry average ranks, so
// ranks may be fractional.
struct RankDiffEntry {
  std::string word;
  double corpus_rank = 0.0;       // n
  double familiarity_rank = 0.0;  // m
  double diff = 0.0;              // m - n
};

// Words contributing most to lowering the correlation, over words common to
// the corpus and the list: first the top_k entries by m - n (ranked high by
// the corpus, low by familiarity), then the top_k by n - m (familiar but
// rare in the corpus).
std::pair<std::vector<RankDiffEntry>, std::vector<RankDiffEntry>> rank_diff(
    const FrequencyTable& freq, const FamiliarityList& fam, std::size_t top_k);

// TSV `word<TAB>n<TAB>m<TAB>diff`.
void save_rank_diff(std::span<const RankDiffEntry> entries, std::ostream& out);

struct CoveredStats {
  double type_pct = 0.0;   // corpus types found in the list / corpus types
  double token_pct = 0.0;  // tokens of those types / corpus tokens
  std::optional<double> entropy_bits;  // of the covered words' distribution
};

CoveredStats covered_stats(const FrequencyTable& freq, const FamiliarityList& fam);

// Word types per log-frequency bin, range = data min..max, top bin closed.
Histogram logfreq_histogram(const FrequencyTable& freq, int bins, double log_base = 10.0);

// Least-squares slope of log(count) against log(rank) over the table's
// rank-frequency profile (average ranks for tied counts). nullopt when the
// table has fewer than 3 distinct counts.
std::optional<double> powerlaw_slope(const FrequencyTable& freq);

// k most frequent words, ties by ascending word.
std::vector<std::string> top_words(const FrequencyTable& freq, std::size_t k);

// For each count value 1..n_max, up to per_level uniformly chosen words with
// exactly that count; levels with no words are skipped.
std::vector<std::string> rare_words(const FrequencyTable& freq, std::uint64_t n_max,
                                    std::size_t per_level, std::uint64_t seed);

}  // namespace famcorr
