#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "famcorr/famlist.hpp"
#include "famcorr/frequency_table.hpp"

namespace famcorr {

// How familiarity-list words absent from the corpus enter Spearman:
//   rank_bottom — treated as frequency 0, so they form one tied block at the
//                 bottom of the frequency ranking (the Table 3 method);
//   exclude     — dropped, ranks computed over covered words only.
enum class MissingMode { rank_bottom, exclude };

// Familiarity list joined against a corpus: aligned series for the covered
// words plus the ratings of the missing ones (needed for rank_bottom).
// Covered and missing words together partition the familiarity list.
struct JoinedSeries {
  std::vector<std::string> words;  // covered, ascending
  Eigen::VectorXd log_freq;        // per covered word
  Eigen::VectorXd count;           // raw counts, for rank arithmetic
  Eigen::VectorXd rating;
  std::vector<std::string> missing;  // ascending
  Eigen::VectorXd missing_rating;

  std::size_t covered() const { return words.size(); }
  std::size_t list_size() const { return words.size() + missing.size(); }
};

// One row of the coverage/correlation table.
struct CorrelationReport {
  std::uint64_t covered = 0;
  double coverage_pct = 0.0;
  std::optional<double> pearson;
  std::optional<double> spearman;
};

// JSON object {covered, coverage_pct, pearson, spearman}; undefined
// coefficients serialize as null.
std::string to_json(const CorrelationReport& report);

// log_base must be > 0 and != 1 (throws Error otherwise).
JoinedSeries join(const FrequencyTable& freq, const FamiliarityList& fam,
                  double log_base = 10.0);

// Product-moment over covered pairs only; missing words never enter.
std::optional<double> pearson(const JoinedSeries& series);

// Rank correlation; see MissingMode for how missing words are handled.
// Ratings always rank every participating word with average ranks for ties.
std::optional<double> spearman(const JoinedSeries& series,
                               MissingMode mode = MissingMode::rank_bottom);

// Count and percentage of familiarity-list words present in the corpus.
std::pair<std::uint64_t, double> coverage(const FrequencyTable& freq,
                                          const FamiliarityList& fam);

// Full report for one corpus against one list (a Table 3 row).
CorrelationReport correlate(const FrequencyTable& freq, const FamiliarityList& fam,
                            double log_base = 10.0,
                            MissingMode mode = MissingMode::rank_bottom);

// Corpus-vs-corpus correlation restricted to the familiarity list's words.
// Pearson over words covered by both tables; Spearman over all list words
// with each table's missing words at frequency 0. Symmetric in a and b.
CorrelationReport cross_correlate(const FrequencyTable& a, const FrequencyTable& b,
                                  const FamiliarityList& fam, double log_base = 10.0);

}  // namespace famcorr
