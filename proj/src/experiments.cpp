#include "famcorr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "famcorr/error.hpp"
#include "famcorr/rng.hpp"
#include "famcorr/stats.hpp"
#include "famcorr/text_format.hpp"

namespace famcorr {

namespace {

// Shared reversal machinery. The list copy is a permutation of 0..n-1 where
// the original order (by descending rating, ties by word) is the identity.
// Both orders are distinct ranks, so Spearman reduces to the displacement
// form rho = 1 - 6*S / (n(n^2-1)) with S = sum of squared displacements,
// and an adjacent swap updates S in O(1).
class ReversalWalk {
 public:
  ReversalWalk(const FamiliarityList& fam, std::uint64_t seed)
      : n_(static_cast<std::int64_t>(fam.size())), rng_(seed) {
    if (n_ < 2) throw Error("reversal simulation needs a list of >= 2 words");
    copy_.resize(static_cast<std::size_t>(n_));
    std::iota(copy_.begin(), copy_.end(), std::int64_t{0});
    denom_ = static_cast<double>(n_) * (static_cast<double>(n_) * static_cast<double>(n_) - 1.0);
  }

  // Applies one uniformly random adjacent transposition.
  void step() {
    const auto i = static_cast<std::int64_t>(rng_.below(static_cast<std::uint64_t>(n_ - 1)));
    const std::int64_t u = copy_[static_cast<std::size_t>(i)];
    const std::int64_t v = copy_[static_cast<std::size_t>(i + 1)];
    const std::int64_t du = i - u;
    const std::int64_t dv = (i + 1) - v;
    sum_sq_ += 2 * (du - dv) + 2;
    std::swap(copy_[static_cast<std::size_t>(i)], copy_[static_cast<std::size_t>(i + 1)]);
  }

  double correlation() const { return 1.0 - 6.0 * static_cast<double>(sum_sq_) / denom_; }

 private:
  std::int64_t n_;
  Rng rng_;
  std::vector<std::int64_t> copy_;
  std::int64_t sum_sq_ = 0;
  double denom_ = 0.0;
};

std::optional<double> pick_coef(const CorrelationReport& report, CurveCoef coef) {
  return coef == CurveCoef::pearson ? report.pearson : report.spearman;
}

void check_ascending(std::span<const std::uint64_t> grid, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 0) throw Error(std::string(what) + " entries must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw Error(std::string(what) + " must be strictly ascending");
    }
  }
}

}  // namespace

void save_curve(const ExperimentCurve& curve, std::ostream& out) {
  for (const auto& [x, corr] : curve.points) {
    out << format_number(x) << '\t' << format_double(corr) << '\n';
  }
}

ExperimentCurve reversal_curve(const FamiliarityList& fam, std::uint64_t max_swaps,
                               std::uint64_t seed) {
  ReversalWalk walk(fam, seed);
  ExperimentCurve curve;
  curve.label = "reversal";
  curve.points.reserve(static_cast<std::size_t>(max_swaps) + 1);
  curve.points.emplace_back(0.0, 1.0);
  for (std::uint64_t k = 1; k <= max_swaps; ++k) {
    walk.step();
    curve.points.emplace_back(static_cast<double>(k), walk.correlation());
  }
  return curve;
}

SwapSearch swaps_to_reach(const FamiliarityList& fam, double target, std::uint64_t seed,
                          std::uint64_t cap) {
  if (!(target < 1.0)) throw Error("reversal target must be < 1.0");
  ReversalWalk walk(fam, seed);
  SwapSearch result;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    walk.step();
    if (walk.correlation() <= target) {
      result.reached = true;
      result.swaps = k;
      result.correlation = walk.correlation();
      return result;
    }
  }
  result.reached = false;
  result.swaps = cap;
  result.correlation = walk.correlation();
  return result;
}

ExperimentCurve growth_curve(TokenStream& tokens, const LemmaMap& lemmas,
                             const FamiliarityList& fam, std::span<const std::uint64_t> sizes,
                             CurveCoef coef, double log_base, MissingMode mode) {
  check_ascending(sizes, "size grid");
  const bool pow10 = sizes.empty();

  ExperimentCurve curve;
  curve.label = coef == CurveCoef::pearson ? "growth-pearson" : "growth-spearman";

  FrequencyTable table;
  std::uint64_t consumed = 0;
  std::uint64_t last_x = 0;
  const auto record = [&](std::uint64_t x) {
    const auto report = correlate(table, fam, log_base, mode);
    if (const auto value = pick_coef(report, coef)) {
      curve.points.emplace_back(static_cast<double>(x), *value);
    }
    last_x = x;
  };

  std::size_t size_idx = 0;
  std::uint64_t next_size = pow10 ? 10 : sizes[0];
  std::string token;
  while (tokens.next(token)) {
    table.add(lemmas.apply(token));
    ++consumed;
    if (consumed == next_size) {
      record(consumed);
      if (pow10) {
        next_size *= 10;
      } else {
        ++size_idx;
        next_size = size_idx < sizes.size() ? sizes[size_idx] : 0;  // 0: none left
        if (next_size == 0) break;
      }
    }
  }
  // A pending size beyond the corpus length saturates to the full corpus.
  const bool pending = pow10 || (size_idx < sizes.size());
  if (pending && consumed > last_x && consumed > 0) record(consumed);
  return curve;
}

std::vector<CorpusResult> fixed_k_compare(std::span<const FixedKInput> corpora,
                                          const LemmaMap& lemmas, const FamiliarityList& fam,
                                          std::uint64_t k, std::size_t n, double log_base,
                                          SampleMode mode, std::uint64_t seed,
                                          MissingMode missing) {
  if (k == 0) throw Error("fixed-k comparison needs K >= 1");
  const FamiliarityList top =
      (n == 0 || n >= fam.size()) ? fam : top_n_by_rating(fam, n);

  std::vector<CorpusResult> results;
  results.reserve(corpora.size());
  for (std::size_t ci = 0; ci < corpora.size(); ++ci) {
    const auto& input = corpora[ci];
    CorpusResult result;
    result.label = input.label;

    FrequencyTable table;
    std::uint64_t total = 0;
    std::string token;
    if (mode == SampleMode::prefix) {
      while (total < k && input.tokens->next(token)) {
        table.add(lemmas.apply(token));
        ++total;
      }
    } else {
      // Uniform K-subset of token positions via reservoir sampling; each
      // corpus draws from its own seed so results don't depend on list order.
      Rng rng(seed + ci);
      std::vector<std::string> reservoir;
      reservoir.reserve(static_cast<std::size_t>(k));
      while (input.tokens->next(token)) {
        if (total < k) {
          reservoir.push_back(token);
        } else {
          const std::uint64_t j = rng.below(total + 1);
          if (j < k) reservoir[static_cast<std::size_t>(j)] = token;
        }
        ++total;
      }
      if (total >= k) {
        for (const auto& t : reservoir) table.add(lemmas.apply(t));
      }
      total = std::min(total, k);
    }

    if (total < k) {
      result.error = "corpus has only " + std::to_string(total) + " tokens (needs " +
                     std::to_string(k) + ")";
    } else {
      result.report = correlate(table, top, log_base, missing);
    }
    results.push_back(std::move(result));
  }
  return results;
}

ExperimentCurve topn_curve(const FrequencyTable& freq, const FamiliarityList& fam,
                           std::span<const std::uint64_t> n_grid, CurveCoef coef,
                           double log_base, MissingMode mode) {
  check_ascending(n_grid, "N grid");
  ExperimentCurve curve;
  curve.label = coef == CurveCoef::pearson ? "topn-pearson" : "topn-spearman";
  for (const std::uint64_t n : n_grid) {
    const std::uint64_t effective = std::min<std::uint64_t>(n, fam.size());
    if (!curve.points.empty() && static_cast<double>(effective) <= curve.points.back().first) {
      break;  // grid saturated at the list size
    }
    const FamiliarityList top = effective >= fam.size()
                                    ? fam
                                    : top_n_by_rating(fam, static_cast<std::size_t>(effective));
    const auto report = correlate(freq, top, log_base, mode);
    if (const auto value = pick_coef(report, coef)) {
      curve.points.emplace_back(static_cast<double>(effective), *value);
    }
    if (effective >= fam.size()) break;
  }
  return curve;
}

std::pair<std::vector<RankDiffEntry>, std::vector<RankDiffEntry>> rank_diff(
    const FrequencyTable& freq, const FamiliarityList& fam, std::size_t top_k) {
  std::vector<std::pair<std::string_view, double>> entries(fam.entries().begin(),
                                                           fam.entries().end());
  std::sort(entries.begin(), entries.end());

  std::vector<std::string_view> words;
  std::vector<double> counts, ratings;
  for (const auto& [word, rating] : entries) {
    const std::uint64_t c = freq.count(word);
    if (c > 0) {
      words.push_back(word);
      counts.push_back(static_cast<double>(c));
      ratings.push_back(rating);
    }
  }
  if (words.empty()) throw Error("rank_diff needs at least one common word");

  const auto m = static_cast<Eigen::Index>(words.size());
  // Rank 1 = most frequent / most familiar: rank the negated values.
  const Eigen::VectorXd n_rank =
      stats::ranks(-Eigen::Map<const Eigen::VectorXd>(counts.data(), m).eval());
  const Eigen::VectorXd m_rank =
      stats::ranks(-Eigen::Map<const Eigen::VectorXd>(ratings.data(), m).eval());

  std::vector<RankDiffEntry> all;
  all.reserve(words.size());
  for (Eigen::Index i = 0; i < m; ++i) {
    all.push_back({std::string(words[static_cast<std::size_t>(i)]), n_rank[i], m_rank[i],
                   m_rank[i] - n_rank[i]});
  }

  const auto by_diff_desc = [](const RankDiffEntry& a, const RankDiffEntry& b) {
    if (a.diff != b.diff) return a.diff > b.diff;
    return a.word < b.word;
  };
  const auto by_diff_asc = [](const RankDiffEntry& a, const RankDiffEntry& b) {
    if (a.diff != b.diff) return a.diff < b.diff;
    return a.word < b.word;
  };

  const std::size_t take = std::min(top_k, all.size());
  // With rank 1 on top, high m - n means ranked high by the corpus but low
  // by familiarity; high n - m is the familiar-but-rare side.
  std::vector<RankDiffEntry> high_m_minus_n = all;
  std::sort(high_m_minus_n.begin(), high_m_minus_n.end(), by_diff_desc);
  high_m_minus_n.resize(take);
  std::vector<RankDiffEntry> high_n_minus_m = std::move(all);
  std::sort(high_n_minus_m.begin(), high_n_minus_m.end(), by_diff_asc);
  high_n_minus_m.resize(take);
  return {std::move(high_m_minus_n), std::move(high_n_minus_m)};
}

void save_rank_diff(std::span<const RankDiffEntry> entries, std::ostream& out) {
  for (const auto& e : entries) {
    out << e.word << '\t' << format_number(e.corpus_rank) << '\t'
        << format_number(e.familiarity_rank) << '\t' << format_number(e.diff) << '\n';
  }
}

CoveredStats covered_stats(const FrequencyTable& freq, const FamiliarityList& fam) {
  CoveredStats stats_out;
  if (freq.empty()) return stats_out;

  std::vector<double> covered_counts;
  std::uint64_t covered_tokens = 0;
  for (const auto& [word, count] : freq.counts()) {
    if (fam.contains(word)) {
      covered_counts.push_back(static_cast<double>(count));
      covered_tokens += count;
    }
  }
  stats_out.type_pct = 100.0 * static_cast<double>(covered_counts.size()) /
                       static_cast<double>(freq.total_types());
  stats_out.token_pct =
      100.0 * static_cast<double>(covered_tokens) / static_cast<double>(freq.total_tokens());
  stats_out.entropy_bits = stats::entropy_bits(Eigen::Map<const Eigen::VectorXd>(
      covered_counts.data(), static_cast<Eigen::Index>(covered_counts.size())));
  return stats_out;
}

Histogram logfreq_histogram(const FrequencyTable& freq, int bins, double log_base) {
  if (bins < 1) throw Error("histogram needs at least one bin");
  if (!(log_base > 0.0) || log_base == 1.0) throw Error("log base must be positive and != 1");
  const double log_b = std::log(log_base);
  std::vector<double> values;
  values.reserve(freq.total_types());
  for (const auto& [word, count] : freq.counts()) {
    values.push_back(std::log(static_cast<double>(count)) / log_b);
  }
  if (values.empty()) return make_histogram(values, 0.0, 1.0, bins);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return make_histogram(values, *lo, *hi, bins);
}

std::optional<double> powerlaw_slope(const FrequencyTable& freq) {
  const auto entries = freq.entries_by_count();
  std::uint64_t distinct = 0, prev = 0;
  for (const auto& [word, count] : entries) {
    if (count != prev) {
      ++distinct;
      prev = count;
    }
  }
  if (distinct < 3) return std::nullopt;

  const auto n = static_cast<Eigen::Index>(entries.size());
  Eigen::VectorXd counts(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    counts[i] = static_cast<double>(entries[static_cast<std::size_t>(i)].second);
  }
  const Eigen::VectorXd rank = stats::ranks(-counts);  // rank 1 = most frequent
  return stats::least_squares_slope(rank.array().log().matrix(),
                                    counts.array().log().matrix());
}

std::vector<std::string> top_words(const FrequencyTable& freq, std::size_t k) {
  const auto entries = freq.entries_by_count();
  std::vector<std::string> out;
  const std::size_t take = std::min(k, entries.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.emplace_back(entries[i].first);
  return out;
}

std::vector<std::string> rare_words(const FrequencyTable& freq, std::uint64_t n_max,
                                    std::size_t per_level, std::uint64_t seed) {
  std::uint64_t max_count = 0;
  for (const auto& [word, count] : freq.counts()) max_count = std::max(max_count, count);
  n_max = std::min(n_max, max_count);
  std::vector<std::vector<std::string_view>> levels(static_cast<std::size_t>(n_max));
  for (const auto& [word, count] : freq.counts()) {
    if (count >= 1 && count <= n_max) {
      levels[static_cast<std::size_t>(count - 1)].emplace_back(word);
    }
  }
  Rng rng(seed);
  std::vector<std::string> out;
  for (auto& level : levels) {
    std::sort(level.begin(), level.end());  // seed-stable base order
    const std::size_t take = std::min(per_level, level.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(level.size() - i));
      std::swap(level[i], level[j]);
      out.emplace_back(level[i]);
    }
  }
  return out;
}

}  // namespace famcorr
