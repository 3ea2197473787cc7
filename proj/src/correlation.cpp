#include "famcorr/correlation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "famcorr/error.hpp"
#include "famcorr/stats.hpp"

namespace famcorr {

namespace {

void check_log_base(double base) {
  if (!(base > 0.0) || base == 1.0) {
    throw Error("log base must be positive and != 1");
  }
}

nlohmann::json opt_json(std::optional<double> v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

std::string to_json(const CorrelationReport& report) {
  nlohmann::json j{{"covered", report.covered},
                   {"coverage_pct", report.coverage_pct},
                   {"pearson", opt_json(report.pearson)},
                   {"spearman", opt_json(report.spearman)}};
  return j.dump();
}

JoinedSeries join(const FrequencyTable& freq, const FamiliarityList& fam, double log_base) {
  check_log_base(log_base);
  const double log_b = std::log(log_base);

  std::vector<std::pair<std::string_view, double>> entries(fam.entries().begin(),
                                                           fam.entries().end());
  std::sort(entries.begin(), entries.end());

  JoinedSeries series;
  std::vector<double> log_freq, count, rating, missing_rating;
  for (const auto& [word, r] : entries) {
    const std::uint64_t c = freq.count(word);
    if (c > 0) {
      series.words.emplace_back(word);
      log_freq.push_back(std::log(static_cast<double>(c)) / log_b);
      count.push_back(static_cast<double>(c));
      rating.push_back(r);
    } else {
      series.missing.emplace_back(word);
      missing_rating.push_back(r);
    }
  }
  series.log_freq = Eigen::Map<const Eigen::VectorXd>(log_freq.data(),
                                                      static_cast<Eigen::Index>(log_freq.size()));
  series.count = Eigen::Map<const Eigen::VectorXd>(count.data(),
                                                   static_cast<Eigen::Index>(count.size()));
  series.rating = Eigen::Map<const Eigen::VectorXd>(rating.data(),
                                                    static_cast<Eigen::Index>(rating.size()));
  series.missing_rating = Eigen::Map<const Eigen::VectorXd>(
      missing_rating.data(), static_cast<Eigen::Index>(missing_rating.size()));
  return series;
}

std::optional<double> pearson(const JoinedSeries& series) {
  return stats::pearson(series.log_freq, series.rating);
}

std::optional<double> spearman(const JoinedSeries& series, MissingMode mode) {
  if (mode == MissingMode::exclude) {
    return stats::spearman(series.count, series.rating);
  }
  // Missing words enter as frequency 0: one tied block below every real
  // count. Ranks see raw counts since log is monotone.
  const auto covered = series.count.size();
  const auto missing = series.missing_rating.size();
  Eigen::VectorXd freq_side(covered + missing), rating_side(covered + missing);
  freq_side.head(covered) = series.count;
  freq_side.tail(missing).setZero();
  rating_side.head(covered) = series.rating;
  rating_side.tail(missing) = series.missing_rating;
  return stats::spearman(freq_side, rating_side);
}

std::pair<std::uint64_t, double> coverage(const FrequencyTable& freq,
                                          const FamiliarityList& fam) {
  std::uint64_t covered = 0;
  for (const auto& [word, rating] : fam.entries()) {
    if (freq.count(word) > 0) ++covered;
  }
  const double pct =
      fam.empty() ? 0.0 : 100.0 * static_cast<double>(covered) / static_cast<double>(fam.size());
  return {covered, pct};
}

CorrelationReport correlate(const FrequencyTable& freq, const FamiliarityList& fam,
                            double log_base, MissingMode mode) {
  const JoinedSeries series = join(freq, fam, log_base);
  CorrelationReport report;
  report.covered = series.covered();
  report.coverage_pct = fam.empty() ? 0.0
                                    : 100.0 * static_cast<double>(series.covered()) /
                                          static_cast<double>(fam.size());
  report.pearson = pearson(series);
  report.spearman = spearman(series, mode);
  return report;
}

CorrelationReport cross_correlate(const FrequencyTable& a, const FrequencyTable& b,
                                  const FamiliarityList& fam, double log_base) {
  check_log_base(log_base);
  const double log_b = std::log(log_base);

  std::vector<std::pair<std::string_view, double>> entries(fam.entries().begin(),
                                                           fam.entries().end());
  std::sort(entries.begin(), entries.end());

  std::vector<double> both_a, both_b;  // log frequencies where both cover
  std::vector<double> all_a, all_b;    // raw counts over the whole list, 0 if absent
  for (const auto& [word, rating] : entries) {
    const std::uint64_t ca = a.count(word);
    const std::uint64_t cb = b.count(word);
    all_a.push_back(static_cast<double>(ca));
    all_b.push_back(static_cast<double>(cb));
    if (ca > 0 && cb > 0) {
      both_a.push_back(std::log(static_cast<double>(ca)) / log_b);
      both_b.push_back(std::log(static_cast<double>(cb)) / log_b);
    }
  }

  const auto map = [](const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  };

  CorrelationReport report;
  report.covered = both_a.size();
  report.coverage_pct = fam.empty() ? 0.0
                                    : 100.0 * static_cast<double>(both_a.size()) /
                                          static_cast<double>(fam.size());
  report.pearson = stats::pearson(map(both_a), map(both_b));
  report.spearman = stats::spearman(map(all_a), map(all_b));
  return report;
}

}  // namespace famcorr
