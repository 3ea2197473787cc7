#include "famcorr/pseudofam.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "famcorr/error.hpp"
#include "famcorr/text_format.hpp"

namespace famcorr {

PseudoFamiliarityList score(const FrequencyTable& freq, double log_base, std::string source) {
  if (freq.empty()) throw Error("cannot score an empty frequency table");
  if (!(log_base > 0.0) || log_base == 1.0) throw Error("log base must be positive and != 1");
  const double log_b = std::log(log_base);

  std::uint64_t min_count = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_count = 0;
  for (const auto& [word, count] : freq.counts()) {
    min_count = std::min(min_count, count);
    max_count = std::max(max_count, count);
  }

  PseudoFamiliarityList pf;
  pf.source = std::move(source);
  pf.log_base = log_base;
  pf.log_min = std::log(static_cast<double>(min_count)) / log_b;
  pf.log_max = std::log(static_cast<double>(max_count)) / log_b;

  const double span = pf.log_max - pf.log_min;
  for (const auto& [word, count] : freq.counts()) {
    double rating = 4.0;  // all counts equal: no spread to calibrate
    if (span > 0.0) {
      const double lf = std::log(static_cast<double>(count)) / log_b;
      rating = 1.0 + 6.0 * (lf - pf.log_min) / span;
      rating = std::clamp(rating, FamiliarityList::kMinRating, FamiliarityList::kMaxRating);
    }
    pf.ratings.insert(word, rating);
  }
  return pf;
}

std::vector<std::string> basic_word_list(const PseudoFamiliarityList& pf, std::size_t size) {
  if (size == 0) throw Error("basic word list needs size >= 1");
  const auto ordered = pf.ratings.by_rating();
  const std::size_t take = std::min(size, ordered.size());
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.emplace_back(ordered[i].first);
  return out;
}

std::string to_json(const ReadabilityReport& report) {
  nlohmann::json j{{"total_tokens", report.total_tokens},
                   {"hard_tokens", report.hard_tokens},
                   {"hard_fraction", report.hard_fraction},
                   {"threshold", report.threshold}};
  return j.dump();
}

ReadabilityReport assess(TokenStream& tokens, const PseudoFamiliarityList& pf,
                         const LemmaMap& lemmas, double threshold) {
  ReadabilityReport report;
  report.threshold = threshold;
  std::string token;
  while (tokens.next(token)) {
    ++report.total_tokens;
    const auto rating = pf.ratings.rating(lemmas.apply(token));
    if (rating.value_or(1.0) < threshold) ++report.hard_tokens;
  }
  if (report.total_tokens > 0) {
    report.hard_fraction =
        static_cast<double>(report.hard_tokens) / static_cast<double>(report.total_tokens);
  }
  return report;
}

ReadabilityReport assess(std::span<const std::string> tokens, const PseudoFamiliarityList& pf,
                         const LemmaMap& lemmas, double threshold) {
  VectorTokenStream stream(tokens);
  return assess(stream, pf, lemmas, threshold);
}

void save_pseudofam(const PseudoFamiliarityList& pf, std::ostream& out) {
  out << "# source=" << pf.source << '\n';
  out << "# log_base=" << format_double(pf.log_base) << '\n';
  out << "# log_min=" << format_double(pf.log_min) << '\n';
  out << "# log_max=" << format_double(pf.log_max) << '\n';
  save_famlist(pf.ratings, out);
}

void save_pseudofam(const PseudoFamiliarityList& pf, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write pseudo-familiarity list: " + path.string());
  save_pseudofam(pf, out);
  if (!out.flush()) throw Error("write failed: " + path.string());
}

PseudoFamiliarityList load_pseudofam(const std::filesystem::path& path) {
  PseudoFamiliarityList pf;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open pseudo-familiarity list: " + path.string());
    std::string line;
    while (std::getline(in, line) && line.starts_with("#")) {
      const std::string_view view(line);
      if (view.starts_with("# source=")) {
        pf.source = view.substr(9);
      } else if (view.starts_with("# log_base=")) {
        pf.log_base = parse_double(view.substr(11)).value_or(pf.log_base);
      } else if (view.starts_with("# log_min=")) {
        pf.log_min = parse_double(view.substr(10)).value_or(pf.log_min);
      } else if (view.starts_with("# log_max=")) {
        pf.log_max = parse_double(view.substr(10)).value_or(pf.log_max);
      }
    }
  }
  pf.ratings = load_famlist(path);
  return pf;
}

}  // namespace famcorr
