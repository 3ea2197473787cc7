#include "famcorr/famlist.hpp"

#include <algorithm>
#include <fstream>

#include "famcorr/error.hpp"
#include "famcorr/text_format.hpp"

namespace famcorr {

void FamiliarityList::insert(std::string word, double rating) {
  if (word.empty() || contains_whitespace(word)) {
    throw Error("familiarity list: malformed word '" + word + "'");
  }
  if (!(rating >= kMinRating && rating <= kMaxRating)) {
    throw Error("familiarity list: rating " + format_double(rating) + " for '" + word +
                "' outside [1.0, 7.0]");
  }
  auto [it, inserted] = entries_.emplace(std::move(word), rating);
  if (!inserted) throw Error("familiarity list: duplicate word '" + it->first + "'");
}

std::vector<std::pair<std::string_view, double>> FamiliarityList::by_rating() const {
  std::vector<std::pair<std::string_view, double>> out;
  out.reserve(entries_.size());
  for (const auto& [word, rating] : entries_) out.emplace_back(word, rating);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

FamiliarityList load_famlist(const std::filesystem::path& path, double scale_divisor) {
  if (!(scale_divisor > 0.0)) throw Error("scale divisor must be positive");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open familiarity list: " + path.string());

  FamiliarityList list;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string(), lineno, "expected `word<TAB>rating`");
    }
    std::string word = line.substr(0, tab);
    const auto raw = parse_double(std::string_view(line).substr(tab + 1));
    if (!raw) throw ParseError(path.string(), lineno, "malformed rating");
    try {
      list.insert(std::move(word), *raw / scale_divisor);
    } catch (const Error& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return list;
}

void save_famlist(const FamiliarityList& list, std::ostream& out) {
  std::vector<std::pair<std::string_view, double>> entries(list.entries().begin(),
                                                           list.entries().end());
  std::sort(entries.begin(), entries.end());
  for (const auto& [word, rating] : entries) {
    out << word << '\t' << format_double(rating) << '\n';
  }
}

void save_famlist(const FamiliarityList& list, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write familiarity list: " + path.string());
  save_famlist(list, out);
  if (!out.flush()) throw Error("write failed: " + path.string());
}

Histogram rating_histogram(const FamiliarityList& list, int bins) {
  if (bins < 1) throw Error("histogram needs at least one bin");
  std::vector<double> ratings;
  ratings.reserve(list.size());
  for (const auto& [word, rating] : list.entries()) ratings.push_back(rating);
  return make_histogram(ratings, FamiliarityList::kMinRating, FamiliarityList::kMaxRating,
                        bins);
}

FamiliarityList top_n_by_rating(const FamiliarityList& list, std::size_t n) {
  if (n == 0) throw Error("top_n_by_rating needs n >= 1");
  auto ordered = list.by_rating();
  FamiliarityList out;
  const std::size_t take = std::min(n, ordered.size());
  for (std::size_t i = 0; i < take; ++i) {
    out.insert(std::string(ordered[i].first), ordered[i].second);
  }
  return out;
}

}  // namespace famcorr
