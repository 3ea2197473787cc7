#include "famcorr/frequency_table.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <ostream>

#include "famcorr/error.hpp"
#include "famcorr/text_format.hpp"

namespace famcorr {

void FrequencyTable::add(std::string_view word, std::uint64_t n) {
  if (n == 0) return;
  if (total_tokens_ > std::numeric_limits<std::uint64_t>::max() - n) {
    throw ArithmeticError("token count overflow");
  }
  auto it = counts_.find(word);
  if (it == counts_.end()) {
    counts_.emplace(std::string(word), n);
  } else {
    if (it->second > std::numeric_limits<std::uint64_t>::max() - n) {
      throw ArithmeticError("count overflow for word '" + std::string(word) + "'");
    }
    it->second += n;
  }
  total_tokens_ += n;
}

std::vector<std::pair<std::string_view, std::uint64_t>> FrequencyTable::entries_by_count()
    const {
  std::vector<std::pair<std::string_view, std::uint64_t>> out;
  out.reserve(counts_.size());
  for (const auto& [word, count] : counts_) out.emplace_back(word, count);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

FrequencyTable merge_tables(const FrequencyTable& a, const FrequencyTable& b) {
  const FrequencyTable& big = a.total_types() >= b.total_types() ? a : b;
  const FrequencyTable& small = a.total_types() >= b.total_types() ? b : a;
  FrequencyTable out = big;
  for (const auto& [word, count] : small.counts()) out.add(word, count);
  return out;
}

FrequencyTable count_corpus(std::span<const std::string> tokens, const LemmaMap& lemmas) {
  FrequencyTable table;
  for (const std::string& token : tokens) table.add(lemmas.apply(token));
  return table;
}

FrequencyTable prefix_table(std::span<const std::string> tokens, const LemmaMap& lemmas,
                            std::uint64_t n) {
  const std::uint64_t take = std::min<std::uint64_t>(n, tokens.size());
  return count_corpus(tokens.subspan(0, static_cast<std::size_t>(take)), lemmas);
}

void save_frequency_table(const FrequencyTable& table, std::ostream& out) {
  out << "# total_tokens=" << table.total_tokens() << '\n';
  out << "# total_types=" << table.total_types() << '\n';
  for (const auto& [word, count] : table.entries_by_count()) {
    out << word << '\t' << count << '\n';
  }
}

void save_frequency_table(const FrequencyTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write frequency table: " + path.string());
  save_frequency_table(table, out);
  if (!out.flush()) throw Error("write failed: " + path.string());
}

FrequencyTable load_frequency_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open frequency table: " + path.string());

  FrequencyTable table;
  std::optional<std::uint64_t> declared_tokens, declared_types;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string_view view(line);
      if (view.starts_with("# total_tokens=")) {
        declared_tokens = parse_uint(view.substr(15));
      } else if (view.starts_with("# total_types=")) {
        declared_types = parse_uint(view.substr(14));
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string(), lineno, "expected `word<TAB>count`");
    }
    const std::string_view word(line.data(), tab);
    const auto count = parse_uint(std::string_view(line).substr(tab + 1));
    if (word.empty() || contains_whitespace(word)) {
      throw ParseError(path.string(), lineno, "malformed word");
    }
    if (!count || *count == 0) {
      throw ParseError(path.string(), lineno, "count must be a positive integer");
    }
    if (table.contains(word)) {
      throw ParseError(path.string(), lineno, "duplicate word '" + std::string(word) + "'");
    }
    table.add(word, *count);
  }
  if (declared_tokens && *declared_tokens != table.total_tokens()) {
    throw ParseError(path.string(), 1, "total_tokens header does not match entries");
  }
  if (declared_types && *declared_types != table.total_types()) {
    throw ParseError(path.string(), 2, "total_types header does not match entries");
  }
  return table;
}

}  // namespace famcorr
