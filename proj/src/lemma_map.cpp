#include "famcorr/lemma_map.hpp"

#include <fstream>

#include "famcorr/error.hpp"
#include "famcorr/text_format.hpp"

namespace famcorr {

void LemmaMap::insert(std::string surface, std::string lemma) {
  if (surface.empty()) throw Error("lemma map: empty surface form");
  if (lemma.empty()) throw Error("lemma map: empty lemma for '" + surface + "'");
  auto [it, inserted] = entries_.emplace(std::move(surface), std::move(lemma));
  if (!inserted) throw Error("lemma map: duplicate surface form '" + it->first + "'");
}

LemmaMap load_lemma_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lemma map: " + path.string());

  LemmaMap map;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string(), lineno, "expected `surface<TAB>lemma`");
    }
    std::string surface = line.substr(0, tab);
    std::string lemma = line.substr(tab + 1);
    if (surface.empty() || lemma.empty() || contains_whitespace(surface) ||
        contains_whitespace(lemma)) {
      throw ParseError(path.string(), lineno, "malformed lemma entry");
    }
    try {
      map.insert(std::move(surface), std::move(lemma));
    } catch (const Error& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return map;
}

}  // namespace famcorr
