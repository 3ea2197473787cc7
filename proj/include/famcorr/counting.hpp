#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "famcorr/frequency_table.hpp"
#include "famcorr/lemma_map.hpp"
#include "famcorr/tokenizer.hpp"

namespace famcorr {

// Pull-style token source; lets the experiment drivers run unchanged over
// in-memory vectors and over files too large to materialize.
class TokenStream {
 public:
  virtual ~TokenStream() = default;
  // Writes the next token into `token`; false at end of stream.
  virtual bool next(std::string& token) = 0;
};

class VectorTokenStream final : public TokenStream {
 public:
  explicit VectorTokenStream(std::span<const std::string> tokens) : tokens_(tokens) {}
  bool next(std::string& token) override {
    if (pos_ >= tokens_.size()) return false;
    token = tokens_[pos_++];
    return true;
  }

 private:
  std::span<const std::string> tokens_;
  std::size_t pos_ = 0;
};

// Tokenizes one or more files as a single concatenated stream, reading in
// fixed-size chunks; memory use is bounded by the chunk size.
class FileTokenStream final : public TokenStream {
 public:
  FileTokenStream(std::vector<std::filesystem::path> paths, TokenizerConfig config);
  ~FileTokenStream() override;
  bool next(std::string& token) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Streaming counter over raw text: tokenize, lemma-map, count.
FrequencyTable count_text(std::string_view text, TokenizerConfig config,
                          const LemmaMap& lemmas);

// Counts files as a concatenated corpus. With threads > 1 each file is split
// into byte shards at ASCII-whitespace boundaries, counted independently and
// merged; the result is identical to the sequential count. IngestError
// messages name the file and its byte offset.
FrequencyTable count_files(std::span<const std::filesystem::path> paths,
                           TokenizerConfig config, const LemmaMap& lemmas,
                           unsigned threads = 1);

}  // namespace famcorr
