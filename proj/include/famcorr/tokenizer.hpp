#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace famcorr {

// unicode_word: tokens are runs of letters/digits, with apostrophes kept when
// they sit between two word characters ("don't"). Everything else separates.
// whitespace: tokens are maximal runs of non-whitespace; required for
// pre-segmented (Japanese) text.
enum class TokenizerMode { unicode_word, whitespace };

struct TokenizerConfig {
  TokenizerMode mode = TokenizerMode::unicode_word;
  bool fold_case = true;  // ASCII + Latin-1 lowercasing
};

// Lists stored in lowercase match folded tokens; pre-segmented text is
// passed through untouched.
inline TokenizerConfig default_config(TokenizerMode mode) {
  return {mode, mode == TokenizerMode::unicode_word};
}

using TokenSink = std::function<void(std::string_view)>;

// Incremental tokenizer over a UTF-8 byte stream. Chunks may split tokens
// and multi-byte sequences at any position; state carries over. Invalid
// UTF-8 raises IngestError with the absolute byte offset of the start of
// the bad sequence (base_offset + bytes consumed so far).
class Tokenizer {
 public:
  explicit Tokenizer(TokenizerConfig config, std::uint64_t base_offset = 0);

  void feed(std::string_view chunk, const TokenSink& sink);
  void finish(const TokenSink& sink);

 private:
  void handle_codepoint(char32_t cp, const TokenSink& sink);
  void flush(const TokenSink& sink);

  TokenizerConfig config_;
  std::uint64_t offset_;       // absolute offset of the next unseen byte
  std::string token_;          // current token bytes (already folded)
  bool pending_apostrophe_ = false;
  char carry_[4];              // incomplete UTF-8 sequence at a chunk edge
  int carry_len_ = 0;
  int carry_need_ = 0;
  std::uint64_t carry_offset_ = 0;
};

// Convenience over in-memory text.
std::vector<std::string> tokenize(std::string_view text, TokenizerConfig config = {});

// Codepoint classes used by the tokenizer; exposed for the shard splitter.
bool is_ascii_space(unsigned char byte);
bool is_unicode_space(char32_t cp);
bool is_word_codepoint(char32_t cp);

}  // namespace famcorr
