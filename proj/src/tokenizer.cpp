#include "famcorr/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "famcorr/error.hpp"

namespace famcorr {

namespace {

constexpr char32_t kApostrophe = 0x27;
constexpr char32_t kRightSingleQuote = 0x2019;  // normalized to '

struct Range {
  char32_t lo, hi;
};

// Non-ASCII codepoints that separate words in unicode_word mode. Everything
// non-ASCII outside these ranges (and outside whitespace) counts as a word
// character, so unlisted scripts tokenize as contiguous runs. Coverage is
// pragmatic: Latin punctuation, general punctuation, CJK and fullwidth
// punctuation.
constexpr Range kSeparators[] = {
    {0x00A1, 0x00A9}, {0x00AB, 0x00B4}, {0x00B6, 0x00B9}, {0x00BB, 0x00BF},
    {0x00D7, 0x00D7}, {0x00F7, 0x00F7}, {0x2000, 0x2018}, {0x201A, 0x206F},
    {0x2E00, 0x2E7F}, {0x3001, 0x3003}, {0x3008, 0x3020}, {0x30FB, 0x30FB},
    {0xFE10, 0xFE19}, {0xFE30, 0xFE6F}, {0xFF01, 0xFF0F}, {0xFF1A, 0xFF20},
    {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65},
};

bool in_ranges(char32_t cp, const Range* first, const Range* last) {
  auto it = std::upper_bound(first, last, cp,
                             [](char32_t c, const Range& r) { return c < r.lo; });
  return it != first && cp <= (it - 1)->hi;
}

char32_t fold(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  // Latin-1 uppercase block, skipping the multiplication sign.
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;  // continuation byte or invalid lead (C0, C1, F5..FF)
}

// Assembles a codepoint from `len` bytes known to start with a valid lead.
// Returns false on overlong encodings, surrogates, or out-of-range values.
bool decode_sequence(const char* bytes, int len, char32_t& cp) {
  const auto b = reinterpret_cast<const unsigned char*>(bytes);
  switch (len) {
    case 1:
      cp = b[0];
      return true;
    case 2:
      cp = (char32_t(b[0] & 0x1F) << 6) | (b[1] & 0x3F);
      return cp >= 0x80;
    case 3:
      cp = (char32_t(b[0] & 0x0F) << 12) | (char32_t(b[1] & 0x3F) << 6) | (b[2] & 0x3F);
      return cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF);
    case 4:
      cp = (char32_t(b[0] & 0x07) << 18) | (char32_t(b[1] & 0x3F) << 12) |
           (char32_t(b[2] & 0x3F) << 6) | (b[3] & 0x3F);
      return cp >= 0x10000 && cp <= 0x10FFFF;
    default:
      return false;
  }
}

bool is_continuation(unsigned char byte) { return (byte & 0xC0) == 0x80; }

}  // namespace

bool is_ascii_space(unsigned char byte) {
  return byte == ' ' || (byte >= 0x09 && byte <= 0x0D);
}

bool is_unicode_space(char32_t cp) {
  if (cp < 0x80) return is_ascii_space(static_cast<unsigned char>(cp));
  switch (cp) {
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_word_codepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= 'a' && cp <= 'z');
  }
  if (is_unicode_space(cp)) return false;
  return !in_ranges(cp, std::begin(kSeparators), std::end(kSeparators));
}

Tokenizer::Tokenizer(TokenizerConfig config, std::uint64_t base_offset)
    : config_(config), offset_(base_offset) {}

void Tokenizer::flush(const TokenSink& sink) {
  // A held apostrophe never made it between two word characters; drop it.
  pending_apostrophe_ = false;
  if (!token_.empty()) {
    sink(token_);
    token_.clear();
  }
}

void Tokenizer::handle_codepoint(char32_t cp, const TokenSink& sink) {
  if (config_.fold_case) cp = fold(cp);

  if (config_.mode == TokenizerMode::whitespace) {
    if (is_unicode_space(cp)) {
      flush(sink);
    } else {
      append_utf8(token_, cp);
    }
    return;
  }

  if (cp == kApostrophe || cp == kRightSingleQuote) {
    if (!token_.empty() && !pending_apostrophe_) {
      pending_apostrophe_ = true;  // joins only if a word character follows
    } else {
      flush(sink);
    }
  } else if (is_word_codepoint(cp)) {
    if (pending_apostrophe_) {
      token_.push_back('\'');
      pending_apostrophe_ = false;
    }
    append_utf8(token_, cp);
  } else {
    flush(sink);
  }
}

void Tokenizer::feed(std::string_view chunk, const TokenSink& sink) {
  std::size_t pos = 0;

  // Complete a multi-byte sequence left over from the previous chunk.
  while (carry_len_ > 0 && pos < chunk.size()) {
    const unsigned char byte = static_cast<unsigned char>(chunk[pos]);
    if (!is_continuation(byte)) {
      throw IngestError("invalid UTF-8 sequence", carry_offset_);
    }
    carry_[carry_len_++] = chunk[pos++];
    ++offset_;
    if (carry_len_ == carry_need_) {
      char32_t cp;
      if (!decode_sequence(carry_, carry_need_, cp)) {
        throw IngestError("invalid UTF-8 sequence", carry_offset_);
      }
      carry_len_ = carry_need_ = 0;
      handle_codepoint(cp, sink);
    }
  }

  while (pos < chunk.size()) {
    const unsigned char lead = static_cast<unsigned char>(chunk[pos]);
    if (lead < 0x80) {
      // ASCII fast path.
      handle_codepoint(lead, sink);
      ++pos;
      ++offset_;
      continue;
    }
    const int len = sequence_length(lead);
    if (len == 0) {
      throw IngestError("invalid UTF-8 byte", offset_);
    }
    if (pos + static_cast<std::size_t>(len) > chunk.size()) {
      carry_offset_ = offset_;
      carry_need_ = len;
      carry_len_ = static_cast<int>(chunk.size() - pos);
      std::memcpy(carry_, chunk.data() + pos, static_cast<std::size_t>(carry_len_));
      offset_ += static_cast<std::uint64_t>(carry_len_);
      return;
    }
    for (int i = 1; i < len; ++i) {
      if (!is_continuation(static_cast<unsigned char>(chunk[pos + i]))) {
        throw IngestError("invalid UTF-8 sequence", offset_);
      }
    }
    char32_t cp;
    if (!decode_sequence(chunk.data() + pos, len, cp)) {
      throw IngestError("invalid UTF-8 sequence", offset_);
    }
    pos += static_cast<std::size_t>(len);
    offset_ += static_cast<std::uint64_t>(len);
    handle_codepoint(cp, sink);
  }
}

void Tokenizer::finish(const TokenSink& sink) {
  if (carry_len_ > 0) {
    throw IngestError("truncated UTF-8 sequence", carry_offset_);
  }
  flush(sink);
}

std::vector<std::string> tokenize(std::string_view text, TokenizerConfig config) {
  std::vector<std::string> tokens;
  Tokenizer tok(config);
  const TokenSink sink = [&tokens](std::string_view t) { tokens.emplace_back(t); };
  tok.feed(text, sink);
  tok.finish(sink);
  return tokens;
}

}  // namespace famcorr
