#include "famcorr/counting.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "famcorr/error.hpp"

namespace famcorr {

namespace {

constexpr std::size_t kChunkBytes = 256 * 1024;
constexpr std::uint64_t kMinShardBytes = 1 * 1024 * 1024;

std::ifstream open_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file: " + path.string());
  return in;
}

std::uint64_t corpus_byte_size(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw Error("cannot stat corpus file: " + path.string());
  return size;
}

// First position >= from that starts right after an ASCII whitespace byte.
// ASCII whitespace separates tokens in both modes and is never part of a
// multi-byte sequence, so it is always a safe shard boundary.
std::uint64_t next_boundary(std::ifstream& in, std::uint64_t from, std::uint64_t size) {
  if (from >= size) return size;
  in.clear();
  in.seekg(static_cast<std::streamoff>(from));
  char buf[4096];
  std::uint64_t pos = from;
  while (pos < size) {
    in.read(buf, sizeof(buf));
    const auto got = static_cast<std::uint64_t>(in.gcount());
    if (got == 0) break;
    for (std::uint64_t i = 0; i < got; ++i) {
      if (is_ascii_space(static_cast<unsigned char>(buf[i]))) return pos + i + 1;
    }
    pos += got;
  }
  return size;
}

// Counts the byte range [begin, end) of one file. Offsets in IngestError are
// file-absolute because the tokenizer is seeded with `begin`.
void count_range(const std::filesystem::path& path, std::uint64_t begin, std::uint64_t end,
                 TokenizerConfig config, const LemmaMap& lemmas, FrequencyTable& table) {
  auto in = open_binary(path);
  in.seekg(static_cast<std::streamoff>(begin));
  Tokenizer tok(config, begin);
  const TokenSink sink = [&](std::string_view t) { table.add(lemmas.apply(t)); };
  std::vector<char> buf(kChunkBytes);
  std::uint64_t remaining = end - begin;
  while (remaining > 0) {
    const auto want = static_cast<std::streamsize>(std::min<std::uint64_t>(remaining, buf.size()));
    in.read(buf.data(), want);
    const auto got = static_cast<std::uint64_t>(in.gcount());
    if (got == 0) throw Error("short read on corpus file: " + path.string());
    tok.feed(std::string_view(buf.data(), got), sink);
    remaining -= got;
  }
  tok.finish(sink);
}

FrequencyTable count_file_parallel(const std::filesystem::path& path, TokenizerConfig config,
                                   const LemmaMap& lemmas, unsigned threads) {
  const std::uint64_t size = corpus_byte_size(path);
  unsigned shards = threads;
  if (size / shards < kMinShardBytes) {
    shards = std::max<unsigned>(1, static_cast<unsigned>(size / kMinShardBytes));
  }
  if (shards <= 1) {
    FrequencyTable table;
    count_range(path, 0, size, config, lemmas, table);
    return table;
  }

  std::vector<std::uint64_t> bounds;
  bounds.push_back(0);
  {
    auto in = open_binary(path);
    for (unsigned i = 1; i < shards; ++i) {
      const std::uint64_t tentative = size * i / shards;
      const std::uint64_t adjusted = next_boundary(in, std::max(tentative, bounds.back()), size);
      if (adjusted > bounds.back()) bounds.push_back(adjusted);
    }
  }
  bounds.push_back(size);

  std::vector<FrequencyTable> tables(bounds.size() - 1);
  std::vector<std::optional<IngestError>> errors(bounds.size() - 1);
  std::vector<std::thread> workers;
  workers.reserve(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        count_range(path, bounds[i], bounds[i + 1], config, lemmas, tables[i]);
      } catch (const IngestError& e) {
        errors[i] = e;
      }
    });
  }
  for (auto& w : workers) w.join();

  // Report the earliest offense so parallel and sequential runs agree.
  std::optional<IngestError> first;
  for (const auto& e : errors) {
    if (e && (!first || e->byte_offset() < first->byte_offset())) first = e;
  }
  if (first) throw *first;

  FrequencyTable result = std::move(tables.front());
  for (std::size_t i = 1; i < tables.size(); ++i) {
    result = merge_tables(result, tables[i]);
  }
  return result;
}

}  // namespace

FrequencyTable count_text(std::string_view text, TokenizerConfig config,
                          const LemmaMap& lemmas) {
  FrequencyTable table;
  Tokenizer tok(config);
  const TokenSink sink = [&](std::string_view t) { table.add(lemmas.apply(t)); };
  tok.feed(text, sink);
  tok.finish(sink);
  return table;
}

FrequencyTable count_files(std::span<const std::filesystem::path> paths,
                           TokenizerConfig config, const LemmaMap& lemmas,
                           unsigned threads) {
  FrequencyTable result;
  for (const auto& path : paths) {
    FrequencyTable table;
    try {
      if (threads > 1) {
        table = count_file_parallel(path, config, lemmas, threads);
      } else {
        count_range(path, 0, corpus_byte_size(path), config, lemmas, table);
      }
    } catch (const IngestError& e) {
      throw IngestError(path.string() + ": " + "invalid UTF-8", e.byte_offset());
    }
    result = result.empty() ? std::move(table) : merge_tables(result, table);
  }
  return result;
}

struct FileTokenStream::Impl {
  std::vector<std::filesystem::path> paths;
  TokenizerConfig config;
  std::size_t file_index = 0;
  std::optional<std::ifstream> in;
  std::optional<Tokenizer> tok;
  std::vector<char> buf = std::vector<char>(kChunkBytes);
  std::deque<std::string> ready;

  bool refill() {
    while (ready.empty()) {
      if (!in) {
        if (file_index >= paths.size()) return false;
        in = open_binary(paths[file_index]);
        tok.emplace(config);
      }
      const TokenSink sink = [this](std::string_view t) { ready.emplace_back(t); };
      in->read(buf.data(), static_cast<std::streamsize>(buf.size()));
      const auto got = static_cast<std::uint64_t>(in->gcount());
      try {
        if (got > 0) {
          tok->feed(std::string_view(buf.data(), got), sink);
        } else {
          tok->finish(sink);
          in.reset();
          tok.reset();
          ++file_index;
        }
      } catch (const IngestError& e) {
        throw IngestError(paths[file_index].string() + ": invalid UTF-8", e.byte_offset());
      }
    }
    return true;
  }
};

FileTokenStream::FileTokenStream(std::vector<std::filesystem::path> paths,
                                 TokenizerConfig config)
    : impl_(std::make_unique<Impl>()) {
  impl_->paths = std::move(paths);
  impl_->config = config;
}

FileTokenStream::~FileTokenStream() = default;

bool FileTokenStream::next(std::string& token) {
  if (!impl_->refill()) return false;
  token = std::move(impl_->ready.front());
  impl_->ready.pop_front();
  return true;
}

}  // namespace famcorr
