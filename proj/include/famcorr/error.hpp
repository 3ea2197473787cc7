#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace famcorr {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (invalid UTF-8). Carries the byte offset of the
// start of the offending sequence within the stream it was found in.
class IngestError : public Error {
 public:
  IngestError(const std::string& msg, std::uint64_t byte_offset)
      : Error(msg + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::uint64_t byte_offset() const { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

// Malformed data file (TSV tables, familiarity lists). Carries the source
// path and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::uint64_t line, const std::string& msg)
      : Error(path + ":" + std::to_string(line) + ": " + msg),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::uint64_t line() const { return line_; }

 private:
  std::string path_;
  std::uint64_t line_;
};

// Count arithmetic overflowed 64 bits.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

}  // namespace famcorr
