#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swingcount {

/// Base class for every domain error raised by the library. The CLI maps
/// these to exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line_no, const std::string& reason)
      : Error("line " + std::to_string(line_no) + ": malformed record: " + reason), line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class UnknownClass : public Error {
 public:
  UnknownClass(std::size_t line_no, const std::string& label)
      : Error("line " + std::to_string(line_no) + ": unknown class '" + label + "'"), line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class InvalidMeta : public Error {
 public:
  using Error::Error;
};

class EmptyClass : public Error {
 public:
  using Error::Error;
};

class WindowTooLarge : public Error {
 public:
  using Error::Error;
};

class SpanOutsideTrack : public Error {
 public:
  using Error::Error;
};

class TracksTooShort : public Error {
 public:
  using Error::Error;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class InvalidScript : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

}  // namespace swingcount
