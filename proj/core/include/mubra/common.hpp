#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mubra {

/// 1-based position into an infinite data word.
using Position = std::int64_t;

/// Set of register indices in [1, k], as a bit mask (bit r-1 = register r).
using RegSet = std::uint32_t;

constexpr int kMaxRegisters = 31;
constexpr int kMaxAtoms = 31;

inline bool reg_set_contains(RegSet s, int r) { return (s >> (r - 1)) & 1u; }
inline RegSet reg_set_add(RegSet s, int r) { return s | (RegSet{1} << (r - 1)); }

struct SourceSpan {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& message)
      : Error(std::to_string(span.line) + ":" + std::to_string(span.column) +
              ": " + message),
        span_(span),
        message_(message) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

/// Thrown when an exploration would exceed its configured size cap.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& message, double bound)
      : Error(message + " (estimated size " + std::to_string(bound) + ")"),
        bound_(bound) {}

  double bound() const { return bound_; }

 private:
  double bound_;
};

}  // namespace mubra
