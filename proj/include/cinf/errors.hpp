#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cinf/box.hpp"

namespace cinf {

enum class ErrorCode {
  Malformed,
  SyntaxError,
  UnknownName,
  PendingObligation,
  ObligationViolated,
  IdealMismatch,
  NotInvertibleOnZeroset,
  OrderRefuted,
  NotEqual,
  NotNowhereZero,
  UnknownVerdict,
  PatternMismatch,
  ChainMismatch,
  NoSignChange,
  RegularityUnknown,
  Unsupported,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library. Refutation-style errors carry the
/// exact point that refutes the requested property.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<Point> witness = std::nullopt)
      : std::runtime_error(what), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  const std::optional<Point>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::optional<Point> witness_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(ErrorCode::SyntaxError,
              what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cinf
