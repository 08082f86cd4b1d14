#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cestim {

enum class ErrorCode {
  InvalidArgument,
  InvalidHistogram,
  EmptyHistogram,
  ImageTooSmall,
  ParseError,
  PointOutsideSupport,
  NotACriticalPoint,
  NotAMaximum,
  NoConvergence,
  DegenerateSample,
  MissingDensities,
  AllFitsFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Input/configuration problems as opposed to numerical failures.
  bool is_input_error() const noexcept {
    switch (code_) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::InvalidHistogram:
      case ErrorCode::EmptyHistogram:
      case ErrorCode::ImageTooSmall:
      case ErrorCode::ParseError:
      case ErrorCode::PointOutsideSupport:
      case ErrorCode::MissingDensities:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cestim
