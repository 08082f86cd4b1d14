#include "cestim/error.hpp"

namespace cestim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidHistogram: return "InvalidHistogram";
    case ErrorCode::EmptyHistogram: return "EmptyHistogram";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PointOutsideSupport: return "PointOutsideSupport";
    case ErrorCode::NotACriticalPoint: return "NotACriticalPoint";
    case ErrorCode::NotAMaximum: return "NotAMaximum";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::MissingDensities: return "MissingDensities";
    case ErrorCode::AllFitsFailed: return "AllFitsFailed";
  }
  return "Unknown";
}

}  // namespace cestim
