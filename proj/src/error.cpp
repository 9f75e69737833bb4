#include "unitay/error.hpp"

namespace unitay {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::OverlappingComponents: return "OverlappingComponents";
    case ErrorCode::DegenerateShape: return "DegenerateShape";
    case ErrorCode::EmptyInteriorK0: return "EmptyInteriorK0";
    case ErrorCode::PointNotInterior: return "PointNotInterior";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::PointOnContour: return "PointOnContour";
    case ErrorCode::ContourCollision: return "ContourCollision";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::PointInsideSet: return "PointInsideSet";
    case ErrorCode::DiskIntersectsSet: return "DiskIntersectsSet";
    case ErrorCode::ContourTouchesSet: return "ContourTouchesSet";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::InsufficientDecadeRange: return "InsufficientDecadeRange";
    case ErrorCode::ViolationFound: return "ViolationFound";
    case ErrorCode::NotFoundWithinNmax: return "NotFoundWithinNmax";
    case ErrorCode::RefusedOutsideInterval: return "RefusedOutsideInterval";
    case ErrorCode::BadTheta: return "BadTheta";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::ConsistencyAlarm: return "ConsistencyAlarm";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::PreconditionViolated:
    case ErrorCode::OverlappingComponents:
    case ErrorCode::DegenerateShape:
    case ErrorCode::EmptyInteriorK0:
    case ErrorCode::PointNotInterior:
    case ErrorCode::TooFewPoints:
    case ErrorCode::PointOnContour:
    case ErrorCode::ContourCollision:
    case ErrorCode::PointInsideSet:
    case ErrorCode::DiskIntersectsSet:
    case ErrorCode::ContourTouchesSet:
    case ErrorCode::GridTooCoarse:
    case ErrorCode::RefusedOutsideInterval:
    case ErrorCode::BadTheta:
    case ErrorCode::SearchExhausted:
      return true;
    default:
      return false;
  }
}

}  // namespace unitay
