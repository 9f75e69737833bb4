#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unitay {

enum class ErrorCode {
  InvalidInput,
  PreconditionViolated,
  OverlappingComponents,
  DegenerateShape,
  EmptyInteriorK0,
  PointNotInterior,
  TooFewPoints,
  PointOnContour,
  ContourCollision,
  IllConditioned,
  ResidualTooLarge,
  PointInsideSet,
  DiskIntersectsSet,
  ContourTouchesSet,
  ResolutionTooCoarse,
  NonConvergence,
  GridTooCoarse,
  InsufficientDecadeRange,
  ViolationFound,
  NotFoundWithinNmax,
  RefusedOutsideInterval,
  BadTheta,
  SearchExhausted,
  ConsistencyAlarm,
};

std::string_view to_string(ErrorCode code);

/// True for codes that describe bad input or a violated precondition, as
/// opposed to a numerical failure of an otherwise valid computation.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace unitay
