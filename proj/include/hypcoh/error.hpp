#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcoh {

/// Error categories raised by the library. Every throwing operation uses
/// `hypcoh::Error` carrying one of these codes.
enum class Errc {
  SelfLoop,
  VertexOutOfRange,
  Disconnected,
  OracleFailure,
  EmptyFamily,
  DegreeZero,
  NotACycle,
  Unbounded,
  GraphTooLarge,
  TripleNotFillable,
  NotC11,
  BoundaryOffT,
  DisconnectedBase,
  DisconnectedMember,
  FamilyNotDisjoint,
  OrderNotTotal,
  InductionGap,
  NotACocycle,
  NotWellDefined,
  Unsaturated,
  NotRelativelyUniform,
  MismatchedSharp,
  HypothesisViolated,
  InvalidArgument,
  ParseError,
  Internal,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypcoh
