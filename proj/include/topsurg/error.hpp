#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topsurg {

enum class ErrorKind {
  MalformedToken,
  InconsistentCode,
  MalformedTuple,
  OrientationInconsistent,
  MoveNotApplicable,
  MalformedPresentation,
  UnknownGenerator,
  NegativeParameter,
  SearchTooLarge,
  DimensionMismatch,
  OutsideDisc,
  EmptyLevelSet,
  PointAtPole,
  NotOnSphere,
  BadAxisSet,
  InvalidArgument,
  Internal,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports goes through this type; callers switch on
// kind() rather than catching a hierarchy.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace topsurg
