#include "topsurg/error.hpp"

namespace topsurg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedToken: return "MalformedToken";
    case ErrorKind::InconsistentCode: return "InconsistentCode";
    case ErrorKind::MalformedTuple: return "MalformedTuple";
    case ErrorKind::OrientationInconsistent: return "OrientationInconsistent";
    case ErrorKind::MoveNotApplicable: return "MoveNotApplicable";
    case ErrorKind::MalformedPresentation: return "MalformedPresentation";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::NegativeParameter: return "NegativeParameter";
    case ErrorKind::SearchTooLarge: return "SearchTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OutsideDisc: return "OutsideDisc";
    case ErrorKind::EmptyLevelSet: return "EmptyLevelSet";
    case ErrorKind::PointAtPole: return "PointAtPole";
    case ErrorKind::NotOnSphere: return "NotOnSphere";
    case ErrorKind::BadAxisSet: return "BadAxisSet";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace topsurg
