#include "pareto/error.hpp"

namespace pareto {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DegenerateContact: return "DegenerateContact";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::CurveTooShort: return "CurveTooShort";
    case ErrorKind::GenericityViolation: return "GenericityViolation";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::NotManifold: return "NotManifold";
    case ErrorKind::NonMorseVertex: return "NonMorseVertex";
    case ErrorKind::AttachLawViolation: return "AttachLawViolation";
    case ErrorKind::IndexInconsistent: return "IndexInconsistent";
    case ErrorKind::IndexJumpViolation: return "IndexJumpViolation";
    case ErrorKind::OnGrid: return "OnGrid";
    case ErrorKind::ObstacleHit: return "ObstacleHit";
    case ErrorKind::DoublePointHit: return "DoublePointHit";
    case ErrorKind::UnmatchedEndpoint: return "UnmatchedEndpoint";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::DeltaMismatch: return "DeltaMismatch";
    case ErrorKind::NoAvoidingCurve: return "NoAvoidingCurve";
    case ErrorKind::GenericityUnreachable: return "GenericityUnreachable";
  }
  return "Unknown";
}

}  // namespace pareto
