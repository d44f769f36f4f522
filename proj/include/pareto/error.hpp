#ifndef PARETO_ERROR_HPP
#define PARETO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pareto {

enum class ErrorKind {
  InvalidInput,
  OutOfDomain,
  DegenerateContact,
  NotComparable,
  CurveTooShort,
  GenericityViolation,
  DegenerateTriangle,
  NotManifold,
  NonMorseVertex,
  AttachLawViolation,
  IndexInconsistent,
  IndexJumpViolation,
  OnGrid,
  ObstacleHit,
  DoublePointHit,
  UnmatchedEndpoint,
  LabelMismatch,
  EpsilonTooLarge,
  DeltaMismatch,
  NoAvoidingCurve,
  GenericityUnreachable,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI) can report it as a structured record.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace pareto

#endif  // PARETO_ERROR_HPP
