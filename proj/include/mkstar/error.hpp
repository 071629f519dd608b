#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mkstar {

enum class ErrorKind {
  SelfLoop,
  DuplicateEdge,
  NonPositiveWeight,
  IndexOutOfRange,
  InvalidMass,
  IsolatedVertex,
  NotSymmetric,
  IterationLimit,
  TooFewValues,
  UnequalWeightVectors,
  ConditionViolated,
  NoCommonStrength,
  InfeasibleSpec,
  InvalidQ,
  StructuralStarOnly,
  NonUnitMass,
  DimensionMismatch,
  Disconnected,
  BadK,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is an Error carrying its kind. Optional fields name
// the offending vertex, condition number or input line when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  std::optional<std::size_t> vertex;
  std::optional<int> condition;
  std::optional<std::size_t> line;

 private:
  ErrorKind kind_;
};

}  // namespace mkstar
