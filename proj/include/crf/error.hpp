#pragma once

#include <stdexcept>
#include <string>

namespace crf {

enum class Errc {
  EmptySpec,
  UnknownLabel,
  DuplicateAssignment,
  ZeroTotalWeight,
  ZeroMarginalLabel,
  SiteOutOfRange,
  InstanceTooLarge,
  MalformedEvent,
  ConditioningEventNull,
  NotAPartition,
  NotASubset,
  OverlappingScopes,
  EmptyConstraint,
  UnknownFixture,
  BoundsTooLarge,
  ParseError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace crf
