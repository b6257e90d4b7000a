#pragma once

#include <stdexcept>
#include <string>

namespace hdxlab {

enum class ErrorKind {
  kInvalidInput,
  kIsolatedVertex,
  kReversibility,
  kRange,
  kUnsupportedInput,
  kRegularity,
  kGenerationFailure,
  kDimension,
  kIncompleteWeights,
  kMissingFace,
  kDownwardClosure,
  kPurity,
  kBalance,
  kReducible,
  kPartition,
  kNonMixing,
  kPrecondition,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hdxlab
