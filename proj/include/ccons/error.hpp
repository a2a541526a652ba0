#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccons {

// Numeric values are part of the C ABI (see ccons.h); append only.
enum class ErrorCode : int {
  NegativeEntry = 1,
  RowSumViolation = 2,
  NonSquare = 3,
  NonFinite = 4,
  Overlap = 5,
  NotCovering = 6,
  EmptyCluster = 7,
  IndexOutOfRange = 8,
  DimensionMismatch = 9,
  DimensionTooLarge = 10,
  EmptySequence = 11,
  StateBudgetExceeded = 12,
  InternalInconsistency = 13,
  UnknownMatrixName = 14,
  CommonInfluenceViolated = 15,
  SupportMismatch = 16,
  InvalidPolicy = 17,
  ParseError = 18,
  InvalidArgument = 19,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ccons
