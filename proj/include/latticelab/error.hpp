#pragma once

#include <stdexcept>
#include <string>

namespace latticelab {

enum class ErrorCode {
  NonSymmetric = 1,
  Degenerate,
  ZeroScale,
  NotDefinite,
  RankTooLarge,
  IndefiniteLattice,
  OddLattice,
  CapExceeded,
  SyntaxError,
  RealizabilityError,
  NotIsotropic,
  BadSignature,
  NotMaximalRank,
  AssumptionMissing,
  MixedWeightClasses,
  DataFileMissing,
  InvalidArgument,
  Internal,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latticelab
