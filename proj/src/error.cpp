#include "latticelab/error.hpp"

namespace latticelab {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::NotDefinite: return "NotDefinite";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::IndefiniteLattice: return "IndefiniteLattice";
    case ErrorCode::OddLattice: return "OddLattice";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::RealizabilityError: return "RealizabilityError";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::BadSignature: return "BadSignature";
    case ErrorCode::NotMaximalRank: return "NotMaximalRank";
    case ErrorCode::AssumptionMissing: return "AssumptionMissing";
    case ErrorCode::MixedWeightClasses: return "MixedWeightClasses";
    case ErrorCode::DataFileMissing: return "DataFileMissing";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace latticelab
