#ifndef DCNC_ERROR_H_
#define DCNC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcnc {

enum class ErrorCode {
  kNonConvexOwnBlock,
  kUnboundedLattice,
  kNegativeAbsWeight,
  kOwnershipOverlap,
  kOwnershipGap,
  kPlayerIdGap,
  kDimensionMismatch,
  kContinuousDecision,
  kNonSymmetricQuadratic,
  kNotValidated,
  kLatticeTooLarge,
  kEmptyFeasibleSet,
  kInfeasibleProfile,
  kPatternBudgetExceeded,
  kNonPositiveEpsilon,
  kInclusionViolated,
  kParse,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

class DcncError : public std::runtime_error {
 public:
  DcncError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dcnc

#endif  // DCNC_ERROR_H_
