#pragma once

#include <stdexcept>
#include <string>

namespace minproj {

enum class ErrorCode {
  DimensionMismatch,
  InvalidInput,
  NotFullDimensional,
  NotSymmetric,
  SubsetBudgetExceeded,
  SupportBudgetExceeded,
  NotMinimal,
  CertificateInvalid,
  RankGapViolation,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minproj
