#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace formsym {

/// Machine-readable error categories. The CLI reports these as strings and
/// maps them onto exit codes.
enum class ErrorCode {
  kParse,
  kValidation,
  kPrecondition,
  kMismatch,
  kUnsupported,
  kBudget,
  kDisjointness,
  kFunctoriality,
  kOrientability,
  kInvalidHom,
  kInternal,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kPrecondition: return "precondition_error";
    case ErrorCode::kMismatch: return "mismatch_error";
    case ErrorCode::kUnsupported: return "unsupported_input";
    case ErrorCode::kBudget: return "budget_exceeded";
    case ErrorCode::kDisjointness: return "disjointness_error";
    case ErrorCode::kFunctoriality: return "functoriality_violation";
    case ErrorCode::kOrientability: return "orientability_error";
    case ErrorCode::kInvalidHom: return "invalid_homomorphism";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace formsym
