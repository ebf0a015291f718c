#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dlpq {

enum class ErrorCode {
  InvalidSignature,
  SignatureMismatch,
  MaskOutOfRange,
  GradeOutOfRange,
  GradeLeak,
  NotInvertible,
  ZeroInput,
  SyntaxError,
  BladeError,
  GeneratorOutOfRange,
  InvalidScalar,
};

inline const char *error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidSignature: return "INVALID_SIGNATURE";
  case ErrorCode::SignatureMismatch: return "SIGNATURE_MISMATCH";
  case ErrorCode::MaskOutOfRange: return "MASK_OUT_OF_RANGE";
  case ErrorCode::GradeOutOfRange: return "GRADE_OUT_OF_RANGE";
  case ErrorCode::GradeLeak: return "GRADE_LEAK";
  case ErrorCode::NotInvertible: return "NOT_INVERTIBLE";
  case ErrorCode::ZeroInput: return "ZERO_INPUT";
  case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
  case ErrorCode::BladeError: return "BLADE_ERROR";
  case ErrorCode::GeneratorOutOfRange: return "GENERATOR_OUT_OF_RANGE";
  case ErrorCode::InvalidScalar: return "INVALID_SCALAR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Determinant is zero (or below the float singularity threshold). The
// determinant is carried as text so the error type is backend independent.
class NotInvertibleError : public Error {
public:
  explicit NotInvertibleError(std::string det_text)
      : Error(ErrorCode::NotInvertible,
              "determinant is " + det_text + "; element is a zero divisor"),
        det_text_(std::move(det_text)) {}

  const std::string &det_text() const noexcept { return det_text_; }

private:
  std::string det_text_;
};

// Parser failure with byte offset into the source text.
class ParseError : public Error {
public:
  ParseError(ErrorCode code, std::size_t offset, const std::string &message,
             std::vector<std::string> expected = {})
      : Error(code, message + " at offset " + std::to_string(offset) +
                        format_expected(expected)),
        offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string> &expected() const noexcept { return expected_; }

private:
  static std::string format_expected(const std::vector<std::string> &expected) {
    if (expected.empty())
      return {};
    std::string s = " (expected one of:";
    for (const auto &e : expected)
      s += " " + e;
    return s + ")";
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

} // namespace dlpq
