#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Numeric values match the C API status codes in qwalk.h.
enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kNonUniqueFixedPoint = 3,
  kDegenerate = 4,
  kDegreeOverflow = 5,
  kNotConverged = 6,
  kInvalidChannel = 7,
};

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

}  // namespace qwalk
