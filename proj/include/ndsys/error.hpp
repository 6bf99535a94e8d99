#pragma once

#include <stdexcept>
#include <string>

namespace ndsys {

enum class ErrorCode {
  SpaceMismatch = 1,
  NotInvertible,
  HeterogeneousWindow,
  EmptyHorizon,
  BadParameter,
  Unsupported,
  UnknownFixture,
  NotPeriodic,
  Parse,
  Schema,
  Precision,
};

const char* error_code_name(ErrorCode code) noexcept;

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

}  // namespace ndsys
