#pragma once

#include <stdexcept>
#include <string>

namespace latbound {

enum class ErrorCode {
  InvalidArgument = 1,
  SingularBasis,
  EnumerationOverflow,
  SpectrumHorizon,
  Schema,
  Io,
  NotConverged,
  Unsupported,
  UnknownLattice,
};

/// Every failure raised by the library carries one of the codes above; the
/// C API maps them one-to-one onto lb_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latbound
