#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bllab {

enum class ErrorKind {
  Parameter,
  ParameterRegion,
  SingularPoint,
  Nyquist,
  GridAlignment,
  TruncationLoss,
  OutOfSector,
  Numeric,
  Io,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define BLLAB_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

BLLAB_DEFINE_ERROR(ParameterError, Parameter)
BLLAB_DEFINE_ERROR(ParameterRegionError, ParameterRegion)
BLLAB_DEFINE_ERROR(SingularPointError, SingularPoint)
BLLAB_DEFINE_ERROR(NyquistError, Nyquist)
BLLAB_DEFINE_ERROR(GridAlignmentError, GridAlignment)
BLLAB_DEFINE_ERROR(TruncationLossError, TruncationLoss)
BLLAB_DEFINE_ERROR(OutOfSectorError, OutOfSector)
BLLAB_DEFINE_ERROR(NumericError, Numeric)
BLLAB_DEFINE_ERROR(IoError, Io)

#undef BLLAB_DEFINE_ERROR

/// Process exit code for an error kind: 3 for numeric failures, 1 for I/O,
/// 2 for everything parameter-shaped.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace bllab
