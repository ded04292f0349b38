#include "bllab/errors.hpp"

namespace bllab {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "ParameterError";
    case ErrorKind::ParameterRegion: return "ParameterRegionError";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::Nyquist: return "NyquistError";
    case ErrorKind::GridAlignment: return "GridAlignmentError";
    case ErrorKind::TruncationLoss: return "TruncationLossError";
    case ErrorKind::OutOfSector: return "OutOfSector";
    case ErrorKind::Numeric: return "NumericError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Numeric: return 3;
    case ErrorKind::Io: return 1;
    default: return 2;
  }
}

}  // namespace bllab
