#include "gop/error.hpp"

namespace gop {

std::string_view error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse_error";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kUnknownMeasure: return "unknown_measure";
    case ErrorKind::kUnknownLevel: return "unknown_level";
    case ErrorKind::kUnknownAxis: return "unknown_axis";
    case ErrorKind::kUnknownCollection: return "unknown_collection";
    case ErrorKind::kUnknownTopic: return "unknown_topic";
    case ErrorKind::kEmptyAxis: return "empty_axis";
    case ErrorKind::kLevelHidden: return "level_hidden";
    case ErrorKind::kNotAdjacent: return "axes_not_adjacent";
    case ErrorKind::kInsufficientData: return "insufficient_data";
    case ErrorKind::kIo: return "io_error";
  }
  return "error";
}

}  // namespace gop
