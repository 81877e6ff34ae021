#ifndef ABREU_ERROR_HPP
#define ABREU_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace abreu {

enum class ErrorCode {
  PointOutside,
  TooCoarse,
  DegenerateHessian,
  OutOfRange,
  ScheduleDegenerate,
  NotConvex,
  RefusedAffineDefect,
  DualBoxTooSmall,
  DualUnavailable,
  ConfigInvalid,
  IoError,
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  Error(ErrorCode code, std::string message, std::vector<std::size_t> nodes)
      : Error(code, message + " (" + std::to_string(nodes.size()) + " nodes)") {
    nodes_ = std::move(nodes);
  }

  ErrorCode code() const { return code_; }
  const std::vector<std::size_t>& nodes() const { return nodes_; }

private:
  ErrorCode code_;
  std::vector<std::size_t> nodes_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::PointOutside: return "PointOutside";
    case ErrorCode::TooCoarse: return "TooCoarse";
    case ErrorCode::DegenerateHessian: return "DegenerateHessian";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ScheduleDegenerate: return "ScheduleDegenerate";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::RefusedAffineDefect: return "RefusedAffineDefect";
    case ErrorCode::DualBoxTooSmall: return "DualBoxTooSmall";
    case ErrorCode::DualUnavailable: return "DualUnavailable";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace abreu

#endif
