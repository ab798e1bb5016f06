#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fragvqa {

enum class ErrorCode {
  io,
  format,
  insufficient_frames,
  shape,
  size,
  capacity,
  bounds,
  load,
  spec,
  config,
  insufficient_data,
  insufficient_pairs,
  layout,
  divergence,
  undefined_correlation,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + " error: " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fragvqa
