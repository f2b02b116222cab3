#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hetnet {

enum class ErrorCode {
  kInvalidExponent,
  kNonPositiveParameter,
  kEmptyTierList,
  kIndexOutOfRange,
  kInvalidArgument,
  kAlphaOutOfRange,
  kQuadratureFailure,
  kNotApplicable,
  kZeroUserDensity,
  kEmptyDeployment,
  kEmptySampleSet,
  kInvalidSettings,
  kConfigParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. Tier indices are 1-based as
/// printed to users.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> tier = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> tier() const noexcept { return tier_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> tier_;
};

}  // namespace hetnet
