#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gols {

enum class ErrorCode {
  InvalidDimension,
  NonFinite,
  DegenerateColumn,
  RankDeficient,
  EmptyCandidates,
  InvalidConfig,
  InvalidSparsity,
  TooLarge,
  EmptyAggregate,
  ConfigError,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gols
