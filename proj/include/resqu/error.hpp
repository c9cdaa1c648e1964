#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace resqu {

/// Failure categories surfaced by the library. The CLI and the session
/// service map these onto exit codes and HTTP statuses.
enum class ErrorCode {
    domain,
    validation,
    degenerate_human_distribution,
    no_discrimination,
    impossible_indication,
    insufficient_data,
    degenerate_normalization,
    zero_variance,
    schema,
    payoff_inconsistency,
    duplicate_trial,
    condition_mismatch,
    missing_policy,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace resqu
