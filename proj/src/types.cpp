#include "resqu/error.hpp"
#include "resqu/types.hpp"

namespace resqu {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::domain: return "domain-error";
        case ErrorCode::validation: return "validation-error";
        case ErrorCode::degenerate_human_distribution: return "degenerate-human-distribution";
        case ErrorCode::no_discrimination: return "no-discrimination";
        case ErrorCode::impossible_indication: return "impossible-indication";
        case ErrorCode::insufficient_data: return "insufficient-data";
        case ErrorCode::degenerate_normalization: return "degenerate-normalization";
        case ErrorCode::zero_variance: return "zero-variance";
        case ErrorCode::schema: return "schema-error";
        case ErrorCode::payoff_inconsistency: return "payoff-inconsistency";
        case ErrorCode::duplicate_trial: return "duplicate-trial";
        case ErrorCode::condition_mismatch: return "condition-mismatch";
        case ErrorCode::missing_policy: return "missing-policy";
    }
    return "unknown-error";
}

std::string_view to_string(Response r) noexcept {
    return r == Response::reject ? "reject" : "accept";
}

std::string_view to_string(Indication y) noexcept {
    return y == Indication::red ? "red" : "green";
}

std::string_view to_string(TrueState s) noexcept {
    return s == TrueState::signal ? "signal" : "noise";
}

std::optional<Response> parse_response(std::string_view s) noexcept {
    if (s == "reject") return Response::reject;
    if (s == "accept") return Response::accept;
    return std::nullopt;
}

std::optional<Indication> parse_indication(std::string_view s) noexcept {
    if (s == "red") return Indication::red;
    if (s == "green") return Indication::green;
    return std::nullopt;
}

std::optional<TrueState> parse_true_state(std::string_view s) noexcept {
    if (s == "signal") return TrueState::signal;
    if (s == "noise") return TrueState::noise;
    return std::nullopt;
}

}  // namespace resqu
