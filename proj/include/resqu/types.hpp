#pragma once

#include <optional>
#include <string_view>

namespace resqu {

/// Human action. Index 0 is "reject" (declare the item defective).
enum class Response { reject = 0, accept = 1 };

/// System classification. Red flags a potential signal.
enum class Indication { red = 0, green = 1 };

enum class TrueState { signal = 0, noise = 1 };

constexpr int index(Response r) noexcept { return static_cast<int>(r); }
constexpr int index(Indication y) noexcept { return static_cast<int>(y); }

std::string_view to_string(Response r) noexcept;
std::string_view to_string(Indication y) noexcept;
std::string_view to_string(TrueState s) noexcept;

std::optional<Response> parse_response(std::string_view s) noexcept;
std::optional<Indication> parse_indication(std::string_view s) noexcept;
std::optional<TrueState> parse_true_state(std::string_view s) noexcept;

}  // namespace resqu
