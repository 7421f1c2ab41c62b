#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace narrowpass {

// Shortest decimal text that parses back to exactly `v`. Locale independent.
std::string format_double(double v);

// Fixed-point with `digits` decimals. Locale independent.
std::string format_fixed(double v, int digits);

// Full-token parse; nullopt on trailing garbage or a malformed number.
std::optional<double> parse_double(std::string_view text) noexcept;

}  // namespace narrowpass
