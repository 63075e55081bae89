#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace wqed::cli
{

inline constexpr std::string_view kToolVersion = "wqed 1.0.0";

// Shortest decimal that round-trips the double exactly; the same bytes on
// every run and platform, which is what makes golden CSV files possible.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);

} // namespace wqed::cli
