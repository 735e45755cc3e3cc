#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace oscillat {

/// 64-bit FNV-1a hash of a canonical configuration string, as 16 hex digits.
std::string config_digest(std::string_view canonical);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace oscillat
