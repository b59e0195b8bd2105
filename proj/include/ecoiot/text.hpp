#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ecoiot {

// Shortest decimal form that parses back to the same double. Report CSV
// output depends on this round-trip guarantee.
std::string format_number(double value);
std::string format_number(std::int64_t value);

// Fixed significant-digit rendering for terminal tables.
std::string format_sig(double value, int digits);

// 64-bit FNV-1a, hex encoded; fingerprints scenario input bytes.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace ecoiot
