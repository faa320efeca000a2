#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hostdet::z85 {

/// ZeroMQ Z85 encoding. Input length must be a multiple of 4.
std::string encode(std::span<const std::uint8_t> bytes);

/// Returns nullopt on a bad length, a character outside the alphabet, or a
/// group that overflows 32 bits.
std::optional<std::vector<std::uint8_t>> decode(std::string_view text);

/// Little-endian IEEE-754 doubles, Z85-encoded.
std::string encode_doubles(std::span<const double> values);
std::optional<std::vector<double>> decode_doubles(std::string_view text);

/// FNV-1a 64-bit over the little-endian bytes of `values`.
std::uint64_t checksum(std::span<const double> values);

}  // namespace hostdet::z85
