#include "hostdet/z85.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <stdexcept>

namespace hostdet::z85 {

namespace {

constexpr std::string_view kAlphabet =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ.-:+=^!/*?&<>()[]{}@%$#";

constexpr std::array<std::int8_t, 256> make_decoder() {
  std::array<std::int8_t, 256> table{};
  for (auto& t : table) t = -1;
  for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
    table[static_cast<unsigned char>(kAlphabet[i])] = static_cast<std::int8_t>(i);
  }
  return table;
}

constexpr auto kDecoder = make_decoder();

std::vector<std::uint8_t> to_le_bytes(std::span<const double> values) {
  std::vector<std::uint8_t> bytes(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
  return bytes;
}

}  // namespace

std::string encode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 4 != 0) throw std::invalid_argument("z85 input length must be a multiple of 4");
  std::string out;
  out.reserve(bytes.size() / 4 * 5);
  for (std::size_t i = 0; i < bytes.size(); i += 4) {
    std::uint32_t value = (std::uint32_t{bytes[i]} << 24) | (std::uint32_t{bytes[i + 1]} << 16) |
                          (std::uint32_t{bytes[i + 2]} << 8) | std::uint32_t{bytes[i + 3]};
    char group[5];
    for (int k = 4; k >= 0; --k) {
      group[k] = kAlphabet[value % 85];
      value /= 85;
    }
    out.append(group, 5);
  }
  return out;
}

std::optional<std::vector<std::uint8_t>> decode(std::string_view text) {
  if (text.size() % 5 != 0) return std::nullopt;
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 5 * 4);
  for (std::size_t i = 0; i < text.size(); i += 5) {
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < 5; ++k) {
      const auto digit = kDecoder[static_cast<unsigned char>(text[i + k])];
      if (digit < 0) return std::nullopt;
      value = value * 85 + static_cast<std::uint64_t>(digit);
    }
    if (value > UINT32_MAX) return std::nullopt;
    for (int b = 3; b >= 0; --b) out.push_back(static_cast<std::uint8_t>(value >> (8 * b)));
  }
  return out;
}

std::string encode_doubles(std::span<const double> values) { return encode(to_le_bytes(values)); }

std::optional<std::vector<double>> decode_doubles(std::string_view text) {
  auto bytes = decode(text);
  if (!bytes || bytes->size() % 8 != 0) return std::nullopt;
  std::vector<double> values(bytes->size() / 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t{(*bytes)[i * 8 + b]} << (8 * b);
    values[i] = std::bit_cast<double>(bits);
  }
  return values;
}

std::uint64_t checksum(std::span<const double> values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto byte : to_le_bytes(values)) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hostdet::z85
