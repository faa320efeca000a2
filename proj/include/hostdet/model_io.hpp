#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "hostdet/pipeline.hpp"

namespace hostdet {

inline constexpr int kModelFormatVersion = 1;

class ModelError : public std::runtime_error {
 public:
  enum class Kind { Io, Malformed, Truncated, UnsupportedVersion, Corrupt, DimensionMismatch };

  ModelError(Kind kind, const std::string& detail);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view error_kind_name(ModelError::Kind kind);

/// JSON envelope; every floating-point array is stored as Z85 text over
/// little-endian doubles with an FNV-1a checksum, so reloading is bit-exact
/// and corrupted numbers are detected instead of silently used.
std::string save_model(const TextClassifier& model);
TextClassifier load_model(std::string_view content);

void write_model(const TextClassifier& model, const std::string& path);
TextClassifier read_model(const std::string& path);

}  // namespace hostdet
