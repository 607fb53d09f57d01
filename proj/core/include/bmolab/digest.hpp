#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>

namespace bmolab {

// 64-bit FNV-1a, used as a content digest for caches and report provenance.
class Digest {
 public:
  Digest& add_bytes(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      state_ ^= bytes[i];
      state_ *= kPrime;
    }
    return *this;
  }
  Digest& add(std::string_view text) { return add_bytes(text.data(), text.size()); }
  Digest& add(double value) { return add_bytes(&value, sizeof value); }
  Digest& add(std::uint64_t value) { return add_bytes(&value, sizeof value); }
  Digest& add(std::span<const double> values) {
    return add_bytes(values.data(), values.size_bytes());
  }

  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  static constexpr std::uint64_t kOffset = 14695981039346656037ull;
  static constexpr std::uint64_t kPrime = 1099511628211ull;
  std::uint64_t state_ = kOffset;
};

inline std::string Digest::hex() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  std::uint64_t v = state_;
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[v & 0xF];
    v >>= 4;
  }
  return out;
}

}  // namespace bmolab
