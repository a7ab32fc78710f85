#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pairlab {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(const Bytes& b);
Bytes from_hex(std::string_view s);

inline Bytes str_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline void append(Bytes& out, const Bytes& b) { out.insert(out.end(), b.begin(), b.end()); }

inline Bytes cat(const Bytes& a, const Bytes& b) {
  Bytes out = a;
  append(out, b);
  return out;
}

// Substring search; used by transcript-secrecy checks.
bool contains(const Bytes& haystack, const Bytes& needle);

void store_be32(Bytes& out, std::uint32_t v);
std::uint32_t load_be32(const Bytes& in, std::size_t off);

}  // namespace pairlab
