#include "pairlab/bytes.hpp"

#include <algorithm>

#include "pairlab/errors.hpp"

namespace pairlab {

static const char* kHexDigits = "0123456789abcdef";

std::string to_hex(const Bytes& b) {
  std::string out;
  out.reserve(b.size() * 2);
  for (std::uint8_t v : b) {
    out.push_back(kHexDigits[v >> 4]);
    out.push_back(kHexDigits[v & 0xf]);
  }
  return out;
}

static int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

Bytes from_hex(std::string_view s) {
  if (s.size() % 2 != 0) fail(Err::BadParams, "hex string with odd length");
  Bytes out;
  out.reserve(s.size() / 2);
  for (std::size_t i = 0; i < s.size(); i += 2) {
    int hi = hex_val(s[i]), lo = hex_val(s[i + 1]);
    if (hi < 0 || lo < 0) fail(Err::BadParams, "non-hex character");
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

bool contains(const Bytes& haystack, const Bytes& needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

void store_be32(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t load_be32(const Bytes& in, std::size_t off) {
  if (off + 4 > in.size()) fail(Err::SizeMismatch, "load_be32 past end");
  return (std::uint32_t(in[off]) << 24) | (std::uint32_t(in[off + 1]) << 16) |
         (std::uint32_t(in[off + 2]) << 8) | std::uint32_t(in[off + 3]);
}

}  // namespace pairlab
