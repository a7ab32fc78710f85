#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pairlab/bytes.hpp"
#include "pairlab/errors.hpp"

namespace pairlab {

// Quantize-then-unary interval encoding. A value v maps to floor(v/base)
// ones followed by (length - floor(v/base)) zeros, so the Hamming distance
// between two encoded values is exactly |floor(u/base) - floor(v/base)|.
struct EncodingParams {
  int base_ms = 10;
  int length = 310;
  int max_value() const { return length * base_ms + (base_ms - 1); }
};

using Bits = std::vector<std::uint8_t>;  // one entry per bit, each 0 or 1

Bits encode_faithful(const std::vector<int>& intervals, const EncodingParams& p);

// Plain fixed-width big-endian binary, for the degraded-accuracy comparison.
Bits encode_vanilla(const std::vector<int>& intervals, int width_bits);

int hamming(const Bits& a, const Bits& b);

class GaloisField {
 public:
  explicit GaloisField(int k);  // GF(2^k), 2 <= k <= 16
  int k() const { return k_; }
  int order() const { return (1 << k_) - 1; }  // multiplicative order

  std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return a ^ b; }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const;
  std::uint16_t div(std::uint16_t a, std::uint16_t b) const;
  std::uint16_t inv(std::uint16_t a) const;
  std::uint16_t pow_alpha(int e) const;  // alpha^e, e may be negative
  int log_alpha(std::uint16_t a) const;

 private:
  int k_;
  std::vector<std::uint16_t> exp_;
  std::vector<int> log_;
};

struct RsParams {
  int symbol_bits = 8;
  int n = 32;  // codeword symbols
  int m = 16;  // message symbols
  int thr() const { return (n - m) / 2; }  // correctable symbol errors
};

using Symbols = std::vector<std::uint16_t>;

// Systematic: codeword[0..m) is the message, codeword[m..n) parity.
Symbols rs_encode(const GaloisField& gf, const RsParams& rs, const Symbols& word);

// Bounded-distance decode; recovers the message from up to thr() corrupted
// symbols. nullopt signals evidence mismatch, not a bug.
std::optional<Symbols> rs_decode(const GaloisField& gf, const RsParams& rs, const Symbols& code);

// MSB-first packing of a bit string into k-bit symbols, zero-padded tail.
Symbols pack_bits(const Bits& bits, int symbol_bits);
Bits unpack_bits(const Symbols& syms, int symbol_bits, std::size_t nbits);

// Count of symbols that differ; the protocol-level accept/reject quantity.
int symbol_distance(const Symbols& a, const Symbols& b);

// Code parameters sized to carry a whole packed encoding: smallest symbol
// width in {8, 16} whose codeword-length bound fits, n = ceil(bits/width),
// m = n - 2*thr_symbols.
RsParams rs_for_encoding(std::size_t encoded_bits, int thr_symbols);

// Wire form: count (u16) then each symbol as u16, all big-endian.
Bytes symbols_to_bytes(const Symbols& syms);
std::optional<Symbols> symbols_from_bytes(const Bytes& raw);

}  // namespace pairlab
