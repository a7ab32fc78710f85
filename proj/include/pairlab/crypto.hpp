#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "pairlab/bytes.hpp"

namespace pairlab {

Bytes sha256(const Bytes& data);
Bytes hmac_sha256(const Bytes& key, const Bytes& data);

// Deterministic byte generator in the SP 800-90A HMAC-DRBG shape. Seeded per
// scenario so full runs replay byte-for-byte; the CLI falls back to OS entropy
// when no seed is given.
class HmacDrbg {
 public:
  explicit HmacDrbg(const Bytes& seed);
  static HmacDrbg from_os_entropy();
  static HmacDrbg from_seed64(std::uint64_t seed, std::string_view purpose);

  Bytes generate(std::size_t n);
  std::uint64_t next_u64();

 private:
  void update(const Bytes* data);
  Bytes k_, v_;
};

// AES-256-GCM. Blob layout: 12-byte nonce || ciphertext || 16-byte tag.
Bytes aead_seal(const Bytes& key32, const Bytes& plaintext, const Bytes& aad, HmacDrbg& rng);
std::optional<Bytes> aead_open(const Bytes& key32, const Bytes& blob, const Bytes& aad);

// Labelled digest used everywhere a key is derived from other material.
Bytes kdf(std::string_view label, const Bytes& ikm);

struct DhGroup {
  const char* name;
  const char* p_hex;
  const char* g_hex;
  int exponent_bits;
};

const DhGroup& dh_group_modp2048();  // RFC 3526 group 14
const DhGroup& dh_group_test512();   // insecure-test-only, desk-scale suites
const DhGroup& dh_group_by_name(std::string_view name);

struct DhKeyPair {
  Bytes priv;
  Bytes pub;  // fixed width, padded to the modulus size
};

DhKeyPair dh_keygen(const DhGroup& g, HmacDrbg& rng);
Bytes dh_shared(const DhGroup& g, const Bytes& priv, const Bytes& peer_pub);

}  // namespace pairlab
