#include "pairlab/crypto.hpp"

#include <openssl/bn.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cstring>
#include <memory>

#include "pairlab/errors.hpp"

namespace pairlab {

Bytes sha256(const Bytes& data) {
  Bytes out(SHA256_DIGEST_LENGTH);
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr))
    fail(Err::CryptoFailure, "EVP_Digest");
  return out;
}

Bytes hmac_sha256(const Bytes& key, const Bytes& data) {
  Bytes out(SHA256_DIGEST_LENGTH);
  unsigned int len = 0;
  if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
            out.data(), &len))
    fail(Err::CryptoFailure, "HMAC");
  out.resize(len);
  return out;
}

HmacDrbg::HmacDrbg(const Bytes& seed) : k_(32, 0x00), v_(32, 0x01) { update(&seed); }

HmacDrbg HmacDrbg::from_os_entropy() {
  Bytes seed(48);
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1)
    fail(Err::CryptoFailure, "RAND_bytes");
  return HmacDrbg(seed);
}

HmacDrbg HmacDrbg::from_seed64(std::uint64_t seed, std::string_view purpose) {
  Bytes material;
  for (int i = 7; i >= 0; --i) material.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
  append(material, str_bytes(purpose));
  return HmacDrbg(material);
}

void HmacDrbg::update(const Bytes* data) {
  Bytes msg = v_;
  msg.push_back(0x00);
  if (data) append(msg, *data);
  k_ = hmac_sha256(k_, msg);
  v_ = hmac_sha256(k_, v_);
  if (data) {
    msg = v_;
    msg.push_back(0x01);
    append(msg, *data);
    k_ = hmac_sha256(k_, msg);
    v_ = hmac_sha256(k_, v_);
  }
}

Bytes HmacDrbg::generate(std::size_t n) {
  Bytes out;
  out.reserve(n);
  while (out.size() < n) {
    v_ = hmac_sha256(k_, v_);
    std::size_t take = std::min(v_.size(), n - out.size());
    out.insert(out.end(), v_.begin(), v_.begin() + static_cast<std::ptrdiff_t>(take));
  }
  update(nullptr);
  return out;
}

std::uint64_t HmacDrbg::next_u64() {
  Bytes b = generate(8);
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x = (x << 8) | b[static_cast<std::size_t>(i)];
  return x;
}

Bytes kdf(std::string_view label, const Bytes& ikm) {
  Bytes msg = str_bytes(label);
  msg.push_back(0x00);
  append(msg, ikm);
  return sha256(msg);
}

static constexpr std::size_t kNonceLen = 12;
static constexpr std::size_t kTagLen = 16;

Bytes aead_seal(const Bytes& key32, const Bytes& plaintext, const Bytes& aad, HmacDrbg& rng) {
  if (key32.size() != 32) fail(Err::BadParams, "aead key must be 32 bytes");
  Bytes nonce = rng.generate(kNonceLen);
  Bytes out = nonce;
  out.resize(kNonceLen + plaintext.size() + kTagLen);

  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                      EVP_CIPHER_CTX_free);
  int len = 0;
  if (!ctx || !EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key32.data(),
                                  nonce.data()))
    fail(Err::CryptoFailure, "gcm init");
  if (!aad.empty() &&
      !EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())))
    fail(Err::CryptoFailure, "gcm aad");
  if (!plaintext.empty() &&
      !EVP_EncryptUpdate(ctx.get(), out.data() + kNonceLen, &len, plaintext.data(),
                         static_cast<int>(plaintext.size())))
    fail(Err::CryptoFailure, "gcm encrypt");
  if (!EVP_EncryptFinal_ex(ctx.get(), out.data() + kNonceLen + plaintext.size(), &len))
    fail(Err::CryptoFailure, "gcm final");
  if (!EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagLen,
                           out.data() + kNonceLen + plaintext.size()))
    fail(Err::CryptoFailure, "gcm tag");
  return out;
}

std::optional<Bytes> aead_open(const Bytes& key32, const Bytes& blob, const Bytes& aad) {
  if (key32.size() != 32) fail(Err::BadParams, "aead key must be 32 bytes");
  if (blob.size() < kNonceLen + kTagLen) return std::nullopt;
  std::size_t ct_len = blob.size() - kNonceLen - kTagLen;

  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                      EVP_CIPHER_CTX_free);
  int len = 0;
  if (!ctx ||
      !EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key32.data(), blob.data()))
    fail(Err::CryptoFailure, "gcm init");
  if (!aad.empty() &&
      !EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())))
    fail(Err::CryptoFailure, "gcm aad");
  Bytes pt(ct_len);
  if (ct_len > 0 && !EVP_DecryptUpdate(ctx.get(), pt.data(), &len, blob.data() + kNonceLen,
                                       static_cast<int>(ct_len)))
    return std::nullopt;
  Bytes tag(blob.end() - kTagLen, blob.end());
  if (!EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagLen, tag.data()))
    fail(Err::CryptoFailure, "gcm set tag");
  if (EVP_DecryptFinal_ex(ctx.get(), pt.data() + ct_len, &len) != 1) return std::nullopt;
  return pt;
}

// RFC 3526, 2048-bit MODP group (id 14), generator 2.
static const char* kModp2048 =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

// Safe prime, generated once for this lab; never use outside tests.
static const char* kTest512 =
    "C33924B274671D35EB03FDC325E9AE79E115187A5248834934AF2725C17E5E3B"
    "E27C855ACB2D42E788E1A90032EADD846FBB95B763455CA9B1730DFC8F3CF2B7";

const DhGroup& dh_group_modp2048() {
  static const DhGroup g{"modp2048", kModp2048, "02", 256};
  return g;
}

const DhGroup& dh_group_test512() {
  static const DhGroup g{"test512", kTest512, "02", 128};
  return g;
}

const DhGroup& dh_group_by_name(std::string_view name) {
  if (name == "modp2048") return dh_group_modp2048();
  if (name == "test512") return dh_group_test512();
  fail(Err::Config, "unknown dh group: " + std::string(name));
}

namespace {

struct Bn {
  BIGNUM* p = BN_new();
  ~Bn() { BN_free(p); }
};

void bn_from_hex(Bn& b, const char* hex) {
  BIGNUM* raw = b.p;
  if (!BN_hex2bn(&raw, hex)) fail(Err::CryptoFailure, "BN_hex2bn");
  b.p = raw;
}

void bn_from_bytes(Bn& b, const Bytes& in) {
  if (!BN_bin2bn(in.data(), static_cast<int>(in.size()), b.p)) fail(Err::CryptoFailure, "BN_bin2bn");
}

Bytes bn_to_bytes_padded(const BIGNUM* v, int width) {
  Bytes out(static_cast<std::size_t>(width));
  if (BN_bn2binpad(v, out.data(), width) < 0) fail(Err::CryptoFailure, "BN_bn2binpad");
  return out;
}

}  // namespace

DhKeyPair dh_keygen(const DhGroup& g, HmacDrbg& rng) {
  Bn p, gen, priv, pub;
  bn_from_hex(p, g.p_hex);
  bn_from_hex(gen, g.g_hex);
  // Exponent in [2, 2^exponent_bits); rejection on degenerate values.
  Bytes raw;
  do {
    raw = rng.generate(static_cast<std::size_t>(g.exponent_bits / 8));
    bn_from_bytes(priv, raw);
  } while (BN_is_zero(priv.p) || BN_is_one(priv.p));

  std::unique_ptr<BN_CTX, decltype(&BN_CTX_free)> ctx(BN_CTX_new(), BN_CTX_free);
  if (!BN_mod_exp(pub.p, gen.p, priv.p, p.p, ctx.get())) fail(Err::CryptoFailure, "BN_mod_exp");
  int width = BN_num_bytes(p.p);
  return DhKeyPair{bn_to_bytes_padded(priv.p, g.exponent_bits / 8),
                   bn_to_bytes_padded(pub.p, width)};
}

Bytes dh_shared(const DhGroup& g, const Bytes& priv, const Bytes& peer_pub) {
  Bn p, a, b, out;
  bn_from_hex(p, g.p_hex);
  bn_from_bytes(a, priv);
  bn_from_bytes(b, peer_pub);
  std::unique_ptr<BN_CTX, decltype(&BN_CTX_free)> ctx(BN_CTX_new(), BN_CTX_free);
  if (!BN_mod(b.p, b.p, p.p, ctx.get())) fail(Err::CryptoFailure, "BN_mod");
  if (BN_is_zero(b.p)) BN_one(b.p);  // tolerate junk peer values; PAKE checks catch the rest
  if (!BN_mod_exp(out.p, b.p, a.p, p.p, ctx.get())) fail(Err::CryptoFailure, "BN_mod_exp");
  return bn_to_bytes_padded(out.p, BN_num_bytes(p.p));
}

const char* err_name(Err c) {
  switch (c) {
    case Err::OutOfRange: return "OutOfRange";
    case Err::SizeMismatch: return "SizeMismatch";
    case Err::InvalidSymbol: return "InvalidSymbol";
    case Err::BadParams: return "BadParams";
    case Err::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case Err::MalformedTrace: return "MalformedTrace";
    case Err::TooFewEvents: return "TooFewEvents";
    case Err::EmptyTrace: return "EmptyTrace";
    case Err::DegenerateTrace: return "DegenerateTrace";
    case Err::NoSilenceFound: return "NoSilenceFound";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::DegenerateDataset: return "DegenerateDataset";
    case Err::CryptoFailure: return "CryptoFailure";
    case Err::Io: return "Io";
    case Err::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace pairlab
