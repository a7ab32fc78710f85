#include <doctest.h>

#include <cmath>
#include <set>

#include "pairlab/codec.hpp"
#include "pairlab/rng.hpp"

using namespace pairlab;

TEST_SUITE("codec") {

TEST_CASE("unary encoding is a prefix of ones") {
  EncodingParams p{4, 40};
  Bits e = encode_faithful({121}, p);
  REQUIRE(e.size() == 40);
  for (int i = 0; i < 30; ++i) CHECK(e[static_cast<std::size_t>(i)] == 1);
  for (int i = 30; i < 40; ++i) CHECK(e[static_cast<std::size_t>(i)] == 0);
  CHECK(p.max_value() == 163);
}

TEST_CASE("distance equals the quantized gap") {
  EncodingParams p{4, 40};
  CHECK(hamming(encode_faithful({121}, p), encode_faithful({57}, p)) == 16);
  CHECK(hamming(encode_faithful({128}, p), encode_faithful({127}, p)) == 1);
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    int u = rng.uniform_int(0, p.max_value());
    int v = rng.uniform_int(0, p.max_value());
    CHECK(hamming(encode_faithful({u}, p), encode_faithful({v}, p)) ==
          std::abs(u / p.base_ms - v / p.base_ms));
  }
}

TEST_CASE("plain binary misranks near values") {
  CHECK(hamming(encode_vanilla({121}, 8), encode_vanilla({57}, 8)) == 1);
  CHECK(hamming(encode_vanilla({128}, 8), encode_vanilla({127}, 8)) == 8);
}

TEST_CASE("encoders reject out-of-range input") {
  EncodingParams p{4, 40};
  CHECK_THROWS_AS(encode_faithful({p.max_value() + 1}, p), Error);
  CHECK_THROWS_AS(encode_faithful({-1}, p), Error);
  CHECK_THROWS_AS(encode_vanilla({256}, 8), Error);
  CHECK_THROWS_AS(hamming(Bits{1, 0}, Bits{1}), Error);
}

TEST_CASE("field arithmetic round-trips") {
  for (int k : {3, 4, 8}) {
    GaloisField gf(k);
    for (int a = 1; a <= gf.order(); ++a) {
      auto s = static_cast<std::uint16_t>(a);
      CHECK(gf.mul(s, gf.inv(s)) == 1);
      CHECK(gf.pow_alpha(gf.log_alpha(s)) == s);
      CHECK(gf.div(gf.mul(s, 5), s) == 5);
    }
  }
  CHECK_THROWS_AS(GaloisField(1), Error);
  CHECK_THROWS_AS(GaloisField(17), Error);
}

TEST_CASE("code corrects up to its symbol budget") {
  GaloisField gf(8);
  RsParams rs{8, 32, 16};
  REQUIRE(rs.thr() == 8);
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    Symbols msg;
    for (int i = 0; i < rs.m; ++i) msg.push_back(static_cast<std::uint16_t>(rng.uniform_int(0, 255)));
    Symbols code = rs_encode(gf, rs, msg);
    REQUIRE(static_cast<int>(code.size()) == rs.n);
    for (int i = 0; i < rs.m; ++i) CHECK(code[static_cast<std::size_t>(i)] == msg[static_cast<std::size_t>(i)]);

    Symbols bad = code;
    int nerr = t % rs.thr() + 1;
    std::set<int> pos;
    while (static_cast<int>(pos.size()) < nerr) pos.insert(rng.uniform_int(0, rs.n - 1));
    for (int i : pos) bad[static_cast<std::size_t>(i)] ^= static_cast<std::uint16_t>(rng.uniform_int(1, 255));
    auto dec = rs_decode(gf, rs, bad);
    REQUIRE(dec.has_value());
    CHECK(*dec == msg);
  }
}

TEST_CASE("over-budget corruption never returns the original") {
  GaloisField gf(4);
  RsParams rs{4, 15, 7};
  REQUIRE(rs.thr() == 4);
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    Symbols msg;
    for (int i = 0; i < rs.m; ++i) msg.push_back(static_cast<std::uint16_t>(rng.uniform_int(0, 15)));
    Symbols code = rs_encode(gf, rs, msg);
    Symbols bad = code;
    std::set<int> pos;
    while (static_cast<int>(pos.size()) < rs.thr() + 2) pos.insert(rng.uniform_int(0, rs.n - 1));
    for (int i : pos) bad[static_cast<std::size_t>(i)] ^= static_cast<std::uint16_t>(rng.uniform_int(1, 15));
    auto dec = rs_decode(gf, rs, bad);
    // Either detected as hopeless or miscorrected to some other word; the
    // committed message must not come back.
    if (dec) CHECK(*dec != msg);
  }
}

TEST_CASE("bit packing round-trips") {
  Rng rng(3);
  for (int bits : {4, 8, 16}) {
    for (int t = 0; t < 20; ++t) {
      Bits b;
      std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 200));
      for (std::size_t i = 0; i < n; ++i) b.push_back(static_cast<std::uint8_t>(rng.below(2)));
      Symbols s = pack_bits(b, bits);
      CHECK(s.size() == (n + static_cast<std::size_t>(bits) - 1) / static_cast<std::size_t>(bits));
      CHECK(unpack_bits(s, bits, n) == b);
    }
  }
  // MSB-first: 1000 0001 packs to 0x81.
  CHECK(pack_bits({1, 0, 0, 0, 0, 0, 0, 1}, 8) == Symbols{0x81});
  CHECK(pack_bits({1, 1}, 8) == Symbols{0xC0});  // tail is zero-padded
}

TEST_CASE("symbol distance counts disagreeing positions") {
  CHECK(symbol_distance({1, 2, 3}, {1, 2, 3}) == 0);
  CHECK(symbol_distance({1, 2, 3}, {1, 9, 4}) == 2);
  CHECK_THROWS_AS(symbol_distance({1}, {1, 2}), Error);
}

TEST_CASE("code sizing picks the narrowest field that fits") {
  RsParams a = rs_for_encoding(6u * 310u, 8);
  CHECK(a.symbol_bits == 8);
  CHECK(a.n == 233);
  CHECK(a.m == 217);

  // 7*310 bits needs 272 eight-bit symbols, past the field's 255 limit.
  RsParams b = rs_for_encoding(7u * 310u, 8);
  CHECK(b.symbol_bits == 16);
  CHECK(b.n == 136);
  CHECK(b.m == 120);

  RsParams c = rs_for_encoding(8u * 310u, 8);
  CHECK(c.symbol_bits == 16);
  CHECK(c.n == 155);

  CHECK_THROWS_AS(rs_for_encoding(0, 8), Error);
  CHECK_THROWS_AS(rs_for_encoding(16, 8), Error);  // n too small for the budget
}

TEST_CASE("symbol wire form round-trips and rejects damage") {
  Symbols s{0x0001, 0xABCD, 0x0000, 0x7FFF};
  Bytes raw = symbols_to_bytes(s);
  CHECK(raw.size() == 2 + 2 * s.size());
  auto back = symbols_from_bytes(raw);
  REQUIRE(back.has_value());
  CHECK(*back == s);

  Bytes truncated(raw.begin(), raw.end() - 1);
  CHECK(!symbols_from_bytes(truncated).has_value());
  Bytes wrong_count = raw;
  wrong_count[1] ^= 1;
  CHECK(!symbols_from_bytes(wrong_count).has_value());
  CHECK(!symbols_from_bytes(Bytes{}).has_value());
}

}  // TEST_SUITE
