#include "pairlab/codec.hpp"

#include <algorithm>
#include <string>

namespace pairlab {

Bits encode_faithful(const std::vector<int>& intervals, const EncodingParams& p) {
  if (p.base_ms <= 0 || p.length <= 0) fail(Err::BadParams, "encoding params must be positive");
  Bits out;
  out.reserve(intervals.size() * static_cast<std::size_t>(p.length));
  for (int v : intervals) {
    if (v < 0 || v > p.max_value())
      fail(Err::OutOfRange, "interval " + std::to_string(v) + " outside [0, " +
                                std::to_string(p.max_value()) + "]");
    int ones = v / p.base_ms;
    out.insert(out.end(), static_cast<std::size_t>(ones), 1);
    out.insert(out.end(), static_cast<std::size_t>(p.length - ones), 0);
  }
  return out;
}

Bits encode_vanilla(const std::vector<int>& intervals, int width_bits) {
  if (width_bits <= 0 || width_bits > 31) fail(Err::BadParams, "vanilla width out of range");
  Bits out;
  out.reserve(intervals.size() * static_cast<std::size_t>(width_bits));
  for (int v : intervals) {
    if (v < 0 || (width_bits < 31 && v >= (1 << width_bits)))
      fail(Err::OutOfRange, "interval " + std::to_string(v) + " exceeds vanilla width");
    for (int b = width_bits - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  return out;
}

int hamming(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) fail(Err::SizeMismatch, "hamming over unequal lengths");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

namespace {
// Primitive polynomials (low bits, excluding the x^k term handled separately).
int primitive_poly(int k) {
  switch (k) {
    case 2: return 0x7;       // x^2+x+1
    case 3: return 0xb;       // x^3+x+1
    case 4: return 0x13;      // x^4+x+1
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x89;
    case 8: return 0x11d;     // x^8+x^4+x^3+x^2+1
    case 9: return 0x211;
    case 10: return 0x409;
    case 11: return 0x805;
    case 12: return 0x1053;
    case 13: return 0x201b;
    case 14: return 0x4443;
    case 15: return 0x8003;
    case 16: return 0x1100b;  // x^16+x^12+x^3+x+1
    default: fail(Err::BadParams, "unsupported field size");
  }
}
}  // namespace

GaloisField::GaloisField(int k) : k_(k) {
  if (k < 2 || k > 16) fail(Err::BadParams, "GF(2^k) needs 2 <= k <= 16");
  int poly = primitive_poly(k);
  int size = 1 << k;
  exp_.assign(static_cast<std::size_t>(2 * size), 0);
  log_.assign(static_cast<std::size_t>(size), -1);
  int x = 1;
  for (int i = 0; i < size - 1; ++i) {
    exp_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(x);
    log_[static_cast<std::size_t>(x)] = i;
    x <<= 1;
    if (x & size) x ^= poly;
  }
  for (int i = size - 1; i < 2 * size; ++i)
    exp_[static_cast<std::size_t>(i)] = exp_[static_cast<std::size_t>(i - (size - 1))];
}

std::uint16_t GaloisField::mul(std::uint16_t a, std::uint16_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
}

std::uint16_t GaloisField::div(std::uint16_t a, std::uint16_t b) const {
  if (b == 0) fail(Err::BadParams, "division by zero field element");
  if (a == 0) return 0;
  return exp_[static_cast<std::size_t>(log_[a] - log_[b] + order())];
}

std::uint16_t GaloisField::inv(std::uint16_t a) const {
  if (a == 0) fail(Err::BadParams, "zero has no inverse");
  return exp_[static_cast<std::size_t>(order() - log_[a])];
}

std::uint16_t GaloisField::pow_alpha(int e) const {
  int r = e % order();
  if (r < 0) r += order();
  return exp_[static_cast<std::size_t>(r)];
}

int GaloisField::log_alpha(std::uint16_t a) const {
  if (a == 0) fail(Err::BadParams, "log of zero");
  return log_[a];
}

namespace {

void check_rs(const GaloisField& gf, const RsParams& rs) {
  if (rs.symbol_bits != gf.k()) fail(Err::BadParams, "field width does not match rs params");
  if (rs.n <= 0 || rs.m <= 0 || rs.m > rs.n) fail(Err::BadParams, "need 0 < m <= n");
  if (rs.n > gf.order()) fail(Err::BadParams, "codeword longer than field order");
}

void check_symbols(const GaloisField& gf, const Symbols& s) {
  for (std::uint16_t v : s)
    if (v > gf.order()) fail(Err::InvalidSymbol, "symbol exceeds field");
}

// Generator polynomial g(x) = prod_{i=0}^{2t-1} (x - alpha^i), ascending powers.
Symbols rs_generator(const GaloisField& gf, int nparity) {
  Symbols g{1};
  for (int i = 0; i < nparity; ++i) {
    Symbols next(g.size() + 1, 0);
    std::uint16_t root = gf.pow_alpha(i);
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j + 1] ^= g[j];                    // x * g
      next[j] ^= gf.mul(g[j], root);          // root * g
    }
    g = next;
  }
  return g;
}

// Horner evaluation; poly given with poly[d] = coefficient of x^d.
std::uint16_t poly_eval(const GaloisField& gf, const Symbols& poly, std::uint16_t x) {
  std::uint16_t acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = static_cast<std::uint16_t>(gf.mul(acc, x) ^ poly[i]);
  return acc;
}

}  // namespace

Symbols rs_encode(const GaloisField& gf, const RsParams& rs, const Symbols& word) {
  check_rs(gf, rs);
  check_symbols(gf, word);
  if (static_cast<int>(word.size()) != rs.m) fail(Err::SizeMismatch, "word length != m");
  int nparity = rs.n - rs.m;
  if (nparity == 0) return word;  // degenerate identity code

  Symbols gen = rs_generator(gf, nparity);
  // Long division of word(x) * x^nparity by gen(x); code[i] maps to the
  // coefficient of x^(n-1-i) so the message occupies the high-order end.
  Symbols rem(static_cast<std::size_t>(nparity), 0);
  for (int i = 0; i < rs.m; ++i) {
    std::uint16_t factor = static_cast<std::uint16_t>(word[static_cast<std::size_t>(i)] ^ rem.back());
    rem.pop_back();
    rem.insert(rem.begin(), 0);
    if (factor != 0)
      for (int j = 0; j < nparity; ++j)
        rem[static_cast<std::size_t>(j)] ^= gf.mul(factor, gen[static_cast<std::size_t>(j)]);
  }
  Symbols code = word;
  code.reserve(static_cast<std::size_t>(rs.n));
  for (int j = nparity - 1; j >= 0; --j) code.push_back(rem[static_cast<std::size_t>(j)]);
  return code;
}

std::optional<Symbols> rs_decode(const GaloisField& gf, const RsParams& rs, const Symbols& code) {
  check_rs(gf, rs);
  check_symbols(gf, code);
  if (static_cast<int>(code.size()) != rs.n) fail(Err::SizeMismatch, "code length != n");
  int nparity = rs.n - rs.m;
  if (nparity == 0) return code;

  // Work in ascending-power coefficients: coeff[d] = code[n-1-d].
  Symbols poly(static_cast<std::size_t>(rs.n));
  for (int i = 0; i < rs.n; ++i)
    poly[static_cast<std::size_t>(rs.n - 1 - i)] = code[static_cast<std::size_t>(i)];

  Symbols synd(static_cast<std::size_t>(nparity), 0);
  bool clean = true;
  for (int i = 0; i < nparity; ++i) {
    synd[static_cast<std::size_t>(i)] = poly_eval(gf, poly, gf.pow_alpha(i));
    clean = clean && synd[static_cast<std::size_t>(i)] == 0;
  }
  if (clean) return Symbols(code.begin(), code.begin() + rs.m);

  // Berlekamp-Massey for the error locator sigma(x).
  Symbols sigma{1}, prev{1};
  int L = 0, shift = 1;
  std::uint16_t prev_disc = 1;
  for (int i = 0; i < nparity; ++i) {
    std::uint16_t disc = synd[static_cast<std::size_t>(i)];
    for (int j = 1; j <= L; ++j)
      if (j < static_cast<int>(sigma.size()))
        disc ^= gf.mul(sigma[static_cast<std::size_t>(j)], synd[static_cast<std::size_t>(i - j)]);
    if (disc == 0) {
      ++shift;
      continue;
    }
    if (2 * L <= i) {
      Symbols tmp = sigma;
      std::uint16_t scale = gf.div(disc, prev_disc);
      Symbols adj(prev.size() + static_cast<std::size_t>(shift), 0);
      for (std::size_t j = 0; j < prev.size(); ++j)
        adj[j + static_cast<std::size_t>(shift)] = gf.mul(scale, prev[j]);
      if (adj.size() > sigma.size()) sigma.resize(adj.size(), 0);
      for (std::size_t j = 0; j < adj.size(); ++j) sigma[j] ^= adj[j];
      L = i + 1 - L;
      prev = tmp;
      prev_disc = disc;
      shift = 1;
    } else {
      std::uint16_t scale = gf.div(disc, prev_disc);
      Symbols adj(prev.size() + static_cast<std::size_t>(shift), 0);
      for (std::size_t j = 0; j < prev.size(); ++j)
        adj[j + static_cast<std::size_t>(shift)] = gf.mul(scale, prev[j]);
      if (adj.size() > sigma.size()) sigma.resize(adj.size(), 0);
      for (std::size_t j = 0; j < adj.size(); ++j) sigma[j] ^= adj[j];
      ++shift;
    }
  }
  while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
  int nerr = static_cast<int>(sigma.size()) - 1;
  if (nerr <= 0 || nerr > rs.thr()) return std::nullopt;

  // Chien search: error at coefficient degree d iff sigma(alpha^-d) == 0.
  std::vector<int> err_pos;
  for (int d = 0; d < rs.n; ++d)
    if (poly_eval(gf, sigma, gf.pow_alpha(-d)) == 0) err_pos.push_back(d);
  if (static_cast<int>(err_pos.size()) != nerr) return std::nullopt;

  // Forney: omega(x) = [S(x) sigma(x)] mod x^nparity, with fcr = 0.
  Symbols omega(static_cast<std::size_t>(nparity), 0);
  for (int i = 0; i < nparity; ++i) {
    std::uint16_t acc = 0;
    for (int j = 0; j <= i; ++j)
      if (j < static_cast<int>(sigma.size()))
        acc ^= gf.mul(sigma[static_cast<std::size_t>(j)], synd[static_cast<std::size_t>(i - j)]);
    omega[static_cast<std::size_t>(i)] = acc;
  }
  Symbols sigma_deriv;  // formal derivative: odd-degree terms shift down
  for (std::size_t j = 1; j < sigma.size(); j += 2) {
    sigma_deriv.resize(j, 0);
    sigma_deriv[j - 1] = sigma[j];
  }
  for (int d : err_pos) {
    std::uint16_t xinv = gf.pow_alpha(-d);
    std::uint16_t num = poly_eval(gf, omega, xinv);
    std::uint16_t den = poly_eval(gf, sigma_deriv, xinv);
    if (den == 0) return std::nullopt;
    // fcr = 0 correction factor X_d = alpha^d.
    std::uint16_t mag = gf.mul(gf.pow_alpha(d), gf.div(num, den));
    poly[static_cast<std::size_t>(d)] ^= mag;
  }

  for (int i = 0; i < nparity; ++i)
    if (poly_eval(gf, poly, gf.pow_alpha(i)) != 0) return std::nullopt;

  Symbols word(static_cast<std::size_t>(rs.m));
  for (int i = 0; i < rs.m; ++i)
    word[static_cast<std::size_t>(i)] = poly[static_cast<std::size_t>(rs.n - 1 - i)];
  return word;
}

Symbols pack_bits(const Bits& bits, int symbol_bits) {
  if (symbol_bits < 2 || symbol_bits > 16) fail(Err::BadParams, "symbol width out of range");
  std::size_t nsym = (bits.size() + static_cast<std::size_t>(symbol_bits) - 1) /
                     static_cast<std::size_t>(symbol_bits);
  Symbols out(nsym, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) fail(Err::BadParams, "bit values must be 0/1");
    std::size_t sym = i / static_cast<std::size_t>(symbol_bits);
    int off = static_cast<int>(i % static_cast<std::size_t>(symbol_bits));
    if (bits[i]) out[sym] |= static_cast<std::uint16_t>(1 << (symbol_bits - 1 - off));
  }
  return out;
}

Bits unpack_bits(const Symbols& syms, int symbol_bits, std::size_t nbits) {
  if (symbol_bits < 2 || symbol_bits > 16) fail(Err::BadParams, "symbol width out of range");
  if (nbits > syms.size() * static_cast<std::size_t>(symbol_bits))
    fail(Err::SizeMismatch, "asked for more bits than packed");
  Bits out(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    std::size_t sym = i / static_cast<std::size_t>(symbol_bits);
    int off = static_cast<int>(i % static_cast<std::size_t>(symbol_bits));
    out[i] = (syms[sym] >> (symbol_bits - 1 - off)) & 1;
  }
  return out;
}

int symbol_distance(const Symbols& a, const Symbols& b) {
  if (a.size() != b.size()) fail(Err::SizeMismatch, "symbol_distance over unequal lengths");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

RsParams rs_for_encoding(std::size_t encoded_bits, int thr_symbols) {
  if (encoded_bits == 0 || thr_symbols < 0) fail(Err::BadParams, "empty encoding or negative thr");
  for (int k : {8, 16}) {
    std::size_t n = (encoded_bits + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
    if (n <= static_cast<std::size_t>((1 << k) - 1)) {
      RsParams rs;
      rs.symbol_bits = k;
      rs.n = static_cast<int>(n);
      rs.m = rs.n - 2 * thr_symbols;
      if (rs.m <= 0) fail(Err::BadParams, "thr too large for encoding size");
      return rs;
    }
  }
  fail(Err::BadParams, "encoding too long for supported fields");
}

Bytes symbols_to_bytes(const Symbols& syms) {
  Bytes out;
  out.reserve(2 + 2 * syms.size());
  out.push_back(static_cast<std::uint8_t>(syms.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(syms.size() & 0xFF));
  for (std::uint16_t s : syms) {
    out.push_back(static_cast<std::uint8_t>(s >> 8));
    out.push_back(static_cast<std::uint8_t>(s & 0xFF));
  }
  return out;
}

std::optional<Symbols> symbols_from_bytes(const Bytes& raw) {
  if (raw.size() < 2) return std::nullopt;
  std::size_t count = (static_cast<std::size_t>(raw[0]) << 8) | raw[1];
  if (raw.size() != 2 + 2 * count) return std::nullopt;
  Symbols out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = static_cast<std::uint16_t>((raw[2 + 2 * i] << 8) | raw[3 + 2 * i]);
  return out;
}

}  // namespace pairlab
