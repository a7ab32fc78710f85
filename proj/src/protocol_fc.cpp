#include "pairlab/protocol_fc.hpp"

#include <utility>

namespace pairlab {

namespace {

constexpr int kWatchdog = 0;
constexpr int kOpEnd = 1;
constexpr std::size_t kChal = 16;

std::size_t mod_len(const DhGroup& g) { return from_hex(g.p_hex).size(); }

Bytes delta_payload(const Evidence& ev, const FcCommitment& c) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(ev.ui));
  out.push_back(static_cast<std::uint8_t>(c.rs.symbol_bits));
  out.push_back(static_cast<std::uint8_t>(c.rs.n >> 8));
  out.push_back(static_cast<std::uint8_t>(c.rs.n & 0xFF));
  out.push_back(static_cast<std::uint8_t>(c.rs.m >> 8));
  out.push_back(static_cast<std::uint8_t>(c.rs.m & 0xFF));
  append(out, symbols_to_bytes(c.delta));
  return out;
}

struct DeltaHeader {
  UiType ui;
  RsParams rs;
  Symbols delta;
};

std::optional<DeltaHeader> parse_delta(const Bytes& raw) {
  if (raw.size() < 6 || raw[0] > 2) return std::nullopt;
  DeltaHeader h;
  h.ui = static_cast<UiType>(raw[0]);
  h.rs.symbol_bits = raw[1];
  h.rs.n = (raw[2] << 8) | raw[3];
  h.rs.m = (raw[4] << 8) | raw[5];
  auto syms = symbols_from_bytes(Bytes(raw.begin() + 6, raw.end()));
  if (!syms || static_cast<int>(syms->size()) != h.rs.n) return std::nullopt;
  h.delta = std::move(*syms);
  return h;
}

bool same_rs(const RsParams& a, const RsParams& b) {
  return a.symbol_bits == b.symbol_bits && a.n == b.n && a.m == b.m;
}

}  // namespace

RsParams FcConfig::rs_for(const Evidence& ev) const {
  if (rs_override) return *rs_override;
  std::size_t bits = ev.intervals_ms.size() * static_cast<std::size_t>(enc.length);
  return rs_for_encoding(bits, thr_symbols);
}

FcCommitment fc_commit(const Evidence& ev, const EncodingParams& enc, const RsParams& rs,
                       HmacDrbg& rng) {
  FcCommitment c;
  c.rs = rs;
  GaloisField gf(rs.symbol_bits);
  int per = (rs.symbol_bits + 7) / 8;
  Bytes raw = rng.generate(static_cast<std::size_t>(rs.m * per));
  std::uint16_t mask = static_cast<std::uint16_t>((1u << rs.symbol_bits) - 1);
  c.password.reserve(static_cast<std::size_t>(rs.m));
  for (int i = 0; i < rs.m; ++i) {
    std::uint16_t s = raw[static_cast<std::size_t>(i * per)];
    if (per == 2) s = static_cast<std::uint16_t>((s << 8) | raw[static_cast<std::size_t>(i * per + 1)]);
    c.password.push_back(s & mask);
  }
  Symbols lambda = rs_encode(gf, rs, c.password);
  Symbols e = evidence_symbols(ev, enc, rs.symbol_bits);
  if (e.size() != lambda.size()) fail(Err::BadParams, "code length does not match evidence");
  c.delta.resize(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) c.delta[i] = lambda[i] ^ e[i];
  return c;
}

std::optional<Symbols> fc_decommit(const Evidence& ev, const EncodingParams& enc,
                                   const RsParams& rs, const Symbols& delta) {
  Symbols e = evidence_symbols(ev, enc, rs.symbol_bits);
  if (e.size() != delta.size()) return std::nullopt;
  Symbols lambda(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) lambda[i] = delta[i] ^ e[i];
  GaloisField gf(rs.symbol_bits);
  return rs_decode(gf, rs, lambda);
}

Bytes fc_password_key(const Symbols& password) {
  return kdf("fc-key", symbols_to_bytes(password));
}

FcDevice::FcDevice(std::string name, Evidence ev, FcConfig cfg)
    : name_(std::move(name)), ev_(std::move(ev)), cfg_(std::move(cfg)) {}

void FcDevice::on_start(Env& env) {
  if (!self_check(ev_, cfg_.policy).ok) {
    outcome_ = Outcome::AbortSelfCheck;
    return;
  }
  env.set_timer(cfg_.watchdog_ms, kWatchdog);
  env.set_timer(cfg_.t_end_device_ms - env.now(), kOpEnd);
}

void FcDevice::on_timer(Env& env, int tag) {
  if (tag == kWatchdog) {
    outcome_ = Outcome::AbortTimeout;
    return;
  }
  if (tag == kOpEnd && step_ == 0) start_exchange(env);
}

void FcDevice::start_exchange(Env& env) {
  commit_ = fc_commit(ev_, cfg_.enc, cfg_.rs_for(ev_), env.drbg());
  w_ = fc_password_key(commit_.password);
  dh_ = dh_keygen(*cfg_.group, env.drbg());
  env.send("helper", "fc.delta", delta_payload(ev_, commit_));
  env.send("helper", "fc.eke1", aead_seal(w_, dh_.pub, str_bytes("fc.eke1"), env.drbg()));
  step_ = 1;
}

void FcDevice::on_message(Env& env, const Message& m) {
  if (m.kind == "fc.eke2" && step_ == 1) {
    std::size_t plen = mod_len(*cfg_.group);
    auto pt = aead_open(w_, m.payload, str_bytes("fc.eke2"));
    Bytes peer_c1;
    if (pt && pt->size() == plen + kChal) {
      Bytes peer_pub(pt->begin(), pt->begin() + static_cast<std::ptrdiff_t>(plen));
      peer_c1.assign(pt->begin() + static_cast<std::ptrdiff_t>(plen), pt->end());
      key_ = kdf("fc-session", dh_shared(*cfg_.group, dh_.priv, peer_pub));
    } else {
      // Keep the message pattern identical whether or not the exchange is
      // already known to be dead, so a failed open is not observable early.
      exchange_broken_ = true;
      key_ = env.drbg().generate(32);
      peer_c1 = env.drbg().generate(kChal);
    }
    c2_ = env.drbg().generate(kChal);
    env.send("helper", "fc.conf1", aead_seal(key_, cat(peer_c1, c2_), str_bytes("fc.conf1"), env.drbg()));
    step_ = 2;
    return;
  }
  if (m.kind == "fc.conf2" && step_ == 2) {
    auto pt = aead_open(key_, m.payload, str_bytes("fc.conf2"));
    if (!exchange_broken_ && pt && *pt == c2_)
      outcome_ = Outcome::Paired;
    else
      outcome_ = Outcome::AbortPake;
  }
}

FcHelper::FcHelper(std::string name, Evidence ev, FcConfig cfg)
    : name_(std::move(name)), ev_(std::move(ev)), cfg_(std::move(cfg)) {}

void FcHelper::on_start(Env& env) {
  if (!self_check(ev_, cfg_.policy).ok) {
    outcome_ = Outcome::AbortSelfCheck;
    return;
  }
  env.set_timer(cfg_.watchdog_ms, kWatchdog);
  env.set_timer(cfg_.t_end_helper_ms - env.now(), kOpEnd);
}

void FcHelper::on_timer(Env& env, int tag) {
  if (tag == kWatchdog) {
    outcome_ = Outcome::AbortTimeout;
    return;
  }
  if (tag == kOpEnd) {
    ready_ = true;
    try_respond(env);
  }
}

void FcHelper::on_message(Env& env, const Message& m) {
  if (m.kind == "fc.delta" && step_ == 0 && !delta_msg_) {
    delta_msg_ = m;
    try_respond(env);
    return;
  }
  if (m.kind == "fc.eke1" && step_ == 0 && !eke1_msg_) {
    eke1_msg_ = m;
    try_respond(env);
    return;
  }
  if (m.kind == "fc.conf1" && step_ == 1) {
    auto pt = aead_open(key_, m.payload, str_bytes("fc.conf1"));
    bool good = !exchange_broken_ && pt && pt->size() == 2 * kChal &&
                Bytes(pt->begin(), pt->begin() + kChal) == c1_;
    if (good) {
      Bytes c2(pt->begin() + kChal, pt->end());
      env.send("device", "fc.conf2", aead_seal(key_, c2, str_bytes("fc.conf2"), env.drbg()));
      outcome_ = Outcome::Paired;
    } else {
      env.send("device", "fc.conf2", env.drbg().generate(12 + kChal + 16));
      outcome_ = Outcome::AbortPake;
    }
  }
}

void FcHelper::try_respond(Env& env) {
  if (!ready_ || !delta_msg_ || !eke1_msg_ || step_ != 0) return;
  auto parsed = parse_delta(delta_msg_->payload);
  if (!parsed || parsed->ui != ev_.ui || !same_rs(parsed->rs, cfg_.rs_for(ev_))) {
    outcome_ = Outcome::AbortMalformed;
    return;
  }
  auto password = fc_decommit(ev_, cfg_.enc, parsed->rs, parsed->delta);
  if (password) {
    w_ = fc_password_key(*password);
  } else {
    exchange_broken_ = true;
    w_ = env.drbg().generate(32);
  }

  std::size_t plen = mod_len(*cfg_.group);
  auto pt = aead_open(w_, eke1_msg_->payload, str_bytes("fc.eke1"));
  Bytes peer_pub;
  if (pt && pt->size() == plen) {
    peer_pub = *pt;
  } else {
    exchange_broken_ = true;
    peer_pub = env.drbg().generate(plen);
  }
  DhKeyPair kp = dh_keygen(*cfg_.group, env.drbg());
  c1_ = env.drbg().generate(kChal);
  env.send("device", "fc.eke2", aead_seal(w_, cat(kp.pub, c1_), str_bytes("fc.eke2"), env.drbg()));
  key_ = kdf("fc-session", dh_shared(*cfg_.group, kp.priv, peer_pub));
  if (exchange_broken_) key_ = env.drbg().generate(32);
  step_ = 1;
}

PairRun run_t2pair(const Evidence& device_ev, const Evidence& helper_ev, const FcConfig& cfg,
                   const NetConfig& net, std::uint64_t seed) {
  FcDevice dev("device", device_ev, cfg);
  FcHelper hel("helper", helper_ev, cfg);
  return pair_run_view(run_session({&dev, &hel}, net, seed));
}

}  // namespace pairlab
