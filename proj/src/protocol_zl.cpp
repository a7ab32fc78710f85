#include "pairlab/protocol_zl.hpp"

#include <utility>

namespace pairlab {

namespace {

constexpr int kWatchdog = 0;
constexpr int kOpEnd = 1;
constexpr int kRelease = 2;

std::size_t mod_len(const DhGroup& g) { return from_hex(g.p_hex).size(); }

}  // namespace

int ZlConfig::symbol_bits_for(const Evidence& ev) const {
  if (symbol_bits_override > 0) return symbol_bits_override;
  std::size_t bits = ev.intervals_ms.size() * static_cast<std::size_t>(enc.length);
  return rs_for_encoding(bits, thr_symbols).symbol_bits;
}

Bytes zl_commit(const Bytes& w32, const Bytes& chan_key, const Evidence& ev, HmacDrbg& rng) {
  return aead_seal(w32, cat(chan_key, evidence_to_bytes(ev)), str_bytes("zl.commit"), rng);
}

std::optional<ZlOpened> zl_open(const Bytes& commitment, const Bytes& w32) {
  auto pt = aead_open(w32, commitment, str_bytes("zl.commit"));
  if (!pt || pt->size() < 32) return std::nullopt;
  ZlOpened out;
  out.chan_key.assign(pt->begin(), pt->begin() + 32);
  auto ev = evidence_from_bytes(Bytes(pt->begin() + 32, pt->end()));
  if (!ev) return std::nullopt;
  out.ev = std::move(*ev);
  return out;
}

bool zl_correlated(const Evidence& a, const Evidence& b, const EncodingParams& enc,
                   int thr_symbols, int symbol_bits) {
  if (a.intervals_ms.size() != b.intervals_ms.size()) return false;
  return symbol_distance(evidence_symbols(a, enc, symbol_bits),
                         evidence_symbols(b, enc, symbol_bits)) <= thr_symbols;
}

ZlParty::ZlParty(std::string name, Evidence ev, ZlConfig cfg, bool is_device)
    : name_(std::move(name)), ev_(std::move(ev)), cfg_(std::move(cfg)), is_device_(is_device) {}

double ZlParty::t_end() const { return is_device_ ? cfg_.t_end_device_ms : cfg_.t_end_helper_ms; }

void ZlParty::on_start(Env& env) {
  if (!self_check(ev_, cfg_.policy).ok) {
    outcome_ = Outcome::AbortSelfCheck;
    return;
  }
  env.set_timer(cfg_.watchdog_ms, kWatchdog);
  env.set_timer(t_end() - env.now(), kOpEnd);
  if (is_device_) {
    dh_ = dh_keygen(*cfg_.group, env.drbg());
    env.send(peer(), "zl.dh1", dh_.pub);
  }
}

void ZlParty::on_timer(Env& env, int tag) {
  switch (tag) {
    case kWatchdog:
      outcome_ = Outcome::AbortTimeout;
      return;
    case kOpEnd:
      op_end_ = true;
      maybe_commit(env);
      return;
    case kRelease:
      release_due_ = true;
      if (peer_commit_seen_ && !key_sent_) {
        env.send(peer(), "zl.key", aead_seal(chan_key_, w_, str_bytes("zl.key"), env.drbg()));
        key_sent_ = true;
        finish(env);
      }
      return;
    default: return;
  }
}

void ZlParty::maybe_commit(Env& env) {
  if (!op_end_ || !dh_done_ || commit_sent_) return;
  w_ = env.drbg().generate(32);
  my_commit_ = zl_commit(w_, chan_key_, ev_, env.drbg());
  env.send(peer(), "zl.commit", my_commit_);
  commit_sent_ = true;
  env.set_timer(std::max(0.0, t_end() + cfg_.t_thr_ms - env.now()), kRelease);
}

void ZlParty::on_message(Env& env, const Message& m) {
  if (m.kind == "zl.dh1" && !is_device_ && !dh_done_) {
    if (m.payload.size() != mod_len(*cfg_.group)) {
      outcome_ = Outcome::AbortMalformed;
      return;
    }
    dh_ = dh_keygen(*cfg_.group, env.drbg());
    env.send(peer(), "zl.dh2", dh_.pub);
    chan_key_ = kdf("zl-chan", dh_shared(*cfg_.group, dh_.priv, m.payload));
    dh_done_ = true;
    maybe_commit(env);
    return;
  }
  if (m.kind == "zl.dh2" && is_device_ && !dh_done_) {
    if (m.payload.size() != mod_len(*cfg_.group)) {
      outcome_ = Outcome::AbortMalformed;
      return;
    }
    chan_key_ = kdf("zl-chan", dh_shared(*cfg_.group, dh_.priv, m.payload));
    dh_done_ = true;
    maybe_commit(env);
    return;
  }
  if (m.kind == "zl.commit") {
    // A bounced copy of our own commitment is a reflection no matter when it
    // shows up, even after the peer's real one.
    if (!my_commit_.empty() && m.payload == my_commit_) {
      outcome_ = Outcome::AbortReflection;
      return;
    }
    if (peer_commit_seen_) return;
    if (!zl_deadline_ok(env.now(), t_end(), cfg_.t_thr_ms)) {
      outcome_ = Outcome::AbortDeadline;
      return;
    }
    peer_commit_ = m.payload;
    peer_commit_seen_ = true;
    if (release_due_ && !key_sent_) {
      env.send(peer(), "zl.key", aead_seal(chan_key_, w_, str_bytes("zl.key"), env.drbg()));
      key_sent_ = true;
    }
    if (stashed_key_seen_) handle_key(env, stashed_key_);
    if (outcome_ == Outcome::Running) finish(env);
    return;
  }
  if (m.kind == "zl.key") {
    if (!peer_commit_seen_) {
      if (!stashed_key_seen_) {
        stashed_key_ = m.payload;
        stashed_key_seen_ = true;
      }
      return;
    }
    if (!verified_) {
      handle_key(env, m.payload);
      if (outcome_ == Outcome::Running) finish(env);
    }
    return;
  }
}

void ZlParty::handle_key(Env& env, const Bytes& payload) {
  (void)env;
  auto w = aead_open(chan_key_, payload, str_bytes("zl.key"));
  if (!w || w->size() != 32) {
    outcome_ = Outcome::AbortKeyMismatch;
    return;
  }
  auto opened = zl_open(peer_commit_, *w);
  if (!opened) {
    outcome_ = Outcome::AbortKeyMismatch;
    return;
  }
  if (opened->chan_key != chan_key_) {
    outcome_ = Outcome::AbortKeyMismatch;
    return;
  }
  if (opened->ev.ui != ev_.ui || opened->ev.intervals_ms.size() != ev_.intervals_ms.size()) {
    outcome_ = Outcome::AbortMalformed;
    return;
  }
  if (!classify(cfg_.correlation, features(ev_, opened->ev))) {
    outcome_ = Outcome::AbortNoCorrelation;
    return;
  }
  peer_w_ = *w;
  verified_ = true;
}

void ZlParty::finish(Env& env) {
  (void)env;
  if (!verified_ || !key_sent_) return;
  const Bytes& wd = is_device_ ? w_ : peer_w_;
  const Bytes& wh = is_device_ ? peer_w_ : w_;
  session_key_ = kdf("zl-session", cat(chan_key_, cat(wd, wh)));
  outcome_ = Outcome::Paired;
}

PairRun run_t2pairpp(const Evidence& device_ev, const Evidence& helper_ev, const ZlConfig& cfg,
                     const NetConfig& net, std::uint64_t seed) {
  ZlParty dev("device", device_ev, cfg, true);
  ZlParty hel("helper", helper_ev, cfg, false);
  return pair_run_view(run_session({&dev, &hel}, net, seed));
}

}  // namespace pairlab
