#include "pairlab/simnet.hpp"

#include <algorithm>
#include <queue>

#include "pairlab/errors.hpp"
#include "pairlab/rng.hpp"

namespace pairlab {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Running: return "Running";
    case Outcome::Paired: return "Paired";
    case Outcome::AbortSelfCheck: return "AbortSelfCheck";
    case Outcome::AbortPake: return "AbortPake";
    case Outcome::AbortDeadline: return "AbortDeadline";
    case Outcome::AbortReflection: return "AbortReflection";
    case Outcome::AbortKeyMismatch: return "AbortKeyMismatch";
    case Outcome::AbortNoCorrelation: return "AbortNoCorrelation";
    case Outcome::AbortTimeout: return "AbortTimeout";
    case Outcome::AbortMalformed: return "AbortMalformed";
    case Outcome::Deadlock: return "Deadlock";
  }
  return "?";
}

Outcome SessionResult::of(std::string_view party) const {
  for (const auto& [n, o] : outcomes)
    if (n == party) return o;
  fail(Err::BadParams, "no such party in result");
}

Bytes SessionResult::key_of(std::string_view party) const {
  for (const auto& [n, k] : keys)
    if (n == party) return k;
  return {};
}

bool SessionResult::all(Outcome o) const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [&](const auto& p) { return p.second == o; });
}

namespace {

struct Event {
  double t = 0;
  std::uint64_t seq = 0;
  enum Kind { Start, Deliver, Timer } kind = Start;
  std::size_t party = 0;
  Message msg;
  int tag = 0;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.seq > b.seq;
  }
};

class Net {
 public:
  Net(const std::vector<Party*>& parties, const NetConfig& cfg, std::uint64_t seed)
      : parties_(parties), cfg_(cfg), rng_(derive_seed(seed, "channel")) {
    rules_ = cfg.rules;
    for (std::size_t i = 0; i < parties_.size(); ++i) {
      ctxs_.emplace_back(this, i,
                         HmacDrbg::from_seed64(derive_seed(seed, "party", i), parties_[i]->name()));
      if (parties_[i]->name() == cfg_.mitm) mitm_ = static_cast<int>(i);
    }
  }

  SessionResult run() {
    for (std::size_t i = 0; i < parties_.size(); ++i)
      push({0, seq_++, Event::Start, i, {}, 0});

    while (!queue_.empty()) {
      Event ev = queue_.top();
      queue_.pop();
      if (ev.t > cfg_.horizon_ms) break;
      now_ = ev.t;
      Party* p = parties_[ev.party];
      if (p->outcome() != Outcome::Running) continue;
      switch (ev.kind) {
        case Event::Start: p->on_start(ctxs_[ev.party]); break;
        case Event::Deliver: p->on_message(ctxs_[ev.party], ev.msg); break;
        case Event::Timer: p->on_timer(ctxs_[ev.party], ev.tag); break;
      }
      if (all_terminal()) break;
    }

    SessionResult res;
    res.end_ms = now_;
    res.transcript = std::move(transcript_);
    for (Party* p : parties_) {
      Outcome o = p->outcome();
      if (o == Outcome::Running) o = Outcome::Deadlock;
      res.outcomes.emplace_back(p->name(), o);
      res.keys.emplace_back(p->name(), p->session_key());
    }
    return res;
  }

  double now() const { return now_; }

  void send_from(std::size_t sender, std::string_view to, std::string_view kind, Bytes payload) {
    Message m;
    m.kind = std::string(kind);
    m.payload = std::move(payload);
    m.from = parties_[sender]->name();
    m.to = std::string(to);

    std::string note;
    int dest = resolve(m.to);
    if (mitm_ >= 0 && static_cast<int>(sender) != mitm_) {
      dest = mitm_;
      note = "mitm";
    }

    TamperAction act = TamperAction::Delay;  // placeholder; applied == false means clean
    bool applied = false;
    double extra = 0;
    for (TamperRule& r : rules_) {
      bool match = (r.kind.empty() || r.kind == m.kind) && (r.from.empty() || r.from == m.from);
      if (!match) continue;
      int hit = r.hits++;
      if (!applied && (r.index < 0 || r.index == hit)) {
        applied = true;
        act = r.action;
        extra = r.delay_ms;
      }
    }

    double sent = now_;
    if (applied && act == TamperAction::Drop) {
      log(sent, -1, m, "drop");
      return;
    }
    if (applied && act == TamperAction::Modify) {
      if (m.payload.empty())
        m.payload.push_back(0x01);
      else
        m.payload[0] ^= 0xFF;
      note = note.empty() ? "modify" : note + "+modify";
    }
    if (applied && act == TamperAction::Reflect) {
      dest = static_cast<int>(sender);
      note = note.empty() ? "reflect" : note + "+reflect";
    }
    double latency = cfg_.latency_lo_ms + (cfg_.latency_hi_ms - cfg_.latency_lo_ms) * rng_.unit();
    if (applied && act == TamperAction::Delay) {
      latency += extra;
      note = note.empty() ? "delay" : note + "+delay";
    }
    deliver(sent, sent + latency, m, dest, note);
    if (applied && act == TamperAction::Replay) {
      double lat2 = cfg_.latency_lo_ms + (cfg_.latency_hi_ms - cfg_.latency_lo_ms) * rng_.unit();
      deliver(sent, sent + lat2 + extra, m, dest, note.empty() ? "replay" : note + "+replay");
    }
  }

  void set_timer(std::size_t party, double delay_ms, int tag) {
    Event ev;
    ev.t = now_ + delay_ms;
    ev.seq = seq_++;
    ev.kind = Event::Timer;
    ev.party = party;
    ev.tag = tag;
    push(ev);
  }

 private:
  struct Ctx : Env {
    Ctx(Net* n, std::size_t i, HmacDrbg d) : net(n), idx(i), drbg_(std::move(d)) {}
    double now() const override { return net->now_; }
    void send(std::string_view to, std::string_view kind, Bytes payload) override {
      net->send_from(idx, to, kind, std::move(payload));
    }
    void set_timer(double delay_ms, int tag) override { net->set_timer(idx, delay_ms, tag); }
    HmacDrbg& drbg() override { return drbg_; }
    Net* net;
    std::size_t idx;
    HmacDrbg drbg_;
  };

  int resolve(const std::string& name) const {
    for (std::size_t i = 0; i < parties_.size(); ++i)
      if (parties_[i]->name() == name) return static_cast<int>(i);
    fail(Err::BadParams, "message addressed to unknown party: " + name);
  }

  void deliver(double sent, double at, const Message& m, int dest, const std::string& note) {
    Event ev;
    ev.t = at;
    ev.seq = seq_++;
    ev.kind = Event::Deliver;
    ev.party = static_cast<std::size_t>(dest);
    ev.msg = m;
    push(ev);
    log(sent, at, m, note);
  }

  void log(double sent, double at, const Message& m, const std::string& note) {
    transcript_.push_back({sent, at, m.from, m.to, m.kind, m.payload, note});
  }

  bool all_terminal() const {
    return std::all_of(parties_.begin(), parties_.end(),
                       [](Party* p) { return p->outcome() != Outcome::Running; });
  }

  void push(Event ev) { queue_.push(std::move(ev)); }

  std::vector<Party*> parties_;
  NetConfig cfg_;
  std::vector<TamperRule> rules_;
  Rng rng_;
  std::vector<Ctx> ctxs_;
  int mitm_ = -1;
  double now_ = 0;
  std::uint64_t seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventLater> queue_;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace

SessionResult run_session(const std::vector<Party*>& parties, const NetConfig& cfg,
                          std::uint64_t seed) {
  if (parties.empty()) fail(Err::BadParams, "no parties");
  return Net(parties, cfg, seed).run();
}

PairRun pair_run_view(SessionResult res) {
  PairRun pr;
  pr.device = res.of("device");
  pr.helper = res.of("helper");
  pr.key_device = res.key_of("device");
  pr.key_helper = res.key_of("helper");
  pr.paired = pr.device == Outcome::Paired && pr.helper == Outcome::Paired &&
              !pr.key_device.empty() && pr.key_device == pr.key_helper;
  pr.session = std::move(res);
  return pr;
}

}  // namespace pairlab
