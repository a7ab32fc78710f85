#include <doctest.h>

#include "pairlab/evidence.hpp"

using namespace pairlab;

TEST_SUITE("evidence") {

TEST_CASE("ui names round-trip") {
  for (UiType ui : {UiType::Button, UiType::Knob, UiType::Screen})
    CHECK(ui_from_name(ui_name(ui)) == ui);
  CHECK_THROWS_AS(ui_from_name("dial"), Error);
}

TEST_CASE("policy shapes per control") {
  EvidencePolicy b = EvidencePolicy::for_ui(UiType::Button);
  CHECK(b.required_length == 6);
  CHECK(b.min_pauses == 1);
  CHECK(b.pause_threshold_ms == 650);

  CHECK(EvidencePolicy::for_ui(UiType::Knob).required_length == 7);
  CHECK(EvidencePolicy::for_ui(UiType::Screen).required_length == 6);

  EvidencePolicy np = EvidencePolicy::for_ui(UiType::Button, false);
  CHECK(np.required_length == 8);
  CHECK(np.min_pauses == 0);
}

TEST_CASE("salient times become rounded intervals") {
  std::vector<double> t{100.0, 350.4, 600.9, 1500.0};
  Evidence ev = make_evidence(t, UiType::Button);
  CHECK(ev.intervals_ms == std::vector<int>{250, 251, 899});

  CHECK_THROWS_AS(to_intervals({42.0}), Error);
  CHECK_THROWS_AS(to_intervals({100.0, 100.0}), Error);
  CHECK_THROWS_AS(to_intervals({100.0, 90.0}), Error);
}

TEST_CASE("self check enforces shape and pauses") {
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Button);
  Evidence ok{{200, 300, 400, 900, 250, 350}, UiType::Button};
  SelfCheckResult r = self_check(ok, p);
  CHECK(r.ok);
  CHECK(r.pause_count == 1);

  Evidence short_ev{{200, 300, 400}, UiType::Button};
  CHECK(!self_check(short_ev, p).ok);

  Evidence no_pause{{200, 300, 400, 500, 250, 350}, UiType::Button};
  SelfCheckResult r2 = self_check(no_pause, p);
  CHECK(!r2.ok);
  CHECK(r2.pause_count == 0);

  EvidencePolicy np = EvidencePolicy::for_ui(UiType::Button, false);
  Evidence eight{{200, 300, 400, 500, 250, 350, 180, 220}, UiType::Button};
  CHECK(self_check(eight, np).ok);
}

TEST_CASE("pause counting uses the threshold inclusively") {
  Evidence ev{{649, 650, 651, 100}, UiType::Button};
  CHECK(count_pauses(ev, 650) == 2);
}

TEST_CASE("encoding distance is symmetric and zero on equal input") {
  EncodingParams p{10, 310};
  Evidence a{{200, 300, 400, 900, 250, 350}, UiType::Button};
  Evidence b{{210, 290, 400, 930, 240, 350}, UiType::Button};
  CHECK(encoding_distance(a, a, p) == 0);
  CHECK(encoding_distance(a, b, p) == encoding_distance(b, a, p));
  CHECK(encoding_distance(a, b, p) == 1 + 1 + 0 + 3 + 1 + 0);
  CHECK(hamming_distance_ok(a, b, p, 6));
  CHECK(!hamming_distance_ok(a, b, p, 5));

  Evidence c{{200, 300}, UiType::Button};
  CHECK_THROWS_AS(encoding_distance(a, c, p), Error);
}

TEST_CASE("packed symbols agree with the flat encoding") {
  EncodingParams p{10, 310};
  Evidence ev{{200, 300, 400, 900, 250, 350}, UiType::Button};
  Symbols s = evidence_symbols(ev, p, 8);
  CHECK(s.size() == (6u * 310u + 7u) / 8u);
  CHECK(unpack_bits(s, 8, 6u * 310u) == encode_faithful(ev.intervals_ms, p));
}

TEST_CASE("wire form round-trips and rejects damage") {
  Evidence ev{{200, 300, 400, 900, 250, 350}, UiType::Knob};
  Bytes raw = evidence_to_bytes(ev);
  CHECK(raw.size() == 3 + 4 * 6);
  auto back = evidence_from_bytes(raw);
  REQUIRE(back.has_value());
  CHECK(back->ui == UiType::Knob);
  CHECK(back->intervals_ms == ev.intervals_ms);

  Bytes bad_ui = raw;
  bad_ui[0] = 9;
  CHECK(!evidence_from_bytes(bad_ui).has_value());
  Bytes truncated(raw.begin(), raw.end() - 1);
  CHECK(!evidence_from_bytes(truncated).has_value());
  Bytes padded = raw;
  padded.push_back(0);
  CHECK(!evidence_from_bytes(padded).has_value());
  CHECK(!evidence_from_bytes(Bytes{}).has_value());
}

}  // TEST_SUITE
