#include <doctest.h>

#include <random>

#include "bgprel/mrt.hpp"
#include "mrt_fixtures.hpp"

using namespace bgprel;

namespace {

std::vector<BgpRecord> decode_all(const std::vector<uint8_t>& data,
                                  const std::string& collector = "") {
  mrt::Decoder dec(data, collector);
  std::vector<BgpRecord> out;
  while (auto rec = dec.next()) out.push_back(*rec);
  return out;
}

std::vector<uint32_t> flat(const std::vector<PathSegment>& segs) {
  std::vector<uint32_t> out;
  for (const auto& s : segs) out.insert(out.end(), s.asns.begin(), s.asns.end());
  return out;
}

}  // namespace

TEST_CASE("rib dump yields one record per peer sub-entry") {
  auto recs = decode_all(fixtures::kRibFixture);
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) {
    CHECK(r.prefix.to_string() == "198.51.100.0/24");
    CHECK(r.ip_version == 4);
    CHECK(r.record_kind == RecordKind::Rib);
    CHECK(r.timestamp == 1280620800);
    CHECK(flat(r.raw_as_path) == std::vector<uint32_t>{65010, 3356, 15169});
    CHECK(r.communities == std::vector<uint32_t>{make_community(3356, 100)});
  }
  CHECK(recs[0].peer_asn == 65010);
  CHECK(recs[0].monitor_id == "192.0.2.1");
  CHECK(recs[1].peer_asn == 64496);  // 2-byte AS peer entry
  CHECK(recs[1].monitor_id == "192.0.2.2");
  CHECK(recs[2].peer_asn == 65020);
  CHECK(recs[2].monitor_id == "2001:db8::1");
}

TEST_CASE("collector name qualifies the monitor id") {
  auto recs = decode_all(fixtures::kRibFixture, "rrc00");
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].monitor_id == "rrc00:192.0.2.1");
}

TEST_CASE("ipv6 rib entries") {
  auto recs = decode_all(fixtures::kRib6Fixture);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].prefix.to_string() == "2001:db8:42::/48");
  CHECK(recs[0].ip_version == 6);
  CHECK(recs[0].peer_asn == 65020);
  CHECK(flat(recs[0].raw_as_path) == std::vector<uint32_t>{65020, 6939});
}

TEST_CASE("bgp4mp_et as4 update fans out per announced prefix") {
  mrt::Decoder dec(fixtures::kUpdateAs4Fixture);
  std::vector<BgpRecord> recs;
  while (auto r = dec.next()) recs.push_back(*r);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].prefix.to_string() == "198.51.100.0/24");
  CHECK(recs[1].prefix.to_string() == "192.0.2.0/25");
  for (const auto& r : recs) {
    CHECK(r.record_kind == RecordKind::Update);
    CHECK(r.timestamp == 1280621234);
    CHECK(r.peer_asn == 65010);
    CHECK(r.monitor_id == "192.0.2.9");
    REQUIRE(r.raw_as_path.size() == 2);
    CHECK(r.raw_as_path[0].type == SegmentType::Sequence);
    CHECK(r.raw_as_path[0].asns == std::vector<uint32_t>{65010, 1299});
    CHECK(r.raw_as_path[1].type == SegmentType::Set);
    CHECK(r.raw_as_path[1].asns == std::vector<uint32_t>{20912, 21101});
    CHECK(r.communities ==
          std::vector<uint32_t>{make_community(1299, 612), kNoExport});
    CHECK(r.has_no_export());
  }
  CHECK(dec.stats().withdrawals == 1);
}

TEST_CASE("bgp4mp message with 2-byte as path") {
  auto recs = decode_all(fixtures::kUpdateAs2Fixture);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].prefix.to_string() == "198.18.0.0/15");
  CHECK(recs[0].peer_asn == 64496);
  CHECK(flat(recs[0].raw_as_path) == std::vector<uint32_t>{64496, 3356});
}

TEST_CASE("unsupported and malformed frames are counted, stream continues") {
  mrt::Decoder dec(fixtures::kMixedFixture);
  std::vector<BgpRecord> recs;
  while (auto r = dec.next()) recs.push_back(*r);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].prefix.to_string() == "203.0.113.0/24");
  CHECK(recs[0].peer_asn == 64496);
  CHECK(dec.stats().mrt_records == 4);
  CHECK(dec.stats().skipped_type == 1);
  CHECK(dec.stats().skipped_malformed == 1);
}

TEST_CASE("non-update bgp messages are skipped") {
  mrt::Decoder dec(fixtures::kKeepaliveFixture);
  CHECK(!dec.next().has_value());
  CHECK(dec.stats().skipped_type == 1);
}

TEST_CASE("empty input ends cleanly") {
  mrt::Decoder dec(std::span<const uint8_t>{});
  CHECK(!dec.next().has_value());
  CHECK(dec.stats().mrt_records == 0);
}

TEST_CASE("bad framing raises a typed error with an offset") {
  std::vector<uint8_t> data(fixtures::kRibFixture.begin(),
                            fixtures::kRibFixture.begin() + 7);
  mrt::Decoder dec(data);
  CHECK_THROWS_AS(dec.next(), DecodeError);
}

TEST_CASE("every truncation point decodes without crash or hang") {
  std::vector<uint8_t> all;
  for (const auto* f : {&fixtures::kRibFixture, &fixtures::kUpdateAs4Fixture,
                        &fixtures::kMixedFixture})
    all.insert(all.end(), f->begin(), f->end());
  for (size_t cut = 0; cut <= all.size(); cut++) {
    std::vector<uint8_t> data(all.begin(), all.begin() + cut);
    mrt::Decoder dec(data);
    size_t steps = 0;
    try {
      while (dec.next()) {
        REQUIRE(++steps < 10000);  // step budget
      }
    } catch (const DecodeError&) {
    }
  }
}

TEST_CASE("random corruption decodes without crash or hang") {
  std::mt19937 rng(1);
  for (int iter = 0; iter < 500; iter++) {
    std::vector<uint8_t> data = fixtures::kUpdateAs4Fixture;
    for (int j = 0; j < 4; j++)
      data[rng() % data.size()] = static_cast<uint8_t>(rng());
    mrt::Decoder dec(data);
    size_t steps = 0;
    try {
      while (dec.next()) {
        REQUIRE(++steps < 10000);
      }
    } catch (const DecodeError&) {
    }
  }
}
