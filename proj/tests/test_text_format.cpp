#include <doctest.h>

#include <random>

#include "bgprel/text_format.hpp"

using namespace bgprel;

namespace {

const std::vector<std::string> kTableEntry = {
    "TYPE: TABLE_DUMP_V2/IPV4_UNICAST",
    "PREFIX: 1.22.73.0/24",
    "FROM: 206.223.115.10 AS4589",
    "ORIGIN: IGP",
    "ASPATH: 4589 15412 18101 45528",
    "NEXT_HOP: 206.223.115.10",
    "COMMUNITY: 4589:2 4589:410 4589:612 4589:14413 15412:604 15412:614"
    " 15412:621 15412:705 15412:1431 18101:1344 18101:50120 18101:50420",
};

}  // namespace

TEST_CASE("table dump entry parses field by field") {
  auto result = parse_text_record(kTableEntry);
  REQUIRE(std::holds_alternative<BgpRecord>(result));
  const BgpRecord& rec = std::get<BgpRecord>(result);
  CHECK(rec.prefix.to_string() == "1.22.73.0/24");
  CHECK(rec.ip_version == 4);
  CHECK(rec.monitor_id == "206.223.115.10");
  CHECK(rec.peer_asn == 4589);
  CHECK(rec.record_kind == RecordKind::Rib);
  REQUIRE(rec.raw_as_path.size() == 1);
  CHECK(rec.raw_as_path[0].asns ==
        std::vector<uint32_t>{4589, 15412, 18101, 45528});
  REQUIRE(rec.communities.size() == 12);
  CHECK(rec.communities[2] == make_community(4589, 612));
  CHECK(rec.communities[7] == make_community(15412, 705));
  CHECK(!rec.locprf.has_value());
}

TEST_CASE("as_set braces and well-known communities") {
  auto result = parse_text_record({
      "PREFIX: 10.0.0.0/8",
      "FROM: m1 AS100",
      "ASPATH: 100 200 {300,400}",
      "COMMUNITY: 100:1 no-export no-advertise",
  });
  REQUIRE(std::holds_alternative<BgpRecord>(result));
  const BgpRecord& rec = std::get<BgpRecord>(result);
  REQUIRE(rec.raw_as_path.size() == 2);
  CHECK(rec.raw_as_path[1].type == SegmentType::Set);
  CHECK(rec.raw_as_path[1].asns == std::vector<uint32_t>{300, 400});
  CHECK(rec.communities ==
        std::vector<uint32_t>{make_community(100, 1), kNoExport, kNoAdvertise});
  CHECK(rec.has_no_export());
}

TEST_CASE("locprf marks a record as route-server sourced") {
  auto result = parse_text_record({
      "PREFIX: 10.0.0.0/8",
      "FROM: rs1 AS100",
      "ASPATH: 100 200",
      "LOCPRF: 250",
  });
  const BgpRecord& rec = std::get<BgpRecord>(result);
  CHECK(rec.record_kind == RecordKind::RouteServer);
  CHECK(rec.locprf == 250);
}

TEST_CASE("update type and time keys") {
  auto result = parse_text_record({
      "TYPE: BGP4MP/MESSAGE/UPDATE",
      "TIME: 1280621234",
      "PREFIX: 2001:db8::/32",
      "FROM: m1 AS100",
      "ASPATH: 100 200",
  });
  const BgpRecord& rec = std::get<BgpRecord>(result);
  CHECK(rec.record_kind == RecordKind::Update);
  CHECK(rec.timestamp == 1280621234);
  CHECK(rec.ip_version == 6);
  CHECK(rec.day() == 1280621234 / 86400);
}

TEST_CASE("errors carry the block's first line") {
  auto no_prefix = parse_text_record({"FROM: m1 AS1", "ASPATH: 1 2"}, 41);
  REQUIRE(std::holds_alternative<TextParseError>(no_prefix));
  CHECK(std::get<TextParseError>(no_prefix).line == 41);

  auto no_path = parse_text_record({"PREFIX: 10.0.0.0/8"}, 7);
  CHECK(std::holds_alternative<TextParseError>(no_path));

  auto bad_prefix =
      parse_text_record({"PREFIX: 10.0.0.0/99", "ASPATH: 1 2"});
  CHECK(std::holds_alternative<TextParseError>(bad_prefix));

  auto bad_community = parse_text_record(
      {"PREFIX: 10.0.0.0/8", "ASPATH: 1 2", "COMMUNITY: 1:2:3"});
  CHECK(std::holds_alternative<TextParseError>(bad_community));
}

TEST_CASE("write/parse round trip is lossless") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 200; iter++) {
    BgpRecord rec;
    rec.timestamp = rng() % 2000000000;
    rec.monitor_id = "mon" + std::to_string(rng() % 50);
    rec.peer_asn = rng() % 65000 + 1;
    rec.prefix.version = 4;
    rec.prefix.length = static_cast<uint8_t>(rng() % 25 + 8);
    rec.prefix.bytes[0] = 10;
    rec.prefix.bytes[1] = static_cast<uint8_t>(rng());
    rec.record_kind = (rng() % 2) ? RecordKind::Update : RecordKind::Rib;
    PathSegment seq;
    for (int i = 0, n = static_cast<int>(rng() % 5 + 1); i < n; i++)
      seq.asns.push_back(rng() % 65000 + 1);
    rec.raw_as_path.push_back(seq);
    if (rng() % 3 == 0) {
      PathSegment set;
      set.type = SegmentType::Set;
      set.asns = {static_cast<uint32_t>(rng() % 65000 + 1),
                  static_cast<uint32_t>(rng() % 65000 + 1)};
      rec.raw_as_path.push_back(set);
    }
    for (int i = 0, n = static_cast<int>(rng() % 4); i < n; i++)
      rec.communities.push_back(
          make_community(rng() % 65000 + 1, static_cast<uint16_t>(rng())));
    if (rng() % 4 == 0) rec.communities.push_back(kNoExport);
    if (rng() % 5 == 0) {
      rec.locprf = rng() % 500;
      rec.record_kind = RecordKind::RouteServer;
    }

    std::vector<std::string> lines;
    std::istringstream in(write_text_record(rec));
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) lines.push_back(line);
    auto result = parse_text_record(lines);
    REQUIRE(std::holds_alternative<BgpRecord>(result));
    CHECK(std::get<BgpRecord>(result) == rec);
  }
}
