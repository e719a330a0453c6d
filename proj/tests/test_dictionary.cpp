#include <doctest.h>

#include <sstream>

#include "bgprel/dictionary.hpp"
#include "bgprel/text_format.hpp"

using namespace bgprel;

namespace {

Dictionary from_tsv(const std::string& tsv, Dictionary::LoadStats* stats = nullptr) {
  std::istringstream in(tsv);
  return Dictionary::load(in, stats);
}

}  // namespace

TEST_CASE("tsv load and exact resolution") {
  Dictionary::LoadStats stats;
  Dictionary d = from_tsv(
      "# comment\n"
      "4589\t4589:612\tREL_PEER\tOWNER\tRoute received from a LINX peer\tIRR\n"
      "15412\t15412:705\tREL_CUSTOMER\tOWNER\tRoute received from customer\tNOC\n"
      "65001\t65001:1:2\tOTHER\tOWNER\tlarge community\tIRR\n",
      &stats);
  CHECK(stats.entries == 2);
  CHECK(stats.ignored_large_communities == 1);
  CHECK(d.size() == 2);

  auto m = d.resolve(4589, make_community(4589, 612));
  REQUIRE(m.size() == 1);
  CHECK(m[0].category == Category::RelPeer);
  CHECK(m[0].source == MeaningSource::Irr);
  CHECK(d.resolve(4589, make_community(4589, 613)).empty());
  CHECK(d.resolve(15412, make_community(4589, 612)).empty());  // wrong owner
}

TEST_CASE("wildcard widths") {
  Dictionary d = from_tsv(
      "1273\t1273:1***\tACTION_PREPEND\tCUSTOMER\tprepend 1x\tIRR\n"
      "1273\t1273:15*\tTAG_LOCATION\tOWNER\tsite\tIRR\n");
  // fixed width: exactly 4 digits starting with 1
  CHECK(!d.resolve(1273, make_community(1273, 999)).empty() == false);
  CHECK(d.resolve(1273, make_community(1273, 1400)).size() == 1);
  CHECK(d.resolve(1273, make_community(1273, 10000)).empty());
  // any width: decimal form starts with "15"
  CHECK(d.resolve(1273, make_community(1273, 15)).size() == 1);
  CHECK(d.resolve(1273, make_community(1273, 15999)).size() == 1);
  CHECK(d.resolve(1273, make_community(1273, 151)).size() == 1);
  // 1500..1599 match both patterns
  auto both = d.resolve(1273, make_community(1273, 1510));
  REQUIRE(both.size() == 2);
  // fixed-width entries resolve before any-width ones
  CHECK(both[0].category == Category::ActionPrepend);
}

TEST_CASE("resolution order: exact, then longer prefixes") {
  Dictionary d = from_tsv(
      "100\t100:2*\tREL_PEER\tOWNER\t\tIRR\n"
      "100\t100:22*\tREL_PROVIDER\tOWNER\t\tIRR\n"
      "100\t100:221\tREL_CUSTOMER\tOWNER\t\tIRR\n");
  auto m = d.resolve(100, make_community(100, 221));
  REQUIRE(m.size() == 3);
  CHECK(m[0].category == Category::RelCustomer);
  CHECK(m[1].category == Category::RelProvider);
  CHECK(m[2].category == Category::RelPeer);
}

TEST_CASE("duplicate exact pattern is a load error") {
  CHECK_THROWS_AS(from_tsv("9\t9:1\tREL_PEER\tOWNER\t\tIRR\n"
                           "9\t9:1\tREL_CUSTOMER\tOWNER\t\tIRR\n"),
                  DictionaryLoadError);
}

TEST_CASE("duplicate wildcard pattern marks a dual-meaning asn") {
  Dictionary d = from_tsv("9\t9:15*\tREL_PEER\tOWNER\t\tIRR\n"
                          "9\t9:15*\tREL_CUSTOMER\tOWNER\t\tIRR\n");
  CHECK(d.dual_meaning_asns().count(9) == 1);
  CHECK(d.resolve(9, make_community(9, 150)).size() == 2);
}

TEST_CASE("malformed rows are row-numbered errors") {
  auto row_of = [](const std::string& tsv) {
    try {
      from_tsv(tsv);
    } catch (const DictionaryLoadError& e) {
      return e.row;
    }
    return size_t{0};
  };
  CHECK(row_of("x\t9:1\tREL_PEER\tOWNER\t\tIRR\n") == 1);
  CHECK(row_of("9\t9:1\tREL_PEER\tOWNER\t\tIRR\n"
               "9\t9:*z\tREL_PEER\tOWNER\t\tIRR\n") == 2);
  CHECK(row_of("9\t8:1\tREL_PEER\tOWNER\t\tIRR\n") == 1);  // owner mismatch
  CHECK(row_of("9\t9:1\tNOT_A_CATEGORY\tOWNER\t\tIRR\n") == 1);
  CHECK(row_of("9\t9:1\tREL_PEER\tNOBODY\t\tIRR\n") == 1);
  CHECK(row_of("9\t9:1\tOTHER\tOWNER\t\tIRR\n") == 1);  // OTHER needs semantics
}

// ---- tag attribution ------------------------------------------------------

namespace {

const Dictionary kAttrDict = from_tsv(
    "4589\t4589:612\tREL_PEER\tOWNER\tLINX peer\tIRR\n"
    "15412\t15412:705\tREL_CUSTOMER\tOWNER\tfrom customer\tIRR\n"
    "45528\t45528:1\tTAG_LOCATION\tOWNER\tdelhi\tIRR\n"
    "3356\t3356:70\tREL_CUSTOMER\tOWNER\t\tIRR\n");

MessageTags tags_for(const std::vector<uint32_t>& hops,
                     const std::vector<uint32_t>& communities,
                     uint32_t peer_asn) {
  auto cleaned = sanitize(hops);
  REQUIRE(std::holds_alternative<CleanPath>(cleaned));
  BgpRecord rec;
  rec.peer_asn = peer_asn;
  rec.communities = communities;
  return classify_message_tags(std::get<CleanPath>(cleaned), rec, kAttrDict);
}

}  // namespace

TEST_CASE("community attaches to the owner's link toward the origin") {
  auto tags = tags_for({4589, 15412, 18101, 45528},
                       {make_community(4589, 612), make_community(15412, 705)},
                       4589);
  REQUIRE(tags.per_link.size() == 3);
  REQUIRE(tags.per_link[0].size() == 1);
  CHECK(tags.per_link[0][0].tagger == 4589);
  CHECK(tags.per_link[0][0].meanings[0].category == Category::RelPeer);
  REQUIRE(tags.per_link[1].size() == 1);
  CHECK(tags.per_link[1][0].tagger == 15412);
  CHECK(tags.per_link[2].empty());
  CHECK(tags.unresolved == 0);
}

TEST_CASE("origin-as tags stay path-level") {
  auto tags = tags_for({4589, 15412, 18101, 45528},
                       {make_community(45528, 1)}, 4589);
  for (const auto& link_tags : tags.per_link) CHECK(link_tags.empty());
  REQUIRE(tags.path_level.size() == 1);
  CHECK(tags.unattributable == 1);
}

TEST_CASE("observing peer stripped from the path tags the first link") {
  // 4589 stripped itself; its tag still describes the first link.
  auto tags = tags_for({15412, 18101, 45528},
                       {make_community(4589, 612)}, 4589);
  REQUIRE(tags.per_link[0].size() == 1);
  CHECK(tags.per_link[0][0].tagger == 4589);
}

TEST_CASE("off-path tags are path-level and unknown ones counted") {
  auto tags = tags_for({4589, 15412},
                       {make_community(3356, 70),    // off-path, known
                        make_community(2914, 450),   // unknown owner
                        kNoExport},
                       4589);
  CHECK(tags.per_link[0].empty());
  CHECK(tags.path_level.size() == 1);
  CHECK(tags.unattributable == 1);
  CHECK(tags.unresolved == 1);
  CHECK(tags.no_export);
}
