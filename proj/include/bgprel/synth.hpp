#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bgprel/engine.hpp"
#include "bgprel/fusion.hpp"
#include "bgprel/types.hpp"

namespace bgprel {
namespace synth {

struct SynthParams {
  uint32_t as_count = 200;
  uint32_t hybrid_quota = 2;
  uint32_t partial_transit_quota = 2;
  uint32_t backup_prepend_quota = 2;
  uint32_t backup_noexport_quota = 2;
  uint32_t indirect_quota = 2;
  uint32_t sibling_quota = 2;
  uint32_t non_valley_free_paths = 2;
  double dual_meaning_noise = 0.0;  // fraction of links tagged unresolvably
  uint32_t rs_observers = 2;
  uint64_t seed = 42;
};

struct TruthLink {
  Link link;
  BaseRel base;
  bool partial_transit = false;
  bool backup_prepend = false;
  bool backup_noexport = false;
  bool noisy = false;        // tagged with an unresolvable dual-meaning value
  bool indirect_leg = false; // emitted via route-server triple paths
};

struct GroundTruth {
  SynthParams params;
  std::vector<uint32_t> tier1, tier2, stubs;
  uint32_t route_server = 0;
  std::map<Link, TruthLink> links;
  std::set<IndirectPair> indirect_pairs;
  std::vector<uint32_t> rs_observer_asns;
  // Stubs guaranteed to have two providers, for valley-violating paths.
  std::vector<std::pair<uint32_t, std::pair<uint32_t, uint32_t>>> multihomed;

  std::string serialize() const {
    std::ostringstream out;
    RelationshipDb db;
    for (const auto& [l, t] : links) {
      RelInference inf;
      inf.link = l;
      inf.base = t.base;
      inf.partial_transit = t.partial_transit;
      inf.backup_prepend = t.backup_prepend;
      inf.backup_noexport = t.backup_noexport;
      db.entries[l] = inf;
    }
    for (const IndirectPair& p : indirect_pairs) {
      db.entries[Link(p.a, p.route_server)].indirect_partners.push_back(p.b);
      db.entries[Link(p.route_server, p.b)].indirect_partners.push_back(p.a);
    }
    export_db(db, out, "ground truth seed " + std::to_string(params.seed));
    return out.str();
  }
};

// Per-AS community value scheme, fixed by convention:
//   X:101 customer, X:102 peer, X:103 provider, X:104 sibling,
//   X:111/112 location tags, X:121 prepend (customer-settable),
//   X:131 scope restriction (customer-settable), X:141 route-server peering,
//   X:150 with a dual 15* meaning on noisy-dictionary ASes.
namespace scheme {
constexpr uint16_t kCustomer = 101;
constexpr uint16_t kPeer = 102;
constexpr uint16_t kProvider = 103;
constexpr uint16_t kSibling = 104;
constexpr uint16_t kLocA = 111;
constexpr uint16_t kLocB = 112;
constexpr uint16_t kPrepend = 121;
constexpr uint16_t kScopeRestrict = 131;
constexpr uint16_t kRsPeering = 141;
constexpr uint16_t kAmbiguous = 150;
}  // namespace scheme

struct InfeasibleQuota : DataError {
  using DataError::DataError;
};

inline GroundTruth generate(const SynthParams& params) {
  GroundTruth t;
  t.params = params;
  std::mt19937_64 rng(params.seed);

  uint32_t n1 = std::max<uint32_t>(3, params.as_count / 40);
  uint32_t n2 = std::max<uint32_t>(4, params.as_count / 4);
  bool need_rs = params.indirect_quota > 0;
  if (n1 + n2 + (need_rs ? 1 : 0) + 2 > params.as_count)
    throw InfeasibleQuota("as_count too small for tier mix");
  uint32_t n3 = params.as_count - n1 - n2 - (need_rs ? 1 : 0);

  // ASNs stay below 65536 so they fit the communities ASN part.
  for (uint32_t i = 0; i < n1; i++) t.tier1.push_back(1001 + i);
  for (uint32_t i = 0; i < n2; i++) t.tier2.push_back(2001 + i);
  for (uint32_t i = 0; i < n3; i++) t.stubs.push_back(10001 + i);
  if (need_rs) t.route_server = 9001;
  if (n2 > 8000 || n3 > 50000) throw InfeasibleQuota("as_count too large");

  auto add_link = [&](uint32_t a, uint32_t b, BaseRel base) -> TruthLink& {
    Link l(a, b);
    auto [it, inserted] = t.links.try_emplace(l);
    if (inserted) {
      it->second.link = l;
      it->second.base = base;
    }
    return it->second;
  };
  auto linked = [&](uint32_t a, uint32_t b) { return t.links.count(Link(a, b)) > 0; };
  auto pick = [&](const std::vector<uint32_t>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
  };

  // Tier-1 clique peers with itself.
  for (size_t i = 0; i < t.tier1.size(); i++)
    for (size_t j = i + 1; j < t.tier1.size(); j++)
      add_link(t.tier1[i], t.tier1[j], BaseRel{BaseRel::Kind::P2P});

  // Tier-2: one or two tier-1 providers each, plus some lateral peering.
  for (uint32_t as : t.tier2) {
    uint32_t p1 = pick(t.tier1);
    add_link(as, p1, BaseRel{BaseRel::Kind::P2C, p1});
    if (rng() % 2) {
      uint32_t p2 = pick(t.tier1);
      if (p2 != p1) add_link(as, p2, BaseRel{BaseRel::Kind::P2C, p2});
    }
  }
  for (uint32_t i = 0; i < n2; i++) {
    uint32_t a = pick(t.tier2), b = pick(t.tier2);
    if (a != b && !linked(a, b)) add_link(a, b, BaseRel{BaseRel::Kind::P2P});
  }

  // Stubs: one or more tier-2 providers; the first non_valley_free_paths
  // stubs get a guaranteed second provider so leak paths exist.
  for (size_t i = 0; i < t.stubs.size(); i++) {
    uint32_t as = t.stubs[i];
    uint32_t p1 = pick(t.tier2);
    add_link(as, p1, BaseRel{BaseRel::Kind::P2C, p1});
    bool force_second = i < params.non_valley_free_paths;
    if (force_second || rng() % 3 != 0) {
      uint32_t p2 = pick(t.tier2);
      int guard = 0;
      while ((p2 == p1 || linked(as, p2)) && guard++ < 50) p2 = pick(t.tier2);
      if (p2 != p1 && !linked(as, p2)) {
        add_link(as, p2, BaseRel{BaseRel::Kind::P2C, p2});
        if (force_second) t.multihomed.push_back({as, {p1, p2}});
      } else if (force_second) {
        throw InfeasibleQuota("cannot multihome stub for leak paths");
      }
    }
  }
  // Densify with extra stub transit so the link count roughly triples the
  // AS count.
  for (uint32_t i = 0; i < n3; i++) {
    uint32_t as = pick(t.stubs), p = pick(t.tier2);
    if (!linked(as, p)) add_link(as, p, BaseRel{BaseRel::Kind::P2C, p});
  }

  auto fresh_pair = [&](const std::vector<uint32_t>& pool,
                        const char* what) -> std::pair<uint32_t, uint32_t> {
    for (int attempt = 0; attempt < 500; attempt++) {
      uint32_t a = pick(pool), b = pick(pool);
      if (a != b && !linked(a, b)) return {a, b};
    }
    throw InfeasibleQuota(std::string("quota infeasible: ") + what);
  };

  for (uint32_t i = 0; i < params.sibling_quota; i++) {
    auto [a, b] = fresh_pair(t.stubs, "sibling");
    add_link(a, b, BaseRel{BaseRel::Kind::S2S});
  }
  for (uint32_t i = 0; i < params.hybrid_quota; i++) {
    auto [a, b] = fresh_pair(t.tier2, "hybrid");
    add_link(a, b, BaseRel{BaseRel::Kind::Hybrid, a});
  }
  // Partial transit: flag existing stub transit links.
  {
    uint32_t flagged = 0;
    for (auto& [l, link] : t.links) {
      if (flagged >= params.partial_transit_quota) break;
      if (link.base.kind == BaseRel::Kind::P2C && !link.partial_transit &&
          (l.left >= 10001 || l.right >= 10001)) {
        link.partial_transit = true;
        flagged++;
      }
    }
    if (flagged < params.partial_transit_quota)
      throw InfeasibleQuota("quota infeasible: partial-transit");
  }
  // Backup links: fresh stub-to-tier2 transit links.
  auto add_backup = [&](bool prepend) {
    for (int attempt = 0; attempt < 500; attempt++) {
      uint32_t c = pick(t.stubs), p = pick(t.tier2);
      if (linked(c, p)) continue;
      TruthLink& link = add_link(c, p, BaseRel{BaseRel::Kind::P2C, p});
      link.backup_prepend = prepend;
      link.backup_noexport = !prepend;
      return;
    }
    throw InfeasibleQuota("quota infeasible: backup");
  };
  for (uint32_t i = 0; i < params.backup_prepend_quota; i++) add_backup(true);
  for (uint32_t i = 0; i < params.backup_noexport_quota; i++) add_backup(false);

  // Indirect peering via the shared route server.
  for (uint32_t i = 0; i < params.indirect_quota; i++) {
    for (int attempt = 0;; attempt++) {
      if (attempt >= 500) throw InfeasibleQuota("quota infeasible: indirect");
      uint32_t a = pick(t.tier2), b = pick(t.tier2);
      if (a == b) continue;
      IndirectPair pair{std::min(a, b), t.route_server, std::max(a, b)};
      if (t.indirect_pairs.count(pair)) continue;
      add_link(a, t.route_server, BaseRel{BaseRel::Kind::P2P}).indirect_leg = true;
      add_link(b, t.route_server, BaseRel{BaseRel::Kind::P2P}).indirect_leg = true;
      t.indirect_pairs.insert(pair);
      break;
    }
  }

  // Unresolvable dual-meaning noise on a fraction of links.
  if (params.dual_meaning_noise > 0) {
    std::vector<Link> all;
    for (const auto& [l, link] : t.links)
      if (!link.indirect_leg) all.push_back(l);
    size_t n_noisy = static_cast<size_t>(params.dual_meaning_noise * all.size());
    std::shuffle(all.begin(), all.end(), rng);
    for (size_t i = 0; i < n_noisy && i < all.size(); i++)
      t.links.at(all[i]).noisy = true;
  }

  for (uint32_t i = 0; i < std::min<uint32_t>(params.rs_observers, n1); i++)
    t.rs_observer_asns.push_back(t.tier1[i]);
  return t;
}

// ----- corpus emission -----------------------------------------------------

namespace detail {

inline std::string prefix_for(uint32_t asn, bool v6 = false) {
  uint32_t hi = (asn >> 8) & 0xFF, lo = asn & 0xFF;
  if (v6) {
    std::ostringstream s;
    s << "2001:db8:" << std::hex << hi << ":" << lo << "::/64";
    return s.str();
  }
  return "10." + std::to_string(hi) + "." + std::to_string(lo) + ".0/24";
}

constexpr uint64_t kMonthStart = 1280620800;  // 2010-08-01 00:00 UTC
constexpr uint32_t kMonthDays = 31;

struct Message {
  uint32_t day_index;  // 0-based within the corpus month
  std::string monitor;
  uint32_t peer_asn;
  std::vector<uint32_t> hops;  // with prepending already expanded
  std::vector<std::string> communities;
  std::string prefix;
};

inline std::string render(const Message& m, uint64_t seq) {
  std::ostringstream out;
  out << "TYPE: TABLE_DUMP_V2/IPV"
      << (m.prefix.find(':') != std::string::npos ? 6 : 4) << "_UNICAST\n";
  out << "TIME: " << (kMonthStart + m.day_index * 86400 + seq % 86400) << "\n";
  out << "PREFIX: " << m.prefix << "\n";
  out << "FROM: " << m.monitor << " AS" << m.peer_asn << "\n";
  out << "ORIGIN: IGP\n";
  out << "ASPATH:";
  for (uint32_t h : m.hops) out << " " << h;
  out << "\n";
  if (!m.communities.empty()) {
    out << "COMMUNITY:";
    for (const std::string& c : m.communities) out << " " << c;
    out << "\n";
  }
  out << "\n";
  return out.str();
}

inline std::string tag(uint32_t asn, uint16_t value) {
  return std::to_string(asn) + ":" + std::to_string(value);
}

}  // namespace detail

struct EmittedCorpus {
  std::map<uint32_t, std::string> day_files;  // day index -> text content
  std::string dictionary_tsv;
  std::map<uint32_t, std::string> rs_dumps;  // observer asn -> dump content
  uint64_t messages = 0;
};

inline EmittedCorpus emit_corpus(const GroundTruth& t) {
  using namespace detail;
  EmittedCorpus out;
  std::vector<Message> messages;
  uint64_t seq = 0;

  auto rel_value = [&](const TruthLink& link, uint32_t tagger,
                       uint32_t other) -> uint16_t {
    if (link.noisy) return scheme::kAmbiguous;
    switch (link.base.kind) {
      case BaseRel::Kind::P2C:
        return link.base.provider == tagger ? scheme::kCustomer : scheme::kProvider;
      case BaseRel::Kind::P2P: return scheme::kPeer;
      case BaseRel::Kind::S2S: return scheme::kSibling;
      case BaseRel::Kind::Hybrid: return scheme::kPeer;  // callers special-case
    }
    return scheme::kPeer;
  };

  size_t hybrid_index = 0;
  for (const auto& [l, link] : t.links) {
    if (link.indirect_leg) continue;  // emitted via triple paths below

    uint32_t provider = link.base.provider;
    if (link.base.kind == BaseRel::Kind::Hybrid) {
      // Two messages from different monitors and days; alternate between
      // location-dependent and IP-version-dependent hybrids.
      uint32_t a = provider, b = l.other(provider);
      bool by_location = (hybrid_index++ % 2) == 0;
      Message peer_msg{2, "rv-" + std::to_string(a), a,
                       {a, b},
                       {},
                       prefix_for(b, !by_location)};
      Message transit_msg{9, "rr-" + std::to_string(a), a, {a, b}, {},
                          prefix_for(b, false)};
      if (link.noisy) {
        peer_msg.communities = {tag(a, scheme::kAmbiguous)};
        transit_msg.communities = {tag(a, scheme::kAmbiguous)};
      } else if (by_location) {
        peer_msg.communities = {tag(a, scheme::kPeer), tag(a, scheme::kLocA)};
        transit_msg.communities = {tag(a, scheme::kCustomer), tag(a, scheme::kLocB)};
      } else {
        peer_msg.communities = {tag(a, scheme::kPeer)};
        transit_msg.communities = {tag(a, scheme::kCustomer)};
      }
      messages.push_back(peer_msg);
      messages.push_back(transit_msg);
      continue;
    }

    uint32_t tagger, other;
    if (link.base.kind == BaseRel::Kind::P2C) {
      tagger = provider;
      other = l.other(provider);
    } else {
      tagger = l.left;
      other = l.right;
    }
    uint16_t value = rel_value(link, tagger, other);

    if (link.backup_prepend) {
      // Short lifespan with customer prepending.
      for (uint32_t d : {2u, 3u, 4u}) {
        Message m{d, "rv-" + std::to_string(tagger), tagger,
                  {tagger, other, other, other},
                  {tag(tagger, value)},
                  prefix_for(other)};
        messages.push_back(m);
      }
      continue;
    }

    std::vector<std::string> comms = {tag(tagger, value)};
    if (link.partial_transit && !link.noisy)
      comms.push_back(tag(tagger, scheme::kScopeRestrict));
    if (link.backup_noexport) comms.push_back("no-export");
    for (uint32_t d : {0u, 14u, 27u}) {
      Message m{d, "rv-" + std::to_string(tagger), tagger, {tagger, other},
                comms, prefix_for(other)};
      messages.push_back(m);
      if (link.backup_noexport) break;  // keep backups rare in the data
    }
  }

  // Indirect peering: triple paths through the route server, one from each
  // side, so both endpoints tag it as route-server peering.
  for (const IndirectPair& p : t.indirect_pairs) {
    const TruthLink& la = t.links.at(Link(p.a, p.route_server));
    const TruthLink& lb = t.links.at(Link(p.route_server, p.b));
    Message m1{5, "rv-" + std::to_string(p.a), p.a,
               {p.a, p.route_server, p.b},
               {},
               prefix_for(p.b)};
    if (!la.noisy)
      m1.communities = {tag(p.a, scheme::kPeer), tag(p.a, scheme::kRsPeering),
                        tag(p.route_server, scheme::kPeer)};
    Message m2{6, "rv-" + std::to_string(p.b), p.b,
               {p.b, p.route_server, p.a},
               {},
               prefix_for(p.a)};
    if (!lb.noisy)
      m2.communities = {tag(p.b, scheme::kPeer), tag(p.b, scheme::kRsPeering),
                        tag(p.route_server, scheme::kPeer)};
    messages.push_back(m1);
    messages.push_back(m2);
  }

  // Valley-violating leak paths through multihomed stubs (tags stay truthful;
  // only the path shape breaks the rule).
  for (const auto& [stub, providers] : t.multihomed) {
    auto [p1, p2] = providers;
    Message m{20, "rv-" + std::to_string(p1), p1,
              {p1, stub, p2},
              {tag(p1, t.links.at(Link(p1, stub)).noisy ? scheme::kAmbiguous
                                                        : scheme::kCustomer)},
              prefix_for(p2)};
    messages.push_back(m);
  }

  // A full-span marker path so the corpus calendar covers the whole month.
  if (!t.tier1.empty() && t.tier1.size() >= 2) {
    for (uint32_t d = 0; d < kMonthDays; d++) {
      Link l(t.tier1[0], t.tier1[1]);
      Message m{d, "rv-" + std::to_string(t.tier1[0]), t.tier1[0],
                {t.tier1[0], t.tier1[1]},
                {tag(t.tier1[0], t.links.at(l).noisy ? scheme::kAmbiguous
                                                     : scheme::kPeer)},
                prefix_for(t.tier1[1])};
      messages.push_back(m);
    }
  }

  for (const Message& m : messages)
    out.day_files[m.day_index] += render(m, seq++);
  out.messages = messages.size();

  // Dictionary.
  std::ostringstream dict;
  dict << "# synthetic communities dictionary\n";
  std::set<uint32_t> all_ases;
  for (const auto& [l, link] : t.links) {
    all_ases.insert(l.left);
    all_ases.insert(l.right);
  }
  std::set<uint32_t> noisy_taggers;
  for (const auto& [l, link] : t.links)
    if (link.noisy) {
      // The tagger of a noisy link needs the dual-meaning rows.
      if (link.base.kind == BaseRel::Kind::P2C ||
          link.base.kind == BaseRel::Kind::Hybrid)
        noisy_taggers.insert(link.base.provider);
      else
        noisy_taggers.insert(l.left);
    }
  for (uint32_t as : all_ases) {
    auto row = [&](uint16_t value_or_zero, const std::string& pattern,
                   const char* cat, const char* settable, const char* note) {
      dict << as << "\t" << as << ":"
           << (pattern.empty() ? std::to_string(value_or_zero) : pattern) << "\t"
           << cat << "\t" << settable << "\t" << note << "\tIRR\n";
    };
    row(scheme::kCustomer, "", "REL_CUSTOMER", "OWNER", "");
    row(scheme::kPeer, "", "REL_PEER", "OWNER", "");
    row(scheme::kProvider, "", "REL_PROVIDER", "OWNER", "");
    row(scheme::kSibling, "", "REL_SIBLING", "OWNER", "");
    row(0, "111", "TAG_LOCATION", "OWNER", "site-a");
    row(0, "112", "TAG_LOCATION", "OWNER", "site-b");
    row(scheme::kPrepend, "", "ACTION_PREPEND", "CUSTOMER", "");
    row(scheme::kScopeRestrict, "", "ACTION_SCOPE_RESTRICT", "CUSTOMER", "europe");
    row(scheme::kRsPeering, "", "TAG_RS_PEERING", "OWNER", "ixp-rs");
    if (noisy_taggers.count(as)) {
      row(0, "15*", "REL_PEER", "OWNER", "");
      row(0, "15*", "REL_CUSTOMER", "OWNER", "");
    }
  }
  out.dictionary_tsv = dict.str();

  // Route-server dumps for the configured observers.
  for (uint32_t observer : t.rs_observer_asns) {
    std::ostringstream dump;
    dump << "OBSERVER_ASN: " << observer << "\n";
    dump << "DATE: 20100801\n";
    size_t peers_seen = 0;
    for (const auto& [l, link] : t.links) {
      if (!l.has(observer) || link.noisy) continue;
      uint32_t neighbor = l.other(observer);
      uint32_t value = 0;
      switch (link.base.kind) {
        case BaseRel::Kind::P2C:
          value = link.base.provider == observer ? 300 : 100;
          break;
        case BaseRel::Kind::P2P: value = 200; break;
        default: continue;  // siblings/hybrids stay out of the RS view
      }
      for (int i = 0; i < 3; i++)
        dump << prefix_for(neighbor) << " | " << value << " | " << neighbor << "\n";
      // Give exactly one peer a near-default reduced-preference value.
      if (value == 200 && ++peers_seen == 2)
        dump << prefix_for(neighbor) << " | 195 | " << neighbor << "\n";
    }
    out.rs_dumps[observer] = dump.str();
  }
  return out;
}

inline void write_corpus(const EmittedCorpus& corpus,
                         const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "corpus");
  fs::create_directories(dir / "rs");
  for (const auto& [day, content] : corpus.day_files) {
    time_t ts = static_cast<time_t>(detail::kMonthStart) + day * 86400;
    std::tm tm{};
    gmtime_r(&ts, &tm);
    char buf[16];
    strftime(buf, sizeof(buf), "%Y%m%d", &tm);
    std::ofstream(dir / "corpus" / ("synth." + std::string(buf) + ".txt")) << content;
  }
  std::ofstream(dir / "dictionary.tsv") << corpus.dictionary_tsv;
  for (const auto& [observer, content] : corpus.rs_dumps)
    std::ofstream(dir / "rs" / ("rs." + std::to_string(observer) + ".dump"))
        << content;
}

// ----- scoring -------------------------------------------------------------

struct CategoryScore {
  uint64_t truth_n = 0;
  uint64_t emitted = 0;
  uint64_t correct = 0;

  double precision() const { return emitted == 0 ? 1.0 : double(correct) / emitted; }
  double recall() const { return truth_n == 0 ? 1.0 : double(correct) / truth_n; }
};

struct ScoreReport {
  std::map<std::string, CategoryScore> categories;
  std::vector<std::string> confusions;  // links present with a wrong verdict

  bool all_precision_one() const {
    for (const auto& [name, s] : categories)
      if (s.precision() < 1.0) return false;
    return true;
  }
  bool perfect() const {
    for (const auto& [name, s] : categories)
      if (s.precision() < 1.0 || s.recall() < 1.0) return false;
    return true;
  }
};

// Discarded links are neither false positives nor misclassifications: they
// lower recall only.
inline ScoreReport score(const RelationshipDb& db, const GroundTruth& truth) {
  ScoreReport report;
  auto base_name = [](BaseRel::Kind k) {
    switch (k) {
      case BaseRel::Kind::P2C: return "p2c";
      case BaseRel::Kind::P2P: return "p2p";
      case BaseRel::Kind::S2S: return "s2s";
      case BaseRel::Kind::Hybrid: return "hybrid";
    }
    return "?";
  };

  for (const auto& [l, tl] : truth.links) report.categories[base_name(tl.base.kind)].truth_n++;
  for (const auto& [l, tl] : truth.links) {
    if (tl.partial_transit) report.categories["partial-transit"].truth_n++;
    if (tl.backup_prepend) report.categories["backup-prepend"].truth_n++;
    if (tl.backup_noexport) report.categories["backup-noexport"].truth_n++;
  }
  report.categories["indirect-peering"].truth_n = truth.indirect_pairs.size();

  for (const auto& [l, inf] : db.entries) {
    auto& cat = report.categories[base_name(inf.base.kind)];
    cat.emitted++;
    auto it = truth.links.find(l);
    bool base_correct = it != truth.links.end() && it->second.base == inf.base;
    if (base_correct)
      cat.correct++;
    else
      report.confusions.push_back(
          l.to_string() + ": inferred " + base_name(inf.base.kind) +
          (it == truth.links.end() ? " but link not in truth" : " truth disagrees"));

    auto flag = [&](bool emitted_flag, bool truth_flag, const char* name) {
      if (emitted_flag) {
        report.categories[name].emitted++;
        if (truth_flag)
          report.categories[name].correct++;
        else
          report.confusions.push_back(l.to_string() + ": spurious " + name);
      }
    };
    bool in_truth = it != truth.links.end();
    flag(inf.partial_transit, in_truth && it->second.partial_transit, "partial-transit");
    flag(inf.backup_prepend, in_truth && it->second.backup_prepend, "backup-prepend");
    flag(inf.backup_noexport, in_truth && it->second.backup_noexport, "backup-noexport");
  }

  auto& ind = report.categories["indirect-peering"];
  for (const IndirectPair& p : db.indirect_pairs) {
    ind.emitted++;
    if (truth.indirect_pairs.count(p))
      ind.correct++;
    else
      report.confusions.push_back("spurious indirect pair " + std::to_string(p.a) +
                                  "-" + std::to_string(p.route_server) + "-" +
                                  std::to_string(p.b));
  }
  return report;
}

}  // namespace synth
}  // namespace bgprel
