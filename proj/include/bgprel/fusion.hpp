#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bgprel/engine.hpp"
#include "bgprel/locprf.hpp"
#include "bgprel/types.hpp"

namespace bgprel {

// ----- valley-free checking ------------------------------------------------

enum class RelStep : uint8_t { C2P, P2C, P2P, S2S, Unknown };

struct ValleyResult {
  bool valid = true;
  size_t violation_index = 0;
};

// A path is valley-free iff, with sibling steps deleted, it matches
// n*c2p [p2p] m*p2c. Returns the first violating step's index otherwise.
inline ValleyResult check_valley_free(const std::vector<RelStep>& steps) {
  int phase = 0;  // 0 = still climbing, 1 = descending
  for (size_t i = 0; i < steps.size(); i++) {
    switch (steps[i]) {
      case RelStep::S2S:
        break;  // siblings are transparent
      case RelStep::C2P:
        if (phase != 0) return {false, i};
        break;
      case RelStep::P2P:
        if (phase != 0) return {false, i};
        phase = 1;  // at most one peak peer step
        break;
      case RelStep::P2C:
        phase = 1;
        break;
      case RelStep::Unknown:
        throw DataError("unknown relationship at step " + std::to_string(i));
    }
  }
  return {true, 0};
}

// ----- fusion --------------------------------------------------------------

struct FusionConflict {
  Link link;
  std::string reason;
};

struct RelationshipDb {
  std::map<Link, RelInference> entries;
  std::set<IndirectPair> indirect_pairs;
  std::vector<FusionConflict> excluded;
};

// Agreement rule: a link inferred from both attributes is kept only when the
// two verdicts coincide. A hybrid survives a single-category LocPrf verdict
// when that category matches one of its components (a route server sees one
// PoP); it is excluded when it matches neither.
inline RelationshipDb fuse(const std::map<Link, RelInference>& communities,
                           const std::vector<RelInference>& locprf,
                           std::set<IndirectPair> indirect_pairs = {}) {
  RelationshipDb db;
  db.indirect_pairs = std::move(indirect_pairs);

  // Collapse the LocPrf side first; route servers on both ends of a link may
  // disagree, which is itself an inconsistency.
  std::map<Link, RelInference> lp;
  std::set<Link> lp_conflicts;
  for (const RelInference& inf : locprf) {
    auto it = lp.find(inf.link);
    if (it == lp.end()) {
      lp[inf.link] = inf;
    } else if (!(it->second.base == inf.base)) {
      lp_conflicts.insert(inf.link);
    }
  }
  for (Link l : lp_conflicts) {
    lp.erase(l);
    db.excluded.push_back({l, "locprf observers disagree"});
  }

  for (const auto& [link, c] : communities) {
    auto it = lp.find(link);
    if (it == lp.end()) {
      db.entries[link] = c;
      continue;
    }
    const RelInference& l = it->second;
    if (c.base == l.base) {
      RelInference merged = c;
      merged.provenance = Provenance::Both;
      db.entries[link] = std::move(merged);
    } else if (c.base.kind == BaseRel::Kind::Hybrid &&
               (l.base.kind == BaseRel::Kind::P2P ||
                (l.base.kind == BaseRel::Kind::P2C &&
                 l.base.provider == c.base.provider))) {
      RelInference merged = c;
      merged.provenance = Provenance::Both;
      merged.audit.push_back("locprf sees only the " +
                             std::string(l.base.kind == BaseRel::Kind::P2P
                                             ? "peering"
                                             : "transit") +
                             " component of this hybrid");
      db.entries[link] = std::move(merged);
    } else {
      db.excluded.push_back({link, "communities/locprf disagree"});
    }
  }
  for (const auto& [link, l] : lp)
    if (!communities.count(link) &&
        std::none_of(db.excluded.begin(), db.excluded.end(),
                     [&, lk = link](const FusionConflict& f) { return f.link == lk; }))
      db.entries[link] = l;
  return db;
}

// ----- sanity checks -------------------------------------------------------

struct SanityConfig {
  double contradiction_fraction = 0.5;  // flag an owner above this
  size_t min_cross_links = 10;          // ... given at least this many checks
};

struct SanityReport {
  std::vector<uint32_t> flagged_owners;
  std::vector<Link> both_side_conflicts;
  std::vector<Link> excluded;
};

namespace fusion_detail {

inline std::optional<BaseRel> vote_to_base(VoteRel v, Link link) {
  switch (v) {
    case VoteRel::ProviderLeft: return BaseRel{BaseRel::Kind::P2C, link.left};
    case VoteRel::ProviderRight: return BaseRel{BaseRel::Kind::P2C, link.right};
    case VoteRel::Peer: return BaseRel{BaseRel::Kind::P2P};
    case VoteRel::Sibling: return BaseRel{BaseRel::Kind::S2S};
  }
  return std::nullopt;
}

}  // namespace fusion_detail

// (1) Owners whose Communities meanings contradict LocPrf verdicts on most
// shared links are candidate bad dictionaries; links supported only by their
// tags are excluded. (2) Links tagged from both endpoints with contradicting
// categories are excluded outright.
inline SanityReport sanity_check(RelationshipDb& db, const EvidenceMap& evidence,
                                 const std::vector<RelInference>& locprf,
                                 const SanityConfig& cfg = {}) {
  SanityReport report;
  std::set<Link> to_exclude;

  std::map<Link, BaseRel> lp;
  for (const RelInference& inf : locprf)
    if (lp.find(inf.link) == lp.end()) lp[inf.link] = inf.base;

  // Check (1): per-owner cross-check against LocPrf, counted per shared link.
  // A link contradicts for an owner when none of that owner's votes on it
  // agree with the LocPrf verdict.
  std::map<uint32_t, std::map<Link, bool>> owner_links;  // link -> any agreement
  for (const auto& [link, ev] : evidence.links) {
    auto lit = lp.find(link);
    if (lit == lp.end()) continue;
    for (const Vote& v : ev.votes) {
      if (!link.has(v.tagger)) continue;
      auto base = fusion_detail::vote_to_base(v.rel, link);
      if (!base || base->kind == BaseRel::Kind::S2S) continue;
      bool agrees = *base == lit->second;
      auto [it, inserted] = owner_links[v.tagger].try_emplace(link, agrees);
      if (!inserted) it->second = it->second || agrees;
    }
  }
  std::set<uint32_t> flagged;
  for (const auto& [owner, links] : owner_links) {
    size_t checks = links.size(), bad = 0;
    for (const auto& [link, agrees] : links)
      if (!agrees) bad++;
    if (checks >= cfg.min_cross_links &&
        static_cast<double>(bad) > cfg.contradiction_fraction * checks)
      flagged.insert(owner);
  }
  report.flagged_owners.assign(flagged.begin(), flagged.end());
  if (!flagged.empty()) {
    for (const auto& [link, ev] : evidence.links) {
      if (ev.votes.empty()) continue;
      bool all_from_flagged = std::all_of(
          ev.votes.begin(), ev.votes.end(),
          [&](const Vote& v) { return flagged.count(v.tagger) > 0; });
      if (all_from_flagged && db.entries.count(link) &&
          db.entries.at(link).provenance != Provenance::LocPrf)
        to_exclude.insert(link);
    }
  }

  // Check (2): both-endpoint tag contradiction.
  for (const auto& [link, ev] : evidence.links) {
    std::set<VoteRel> left_cats, right_cats;
    for (const Vote& v : ev.votes) {
      if (v.tagger == link.left) left_cats.insert(v.rel);
      if (v.tagger == link.right) right_cats.insert(v.rel);
    }
    if (left_cats.empty() || right_cats.empty()) continue;
    bool overlap = std::any_of(left_cats.begin(), left_cats.end(),
                               [&](VoteRel r) { return right_cats.count(r) > 0; });
    if (!overlap) {
      report.both_side_conflicts.push_back(link);
      to_exclude.insert(link);
    }
  }

  for (Link l : to_exclude) {
    if (db.entries.erase(l)) report.excluded.push_back(l);
  }
  return report;
}

// ----- statistics ----------------------------------------------------------

struct StatsSummary {
  uint64_t paths = 0;
  uint64_t observed_links = 0;
  uint64_t observed_ases = 0;
  uint64_t inferred_links = 0;
  uint64_t inferred_ases = 0;
  uint64_t transit = 0;
  uint64_t peering = 0;
  uint64_t sibling = 0;
  uint64_t hybrid = 0;
  uint64_t indirect_peering_links = 0;
  uint64_t indirect_peering_pairs = 0;
  uint64_t partial_transit = 0;
  uint64_t backup = 0;
  uint64_t from_communities = 0;
  uint64_t from_locprf = 0;
};

// Counting rules: a hybrid link counts as both a transit and a peering link;
// partial-transit and backup links are inside the transit total.
inline StatsSummary compute_stats(const RelationshipDb& db,
                                  const EvidenceMap* evidence = nullptr) {
  StatsSummary s;
  std::set<uint32_t> inferred_ases;
  for (const auto& [link, inf] : db.entries) {
    s.inferred_links++;
    inferred_ases.insert(link.left);
    inferred_ases.insert(link.right);
    switch (inf.base.kind) {
      case BaseRel::Kind::P2C: s.transit++; break;
      case BaseRel::Kind::P2P: s.peering++; break;
      case BaseRel::Kind::S2S: s.sibling++; break;
      case BaseRel::Kind::Hybrid:
        s.transit++;
        s.peering++;
        s.hybrid++;
        break;
    }
    if (inf.partial_transit) s.partial_transit++;
    if (inf.backup_prepend || inf.backup_noexport) s.backup++;
    if (!inf.indirect_partners.empty()) s.indirect_peering_links++;
    if (inf.provenance == Provenance::Communities || inf.provenance == Provenance::Both)
      s.from_communities++;
    if (inf.provenance == Provenance::LocPrf || inf.provenance == Provenance::Both)
      s.from_locprf++;
  }
  s.inferred_ases = inferred_ases.size();
  s.indirect_peering_pairs = db.indirect_pairs.size();
  if (evidence) {
    s.paths = evidence->paths;
    s.observed_links = evidence->links.size();
    std::set<uint32_t> ases;
    for (const auto& [link, ev] : evidence->links) {
      ases.insert(link.left);
      ases.insert(link.right);
    }
    s.observed_ases = ases.size();
  }
  return s;
}

// ----- export --------------------------------------------------------------

// Rows: left|right|code|flags|provenance, sorted by (left, right).
// Codes: -1 p2c (left provider), 1 c2p (left customer), 0 p2p, 2 s2s,
// h:p2c-left / h:p2c-right hybrids.
inline void export_db(const RelationshipDb& db, std::ostream& out,
                      const std::string& header_note = "") {
  out << "# bgprel relationship dataset\n";
  if (!header_note.empty()) out << "# " << header_note << "\n";
  for (const auto& [link, inf] : db.entries) {
    std::string code;
    switch (inf.base.kind) {
      case BaseRel::Kind::P2C:
        code = inf.base.provider == link.left ? "-1" : "1";
        break;
      case BaseRel::Kind::P2P: code = "0"; break;
      case BaseRel::Kind::S2S: code = "2"; break;
      case BaseRel::Kind::Hybrid:
        code = inf.base.provider == link.left ? "h:p2c-left" : "h:p2c-right";
        break;
    }
    std::vector<std::string> flags;
    if (inf.partial_transit) flags.push_back("pt");
    if (inf.backup_prepend) flags.push_back("bk-prep");
    if (inf.backup_noexport) flags.push_back("bk-noexp");
    for (uint32_t p : inf.indirect_partners)
      flags.push_back("ixp-indirect:" + std::to_string(p));
    out << link.left << "|" << link.right << "|" << code << "|";
    for (size_t i = 0; i < flags.size(); i++) out << (i ? "," : "") << flags[i];
    out << "|" << provenance_name(inf.provenance) << "\n";
  }
}

inline RelationshipDb parse_db(std::istream& in) {
  RelationshipDb db;
  std::string line;
  size_t row = 0;
  while (std::getline(in, line)) {
    row++;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string col;
    while (std::getline(ls, col, '|')) cols.push_back(col);
    while (cols.size() < 5) cols.emplace_back();
    RelInference inf;
    uint32_t a, b;
    try {
      a = static_cast<uint32_t>(std::stoull(cols[0]));
      b = static_cast<uint32_t>(std::stoull(cols[1]));
    } catch (...) {
      throw DataError("bad relationship row " + std::to_string(row));
    }
    inf.link = Link(a, b);
    const std::string& code = cols[2];
    if (code == "-1")
      inf.base = BaseRel{BaseRel::Kind::P2C, inf.link.left};
    else if (code == "1")
      inf.base = BaseRel{BaseRel::Kind::P2C, inf.link.right};
    else if (code == "0")
      inf.base = BaseRel{BaseRel::Kind::P2P};
    else if (code == "2")
      inf.base = BaseRel{BaseRel::Kind::S2S};
    else if (code == "h:p2c-left")
      inf.base = BaseRel{BaseRel::Kind::Hybrid, inf.link.left};
    else if (code == "h:p2c-right")
      inf.base = BaseRel{BaseRel::Kind::Hybrid, inf.link.right};
    else
      throw DataError("bad relationship code '" + code + "' at row " +
                      std::to_string(row));
    {
      std::istringstream fs(cols[3]);
      std::string flag;
      while (std::getline(fs, flag, ',')) {
        if (flag == "pt")
          inf.partial_transit = true;
        else if (flag == "bk-prep")
          inf.backup_prepend = true;
        else if (flag == "bk-noexp")
          inf.backup_noexport = true;
        else if (flag.starts_with("ixp-indirect:"))
          inf.indirect_partners.push_back(
              static_cast<uint32_t>(std::stoull(flag.substr(13))));
        else if (!flag.empty())
          throw DataError("unknown flag '" + flag + "' at row " + std::to_string(row));
      }
    }
    if (cols[4] == "LOCPRF")
      inf.provenance = Provenance::LocPrf;
    else if (cols[4] == "BOTH")
      inf.provenance = Provenance::Both;
    else
      inf.provenance = Provenance::Communities;
    db.entries[inf.link] = std::move(inf);
  }
  // Rebuild the pair list from the ixp-indirect flags: the route server is
  // the leg endpoint that also links to the partner.
  for (const auto& [link, inf] : db.entries)
    for (uint32_t partner : inf.indirect_partners) {
      uint32_t self = link.left, rs = link.right;
      if (db.entries.count(Link(link.left, partner))) {
        rs = link.left;
        self = link.right;
      }
      db.indirect_pairs.insert(
          {std::min(self, partner), rs, std::max(self, partner)});
    }
  return db;
}

}  // namespace bgprel
