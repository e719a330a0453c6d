#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

#include "bgprel/dictionary.hpp"
#include "bgprel/path.hpp"
#include "bgprel/types.hpp"

namespace bgprel {

// Relationship vote on a canonical link, oriented by the tagger's viewpoint.
enum class VoteRel : uint8_t { ProviderLeft, ProviderRight, Peer, Sibling };

inline bool is_transit_vote(VoteRel v) {
  return v == VoteRel::ProviderLeft || v == VoteRel::ProviderRight;
}

struct Vote {
  std::string message_id;
  uint32_t tagger = 0;
  VoteRel rel = VoteRel::Peer;
  std::set<std::string> location_tags;
  uint8_t ip_version = 4;
  std::string monitor_id;
  uint32_t day = 0;
};

struct ScopeRestriction {
  std::string message_id;
  uint32_t tagger = 0;
  Category category = Category::ActionScopeRestrict;
  std::string scope_note;
  SettableBy settable_by = SettableBy::Unknown;
};

struct LinkEvidence {
  Link link;
  std::vector<Vote> votes;
  std::set<std::pair<std::string, uint32_t>> vote_keys;  // (message, tagger)
  uint32_t dual_meaning_conflicts = 0;
  std::vector<ScopeRestriction> scope_restrictions;
  std::set<std::tuple<std::string, uint32_t, uint32_t>> scope_keys;
  std::map<uint32_t, uint32_t> endpoint_prepend;  // asn -> max prepend seen
  bool no_export_seen = false;
  std::set<uint32_t> observation_days;
  std::set<uint8_t> observation_ip_versions;
  std::set<uint32_t> rs_tag_by;  // endpoints that tagged the other side as RS peering

  void merge(const LinkEvidence& o) {
    for (const Vote& v : o.votes)
      if (vote_keys.insert({v.message_id, v.tagger}).second) votes.push_back(v);
    dual_meaning_conflicts += o.dual_meaning_conflicts;
    for (const ScopeRestriction& s : o.scope_restrictions)
      if (scope_keys.insert({s.message_id, s.tagger, static_cast<uint32_t>(s.category)})
              .second)
        scope_restrictions.push_back(s);
    for (auto [asn, n] : o.endpoint_prepend)
      endpoint_prepend[asn] = std::max(endpoint_prepend[asn], n);
    no_export_seen = no_export_seen || o.no_export_seen;
    observation_days.insert(o.observation_days.begin(), o.observation_days.end());
    observation_ip_versions.insert(o.observation_ip_versions.begin(),
                                   o.observation_ip_versions.end());
    rs_tag_by.insert(o.rs_tag_by.begin(), o.rs_tag_by.end());
  }
};

struct EvidenceMap {
  std::unordered_map<Link, LinkEvidence, LinkHash> links;
  std::set<uint32_t> corpus_days;
  // Adjacent AS triples (prev, mid, next) seen in paths, normalized so that
  // the outer pair is ordered; feeds indirect-peering detection.
  std::set<std::tuple<uint32_t, uint32_t, uint32_t>> triples;
  uint64_t paths = 0;
  uint64_t messages_with_unresolved = 0;

  LinkEvidence& at(Link l) {
    auto& e = links[l];
    e.link = l;
    return e;
  }

  void merge(const EvidenceMap& o) {
    for (const auto& [l, ev] : o.links) at(l).merge(ev);
    corpus_days.insert(o.corpus_days.begin(), o.corpus_days.end());
    triples.insert(o.triples.begin(), o.triples.end());
    paths += o.paths;
    messages_with_unresolved += o.messages_with_unresolved;
  }
};

// Outcome of resolving one (link, tagger, message) group of meanings.
struct Disambiguation {
  enum class Kind : uint8_t { NoRelationship, Resolved, Ambiguous } kind;
  Category category = Category::Other;  // valid when Resolved
};

// Applies the dual-meaning rule: a customer-vs-provider conflict where every
// provider-looking value doubles as a customer-settable prepend action is a
// prepended p2c link (the tagger is the provider). Any other cross-category
// conflict within one message is unresolvable.
inline Disambiguation disambiguate_dual(const std::vector<ResolvedTag>& tags) {
  std::set<Category> rel_cats;
  for (const ResolvedTag& t : tags)
    for (const CommunityMeaning& m : t.meanings)
      if (is_relationship(m.category)) rel_cats.insert(m.category);

  if (rel_cats.empty()) return {Disambiguation::Kind::NoRelationship};
  if (rel_cats.size() == 1)
    return {Disambiguation::Kind::Resolved, *rel_cats.begin()};

  if (rel_cats == std::set<Category>{Category::RelCustomer, Category::RelProvider}) {
    bool all_provider_tags_are_prepend = true;
    for (const ResolvedTag& t : tags) {
      bool has_provider = false, has_customer_settable_prepend = false;
      for (const CommunityMeaning& m : t.meanings) {
        if (m.category == Category::RelProvider) has_provider = true;
        if (m.category == Category::ActionPrepend &&
            m.settable_by == SettableBy::Customer)
          has_customer_settable_prepend = true;
      }
      if (has_provider && !has_customer_settable_prepend)
        all_provider_tags_are_prepend = false;
    }
    if (all_provider_tags_are_prepend)
      return {Disambiguation::Kind::Resolved, Category::RelCustomer};
  }
  return {Disambiguation::Kind::Ambiguous};
}

// Folds one record's classified tags into the evidence map. Votes are
// deduplicated per (message, tagger), so reprocessing a message is a no-op.
inline void accumulate(EvidenceMap& map, const BgpRecord& record,
                       const CleanPath& path, const MessageTags& tags) {
  auto oriented = extract_links(path);
  std::string msg_id = record.message_id();
  uint32_t day = record.day();
  map.corpus_days.insert(day);
  map.paths++;
  if (tags.unresolved > 0) map.messages_with_unresolved++;

  for (size_t i = 0; i + 1 < path.hops.size(); i++)
    if (i > 0)
      map.triples.insert(path.hops[i - 1] < path.hops[i + 1]
                             ? std::make_tuple(path.hops[i - 1], path.hops[i],
                                               path.hops[i + 1])
                             : std::make_tuple(path.hops[i + 1], path.hops[i],
                                               path.hops[i - 1]));

  for (size_t i = 0; i < oriented.size(); i++) {
    LinkEvidence& ev = map.at(oriented[i].link);
    ev.observation_days.insert(day);
    ev.observation_ip_versions.insert(record.ip_version);
    ev.no_export_seen = ev.no_export_seen || tags.no_export;
    for (uint32_t side : {oriented[i].observer_side, oriented[i].origin_side}) {
      auto pos = std::find(path.hops.begin(), path.hops.end(), side);
      uint32_t prep = path.prepend_counts[pos - path.hops.begin()];
      auto& slot = ev.endpoint_prepend[side];
      slot = std::max(slot, prep);
    }

    // Group this link's tags by tagger.
    std::map<uint32_t, std::vector<ResolvedTag>> by_tagger;
    for (const ResolvedTag& t : tags.per_link[i]) by_tagger[t.tagger].push_back(t);

    for (const auto& [tagger, group] : by_tagger) {
      std::set<std::string> locations;
      for (const ResolvedTag& t : group)
        for (const CommunityMeaning& m : t.meanings) {
          if (m.category == Category::TagLocation)
            locations.insert(m.scope_note.empty() ? m.pattern_text : m.scope_note);
          if (m.category == Category::TagRsPeering && oriented[i].link.has(tagger))
            ev.rs_tag_by.insert(tagger);
          if (m.category == Category::ActionScopeRestrict ||
              m.category == Category::ActionNoExportScope) {
            ScopeRestriction s{msg_id, tagger, m.category, m.scope_note,
                               m.settable_by};
            if (ev.scope_keys
                    .insert({s.message_id, s.tagger,
                             static_cast<uint32_t>(s.category)})
                    .second)
              ev.scope_restrictions.push_back(s);
          }
        }

      auto result = disambiguate_dual(group);
      if (result.kind == Disambiguation::Kind::Ambiguous) {
        ev.dual_meaning_conflicts++;
        continue;
      }
      if (result.kind == Disambiguation::Kind::NoRelationship) continue;
      if (!ev.vote_keys.insert({msg_id, tagger}).second) continue;

      // Relationship semantics are the tagger's viewpoint on the link between
      // itself and its neighbour toward the origin.
      uint32_t other = oriented[i].link.has(tagger)
                           ? oriented[i].link.other(tagger)
                           : oriented[i].origin_side;
      uint32_t provider = 0;
      VoteRel rel = VoteRel::Peer;
      switch (result.category) {
        case Category::RelCustomer: provider = tagger; break;
        case Category::RelProvider: provider = other; break;
        case Category::RelPeer: rel = VoteRel::Peer; break;
        case Category::RelSibling: rel = VoteRel::Sibling; break;
        default: continue;
      }
      if (result.category == Category::RelCustomer ||
          result.category == Category::RelProvider)
        rel = provider == oriented[i].link.left ? VoteRel::ProviderLeft
                                                : VoteRel::ProviderRight;
      ev.votes.push_back(Vote{msg_id, tagger, rel, std::move(locations),
                              record.ip_version, record.monitor_id, day});
    }
  }
}

enum class UndecidedReason : uint8_t { NoVotes, InsufficientVotes, Conflict };

struct BaseRel {
  enum class Kind : uint8_t { P2C, P2P, S2S, Hybrid } kind = Kind::P2P;
  uint32_t provider = 0;  // for P2C and the transit component of Hybrid

  bool has_transit() const { return kind == Kind::P2C || kind == Kind::Hybrid; }
  bool operator==(const BaseRel&) const = default;
};

struct BaseResult {
  std::optional<BaseRel> rel;  // nullopt = undecided
  UndecidedReason reason = UndecidedReason::NoVotes;
};

inline BaseResult infer_base(const LinkEvidence& ev, uint32_t min_votes = 1) {
  if (ev.votes.empty()) return {std::nullopt, UndecidedReason::NoVotes};
  if (ev.votes.size() < min_votes)
    return {std::nullopt, UndecidedReason::InsufficientVotes};

  bool provider_left = false, provider_right = false, peer = false, sibling = false;
  for (const Vote& v : ev.votes) {
    switch (v.rel) {
      case VoteRel::ProviderLeft: provider_left = true; break;
      case VoteRel::ProviderRight: provider_right = true; break;
      case VoteRel::Peer: peer = true; break;
      case VoteRel::Sibling: sibling = true; break;
    }
  }
  bool transit = provider_left || provider_right;
  if (sibling && (transit || peer))
    return {std::nullopt, UndecidedReason::Conflict};
  if (provider_left && provider_right)
    return {std::nullopt, UndecidedReason::Conflict};
  if (transit && peer) {
    // Hybrid needs the conflict to span distinct messages.
    bool cross_message = false;
    for (const Vote& a : ev.votes)
      for (const Vote& b : ev.votes)
        if (is_transit_vote(a.rel) && b.rel == VoteRel::Peer &&
            a.message_id != b.message_id)
          cross_message = true;
    if (!cross_message) return {std::nullopt, UndecidedReason::Conflict};
    return {BaseRel{BaseRel::Kind::Hybrid,
                    provider_left ? ev.link.left : ev.link.right}};
  }
  if (transit)
    return {BaseRel{BaseRel::Kind::P2C,
                    provider_left ? ev.link.left : ev.link.right}};
  if (peer) return {BaseRel{BaseRel::Kind::P2P}};
  return {BaseRel{BaseRel::Kind::S2S}};
}

enum class HybridKind : uint8_t { IpVersion, Location, Both, Unexplained };

inline std::optional<HybridKind> detect_hybrid(const LinkEvidence& ev,
                                               const BaseResult& base) {
  if (!base.rel || base.rel->kind != BaseRel::Kind::Hybrid) return std::nullopt;
  std::set<uint8_t> transit_ip, peer_ip;
  std::set<std::string> transit_loc, peer_loc;
  for (const Vote& v : ev.votes) {
    if (is_transit_vote(v.rel)) {
      transit_ip.insert(v.ip_version);
      transit_loc.insert(v.location_tags.begin(), v.location_tags.end());
    } else if (v.rel == VoteRel::Peer) {
      peer_ip.insert(v.ip_version);
      peer_loc.insert(v.location_tags.begin(), v.location_tags.end());
    }
  }
  auto disjoint = [](const auto& a, const auto& b) {
    for (const auto& x : a)
      if (b.count(x)) return false;
    return true;
  };
  bool by_ip = !transit_ip.empty() && !peer_ip.empty() && disjoint(transit_ip, peer_ip);
  bool by_loc =
      !transit_loc.empty() && !peer_loc.empty() && disjoint(transit_loc, peer_loc);
  if (by_ip && by_loc) return HybridKind::Both;
  if (by_ip) return HybridKind::IpVersion;
  if (by_loc) return HybridKind::Location;
  return HybridKind::Unexplained;
}

inline bool detect_partial_transit(const LinkEvidence& ev, const BaseResult& base) {
  if (!base.rel || !base.rel->has_transit()) return false;
  for (const ScopeRestriction& s : ev.scope_restrictions) {
    if (s.settable_by != SettableBy::Customer && s.settable_by != SettableBy::Any)
      continue;
    // The restricting value is defined by the provider and set by the
    // customer on routes through that provider.
    if (s.tagger == base.rel->provider) return true;
  }
  return false;
}

inline uint32_t longest_consecutive_run(const std::set<uint32_t>& days) {
  uint32_t best = 0, run = 0, prev = 0;
  bool first = true;
  for (uint32_t d : days) {
    run = (!first && d == prev + 1) ? run + 1 : 1;
    best = std::max(best, run);
    prev = d;
    first = false;
  }
  return best;
}

struct BackupFlags {
  bool prepend = false;
  bool no_export = false;
};

inline BackupFlags detect_backup(const LinkEvidence& ev, const BaseResult& base,
                                 uint32_t prepend_threshold = 2,
                                 uint32_t max_run_days = 5) {
  BackupFlags out;
  if (!base.rel || !base.rel->has_transit()) return out;
  uint32_t customer = ev.link.other(base.rel->provider);
  auto it = ev.endpoint_prepend.find(customer);
  bool prepended = it != ev.endpoint_prepend.end() && it->second >= prepend_threshold;
  if (prepended && longest_consecutive_run(ev.observation_days) < max_run_days)
    out.prepend = true;
  if (ev.no_export_seen) {
    out.no_export = true;
  } else {
    for (const ScopeRestriction& s : ev.scope_restrictions)
      if (s.category == Category::ActionNoExportScope && s.scope_note.empty())
        out.no_export = true;  // full-scope no-export
  }
  return out;
}

struct IndirectPair {
  uint32_t a = 0, route_server = 0, b = 0;  // a < b
  auto operator<=>(const IndirectPair&) const = default;
};

// A-R-B adjacent in some path, both physical links p2p, and both endpoints
// tagged the route server as IXP/route-server peering.
inline std::set<IndirectPair> detect_indirect_peering(
    const EvidenceMap& map,
    const std::unordered_map<Link, BaseResult, LinkHash>& bases) {
  std::set<IndirectPair> out;
  auto is_p2p = [&](Link l) {
    auto it = bases.find(l);
    return it != bases.end() && it->second.rel &&
           it->second.rel->kind == BaseRel::Kind::P2P;
  };
  for (const auto& [a, r, b] : map.triples) {
    Link ar(a, r), rb(r, b);
    if (!is_p2p(ar) || !is_p2p(rb)) continue;
    auto ita = map.links.find(ar);
    auto itb = map.links.find(rb);
    if (ita == map.links.end() || itb == map.links.end()) continue;
    if (ita->second.rs_tag_by.count(a) && itb->second.rs_tag_by.count(b))
      out.insert({a, r, b});
  }
  return out;
}

enum class Provenance : uint8_t { Communities, LocPrf, Both };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Communities: return "COMMUNITIES";
    case Provenance::LocPrf: return "LOCPRF";
    case Provenance::Both: return "BOTH";
  }
  return "?";
}

struct RelInference {
  Link link;
  BaseRel base;
  std::optional<HybridKind> hybrid_kind;
  bool partial_transit = false;
  bool backup_prepend = false;
  bool backup_noexport = false;
  std::vector<uint32_t> indirect_partners;  // far AS across the route server
  Provenance provenance = Provenance::Communities;
  std::map<VoteRel, uint32_t> vote_counts;
  std::vector<std::string> audit;

  // Type invariants, checked on emission.
  bool valid() const {
    if ((partial_transit || backup_prepend || backup_noexport) &&
        !base.has_transit())
      return false;
    if (!indirect_partners.empty() && base.kind != BaseRel::Kind::P2P)
      return false;
    return true;
  }
};

struct EngineConfig {
  uint32_t min_votes = 1;
  uint32_t prepend_threshold = 2;
  uint32_t backup_max_run_days = 5;
};

struct EngineOutput {
  std::map<Link, RelInference> inferred;
  std::map<Link, UndecidedReason> undecided;
  std::set<IndirectPair> indirect_pairs;
};

// Full Communities-side detection pass over accumulated evidence.
inline EngineOutput run_engine(const EvidenceMap& map,
                               const EngineConfig& cfg = {}) {
  EngineOutput out;
  std::unordered_map<Link, BaseResult, LinkHash> bases;
  for (const auto& [link, ev] : map.links)
    bases[link] = infer_base(ev, cfg.min_votes);

  out.indirect_pairs = detect_indirect_peering(map, bases);
  std::unordered_map<Link, std::vector<uint32_t>, LinkHash> partners;
  for (const IndirectPair& p : out.indirect_pairs) {
    partners[Link(p.a, p.route_server)].push_back(p.b);
    partners[Link(p.route_server, p.b)].push_back(p.a);
  }

  for (const auto& [link, ev] : map.links) {
    const BaseResult& base = bases[link];
    if (!base.rel) {
      if (base.reason != UndecidedReason::NoVotes)
        out.undecided[link] = base.reason;
      continue;
    }
    RelInference inf;
    inf.link = link;
    inf.base = *base.rel;
    inf.hybrid_kind = detect_hybrid(ev, base);
    inf.partial_transit = detect_partial_transit(ev, base);
    auto backup = detect_backup(ev, base, cfg.prepend_threshold,
                                cfg.backup_max_run_days);
    inf.backup_prepend = backup.prepend;
    inf.backup_noexport = backup.no_export;
    if (auto it = partners.find(link); it != partners.end()) {
      inf.indirect_partners = it->second;
      std::sort(inf.indirect_partners.begin(), inf.indirect_partners.end());
    }
    for (const Vote& v : ev.votes) inf.vote_counts[v.rel]++;
    out.inferred[link] = std::move(inf);
  }
  return out;
}

}  // namespace bgprel
