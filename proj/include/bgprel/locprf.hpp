#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bgprel/engine.hpp"
#include "bgprel/path.hpp"
#include "bgprel/types.hpp"

namespace bgprel {

// Category of the routes a LocPrf value is applied to, from the observer's
// viewpoint: customer routes get the highest preference, provider routes the
// lowest.
enum class RouteCategory : uint8_t { CustomerRoute, PeerRoute, ProviderRoute };

inline const char* route_category_name(RouteCategory c) {
  switch (c) {
    case RouteCategory::CustomerRoute: return "customer-route";
    case RouteCategory::PeerRoute: return "peer-route";
    case RouteCategory::ProviderRoute: return "provider-route";
  }
  return "?";
}

struct LocPrfObservation {
  uint32_t observer_asn = 0;
  uint32_t neighbor_asn = 0;
  uint32_t locprf = 0;
  CleanPath path;
  Prefix prefix;
};

struct RsDump {
  uint32_t observer_asn = 0;
  std::optional<uint32_t> default_locprf;
  uint64_t date_epoch = 0;
  std::vector<LocPrfObservation> observations;
  uint64_t skipped_lines = 0;
};

// Normalized route-server table dump:
//   OBSERVER_ASN: 65001
//   DEFAULT_LOCPRF: 100     (optional)
//   DATE: 20100801          (optional)
//   prefix | locprf | as-path
inline RsDump parse_rs_dump(std::istream& in,
                            const RejectedAsnSet& rejected = RejectedAsnSet::standard()) {
  RsDump dump;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.starts_with("OBSERVER_ASN:")) {
      dump.observer_asn = static_cast<uint32_t>(std::stoull(line.substr(13)));
      continue;
    }
    if (line.starts_with("DEFAULT_LOCPRF:")) {
      dump.default_locprf = static_cast<uint32_t>(std::stoull(line.substr(15)));
      continue;
    }
    if (line.starts_with("DATE:")) {
      std::string d = line.substr(5);
      d.erase(std::remove(d.begin(), d.end(), ' '), d.end());
      std::tm parts{};
      if (d.size() == 8) {
        parts.tm_year = std::stoi(d.substr(0, 4)) - 1900;
        parts.tm_mon = std::stoi(d.substr(4, 2)) - 1;
        parts.tm_mday = std::stoi(d.substr(6, 2));
        dump.date_epoch = static_cast<uint64_t>(timegm(&parts));
      }
      continue;
    }
    // prefix | locprf | as-path
    std::vector<std::string> cols;
    {
      std::istringstream ls(line);
      std::string col;
      while (std::getline(ls, col, '|')) cols.push_back(col);
    }
    if (cols.size() != 3) {
      dump.skipped_lines++;
      continue;
    }
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t");
      size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    LocPrfObservation obs;
    obs.observer_asn = dump.observer_asn;
    auto prefix = Prefix::parse(trim(cols[0]));
    if (!prefix) {
      dump.skipped_lines++;
      continue;
    }
    obs.prefix = *prefix;
    std::string lp = trim(cols[1]);
    if (lp.empty()) {
      if (!dump.default_locprf) {
        dump.skipped_lines++;
        continue;
      }
      obs.locprf = *dump.default_locprf;
    } else {
      try {
        obs.locprf = static_cast<uint32_t>(std::stoull(lp));
      } catch (...) {
        dump.skipped_lines++;
        continue;
      }
    }
    std::vector<uint32_t> hops;
    {
      std::istringstream ps(cols[2]);
      std::string tok;
      bool bad = false;
      while (ps >> tok) {
        try {
          hops.push_back(static_cast<uint32_t>(std::stoull(tok)));
        } catch (...) {
          bad = true;
        }
      }
      if (bad || hops.empty()) {
        dump.skipped_lines++;
        continue;
      }
    }
    // The observer may or may not strip itself from the path; drop its own
    // hop before hygiene so a private-ASN route server does not reject every
    // row it emits.
    while (!hops.empty() && hops.front() == dump.observer_asn)
      hops.erase(hops.begin());
    if (hops.empty()) {
      dump.skipped_lines++;
      continue;
    }
    auto cleaned = sanitize(hops, rejected);
    if (std::holds_alternative<PathReject>(cleaned)) {
      dump.skipped_lines++;
      continue;
    }
    obs.path = std::get<CleanPath>(cleaned);
    obs.neighbor_asn = obs.path.hops[0];
    dump.observations.push_back(std::move(obs));
  }
  return dump;
}

struct LocPrfProfile {
  uint32_t observer_asn = 0;
  // value -> neighbors that the observer assigned it to, and path count
  std::map<uint32_t, std::set<uint32_t>> value_neighbors;
  std::map<uint32_t, uint64_t> path_count;

  uint64_t link_count(uint32_t value) const {
    auto it = value_neighbors.find(value);
    return it == value_neighbors.end() ? 0 : it->second.size();
  }
};

inline LocPrfProfile build_profile(const std::vector<LocPrfObservation>& obs) {
  LocPrfProfile p;
  for (const LocPrfObservation& o : obs) {
    p.observer_asn = o.observer_asn;
    p.value_neighbors[o.locprf].insert(o.neighbor_asn);
    p.path_count[o.locprf]++;
  }
  return p;
}

struct NoDefaults {};

// Ranks values by link frequency (path frequency, then larger value, as
// tiebreaks) and keeps the shortest dominant prefix: the last kept value's
// link count must be at least dominance_ratio times the first excluded one.
// At least 2 values are kept when available, at most 5 ever.
inline std::variant<std::vector<uint32_t>, NoDefaults> select_defaults(
    const LocPrfProfile& profile, double dominance_ratio = 4.0) {
  struct Row {
    uint32_t value;
    uint64_t links, paths;
  };
  std::vector<Row> rows;
  for (const auto& [v, neighbors] : profile.value_neighbors) {
    uint64_t paths = 0;
    if (auto it = profile.path_count.find(v); it != profile.path_count.end())
      paths = it->second;
    rows.push_back({v, static_cast<uint64_t>(neighbors.size()), paths});
  }
  if (rows.empty()) return NoDefaults{};
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.links != b.links) return a.links > b.links;
    if (a.paths != b.paths) return a.paths > b.paths;
    return a.value > b.value;
  });
  size_t n = rows.size();
  for (size_t k = std::min<size_t>(2, n); k <= std::min<size_t>(5, n); k++) {
    if (k == n ||
        static_cast<double>(rows[k - 1].links) >=
            dominance_ratio * static_cast<double>(rows[k].links)) {
      std::vector<uint32_t> out;
      for (size_t i = 0; i < k; i++) out.push_back(rows[i].value);
      return out;
    }
  }
  return NoDefaults{};
}

struct DefaultMapping {
  // value -> route category; includes both defaults and near-default
  // extensions (extended values carry reduced preference).
  std::map<uint32_t, RouteCategory> defaults;
  std::map<uint32_t, RouteCategory> extended;
  std::vector<std::string> exceptions;  // Communities contradicting the ordering
  std::vector<uint32_t> dropped;

  std::optional<RouteCategory> category(uint32_t value) const {
    if (auto it = defaults.find(value); it != defaults.end()) return it->second;
    if (auto it = extended.find(value); it != extended.end()) return it->second;
    return std::nullopt;
  }
};

// Assigns each default value a route category: majority vote over
// Communities-labeled links carrying the value, ordering (largest ->
// customer, smallest -> provider, middle -> peer when exactly 3) as
// fallback. A label that contradicts the ordering wins and is recorded as an
// exception.
inline DefaultMapping map_defaults(
    const LocPrfProfile& profile, const std::vector<uint32_t>& defaults,
    const std::map<uint32_t, RouteCategory>& neighbor_labels) {
  DefaultMapping out;
  if (defaults.empty()) return out;

  std::vector<uint32_t> by_value = defaults;
  std::sort(by_value.begin(), by_value.end());
  std::map<uint32_t, RouteCategory> ordering;
  ordering[by_value.back()] = RouteCategory::CustomerRoute;
  if (by_value.size() >= 2) ordering[by_value.front()] = RouteCategory::ProviderRoute;
  if (by_value.size() == 3) ordering[by_value[1]] = RouteCategory::PeerRoute;

  std::map<uint32_t, bool> from_label;
  for (uint32_t v : defaults) {
    std::map<RouteCategory, size_t> counts;
    size_t labeled = 0;
    if (auto it = profile.value_neighbors.find(v); it != profile.value_neighbors.end())
      for (uint32_t n : it->second)
        if (auto lit = neighbor_labels.find(n); lit != neighbor_labels.end()) {
          counts[lit->second]++;
          labeled++;
        }
    std::optional<RouteCategory> majority;
    for (auto [cat, c] : counts)
      if (c * 2 > labeled) majority = cat;

    if (majority) {
      out.defaults[v] = *majority;
      from_label[v] = true;
      if (auto oit = ordering.find(v); oit != ordering.end() && oit->second != *majority)
        out.exceptions.push_back("LocPrf " + std::to_string(v) + " of AS" +
                                 std::to_string(profile.observer_asn) +
                                 " is majority " + route_category_name(*majority) +
                                 " against ordering " +
                                 route_category_name(oit->second));
    } else if (auto oit = ordering.find(v); oit != ordering.end()) {
      out.defaults[v] = oit->second;
      from_label[v] = false;
    }
    // middle defaults of a >3-value profile stay unmapped without labels
  }

  // A category claimed by several defaults is only kept when every claimant
  // was label-derived; ordering cannot tell them apart.
  std::map<RouteCategory, std::vector<uint32_t>> by_cat;
  for (auto [v, cat] : out.defaults) by_cat[cat].push_back(v);
  for (auto& [cat, values] : by_cat) {
    if (values.size() < 2) continue;
    bool all_labeled =
        std::all_of(values.begin(), values.end(), [&](uint32_t v) { return from_label[v]; });
    if (!all_labeled)
      for (uint32_t v : values) {
        out.defaults.erase(v);
        out.dropped.push_back(v);
      }
  }
  return out;
}

// Extends the mapping to near-default values: a non-default value inherits a
// default's category when the neighbors using it mostly use that default too,
// the value is close to it, the nearest default is unambiguous, and the
// Communities labels do not contradict the inherited category.
inline void extend_near_defaults(
    const LocPrfProfile& profile, DefaultMapping& mapping,
    const std::map<uint32_t, RouteCategory>& neighbor_labels,
    double proximity_abs = 10.0, double proximity_pct = 5.0) {
  for (const auto& [v, neighbors] : profile.value_neighbors) {
    if (mapping.defaults.count(v)) continue;

    // Anchor: the mapped default shared by a majority of v's neighbors.
    std::optional<uint32_t> anchor;
    for (const auto& [d, cat] : mapping.defaults) {
      auto dit = profile.value_neighbors.find(d);
      if (dit == profile.value_neighbors.end()) continue;
      size_t shared = 0;
      for (uint32_t n : neighbors)
        if (dit->second.count(n)) shared++;
      if (shared * 2 > neighbors.size()) anchor = d;
    }
    if (!anchor) continue;

    double bound = std::max(proximity_abs, proximity_pct / 100.0 * *anchor);
    double dist = std::abs(static_cast<double>(v) - static_cast<double>(*anchor));
    if (dist > bound) continue;

    // The anchor must be strictly the nearest default.
    bool nearest = true;
    for (const auto& [d, cat] : mapping.defaults)
      if (d != *anchor &&
          std::abs(static_cast<double>(v) - static_cast<double>(d)) <= dist)
        nearest = false;
    if (!nearest) continue;

    RouteCategory cat = mapping.defaults.at(*anchor);
    // Re-verify against Communities labels; discrepancy discards.
    std::map<RouteCategory, size_t> counts;
    size_t labeled = 0;
    for (uint32_t n : neighbors)
      if (auto lit = neighbor_labels.find(n); lit != neighbor_labels.end()) {
        counts[lit->second]++;
        labeled++;
      }
    bool contradicted = false;
    for (auto [c, k] : counts)
      if (c != cat && k * 2 > labeled) contradicted = true;
    if (contradicted) continue;

    mapping.extended[v] = cat;
  }
}

// Transit/peering verdicts per observer-neighbor link; every observed value
// must fall in one category or the link yields nothing. LocPrf alone never
// claims siblings, hybrids or special flags.
inline std::vector<RelInference> infer_from_locprf(
    const std::vector<LocPrfObservation>& obs, const DefaultMapping& mapping) {
  std::map<uint32_t, std::set<uint32_t>> neighbor_values;
  uint32_t observer = 0;
  for (const LocPrfObservation& o : obs) {
    neighbor_values[o.neighbor_asn].insert(o.locprf);
    observer = o.observer_asn;
  }
  std::vector<RelInference> out;
  for (const auto& [neighbor, values] : neighbor_values) {
    if (neighbor == observer) continue;
    std::set<RouteCategory> cats;
    bool unmapped = false;
    for (uint32_t v : values) {
      auto c = mapping.category(v);
      if (!c)
        unmapped = true;
      else
        cats.insert(*c);
    }
    if (unmapped || cats.size() != 1) continue;
    RelInference inf;
    inf.link = Link(observer, neighbor);
    inf.provenance = Provenance::LocPrf;
    switch (*cats.begin()) {
      case RouteCategory::CustomerRoute:
        inf.base = BaseRel{BaseRel::Kind::P2C, observer};
        break;
      case RouteCategory::ProviderRoute:
        inf.base = BaseRel{BaseRel::Kind::P2C, neighbor};
        break;
      case RouteCategory::PeerRoute:
        inf.base = BaseRel{BaseRel::Kind::P2P};
        break;
    }
    out.push_back(std::move(inf));
  }
  return out;
}

}  // namespace bgprel
