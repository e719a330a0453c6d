#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bgprel/path.hpp"
#include "bgprel/types.hpp"

namespace bgprel {

enum class Category : uint8_t {
  RelCustomer,       // tagger received the route from a customer
  RelPeer,
  RelProvider,
  RelSibling,
  ActionPrepend,
  ActionScopeRestrict,
  ActionNoExportScope,
  TagLocation,
  TagRsPeering,
  Other,
};

inline bool is_relationship(Category c) {
  return c == Category::RelCustomer || c == Category::RelPeer ||
         c == Category::RelProvider || c == Category::RelSibling;
}

inline const char* category_name(Category c) {
  switch (c) {
    case Category::RelCustomer: return "REL_CUSTOMER";
    case Category::RelPeer: return "REL_PEER";
    case Category::RelProvider: return "REL_PROVIDER";
    case Category::RelSibling: return "REL_SIBLING";
    case Category::ActionPrepend: return "ACTION_PREPEND";
    case Category::ActionScopeRestrict: return "ACTION_SCOPE_RESTRICT";
    case Category::ActionNoExportScope: return "ACTION_NO_EXPORT_SCOPE";
    case Category::TagLocation: return "TAG_LOCATION";
    case Category::TagRsPeering: return "TAG_RS_PEERING";
    case Category::Other: return "OTHER";
  }
  return "?";
}

inline std::optional<Category> category_from_name(const std::string& s) {
  static const std::unordered_map<std::string, Category> m = {
      {"REL_CUSTOMER", Category::RelCustomer},
      {"REL_PEER", Category::RelPeer},
      {"REL_PROVIDER", Category::RelProvider},
      {"REL_SIBLING", Category::RelSibling},
      {"ACTION_PREPEND", Category::ActionPrepend},
      {"ACTION_SCOPE_RESTRICT", Category::ActionScopeRestrict},
      {"ACTION_NO_EXPORT_SCOPE", Category::ActionNoExportScope},
      {"TAG_LOCATION", Category::TagLocation},
      {"TAG_RS_PEERING", Category::TagRsPeering},
      {"OTHER", Category::Other},
  };
  auto it = m.find(s);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

enum class SettableBy : uint8_t { Owner, Customer, Any, Unknown };

inline const char* settable_name(SettableBy s) {
  switch (s) {
    case SettableBy::Owner: return "OWNER";
    case SettableBy::Customer: return "CUSTOMER";
    case SettableBy::Any: return "ANY";
    case SettableBy::Unknown: return "UNKNOWN";
  }
  return "?";
}

inline std::optional<SettableBy> settable_from_name(const std::string& s) {
  if (s == "OWNER") return SettableBy::Owner;
  if (s == "CUSTOMER") return SettableBy::Customer;
  if (s == "ANY") return SettableBy::Any;
  if (s == "UNKNOWN" || s.empty()) return SettableBy::Unknown;
  return std::nullopt;
}

enum class MeaningSource : uint8_t { Irr, Noc, Manual };

// Pattern over the 16-bit value part of a community:
//  - exact:        "612"
//  - fixed-width:  "1***"  (width 4, values 1000..1999)
//  - any-width:    "1*"    (any value whose decimal form starts with "1")
struct ValuePattern {
  enum class Kind : uint8_t { Exact, FixedWidth, AnyWidth } kind = Kind::Exact;
  uint16_t exact = 0;
  std::string prefix;  // decimal prefix digits for wildcards
  uint8_t width = 0;   // total decimal width for FixedWidth

  bool matches(uint16_t value) const {
    std::string dec = std::to_string(value);
    switch (kind) {
      case Kind::Exact: return value == exact;
      case Kind::FixedWidth:
        return dec.size() == width && dec.compare(0, prefix.size(), prefix) == 0;
      case Kind::AnyWidth:
        return dec.compare(0, std::min(dec.size(), prefix.size()), prefix) == 0 &&
               dec.size() >= prefix.size();
    }
    return false;
  }

  bool operator==(const ValuePattern&) const = default;
};

struct CommunityMeaning {
  uint32_t owner_asn = 0;
  ValuePattern pattern;
  std::string pattern_text;  // as loaded, e.g. "1273:1***"
  Category category = Category::Other;
  SettableBy settable_by = SettableBy::Unknown;
  std::string scope_note;
  MeaningSource source = MeaningSource::Manual;
};

struct DictionaryLoadError : DataError {
  size_t row;
  DictionaryLoadError(const std::string& what, size_t row_no)
      : DataError("dictionary row " + std::to_string(row_no) + ": " + what),
        row(row_no) {}
};

namespace dict_detail {

inline std::optional<std::pair<uint32_t, ValuePattern>> parse_pattern(
    const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  if (text.find(':', colon + 1) != std::string::npos) return std::nullopt;
  uint64_t asn = 0;
  try {
    size_t used;
    asn = std::stoull(text.substr(0, colon), &used);
    if (used != colon) return std::nullopt;
  } catch (...) {
    return std::nullopt;
  }
  std::string val = text.substr(colon + 1);
  if (val.empty()) return std::nullopt;
  size_t star = val.find('*');
  ValuePattern p;
  if (star == std::string::npos) {
    uint64_t v;
    try {
      size_t used;
      v = std::stoull(val, &used);
      if (used != val.size()) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
    if (v > 0xFFFF) return std::nullopt;
    p.kind = ValuePattern::Kind::Exact;
    p.exact = static_cast<uint16_t>(v);
  } else {
    std::string prefix = val.substr(0, star);
    std::string stars = val.substr(star);
    if (!std::all_of(prefix.begin(), prefix.end(), ::isdigit)) return std::nullopt;
    if (stars.find_first_not_of('*') != std::string::npos) return std::nullopt;
    if (prefix.empty() && stars.size() < 2) return std::nullopt;
    p.prefix = prefix;
    if (stars.size() == 1) {
      p.kind = ValuePattern::Kind::AnyWidth;  // "PREFIX*" variable-width form
    } else {
      p.kind = ValuePattern::Kind::FixedWidth;
      size_t width = prefix.size() + stars.size();
      if (width > 5) return std::nullopt;
      p.width = static_cast<uint8_t>(width);
    }
  }
  return std::make_pair(static_cast<uint32_t>(asn), p);
}

}  // namespace dict_detail

// User-supplied Communities meanings, indexed per owner AS. Resolution order
// is exact entries first, then wildcards with longer prefixes.
class Dictionary {
 public:
  struct LoadStats {
    size_t entries = 0;
    size_t ignored_large_communities = 0;
  };

  void add(CommunityMeaning m, size_t row = 0) {
    auto& bucket = by_owner_[m.owner_asn];
    if (m.pattern.kind == ValuePattern::Kind::Exact) {
      for (const CommunityMeaning& e : bucket)
        if (e.pattern == m.pattern)
          throw DictionaryLoadError(
              "duplicate exact pattern " + m.pattern_text + " (conflicts with " +
                  category_name(e.category) + ")",
              row);
    } else {
      for (const CommunityMeaning& e : bucket)
        if (e.pattern == m.pattern) dual_meaning_asns_.insert(m.owner_asn);
    }
    bucket.push_back(std::move(m));
    sort_bucket(bucket);
  }

  // Returns every meaning owned by `asn` matching the community's value part,
  // in resolution order. Multiple entries signal a dual meaning.
  std::vector<CommunityMeaning> resolve(uint32_t asn, uint32_t community) const {
    std::vector<CommunityMeaning> out;
    if (community_asn(community) != asn || asn > 0xFFFF) return out;
    auto it = by_owner_.find(asn);
    if (it == by_owner_.end()) return out;
    uint16_t value = community_value(community);
    for (const CommunityMeaning& m : it->second)
      if (m.pattern.matches(value)) out.push_back(m);
    return out;
  }

  bool knows(uint32_t asn) const { return by_owner_.count(asn) > 0; }
  const std::unordered_set<uint32_t>& dual_meaning_asns() const {
    return dual_meaning_asns_;
  }
  size_t size() const {
    size_t n = 0;
    for (const auto& [asn, v] : by_owner_) n += v.size();
    return n;
  }

  // TSV: owner_asn, pattern, category, settable_by, scope_note, source.
  static Dictionary load(std::istream& in, LoadStats* stats = nullptr) {
    Dictionary d;
    std::string line;
    size_t row = 0;
    LoadStats local;
    while (std::getline(in, line)) {
      row++;
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cols;
      std::istringstream ls(line);
      std::string col;
      while (std::getline(ls, col, '\t')) cols.push_back(col);
      while (cols.size() < 6) cols.emplace_back();
      if (cols.size() > 6) throw DictionaryLoadError("too many columns", row);

      if (std::count(cols[1].begin(), cols[1].end(), ':') > 1) {
        local.ignored_large_communities++;  // large community row
        continue;
      }
      CommunityMeaning m;
      try {
        m.owner_asn = static_cast<uint32_t>(std::stoull(cols[0]));
      } catch (...) {
        throw DictionaryLoadError("bad owner ASN: " + cols[0], row);
      }
      auto parsed = dict_detail::parse_pattern(cols[1]);
      if (!parsed) throw DictionaryLoadError("bad pattern: " + cols[1], row);
      if (parsed->first != m.owner_asn)
        throw DictionaryLoadError("pattern ASN does not match owner", row);
      m.pattern = parsed->second;
      m.pattern_text = cols[1];
      auto cat = category_from_name(cols[2]);
      if (!cat) throw DictionaryLoadError("unknown category: " + cols[2], row);
      m.category = *cat;
      auto settable = settable_from_name(cols[3]);
      if (!settable)
        throw DictionaryLoadError("unknown settable_by: " + cols[3], row);
      m.settable_by = *settable;
      m.scope_note = cols[4];
      if (cols[5] == "NOC")
        m.source = MeaningSource::Noc;
      else if (cols[5] == "MANUAL" || cols[5].empty())
        m.source = MeaningSource::Manual;
      else if (cols[5] == "IRR")
        m.source = MeaningSource::Irr;
      else
        throw DictionaryLoadError("unknown source: " + cols[5], row);
      if (m.category == Category::Other && m.scope_note.empty())
        throw DictionaryLoadError("OTHER entry without semantics", row);
      d.add(std::move(m), row);
      local.entries++;
    }
    if (stats) *stats = local;
    return d;
  }

  static Dictionary load_file(const std::string& path, LoadStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dictionary: " + path);
    return load(in, stats);
  }

 private:
  static void sort_bucket(std::vector<CommunityMeaning>& bucket) {
    std::stable_sort(bucket.begin(), bucket.end(),
                     [](const CommunityMeaning& a, const CommunityMeaning& b) {
                       auto rank = [](const CommunityMeaning& m) {
                         switch (m.pattern.kind) {
                           case ValuePattern::Kind::Exact: return 0;
                           case ValuePattern::Kind::FixedWidth: return 1;
                           case ValuePattern::Kind::AnyWidth: return 2;
                         }
                         return 3;
                       };
                       if (rank(a) != rank(b)) return rank(a) < rank(b);
                       if (a.pattern.prefix.size() != b.pattern.prefix.size())
                         return a.pattern.prefix.size() > b.pattern.prefix.size();
                       return a.pattern_text < b.pattern_text;
                     });
  }

  std::map<uint32_t, std::vector<CommunityMeaning>> by_owner_;
  std::unordered_set<uint32_t> dual_meaning_asns_;
};

// One community resolved against the dictionary, attributed to a link.
struct ResolvedTag {
  uint32_t community = 0;
  uint32_t tagger = 0;  // owner AS
  std::vector<CommunityMeaning> meanings;
};

struct MessageTags {
  // Parallel to extract_links(path): meanings attributed to each link.
  std::vector<std::vector<ResolvedTag>> per_link;
  std::vector<ResolvedTag> path_level;  // tagger not on the path
  size_t unresolved = 0;                // communities with no dictionary entry
  size_t unattributable = 0;            // resolved but no link to attach to
  bool no_export = false;
};

// Attributes each community A:v to the link between A and A's path neighbour
// toward the origin. Tags from the observing peer when it stripped itself
// from the path attach to the first link; tags from other off-path ASes stay
// path-level and never vote.
inline MessageTags classify_message_tags(const CleanPath& path,
                                         const BgpRecord& record,
                                         const Dictionary& dict) {
  MessageTags out;
  out.per_link.resize(path.hops.size() > 0 ? path.hops.size() - 1 : 0);
  out.no_export = record.has_no_export();

  for (uint32_t c : record.communities) {
    if (is_well_known(c)) continue;
    uint32_t asn = community_asn(c);
    auto meanings = dict.resolve(asn, c);
    if (meanings.empty()) {
      out.unresolved++;
      continue;
    }
    ResolvedTag tag{c, asn, std::move(meanings)};
    auto pos = std::find(path.hops.begin(), path.hops.end(), asn);
    if (pos != path.hops.end()) {
      size_t idx = static_cast<size_t>(pos - path.hops.begin());
      if (idx + 1 < path.hops.size()) {
        out.per_link[idx].push_back(std::move(tag));  // link toward origin
      } else {
        // Origin AS has no origin-side neighbour; keep path-level.
        out.path_level.push_back(std::move(tag));
        out.unattributable++;
      }
    } else if (asn == record.peer_asn && !out.per_link.empty()) {
      out.per_link[0].push_back(std::move(tag));
    } else {
      out.path_level.push_back(std::move(tag));
      out.unattributable++;
    }
  }
  return out;
}

}  // namespace bgprel
