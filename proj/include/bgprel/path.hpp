#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "bgprel/types.hpp"

namespace bgprel {

// ASNs that must never appear in a clean path. Default per the usual BGP
// data-cleaning convention: AS_TRANS plus the 56320-65535 private block.
class RejectedAsnSet {
 public:
  static RejectedAsnSet standard() {
    RejectedAsnSet s;
    s.add(23456);
    s.add_range(56320, 65535);
    return s;
  }

  void add(uint32_t asn) { singles_.insert(asn); }
  void add_range(uint32_t lo, uint32_t hi) { ranges_.emplace_back(lo, hi); }

  bool contains(uint32_t asn) const {
    if (singles_.count(asn)) return true;
    for (auto [lo, hi] : ranges_)
      if (asn >= lo && asn <= hi) return true;
    return false;
  }

 private:
  std::unordered_set<uint32_t> singles_;
  std::vector<std::pair<uint32_t, uint32_t>> ranges_;
};

enum class PathReject : uint8_t { ReservedAsn, Cycle, AsSet, Empty };

inline const char* path_reject_name(PathReject r) {
  switch (r) {
    case PathReject::ReservedAsn: return "RESERVED_ASN";
    case PathReject::Cycle: return "CYCLE";
    case PathReject::AsSet: return "AS_SET";
    case PathReject::Empty: return "EMPTY";
  }
  return "?";
}

// AS path with prepending collapsed; hops[0] is the observing peer side.
struct CleanPath {
  std::vector<uint32_t> hops;
  std::vector<uint32_t> prepend_counts;  // parallel to hops, each >= 1

  uint32_t origin_asn() const { return hops.back(); }
  bool operator==(const CleanPath&) const = default;
};

// Collapses prepending and rejects paths containing reserved ASNs, cycles or
// AS_SET segments.
inline std::variant<CleanPath, PathReject> sanitize(
    const std::vector<PathSegment>& raw,
    const RejectedAsnSet& rejected = RejectedAsnSet::standard()) {
  CleanPath out;
  for (const PathSegment& seg : raw) {
    if (seg.type == SegmentType::Set) return PathReject::AsSet;
    for (uint32_t asn : seg.asns) {
      if (rejected.contains(asn)) return PathReject::ReservedAsn;
      if (!out.hops.empty() && out.hops.back() == asn) {
        out.prepend_counts.back()++;
      } else {
        out.hops.push_back(asn);
        out.prepend_counts.push_back(1);
      }
    }
  }
  if (out.hops.empty()) return PathReject::Empty;
  std::unordered_set<uint32_t> seen;
  for (uint32_t asn : out.hops)
    if (!seen.insert(asn).second) return PathReject::Cycle;
  return out;
}

inline std::variant<CleanPath, PathReject> sanitize(
    const std::vector<uint32_t>& flat,
    const RejectedAsnSet& rejected = RejectedAsnSet::standard()) {
  PathSegment seg;
  seg.asns = flat;
  return sanitize(std::vector<PathSegment>{seg}, rejected);
}

struct OrientedLink {
  Link link;
  uint32_t observer_side;  // the endpoint nearer the observing peer
  uint32_t origin_side;
};

// One link per adjacent hop pair, in path order.
inline std::vector<OrientedLink> extract_links(const CleanPath& p) {
  std::vector<OrientedLink> out;
  for (size_t i = 0; i + 1 < p.hops.size(); i++)
    out.push_back({Link(p.hops[i], p.hops[i + 1]), p.hops[i], p.hops[i + 1]});
  return out;
}

// ASN -> max prepend count, for hops repeated more than once.
inline std::map<uint32_t, uint32_t> prepend_signature(const CleanPath& p) {
  std::map<uint32_t, uint32_t> out;
  for (size_t i = 0; i < p.hops.size(); i++)
    if (p.prepend_counts[i] > 1)
      out[p.hops[i]] = std::max(out[p.hops[i]], p.prepend_counts[i]);
  return out;
}

}  // namespace bgprel
