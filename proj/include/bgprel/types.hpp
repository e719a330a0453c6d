#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <arpa/inet.h>

namespace bgprel {

// Well-known communities (RFC 1997).
constexpr uint32_t kNoExport = 0xFFFFFF01u;
constexpr uint32_t kNoAdvertise = 0xFFFFFF02u;

inline uint16_t community_asn(uint32_t c) { return static_cast<uint16_t>(c >> 16); }
inline uint16_t community_value(uint32_t c) { return static_cast<uint16_t>(c & 0xFFFFu); }
inline uint32_t make_community(uint16_t asn, uint16_t value) {
  return (static_cast<uint32_t>(asn) << 16) | value;
}
inline bool is_well_known(uint32_t c) { return (c >> 16) == 0xFFFFu; }

struct Prefix {
  std::array<uint8_t, 16> bytes{};
  uint8_t length = 0;
  uint8_t version = 4;  // 4 or 6

  bool operator==(const Prefix&) const = default;
  auto operator<=>(const Prefix&) const = default;

  std::string to_string() const {
    char buf[INET6_ADDRSTRLEN] = {0};
    if (version == 4) {
      struct in_addr a;
      std::memcpy(&a, bytes.data(), 4);
      inet_ntop(AF_INET, &a, buf, sizeof(buf));
    } else {
      struct in6_addr a;
      std::memcpy(&a, bytes.data(), 16);
      inet_ntop(AF_INET6, &a, buf, sizeof(buf));
    }
    return std::string(buf) + "/" + std::to_string(length);
  }

  static std::optional<Prefix> parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return std::nullopt;
    std::string addr = text.substr(0, slash);
    int len;
    try {
      len = std::stoi(text.substr(slash + 1));
    } catch (...) {
      return std::nullopt;
    }
    Prefix p;
    struct in6_addr a6;
    struct in_addr a4;
    if (inet_pton(AF_INET, addr.c_str(), &a4) == 1) {
      p.version = 4;
      std::memcpy(p.bytes.data(), &a4, 4);
      if (len < 0 || len > 32) return std::nullopt;
    } else if (inet_pton(AF_INET6, addr.c_str(), &a6) == 1) {
      p.version = 6;
      std::memcpy(p.bytes.data(), &a6, 16);
      if (len < 0 || len > 128) return std::nullopt;
    } else {
      return std::nullopt;
    }
    p.length = static_cast<uint8_t>(len);
    return p;
  }
};

enum class SegmentType : uint8_t { Sequence = 2, Set = 1 };

struct PathSegment {
  SegmentType type = SegmentType::Sequence;
  std::vector<uint32_t> asns;
  bool operator==(const PathSegment&) const = default;
};

enum class RecordKind : uint8_t { Rib, Update, RouteServer };

inline const char* record_kind_name(RecordKind k) {
  switch (k) {
    case RecordKind::Rib: return "RIB";
    case RecordKind::Update: return "UPDATE";
    case RecordKind::RouteServer: return "ROUTE_SERVER";
  }
  return "?";
}

// One normalized BGP observation, from an MRT dump, a text dump or a
// route-server table.
struct BgpRecord {
  uint64_t timestamp = 0;  // seconds since epoch, UTC
  std::string monitor_id;  // collector + peer address
  uint32_t peer_asn = 0;
  Prefix prefix;
  uint8_t ip_version = 4;
  std::vector<PathSegment> raw_as_path;
  std::vector<uint32_t> communities;  // raw 32-bit values
  std::optional<uint32_t> locprf;
  RecordKind record_kind = RecordKind::Rib;

  bool operator==(const BgpRecord&) const = default;

  uint32_t day() const { return static_cast<uint32_t>(timestamp / 86400); }

  // Message identity: MRT carries no global message id, so we key on the
  // (monitor, timestamp, prefix) triple.
  std::string message_id() const {
    return monitor_id + "|" + std::to_string(timestamp) + "|" + prefix.to_string();
  }

  bool has_no_export() const {
    for (uint32_t c : communities)
      if (c == kNoExport || c == kNoAdvertise) return true;
    return false;
  }
};

// Undirected AS adjacency, stored canonically with left < right.
struct Link {
  uint32_t left = 0;
  uint32_t right = 0;

  Link() = default;
  Link(uint32_t a, uint32_t b) : left(a < b ? a : b), right(a < b ? b : a) {}

  bool operator==(const Link&) const = default;
  auto operator<=>(const Link&) const = default;

  bool has(uint32_t asn) const { return asn == left || asn == right; }
  uint32_t other(uint32_t asn) const { return asn == left ? right : left; }
  std::string to_string() const {
    return std::to_string(left) + "-" + std::to_string(right);
  }
};

struct LinkHash {
  size_t operator()(const Link& l) const {
    return std::hash<uint64_t>{}((static_cast<uint64_t>(l.left) << 32) | l.right);
  }
};

struct DecodeError : std::runtime_error {
  size_t offset;
  DecodeError(const std::string& what, size_t off)
      : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"),
        offset(off) {}
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bgprel
