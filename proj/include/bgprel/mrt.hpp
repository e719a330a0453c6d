#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgprel/byte_reader.hpp"
#include "bgprel/types.hpp"

namespace bgprel {
namespace mrt {

// MRT record types (RFC 6396)
constexpr uint16_t kTableDumpV2 = 13;
constexpr uint16_t kBgp4mp = 16;
constexpr uint16_t kBgp4mpEt = 17;

// TABLE_DUMP_V2 subtypes
constexpr uint16_t kPeerIndexTable = 1;
constexpr uint16_t kRibIpv4Unicast = 2;
constexpr uint16_t kRibIpv6Unicast = 4;

// BGP4MP subtypes
constexpr uint16_t kMessage = 1;
constexpr uint16_t kMessageAs4 = 4;

// BGP path attribute types
constexpr uint8_t kAttrAsPath = 2;
constexpr uint8_t kAttrCommunity = 8;

struct DecodeStats {
  uint64_t records = 0;          // BgpRecords emitted
  uint64_t mrt_records = 0;      // MRT frames seen
  uint64_t skipped_type = 0;     // unsupported type/subtype frames
  uint64_t skipped_malformed = 0;  // frames whose body failed to parse
  uint64_t withdrawals = 0;

  void merge(const DecodeStats& o) {
    records += o.records;
    mrt_records += o.mrt_records;
    skipped_type += o.skipped_type;
    skipped_malformed += o.skipped_malformed;
    withdrawals += o.withdrawals;
  }
};

struct PeerEntry {
  std::string address;
  uint32_t asn = 0;
};

namespace detail {

inline std::string ip_to_string(std::span<const uint8_t> b, bool v6) {
  Prefix p;
  p.version = v6 ? 6 : 4;
  std::copy(b.begin(), b.end(), p.bytes.begin());
  auto s = p.to_string();
  return s.substr(0, s.find('/'));
}

inline Prefix read_nlri_prefix(ByteReader& r, uint8_t version) {
  Prefix p;
  p.version = version;
  uint8_t plen = r.u8();
  uint8_t maxlen = version == 4 ? 32 : 128;
  if (plen > maxlen)
    throw DecodeError("prefix length " + std::to_string(plen) + " out of range",
                      r.offset());
  p.length = plen;
  auto bytes = r.take((plen + 7) / 8);
  std::copy(bytes.begin(), bytes.end(), p.bytes.begin());
  return p;
}

struct ParsedAttrs {
  std::vector<PathSegment> as_path;
  std::vector<uint32_t> communities;
};

inline ParsedAttrs parse_attributes(ByteReader r, size_t asn_width) {
  ParsedAttrs out;
  while (!r.done()) {
    uint8_t flags = r.u8();
    uint8_t type = r.u8();
    size_t len = (flags & 0x10) ? r.u16() : r.u8();
    ByteReader body = r.sub(len);
    if (type == kAttrAsPath) {
      while (!body.done()) {
        PathSegment seg;
        uint8_t st = body.u8();
        if (st != 1 && st != 2)
          throw DecodeError("bad AS_PATH segment type", body.offset());
        seg.type = static_cast<SegmentType>(st);
        uint8_t count = body.u8();
        for (uint8_t i = 0; i < count; i++)
          seg.asns.push_back(asn_width == 4 ? body.u32() : body.u16());
        out.as_path.push_back(std::move(seg));
      }
    } else if (type == kAttrCommunity) {
      while (!body.done()) out.communities.push_back(body.u32());
    }
  }
  return out;
}

}  // namespace detail

// Pull decoder over an in-memory MRT byte stream. Yields one BgpRecord per
// RIB peer sub-entry and per announced prefix; withdrawals and unsupported
// frames are skipped and counted.
class Decoder {
 public:
  explicit Decoder(std::span<const uint8_t> data, std::string collector = "")
      : data_(data), collector_(std::move(collector)) {}

  const DecodeStats& stats() const { return stats_; }

  std::optional<BgpRecord> next() {
    while (queue_.empty()) {
      if (!decode_one_frame()) return std::nullopt;
    }
    BgpRecord rec = std::move(queue_.front());
    queue_.pop_front();
    stats_.records++;
    return rec;
  }

 private:
  // Returns false at clean end of input; throws DecodeError on bad framing.
  bool decode_one_frame() {
    if (pos_ == data_.size()) return false;
    if (data_.size() - pos_ < 12)
      throw DecodeError("truncated MRT common header", pos_);
    ByteReader hdr(data_.subspan(pos_, 12), pos_);
    uint32_t timestamp = hdr.u32();
    uint16_t type = hdr.u16();
    uint16_t subtype = hdr.u16();
    uint32_t length = hdr.u32();
    if (length > data_.size() - pos_ - 12)
      throw DecodeError("MRT record length " + std::to_string(length) +
                            " exceeds remaining input",
                        pos_ + 8);
    ByteReader body(data_.subspan(pos_ + 12, length), pos_ + 12);
    pos_ += 12 + length;
    stats_.mrt_records++;

    try {
      if (type == kTableDumpV2) {
        if (subtype == kPeerIndexTable) {
          parse_peer_index(body);
        } else if (subtype == kRibIpv4Unicast || subtype == kRibIpv6Unicast) {
          parse_rib(body, timestamp, subtype == kRibIpv6Unicast ? 6 : 4);
        } else {
          stats_.skipped_type++;
        }
      } else if (type == kBgp4mp || type == kBgp4mpEt) {
        if (type == kBgp4mpEt) body.skip(4);  // microsecond field
        if (subtype == kMessage || subtype == kMessageAs4) {
          parse_bgp4mp(body, timestamp, subtype == kMessageAs4);
        } else {
          stats_.skipped_type++;
        }
      } else {
        stats_.skipped_type++;
      }
    } catch (const DecodeError&) {
      // Frame body is self-delimited; a malformed body never poisons the
      // stream framing. Callers only decode with an empty queue, so dropping
      // everything discards exactly this frame's partial output.
      stats_.skipped_malformed++;
      queue_.clear();
    }
    return true;
  }

  void parse_peer_index(ByteReader& r) {
    r.u32();  // collector BGP id
    uint16_t view_len = r.u16();
    r.skip(view_len);
    uint16_t count = r.u16();
    std::vector<PeerEntry> peers;
    peers.reserve(count);
    for (uint16_t i = 0; i < count; i++) {
      uint8_t peer_type = r.u8();
      bool v6 = peer_type & 0x01;
      bool as4 = peer_type & 0x02;
      r.u32();  // peer BGP id
      auto addr = r.take(v6 ? 16 : 4);
      PeerEntry e;
      e.address = detail::ip_to_string(addr, v6);
      e.asn = as4 ? r.u32() : r.u16();
      peers.push_back(std::move(e));
    }
    peer_table_ = std::move(peers);
  }

  void parse_rib(ByteReader& r, uint32_t timestamp, uint8_t version) {
    r.u32();  // sequence number
    Prefix prefix = detail::read_nlri_prefix(r, version);
    uint16_t entry_count = r.u16();
    for (uint16_t i = 0; i < entry_count; i++) {
      uint16_t peer_index = r.u16();
      r.u32();  // originated time
      uint16_t attr_len = r.u16();
      auto attrs = detail::parse_attributes(r.sub(attr_len), 4);
      if (attrs.as_path.empty()) continue;  // RIB records need a path
      BgpRecord rec;
      rec.timestamp = timestamp;
      rec.prefix = prefix;
      rec.ip_version = version;
      rec.record_kind = RecordKind::Rib;
      rec.raw_as_path = attrs.as_path;
      rec.communities = attrs.communities;
      if (peer_index < peer_table_.size()) {
        rec.peer_asn = peer_table_[peer_index].asn;
        rec.monitor_id = qualify(peer_table_[peer_index].address);
      } else {
        rec.monitor_id = qualify("peer#" + std::to_string(peer_index));
      }
      queue_.push_back(std::move(rec));
    }
  }

  void parse_bgp4mp(ByteReader& r, uint32_t timestamp, bool as4) {
    uint32_t peer_as = as4 ? r.u32() : r.u16();
    as4 ? r.u32() : r.u16();  // local AS
    r.u16();                  // interface index
    uint16_t afi = r.u16();
    bool v6 = afi == 2;
    auto peer_ip = r.take(v6 ? 16 : 4);
    r.take(v6 ? 16 : 4);  // local IP
    // BGP message: 16-byte marker, length, type
    r.skip(16);
    uint16_t msg_len = r.u16();
    if (msg_len < 19) throw DecodeError("BGP message length too small", r.offset());
    uint8_t msg_type = r.u8();
    ByteReader msg = r.sub(msg_len - 19);
    if (msg_type != 2) {  // not an UPDATE
      stats_.skipped_type++;
      return;
    }
    uint16_t withdrawn_len = msg.u16();
    ByteReader withdrawn = msg.sub(withdrawn_len);
    while (!withdrawn.done()) {
      detail::read_nlri_prefix(withdrawn, 4);
      stats_.withdrawals++;
    }
    uint16_t attr_len = msg.u16();
    auto attrs = detail::parse_attributes(msg.sub(attr_len), as4 ? 4 : 2);
    std::vector<Prefix> announced;
    while (!msg.done()) announced.push_back(detail::read_nlri_prefix(msg, 4));
    if (attrs.as_path.empty()) return;  // nothing announced without a path
    for (const Prefix& p : announced) {
      BgpRecord rec;
      rec.timestamp = timestamp;
      rec.prefix = p;
      rec.ip_version = 4;
      rec.record_kind = RecordKind::Update;
      rec.peer_asn = peer_as;
      rec.monitor_id = qualify(detail::ip_to_string(peer_ip, v6));
      rec.raw_as_path = attrs.as_path;
      rec.communities = attrs.communities;
      queue_.push_back(rec);
    }
  }

  std::string qualify(const std::string& peer) const {
    return collector_.empty() ? peer : collector_ + ":" + peer;
  }

  std::span<const uint8_t> data_;
  std::string collector_;
  size_t pos_ = 0;
  std::deque<BgpRecord> queue_;
  std::vector<PeerEntry> peer_table_;
  DecodeStats stats_;
};

}  // namespace mrt
}  // namespace bgprel
