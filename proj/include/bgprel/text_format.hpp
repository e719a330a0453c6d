#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bgprel/types.hpp"

namespace bgprel {

struct TextParseError {
  size_t line;  // first line of the offending block (1-based)
  std::string message;
};

namespace text_detail {

inline std::optional<uint64_t> parse_u64(std::string_view s) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::optional<uint32_t> parse_community_token(const std::string& tok) {
  if (tok == "no-export") return kNoExport;
  if (tok == "no-advertise") return kNoAdvertise;
  auto colon = tok.find(':');
  if (colon == std::string::npos) return std::nullopt;
  if (tok.find(':', colon + 1) != std::string::npos) return std::nullopt;  // large community
  auto a = parse_u64(std::string_view(tok).substr(0, colon));
  auto v = parse_u64(std::string_view(tok).substr(colon + 1));
  if (!a || !v || *a > 0xFFFF || *v > 0xFFFF) return std::nullopt;
  return make_community(static_cast<uint16_t>(*a), static_cast<uint16_t>(*v));
}

inline std::optional<std::vector<PathSegment>> parse_aspath(const std::string& text) {
  std::vector<PathSegment> segs;
  PathSegment cur;  // running SEQUENCE
  auto flush = [&] {
    if (!cur.asns.empty()) {
      segs.push_back(cur);
      cur.asns.clear();
    }
  };
  for (const std::string& tok : split_ws(text)) {
    if (tok.front() == '{') {
      if (tok.back() != '}') return std::nullopt;
      flush();
      PathSegment set;
      set.type = SegmentType::Set;
      std::string inner = tok.substr(1, tok.size() - 2);
      std::istringstream in(inner);
      std::string a;
      while (std::getline(in, a, ',')) {
        auto n = parse_u64(a);
        if (!n || *n > 0xFFFFFFFFu) return std::nullopt;
        set.asns.push_back(static_cast<uint32_t>(*n));
      }
      if (set.asns.empty()) return std::nullopt;
      segs.push_back(std::move(set));
    } else {
      auto n = parse_u64(tok);
      if (!n || *n > 0xFFFFFFFFu) return std::nullopt;
      cur.asns.push_back(static_cast<uint32_t>(*n));
    }
  }
  flush();
  if (segs.empty()) return std::nullopt;
  return segs;
}

}  // namespace text_detail

// Parses one blank-line-delimited block of "KEY: value" lines (the table-dump
// text form: TYPE/PREFIX/FROM/ORIGIN/ASPATH/NEXT_HOP/COMMUNITY, optional
// LOCPRF and TIME). `first_line` is the 1-based line number of the block's
// first line, used in errors.
inline std::variant<BgpRecord, TextParseError> parse_text_record(
    const std::vector<std::string>& lines, size_t first_line = 1) {
  using text_detail::parse_u64;
  BgpRecord rec;
  bool have_prefix = false, have_path = false;
  auto err = [&](const std::string& m) {
    return TextParseError{first_line, m};
  };

  for (const std::string& line : lines) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);

    if (key == "PREFIX") {
      auto p = Prefix::parse(value);
      if (!p) return err("bad PREFIX: " + value);
      rec.prefix = *p;
      rec.ip_version = p->version;
      have_prefix = true;
    } else if (key == "FROM") {
      auto toks = text_detail::split_ws(value);
      if (toks.empty()) return err("bad FROM");
      rec.monitor_id = toks[0];
      if (toks.size() > 1 && toks[1].starts_with("AS")) {
        auto a = parse_u64(std::string_view(toks[1]).substr(2));
        if (!a) return err("bad FROM asn: " + toks[1]);
        rec.peer_asn = static_cast<uint32_t>(*a);
      }
    } else if (key == "ASPATH") {
      auto segs = text_detail::parse_aspath(value);
      if (!segs) return err("bad ASPATH: " + value);
      rec.raw_as_path = std::move(*segs);
      have_path = true;
    } else if (key == "COMMUNITY") {
      for (const std::string& tok : text_detail::split_ws(value)) {
        auto c = text_detail::parse_community_token(tok);
        if (!c) return err("bad COMMUNITY token: " + tok);
        rec.communities.push_back(*c);
      }
    } else if (key == "LOCPRF") {
      auto v = parse_u64(value);
      if (!v || *v > 0xFFFFFFFFu) return err("bad LOCPRF: " + value);
      rec.locprf = static_cast<uint32_t>(*v);
    } else if (key == "TIME") {
      auto v = parse_u64(value);
      if (!v) return err("bad TIME: " + value);
      rec.timestamp = *v;
    } else if (key == "TYPE") {
      if (value.find("UPDATE") != std::string::npos)
        rec.record_kind = RecordKind::Update;
    }
    // ORIGIN / NEXT_HOP and unknown keys are accepted and ignored.
  }
  if (!have_prefix) return err("missing PREFIX");
  if (!have_path) return err("missing ASPATH");
  // LocPrf is local: a record carrying one can only come from a route server.
  if (rec.locprf) rec.record_kind = RecordKind::RouteServer;
  return rec;
}

inline std::string write_text_record(const BgpRecord& rec) {
  std::ostringstream out;
  out << "TYPE: " << (rec.record_kind == RecordKind::Update ? "UPDATE" : "TABLE_DUMP_V2")
      << "/IPV" << int(rec.ip_version) << "_UNICAST\n";
  out << "TIME: " << rec.timestamp << "\n";
  out << "PREFIX: " << rec.prefix.to_string() << "\n";
  out << "FROM: " << rec.monitor_id << " AS" << rec.peer_asn << "\n";
  out << "ASPATH:";
  for (const PathSegment& seg : rec.raw_as_path) {
    if (seg.type == SegmentType::Set) {
      out << " {";
      for (size_t i = 0; i < seg.asns.size(); i++)
        out << (i ? "," : "") << seg.asns[i];
      out << "}";
    } else {
      for (uint32_t a : seg.asns) out << " " << a;
    }
  }
  out << "\n";
  if (!rec.communities.empty()) {
    out << "COMMUNITY:";
    for (uint32_t c : rec.communities) {
      if (c == kNoExport)
        out << " no-export";
      else if (c == kNoAdvertise)
        out << " no-advertise";
      else
        out << " " << community_asn(c) << ":" << community_value(c);
    }
    out << "\n";
  }
  if (rec.locprf) out << "LOCPRF: " << *rec.locprf << "\n";
  return out.str();
}

}  // namespace bgprel
