#!/usr/bin/env python3
"""Builds frozen MRT test fixtures (RFC 6396 / RFC 4271 field layout).

Written independently of the C++ decoder; regenerate with
    python3 tests/gen_mrt_fixtures.py > tests/mrt_fixtures.hpp
"""
import socket
import struct


def mrt_frame(ts, mtype, subtype, body):
    return struct.pack(">IHHI", ts, mtype, subtype, len(body)) + body


def attr(flags, atype, body):
    if flags & 0x10:
        return struct.pack(">BBH", flags, atype, len(body)) + body
    return struct.pack(">BBB", flags, atype, len(body)) + body


def as_path(segments, width):
    out = b""
    fmt = ">I" if width == 4 else ">H"
    for seg_type, asns in segments:
        out += struct.pack(">BB", seg_type, len(asns))
        for a in asns:
            out += struct.pack(fmt, a)
    return out


def communities(values):
    return b"".join(struct.pack(">I", v) for v in values)


def nlri(prefix, plen):
    fam = socket.AF_INET6 if ":" in prefix else socket.AF_INET
    raw = socket.inet_pton(fam, prefix)
    return struct.pack(">B", plen) + raw[: (plen + 7) // 8]


def peer_index_table(peers):
    body = struct.pack(">I", 0x0A000001)  # collector BGP id
    body += struct.pack(">H", 0)  # empty view name
    body += struct.pack(">H", len(peers))
    for v6, as4, addr, asn in peers:
        ptype = (1 if v6 else 0) | (2 if as4 else 0)
        body += struct.pack(">BI", ptype, 0x0A000002)
        body += socket.inet_pton(socket.AF_INET6 if v6 else socket.AF_INET, addr)
        body += struct.pack(">I" if as4 else ">H", asn)
    return body


def rib(seq, prefix, plen, entries, v6=False):
    body = struct.pack(">I", seq) + nlri(prefix, plen)
    body += struct.pack(">H", len(entries))
    for peer_index, attrs in entries:
        body += struct.pack(">HIH", peer_index, 1280621000, len(attrs)) + attrs
    return body


def bgp_update(withdrawn, attrs, announced):
    body = struct.pack(">H", len(withdrawn)) + withdrawn
    body += struct.pack(">H", len(attrs)) + attrs
    body += announced
    msg = b"\xff" * 16 + struct.pack(">HB", 19 + len(body), 2) + body
    return msg


def bgp4mp_message(peer_as, local_as, peer_ip, local_ip, update, as4):
    fmt = ">I" if as4 else ">H"
    body = struct.pack(fmt, peer_as) + struct.pack(fmt, local_as)
    body += struct.pack(">HH", 0, 1)  # ifindex, AFI=IPv4
    body += socket.inet_pton(socket.AF_INET, peer_ip)
    body += socket.inet_pton(socket.AF_INET, local_ip)
    return body + update


ORIGIN_IGP = attr(0x40, 1, b"\x00")
NEXT_HOP = attr(0x40, 3, socket.inet_pton(socket.AF_INET, "192.0.2.254"))

fixtures = {}

# --- RIB fixture: peer table with mixed entry encodings + one v4 RIB ------
peers = [
    (False, True, "192.0.2.1", 65010),
    (False, False, "192.0.2.2", 64496),
    (True, True, "2001:db8::1", 65020),
]
rib_attrs = (
    ORIGIN_IGP
    + attr(0x50, 2, as_path([(2, [65010, 3356, 15169])], 4))  # extended length
    + NEXT_HOP
    + attr(0xC0, 8, communities([(3356 << 16) | 100]))
)
fixtures["kRibFixture"] = mrt_frame(
    1280620800, 13, 1, peer_index_table(peers)
) + mrt_frame(
    1280620800, 13, 2, rib(0, "198.51.100.0", 24, [(0, rib_attrs), (1, rib_attrs), (2, rib_attrs)])
)

# --- v6 RIB fixture -------------------------------------------------------
rib6_attrs = ORIGIN_IGP + attr(0x40, 2, as_path([(2, [65020, 6939])], 4))
fixtures["kRib6Fixture"] = mrt_frame(
    1280620800, 13, 1, peer_index_table(peers)
) + mrt_frame(1280620801, 13, 4, rib(7, "2001:db8:42::", 48, [(2, rib6_attrs)], v6=True))

# --- BGP4MP_ET MESSAGE_AS4 update, 2 announced prefixes, 1 withdrawal ----
upd_attrs = (
    ORIGIN_IGP
    + attr(0x40, 2, as_path([(2, [65010, 1299]), (1, [20912, 21101])], 4))
    + NEXT_HOP
    + attr(0xC0, 8, communities([(1299 << 16) | 612, 0xFFFFFF01]))
)
update = bgp_update(nlri("203.0.113.0", 24), upd_attrs, nlri("198.51.100.0", 24) + nlri("192.0.2.0", 25))
fixtures["kUpdateAs4Fixture"] = mrt_frame(
    1280621234, 17, 4, struct.pack(">I", 500000) + bgp4mp_message(65010, 64500, "192.0.2.9", "192.0.2.10", update, True)
)

# --- BGP4MP MESSAGE with 2-byte ASNs --------------------------------------
upd2_attrs = ORIGIN_IGP + attr(0x40, 2, as_path([(2, [64496, 3356])], 2)) + NEXT_HOP
update2 = bgp_update(b"", upd2_attrs, nlri("198.18.0.0", 15))
fixtures["kUpdateAs2Fixture"] = mrt_frame(
    1280621300, 16, 1, bgp4mp_message(64496, 64500, "192.0.2.11", "192.0.2.12", update2, False)
)

# --- mixed stream: unsupported type, malformed body, then a good frame ----
bad_body = rib(1, "198.51.100.0", 24, [(0, rib_attrs)])[:-5]  # truncated entry
fixtures["kMixedFixture"] = (
    mrt_frame(1280620800, 13, 1, peer_index_table(peers))
    + mrt_frame(1280620800, 32, 1, b"\x00" * 8)  # unsupported type
    + mrt_frame(1280620800, 13, 2, bad_body)
    + mrt_frame(1280620800, 13, 2, rib(2, "203.0.113.0", 24, [(1, rib_attrs)]))
)

# --- non-UPDATE BGP message (KEEPALIVE) -----------------------------------
keepalive = b"\xff" * 16 + struct.pack(">HB", 19, 4)
fixtures["kKeepaliveFixture"] = mrt_frame(
    1280621400, 16, 4, bgp4mp_message(65010, 64500, "192.0.2.9", "192.0.2.10", keepalive, True)
)

print("// Frozen MRT fixtures; regenerate with gen_mrt_fixtures.py.")
print("#pragma once")
print("#include <cstdint>")
print("#include <vector>")
print("namespace fixtures {")
for name, data in fixtures.items():
    rows = ", ".join(str(b) for b in data)
    print(f"inline const std::vector<uint8_t> {name} = {{{rows}}};")
print("}  // namespace fixtures")
