#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <zlib.h>

#include "bgprel/types.hpp"

namespace bgprel {

inline std::vector<uint8_t> gunzip(const std::vector<uint8_t>& in) {
  std::vector<uint8_t> out;
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 32) != Z_OK)  // accept gzip and zlib wrapping
    throw DataError("zlib init failed");
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  uint8_t buf[1 << 16];
  int ret = Z_OK;
  do {
    zs.next_out = buf;
    zs.avail_out = sizeof(buf);
    ret = inflate(&zs, Z_NO_FLUSH);
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&zs);
      throw DataError("gzip decompression failed");
    }
    out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
  } while (ret != Z_STREAM_END && zs.avail_in > 0);
  inflateEnd(&zs);
  if (ret != Z_STREAM_END) throw DataError("truncated gzip stream");
  return out;
}

}  // namespace bgprel
