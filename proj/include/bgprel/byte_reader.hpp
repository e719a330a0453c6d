#pragma once

#include <cstdint>
#include <cstring>
#include <span>

#include "bgprel/types.hpp"

namespace bgprel {

// Bounded big-endian cursor. Never reads past the span it was given;
// overruns throw DecodeError with the absolute byte offset.
class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> data, size_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  size_t remaining() const { return data_.size() - pos_; }
  size_t offset() const { return base_ + pos_; }
  bool done() const { return pos_ == data_.size(); }

  uint8_t u8() { return take(1)[0]; }
  uint16_t u16() {
    auto b = take(2);
    return static_cast<uint16_t>(b[0]) << 8 | b[1];
  }
  uint32_t u32() {
    auto b = take(4);
    return static_cast<uint32_t>(b[0]) << 24 | static_cast<uint32_t>(b[1]) << 16 |
           static_cast<uint32_t>(b[2]) << 8 | b[3];
  }

  std::span<const uint8_t> take(size_t n) {
    if (n > remaining())
      throw DecodeError("truncated: need " + std::to_string(n) + " bytes, have " +
                            std::to_string(remaining()),
                        offset());
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  void skip(size_t n) { take(n); }

  // Sub-reader over the next n bytes, consuming them here.
  ByteReader sub(size_t n) {
    size_t off = offset();
    return ByteReader(take(n), off);
  }

 private:
  std::span<const uint8_t> data_;
  size_t base_;
  size_t pos_ = 0;
};

}  // namespace bgprel
