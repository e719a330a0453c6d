// Frozen MRT fixtures; regenerate with gen_mrt_fixtures.py.
#pragma once
#include <cstdint>
#include <vector>
namespace fixtures {
inline const std::vector<uint8_t> kRibFixture = {76, 84, 185, 0, 0, 13, 0, 1, 0, 0, 0, 57, 10, 0, 0, 1, 0, 0, 0, 3, 2, 10, 0, 0, 2, 192, 0, 2, 1, 0, 0, 253, 242, 0, 10, 0, 0, 2, 192, 0, 2, 2, 251, 240, 3, 10, 0, 0, 2, 32, 1, 13, 184, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 253, 252, 76, 84, 185, 0, 0, 13, 0, 2, 0, 0, 0, 142, 0, 0, 0, 0, 24, 198, 51, 100, 0, 3, 0, 0, 76, 84, 185, 200, 0, 36, 64, 1, 1, 0, 80, 2, 0, 14, 2, 3, 0, 0, 253, 242, 0, 0, 13, 28, 0, 0, 59, 65, 64, 3, 4, 192, 0, 2, 254, 192, 8, 4, 13, 28, 0, 100, 0, 1, 76, 84, 185, 200, 0, 36, 64, 1, 1, 0, 80, 2, 0, 14, 2, 3, 0, 0, 253, 242, 0, 0, 13, 28, 0, 0, 59, 65, 64, 3, 4, 192, 0, 2, 254, 192, 8, 4, 13, 28, 0, 100, 0, 2, 76, 84, 185, 200, 0, 36, 64, 1, 1, 0, 80, 2, 0, 14, 2, 3, 0, 0, 253, 242, 0, 0, 13, 28, 0, 0, 59, 65, 64, 3, 4, 192, 0, 2, 254, 192, 8, 4, 13, 28, 0, 100};
inline const std::vector<uint8_t> kRib6Fixture = {76, 84, 185, 0, 0, 13, 0, 1, 0, 0, 0, 57, 10, 0, 0, 1, 0, 0, 0, 3, 2, 10, 0, 0, 2, 192, 0, 2, 1, 0, 0, 253, 242, 0, 10, 0, 0, 2, 192, 0, 2, 2, 251, 240, 3, 10, 0, 0, 2, 32, 1, 13, 184, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 253, 252, 76, 84, 185, 1, 0, 13, 0, 4, 0, 0, 0, 38, 0, 0, 0, 7, 48, 32, 1, 13, 184, 0, 66, 0, 1, 0, 2, 76, 84, 185, 200, 0, 17, 64, 1, 1, 0, 64, 2, 10, 2, 2, 0, 0, 253, 252, 0, 0, 27, 27};
inline const std::vector<uint8_t> kUpdateAs4Fixture = {76, 84, 186, 178, 0, 17, 0, 4, 0, 0, 0, 105, 0, 7, 161, 32, 0, 0, 253, 242, 0, 0, 251, 244, 0, 0, 0, 1, 192, 0, 2, 9, 192, 0, 2, 10, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 0, 81, 2, 0, 4, 24, 203, 0, 113, 0, 45, 64, 1, 1, 0, 64, 2, 20, 2, 2, 0, 0, 253, 242, 0, 0, 5, 19, 1, 2, 0, 0, 81, 176, 0, 0, 82, 109, 64, 3, 4, 192, 0, 2, 254, 192, 8, 8, 5, 19, 2, 100, 255, 255, 255, 1, 24, 198, 51, 100, 25, 192, 0, 2, 0};
inline const std::vector<uint8_t> kUpdateAs2Fixture = {76, 84, 186, 244, 0, 16, 0, 1, 0, 0, 0, 62, 251, 240, 251, 244, 0, 0, 0, 1, 192, 0, 2, 11, 192, 0, 2, 12, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 0, 46, 2, 0, 0, 0, 20, 64, 1, 1, 0, 64, 2, 6, 2, 2, 251, 240, 13, 28, 64, 3, 4, 192, 0, 2, 254, 15, 198, 18};
inline const std::vector<uint8_t> kMixedFixture = {76, 84, 185, 0, 0, 13, 0, 1, 0, 0, 0, 57, 10, 0, 0, 1, 0, 0, 0, 3, 2, 10, 0, 0, 2, 192, 0, 2, 1, 0, 0, 253, 242, 0, 10, 0, 0, 2, 192, 0, 2, 2, 251, 240, 3, 10, 0, 0, 2, 32, 1, 13, 184, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 253, 252, 76, 84, 185, 0, 0, 32, 0, 1, 0, 0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 0, 76, 84, 185, 0, 0, 13, 0, 2, 0, 0, 0, 49, 0, 0, 0, 1, 24, 198, 51, 100, 0, 1, 0, 0, 76, 84, 185, 200, 0, 36, 64, 1, 1, 0, 80, 2, 0, 14, 2, 3, 0, 0, 253, 242, 0, 0, 13, 28, 0, 0, 59, 65, 64, 3, 4, 192, 0, 2, 254, 192, 8, 76, 84, 185, 0, 0, 13, 0, 2, 0, 0, 0, 54, 0, 0, 0, 2, 24, 203, 0, 113, 0, 1, 0, 1, 76, 84, 185, 200, 0, 36, 64, 1, 1, 0, 80, 2, 0, 14, 2, 3, 0, 0, 253, 242, 0, 0, 13, 28, 0, 0, 59, 65, 64, 3, 4, 192, 0, 2, 254, 192, 8, 4, 13, 28, 0, 100};
inline const std::vector<uint8_t> kKeepaliveFixture = {76, 84, 187, 88, 0, 16, 0, 4, 0, 0, 0, 39, 0, 0, 253, 242, 0, 0, 251, 244, 0, 0, 0, 1, 192, 0, 2, 9, 192, 0, 2, 10, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 255, 0, 19, 4};
}  // namespace fixtures
