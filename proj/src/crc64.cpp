#include "kolaseq/crc64.hpp"

#include <array>

namespace kolaseq {

namespace {

// reflected form of the ECMA-182 polynomial 0x42F0E1EBA9EA3693
constexpr std::uint64_t kPoly = 0xC96C5795D7870F42ULL;

constexpr std::array<std::uint64_t, 256> make_table() {
    std::array<std::uint64_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint64_t crc = i;
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc >> 1) ^ (crc & 1 ? kPoly : 0);
        table[i] = crc;
    }
    return table;
}

constexpr auto kTable = make_table();

} // namespace

std::uint64_t crc64_xz(std::string_view data) noexcept {
    std::uint64_t crc = ~std::uint64_t{0};
    for (unsigned char byte : data)
        crc = (crc >> 8) ^ kTable[(crc ^ byte) & 0xFF];
    return ~crc;
}

} // namespace kolaseq
