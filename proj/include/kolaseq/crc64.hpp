#pragma once

#include <cstdint>
#include <string_view>

namespace kolaseq {

/// CRC-64/XZ (ECMA-182 polynomial, reflected, init and xorout all-ones).
/// crc64_xz("123456789") == 0x995DC9BBDF1939FA.
std::uint64_t crc64_xz(std::string_view data) noexcept;

} // namespace kolaseq
