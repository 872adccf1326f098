#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace kolaseq {

using symbol_t = std::uint32_t;
using position_t = std::uint64_t;

/// Hard guard on stream positions; counters and deviation arithmetic are
/// sized so that everything up to here stays exact in 64/128-bit integers.
inline constexpr position_t kMaxPosition = 1'000'000'000'000'000ULL; // 10^15

/// Identifies which Kolakoski sequence K(r,s) is being streamed.
///
/// K(r,s) is the unique sequence over the alphabet {r,s} that starts with r
/// and equals the sequence of its own run lengths. The classical sequence is
/// K(1,2). `counted_symbol` selects whose proportion the census reports and
/// defaults to the numerically smaller symbol, matching the published tables.
struct SequenceParams {
    symbol_t r = 1;
    symbol_t s = 2;
    symbol_t counted_symbol = 1;

    /// Validating factory. Throws ArgumentError unless r,s >= 1, r != s and
    /// counted (when given) is one of r,s.
    static SequenceParams make(symbol_t r, symbol_t s,
                               std::optional<symbol_t> counted = std::nullopt);

    symbol_t other(symbol_t x) const noexcept { return x == r ? s : r; }
    symbol_t max_symbol() const noexcept { return r > s ? r : s; }
    symbol_t min_symbol() const noexcept { return r < s ? r : s; }
    bool contains(symbol_t x) const noexcept { return x == r || x == s; }
    bool is_classical() const noexcept { return r == 1 && s == 2; }

    /// Start symbol of the self-generating row the engine walks. For r >= 2
    /// that row is K(r,s) itself; for r = 1 it is K' (the sequence with the
    /// leading 1 removed), which starts with s.
    symbol_t row_start_symbol() const noexcept { return r == 1 ? s : r; }

    /// True iff the engine emits the literal leading 1 separately.
    bool has_prefix() const noexcept { return r == 1; }

    bool single_digit_alphabet() const noexcept { return r <= 9 && s <= 9; }

    std::string name() const; // "K(r,s)"

    friend bool operator==(const SequenceParams&, const SequenceParams&) = default;
};

/// Throws ArgumentError if the params violate their invariants.
void validate(const SequenceParams& params);

} // namespace kolaseq
