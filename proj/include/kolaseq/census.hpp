#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kolaseq/engine.hpp"
#include "kolaseq/params.hpp"

namespace kolaseq {

/// Exact symbol counts at a position.
struct SymbolCensus {
    position_t position = 0;
    std::uint64_t count_r = 0;
    std::uint64_t count_s = 0;

    friend bool operator==(const SymbolCensus&, const SymbolCensus&) = default;
};

/// |1/2 - c_i/i| held exactly as |2c_i - i| / (2i). Comparisons are
/// integer-exact for all positions up to 10^15 (128-bit cross products).
struct Deviation {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    friend bool operator==(const Deviation&, const Deviation&) = default;
};

/// Exact three-way comparison; never touches floating point.
int compare(const Deviation& lhs, const Deviation& rhs) noexcept;

/// Renders the exact fraction rounded to 4 significant digits in scientific
/// notation ("1.667e-01"); ties round half to even.
std::string format_deviation(const Deviation& d);

/// Census record emitted at each power-of-10 position (and at a run's final
/// partial target). `deviation` is the max of |1/2 - c_i/i| over the decade
/// (n/10, n]; it is absent for n = 1, where no position qualifies.
struct DecadeRow {
    position_t n = 0;
    std::uint64_t count = 0;
    std::uint32_t depth = 0;
    std::optional<Deviation> deviation;

    friend bool operator==(const DecadeRow&, const DecadeRow&) = default;
};

/// Consumes RunEvents in stream order and maintains exact counts, the
/// per-decade deviation maximum and the completed decade rows.
///
/// Deviation candidates start after the sequence's first run (the first run
/// of K(r,s) is r copies of r, so positions i <= r see only one symbol and
/// carry no distribution information; the published tables exclude them).
/// Within a run the signed quantity 2c_i - i moves by +-1 monotonically, so
/// the maximum over a run segment is attained at a segment endpoint or next
/// to a sign crossing; only those candidates are evaluated.
class CensusAccumulator {
public:
    explicit CensusAccumulator(const SequenceParams& params);

    /// Restore path used by the checkpoint loader. `decade_max` is the
    /// running maximum for the decade in progress (nullopt when no candidate
    /// has been seen since the last boundary).
    CensusAccumulator(const SequenceParams& params, position_t position,
                      std::uint64_t count_r, std::uint64_t count_s,
                      position_t decade_end, std::optional<Deviation> decade_max,
                      std::vector<DecadeRow> rows);

    /// Ingest one run; completed decade rows accumulate in rows().
    /// Events must tile the stream: start_position == position() + 1.
    void observe(const RunEvent& event, std::size_t engine_depth);

    const std::vector<DecadeRow>& rows() const noexcept { return rows_; }

    position_t position() const noexcept { return position_; }
    std::uint64_t count_r() const noexcept { return count_r_; }
    std::uint64_t count_s() const noexcept { return count_s_; }
    SymbolCensus counts() const noexcept { return {position_, count_r_, count_s_}; }
    std::uint64_t counted() const noexcept;

    /// Exact counts at `target`. Answerable for the current position, for
    /// positions inside the most recent run (partial attribution), and for
    /// retained decade boundaries; anything else throws QueryError.
    SymbolCensus counts_at(position_t target) const;

    /// Row at `target`: a retained boundary row, or a partial row computed
    /// inside the most recent run (deviation max over (decade start, target]).
    DecadeRow row_at(position_t target) const;

    /// Endpoint (power of 10) of the decade currently being accumulated.
    position_t decade_end() const noexcept { return decade_end_; }

    /// Running max for the decade in progress; nullopt when no candidate yet.
    std::optional<Deviation> decade_max() const noexcept;

    const SequenceParams& params() const noexcept { return params_; }

private:
    struct DecadeCursor {
        position_t decade_end;
        Deviation max{0, 1};
        bool any = false;
    };

    /// Walks one event split at decade boundaries, updating `cursor` and
    /// appending a row per boundary crossed; positions beyond `clamp` are
    /// ignored. Shared by observe() and row_at().
    void scan_event(const RunEvent& event, std::uint64_t counted_before,
                    std::uint32_t depth, position_t clamp, DecadeCursor& cursor,
                    std::vector<DecadeRow>& rows_out) const;

    SequenceParams params_;
    bool count_r_selected_; // counted_symbol == r
    position_t first_run_end_;

    position_t position_ = 0;
    std::uint64_t count_r_ = 0;
    std::uint64_t count_s_ = 0;

    position_t decade_end_ = 1;
    Deviation decade_max_{0, 1};
    bool decade_any_ = false;

    std::vector<DecadeRow> rows_;

    // one-event lookback for counts_at / row_at partial attribution
    bool has_last_ = false;
    RunEvent last_event_{};
    std::uint64_t last_count_r_before_ = 0;
    std::uint64_t last_count_s_before_ = 0;
    std::uint32_t last_depth_ = 0;
    DecadeCursor last_cursor_before_{1};
};

/// Streams the engine forward until `target` is covered, then answers from
/// the census. Throws ArgumentError for target = 0, OverflowError past the
/// position guard and QueryError for targets already passed without retention.
SymbolCensus counts_at(CursorEngine& engine, CensusAccumulator& census, position_t target);

} // namespace kolaseq
