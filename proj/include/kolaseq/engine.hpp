#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "kolaseq/params.hpp"

namespace kolaseq {

/// One level of the cursor hierarchy: the current run at that level and how
/// many of its symbols are still unconsumed (counting the current one).
/// The classical four-word states map as 22=(2,2), 2=(2,1), 11=(1,2), 1=(1,1).
struct CursorCell {
    symbol_t symbol;
    symbol_t remaining;

    friend bool operator==(const CursorCell&, const CursorCell&) = default;
};

/// One emitted run: `length` copies of `symbol` starting at `start_position`
/// (1-based in the full sequence K(r,s), including any prefix symbol).
struct RunEvent {
    symbol_t symbol;
    symbol_t length;
    position_t start_position;

    position_t end_position() const noexcept { return start_position + length - 1; }

    friend bool operator==(const RunEvent&, const RunEvent&) = default;
};

/// Per-level work counters.
///   p[k] — content mutations of cell k since engine start
///   a[k] — increments that found cell k exhausted (remaining = 1), forcing
///          a recursive increment one level up
///   b[k] — increments absorbed by a sibling advance (remaining > 1),
///          including the advance folded into creating a fresh cell
/// For every k >= 1, p[k] = a[k] + b[k]; p[0] counts emitted runs.
struct WorkProfile {
    std::vector<std::uint64_t> p;
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> b;

    std::uint64_t total_work() const;

    friend bool operator==(const WorkProfile&, const WorkProfile&) = default;
};

/// Streams K(r,s) run-by-run in logarithmic space.
///
/// The engine walks the self-generating row of the sequence (K(r,s) itself
/// for r >= 2, K' for r = 1) keeping one CursorCell per tree level. Cell 0
/// holds the run most recently emitted; cell k+1 holds the position in the
/// generator row that produced cell k's run. Construction emits the first
/// run (and, for r = 1, the literal leading 1 before it); those events are
/// delivered through next_event() ahead of any increment.
///
/// A single instance is strictly sequential; distinct instances share nothing.
class CursorEngine {
public:
    explicit CursorEngine(const SequenceParams& params);

    /// Restore path used by the checkpoint loader. The stack is bottom-up;
    /// counters must cover exactly the stack's levels.
    CursorEngine(const SequenceParams& params, std::vector<CursorCell> stack,
                 position_t position, WorkProfile profile);

    /// One increment of the cursor stack: advances level 1, flips cell 0's
    /// symbol and gives the new run the length of the generator symbol.
    RunEvent next_run();

    /// Uniform stream access: serves the construction events first, then
    /// forwards to next_run().
    RunEvent next_event();

    /// Runs emitted by the constructor (empty for restored engines).
    std::span<const RunEvent> initial_events() const noexcept;

    std::size_t depth() const noexcept { return cells_.size(); }

    /// Sequence positions emitted so far, prefix included.
    position_t position() const noexcept { return position_; }

    /// Position within the engine row (excludes the r = 1 prefix symbol).
    position_t row_position() const noexcept { return position_ - (prefix_emitted_ ? 1 : 0); }

    bool prefix_emitted() const noexcept { return prefix_emitted_; }
    symbol_t row_start_symbol() const noexcept { return row_start_; }
    const SequenceParams& params() const noexcept { return params_; }
    std::span<const CursorCell> stack() const noexcept { return cells_; }
    const WorkProfile& work_profile() const noexcept { return profile_; }

private:
    symbol_t advance_level(std::size_t k);

    SequenceParams params_;
    symbol_t row_start_;
    bool prefix_emitted_;
    std::vector<CursorCell> cells_;
    position_t position_ = 0;
    WorkProfile profile_;
    std::array<RunEvent, 2> initial_{};
    std::uint8_t initial_count_ = 0;
    std::uint8_t initial_served_ = 0;
};

} // namespace kolaseq
