#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "kolaseq/census.hpp"
#include "kolaseq/checkpoint.hpp"
#include "kolaseq/engine.hpp"
#include "kolaseq/params.hpp"

namespace kolaseq {

inline constexpr position_t kDefaultCheckpointEvery = 1'000'000'000ULL; // 10^9

struct SessionOptions {
    /// When set, a checkpoint is written each time the position crosses a
    /// multiple of `checkpoint_every`, and once more when the run finishes.
    std::optional<std::filesystem::path> checkpoint_path;
    position_t checkpoint_every = kDefaultCheckpointEvery;
    /// When set, '#'-prefixed progress lines are written here (stderr in the
    /// CLI); never mixed into the data stream.
    std::ostream* progress = nullptr;
};

/// One engine + one census bound together, driven to a target position.
class CensusSession {
public:
    explicit CensusSession(const SequenceParams& params);

    static CensusSession resume(const std::filesystem::path& checkpoint);
    static CensusSession from_state(const CheckpointState& state);

    /// Streams until position() >= n_max (whole runs; the engine never stops
    /// mid-run). No-op if already past.
    void run_to(position_t n_max, const SessionOptions& options = {});

    /// Rows for a report up to n_max: every completed decade row with
    /// n <= n_max, plus a final partial row when n_max is not one of them.
    std::vector<DecadeRow> report_rows(position_t n_max) const;

    CheckpointState state() const { return snapshot(engine_, census_); }
    void save(const std::filesystem::path& destination) const;

    position_t position() const noexcept { return census_.position(); }
    const CursorEngine& engine() const noexcept { return engine_; }
    const CensusAccumulator& census() const noexcept { return census_; }

private:
    CensusSession(CursorEngine engine, CensusAccumulator census);

    CursorEngine engine_;
    CensusAccumulator census_;
};

/// Parses a position count, accepting plain decimal and scientific notation
/// ("1e13", "2.5e6") as long as the value is an exact integer in
/// [0, kMaxPosition]. Throws ArgumentError otherwise.
position_t parse_position(std::string_view text);

} // namespace kolaseq
