#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kolaseq/census.hpp"
#include "kolaseq/engine.hpp"
#include "kolaseq/params.hpp"

namespace kolaseq {

inline constexpr std::uint32_t kCheckpointFormatVersion = 1;

/// Serializable snapshot of an engine + census pair, taken at a run boundary.
/// Restoring and streaming on reproduces the identical RunEvent and DecadeRow
/// streams as never having stopped.
struct CheckpointState {
    std::uint32_t format_version = kCheckpointFormatVersion;
    SequenceParams params;
    position_t position = 0;
    bool prefix_emitted = false;
    std::vector<CursorCell> stack; // bottom-up, index 0 = output cell
    std::uint64_t count_r = 0;
    std::uint64_t count_s = 0;
    position_t decade_end = 1;                 // endpoint of the decade in progress
    std::optional<Deviation> decade_max;       // running max; nullopt if none yet
    std::vector<DecadeRow> rows;               // completed decade rows
    WorkProfile profile;

    friend bool operator==(const CheckpointState&, const CheckpointState&) = default;
};

/// Capture the state of a running pair. The engine and census must have
/// consumed the same stream (their positions agree).
CheckpointState snapshot(const CursorEngine& engine, const CensusAccumulator& census);

/// Throws CheckpointInvariantError unless every structural invariant holds
/// (alphabet membership, remaining bounds, counts summing to position,
/// decade/rows consistency, counter shapes).
void validate(const CheckpointState& state);

CursorEngine engine_from(const CheckpointState& state);
CensusAccumulator census_from(const CheckpointState& state);

/// Canonical text serialization: one `name value` line per field in fixed
/// order, integers as decimal strings, terminated by a digest line holding
/// the CRC-64/XZ of every preceding byte. Byte-identical for equal states.
std::string serialize(const CheckpointState& state);

/// Parses and verifies a canonical serialization (version first, then
/// digest, then field parse and invariant validation; each failure mode
/// throws its own error class).
CheckpointState deserialize(const std::string& text);

/// Atomic write: temp file in the destination directory, then rename.
/// A crash never leaves a half-written checkpoint in place of a valid one.
void save_checkpoint(const CheckpointState& state, const std::filesystem::path& destination);

CheckpointState load_checkpoint(const std::filesystem::path& source);

} // namespace kolaseq
