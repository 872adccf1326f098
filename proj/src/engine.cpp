#include "kolaseq/engine.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "kolaseq/errors.hpp"

namespace kolaseq {

std::uint64_t WorkProfile::total_work() const {
    return std::accumulate(p.begin(), p.end(), std::uint64_t{0});
}

CursorEngine::CursorEngine(const SequenceParams& params)
    : params_(params),
      row_start_(params.row_start_symbol()),
      prefix_emitted_(params.has_prefix()) {
    validate(params_);
    if (prefix_emitted_) {
        // K = 1K': emit the leading 1 literally, then walk K' whose first
        // run is s copies of s.
        initial_[0] = RunEvent{1, 1, 1};
        initial_[1] = RunEvent{row_start_, row_start_, 2};
        initial_count_ = 2;
        position_ = 1 + static_cast<position_t>(row_start_);
    } else {
        // K(r,s) is already its own fixed point; its first run is r copies of r.
        initial_[0] = RunEvent{row_start_, row_start_, 1};
        initial_count_ = 1;
        position_ = row_start_;
    }
    cells_.push_back(CursorCell{row_start_, row_start_});
    profile_.p.assign(1, 0);
    profile_.a.assign(1, 0);
    profile_.b.assign(1, 0);
}

CursorEngine::CursorEngine(const SequenceParams& params, std::vector<CursorCell> stack,
                           position_t position, WorkProfile profile)
    : params_(params),
      row_start_(params.row_start_symbol()),
      prefix_emitted_(params.has_prefix()),
      cells_(std::move(stack)),
      position_(position),
      profile_(std::move(profile)) {
    validate(params_);
    if (cells_.empty())
        throw ArgumentError("engine restore: cursor stack must hold at least one cell");
    if (profile_.p.size() != cells_.size() || profile_.a.size() != cells_.size() ||
        profile_.b.size() != cells_.size())
        throw ArgumentError("engine restore: work counters must cover the stack levels");
}

symbol_t CursorEngine::advance_level(std::size_t k) {
    if (k == cells_.size()) {
        // Fresh top row: its first symbol generated the whole subtree already
        // traversed, so it is spent on creation.
        cells_.push_back(CursorCell{row_start_, static_cast<symbol_t>(row_start_ - 1)});
        profile_.p.push_back(1);
        profile_.a.push_back(0);
        profile_.b.push_back(1);
        return row_start_;
    }
    if (cells_[k].remaining > 1) {
        // sibling advance: next symbol of the same run
        CursorCell& cell = cells_[k];
        --cell.remaining;
        ++profile_.p[k];
        ++profile_.b[k];
        return cell.symbol;
    }
    // Run exhausted: fetch the generator symbol one level up. Its cell keeps
    // that symbol as current; it is not consumed on return. The recursion may
    // grow the stack, so cells_[k] must be re-read after it.
    const symbol_t generator = advance_level(k + 1);
    CursorCell& cell = cells_[k];
    cell.symbol = params_.other(cell.symbol);
    cell.remaining = generator;
    ++profile_.p[k];
    ++profile_.a[k];
    return cell.symbol;
}

RunEvent CursorEngine::next_run() {
    const symbol_t generator = advance_level(1);
    CursorCell& out = cells_[0];
    out.symbol = params_.other(out.symbol);
    out.remaining = generator;
    ++profile_.p[0];
    const RunEvent event{out.symbol, generator, position_ + 1};
    position_ += generator;
    return event;
}

RunEvent CursorEngine::next_event() {
    if (initial_served_ < initial_count_)
        return initial_[initial_served_++];
    return next_run();
}

std::span<const RunEvent> CursorEngine::initial_events() const noexcept {
    return {initial_.data(), initial_count_};
}

} // namespace kolaseq
