#include "kolaseq/census.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "kolaseq/errors.hpp"

namespace kolaseq {

namespace {
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
} // namespace

int compare(const Deviation& lhs, const Deviation& rhs) noexcept {
    const u128 a = static_cast<u128>(lhs.numerator) * rhs.denominator;
    const u128 b = static_cast<u128>(rhs.numerator) * lhs.denominator;
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

std::string format_deviation(const Deviation& d) {
    if (d.numerator == 0)
        return "0.000e+00";
    int exp10 = 0;
    u128 num = d.numerator;
    u128 den = d.denominator;
    while (num < den) {
        num *= 10;
        --exp10;
    }
    while (num >= den * 10) {
        den *= 10;
        ++exp10;
    }
    // mantissa now in [1, 10); take 4 digits, round half to even
    u64 digits = static_cast<u64>(num * 1000 / den);
    const u128 rem = num * 1000 % den;
    if (rem * 2 > den || (rem * 2 == den && (digits & 1)))
        ++digits;
    if (digits == 10000) {
        digits = 1000;
        ++exp10;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%u.%03ue%+03d", static_cast<unsigned>(digits / 1000),
                  static_cast<unsigned>(digits % 1000), exp10);
    return buf;
}

CensusAccumulator::CensusAccumulator(const SequenceParams& params)
    : params_(params),
      count_r_selected_(params.counted_symbol == params.r),
      first_run_end_(params.r) {
    validate(params_);
}

CensusAccumulator::CensusAccumulator(const SequenceParams& params, position_t position,
                                     std::uint64_t count_r, std::uint64_t count_s,
                                     position_t decade_end, std::optional<Deviation> decade_max,
                                     std::vector<DecadeRow> rows)
    : params_(params),
      count_r_selected_(params.counted_symbol == params.r),
      first_run_end_(params.r),
      position_(position),
      count_r_(count_r),
      count_s_(count_s),
      decade_end_(decade_end),
      rows_(std::move(rows)) {
    validate(params_);
    if (decade_max) {
        decade_max_ = *decade_max;
        decade_any_ = true;
    }
}

std::uint64_t CensusAccumulator::counted() const noexcept {
    return count_r_selected_ ? count_r_ : count_s_;
}

std::optional<Deviation> CensusAccumulator::decade_max() const noexcept {
    if (!decade_any_)
        return std::nullopt;
    return decade_max_;
}

void CensusAccumulator::scan_event(const RunEvent& event, std::uint64_t counted_before,
                                   std::uint32_t depth, position_t clamp, DecadeCursor& cursor,
                                   std::vector<DecadeRow>& rows_out) const {
    const bool counted_run = event.symbol == params_.counted_symbol;
    const position_t run_start = event.start_position;
    const position_t limit = std::min<position_t>(clamp, event.end_position());

    const auto counted_at = [&](position_t i) -> u64 {
        return counted_before + (counted_run ? i - run_start + 1 : 0);
    };
    const auto z_at = [&](position_t i) -> i64 {
        return 2 * static_cast<i64>(counted_at(i)) - static_cast<i64>(i);
    };
    const auto consider = [&](position_t i) {
        if (i <= first_run_end_)
            return; // only one symbol type exists yet
        const i64 z = z_at(i);
        const Deviation d{static_cast<u64>(z < 0 ? -z : z), 2 * i};
        if (!cursor.any || compare(d, cursor.max) > 0) {
            cursor.max = d;
            cursor.any = true;
        }
    };

    position_t seg_start = run_start;
    while (seg_start <= limit) {
        const position_t seg_end = std::min(limit, cursor.decade_end);
        // 2c_i - i moves by +-1 across the segment, so |.|/(2i) peaks at a
        // segment endpoint or beside the sign crossing.
        consider(seg_start);
        if (seg_end != seg_start)
            consider(seg_end);
        const i64 z_lo = z_at(seg_start);
        const i64 z_hi = z_at(seg_end);
        if ((z_lo <= 0 && z_hi >= 0) || (z_lo >= 0 && z_hi <= 0)) {
            const position_t cross =
                counted_run ? seg_start + static_cast<position_t>(-z_lo)
                            : seg_start + static_cast<position_t>(z_lo);
            for (position_t i = cross > seg_start ? cross - 1 : seg_start;
                 i <= cross + 1 && i <= seg_end; ++i)
                consider(i);
        }
        if (seg_end == cursor.decade_end) {
            DecadeRow row;
            row.n = cursor.decade_end;
            row.count = counted_at(cursor.decade_end);
            row.depth = depth;
            if (cursor.any)
                row.deviation = cursor.max;
            rows_out.push_back(row);
            cursor.max = Deviation{0, 1};
            cursor.any = false;
            cursor.decade_end *= 10;
        }
        seg_start = seg_end + 1;
    }
}

void CensusAccumulator::observe(const RunEvent& event, std::size_t engine_depth) {
    if (event.length == 0)
        throw ArgumentError("census: zero-length run event");
    if (!params_.contains(event.symbol))
        throw ArgumentError("census: run symbol " + std::to_string(event.symbol) +
                            " is outside the alphabet");
    if (event.start_position != position_ + 1)
        throw ArgumentError("census: out-of-order run event at position " +
                            std::to_string(event.start_position) + " (expected " +
                            std::to_string(position_ + 1) + ")");
    const position_t end = event.end_position();
    if (end > kMaxPosition)
        throw OverflowError("census: position " + std::to_string(end) +
                            " exceeds the 10^15 position guard");

    last_event_ = event;
    last_count_r_before_ = count_r_;
    last_count_s_before_ = count_s_;
    last_depth_ = static_cast<std::uint32_t>(engine_depth);
    last_cursor_before_ = DecadeCursor{decade_end_, decade_max_, decade_any_};
    has_last_ = true;

    const u64 counted_before = counted();
    if (event.symbol == params_.r)
        count_r_ += event.length;
    else
        count_s_ += event.length;

    DecadeCursor cursor{decade_end_, decade_max_, decade_any_};
    scan_event(event, counted_before, last_depth_, end, cursor, rows_);
    decade_end_ = cursor.decade_end;
    decade_max_ = cursor.max;
    decade_any_ = cursor.any;
    position_ = end;
}

SymbolCensus CensusAccumulator::counts_at(position_t target) const {
    if (target == 0)
        throw ArgumentError("counts_at: target must be at least 1");
    if (target > position_)
        throw QueryError("counts_at: target " + std::to_string(target) +
                         " is beyond the current position " + std::to_string(position_));
    if (target == position_)
        return counts();
    if (has_last_ && target + 1 >= last_event_.start_position) {
        if (target + 1 == last_event_.start_position)
            return {target, last_count_r_before_, last_count_s_before_};
        const u64 offset = target - last_event_.start_position + 1;
        u64 cr = last_count_r_before_;
        u64 cs = last_count_s_before_;
        (last_event_.symbol == params_.r ? cr : cs) += offset;
        return {target, cr, cs};
    }
    for (const DecadeRow& row : rows_) {
        if (row.n == target) {
            const u64 counted_count = row.count;
            const u64 other_count = target - counted_count;
            if (count_r_selected_)
                return {target, counted_count, other_count};
            return {target, other_count, counted_count};
        }
    }
    throw QueryError("counts_at: position " + std::to_string(target) +
                     " was passed without retention");
}

DecadeRow CensusAccumulator::row_at(position_t target) const {
    if (target == 0)
        throw ArgumentError("row_at: target must be at least 1");
    for (const DecadeRow& row : rows_)
        if (row.n == target)
            return row;
    if (target > position_)
        throw QueryError("row_at: target " + std::to_string(target) +
                         " is beyond the current position " + std::to_string(position_));
    if (!has_last_ || target < last_event_.start_position)
        throw QueryError("row_at: position " + std::to_string(target) +
                         " was passed without retention");

    const u64 counted_before = count_r_selected_ ? last_count_r_before_ : last_count_s_before_;
    DecadeCursor cursor = last_cursor_before_;
    std::vector<DecadeRow> crossed;
    scan_event(last_event_, counted_before, last_depth_, target, cursor, crossed);
    if (!crossed.empty() && crossed.back().n == target)
        return crossed.back();

    DecadeRow row;
    row.n = target;
    const u64 offset = target - last_event_.start_position + 1;
    row.count = counted_before + (last_event_.symbol == params_.counted_symbol ? offset : 0);
    row.depth = last_depth_;
    if (cursor.any)
        row.deviation = cursor.max;
    return row;
}

SymbolCensus counts_at(CursorEngine& engine, CensusAccumulator& census, position_t target) {
    if (target == 0)
        throw ArgumentError("counts_at: target must be at least 1");
    if (target > kMaxPosition)
        throw OverflowError("counts_at: target exceeds the 10^15 position guard");
    while (census.position() < target) {
        const RunEvent event = engine.next_event();
        census.observe(event, engine.depth());
    }
    return census.counts_at(target);
}

} // namespace kolaseq
