#include "kolaseq/session.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <string>

#include "kolaseq/errors.hpp"

namespace kolaseq {

CensusSession::CensusSession(const SequenceParams& params) : engine_(params), census_(params) {}

CensusSession::CensusSession(CursorEngine engine, CensusAccumulator census)
    : engine_(std::move(engine)), census_(std::move(census)) {}

CensusSession CensusSession::from_state(const CheckpointState& state) {
    validate(state);
    return CensusSession(engine_from(state), census_from(state));
}

CensusSession CensusSession::resume(const std::filesystem::path& checkpoint) {
    return from_state(load_checkpoint(checkpoint));
}

void CensusSession::run_to(position_t n_max, const SessionOptions& options) {
    if (n_max == 0)
        throw ArgumentError("census: n must be at least 1");
    if (n_max > kMaxPosition)
        throw OverflowError("census: n exceeds the 10^15 position guard");

    const position_t every =
        options.checkpoint_every ? options.checkpoint_every : kDefaultCheckpointEvery;
    position_t next_checkpoint =
        options.checkpoint_path ? (position() / every + 1) * every : 0;

    const position_t progress_step = std::max<position_t>(n_max / 20, 10'000'000);
    position_t next_progress = options.progress ? position() + progress_step : 0;
    const position_t start_position = position();
    const auto start_time = std::chrono::steady_clock::now();

    while (census_.position() < n_max) {
        const RunEvent event = engine_.next_event();
        census_.observe(event, engine_.depth());
        if (options.checkpoint_path && census_.position() >= next_checkpoint) {
            save(*options.checkpoint_path);
            next_checkpoint = (census_.position() / every + 1) * every;
        }
        if (options.progress && census_.position() >= next_progress) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
                    .count();
            const double rate =
                elapsed > 0 ? static_cast<double>(census_.position() - start_position) / elapsed
                            : 0.0;
            *options.progress << "# " << engine_.params().name() << " position="
                              << census_.position() << " ("
                              << (100 * census_.position() / n_max) << "%) rate="
                              << static_cast<std::uint64_t>(rate) << "/s\n";
            next_progress = census_.position() + progress_step;
        }
    }
    if (options.checkpoint_path)
        save(*options.checkpoint_path);
}

std::vector<DecadeRow> CensusSession::report_rows(position_t n_max) const {
    std::vector<DecadeRow> rows;
    for (const DecadeRow& row : census_.rows())
        if (row.n <= n_max)
            rows.push_back(row);
    if (rows.empty() || rows.back().n != n_max)
        rows.push_back(census_.row_at(n_max));
    return rows;
}

void CensusSession::save(const std::filesystem::path& destination) const {
    save_checkpoint(state(), destination);
}

position_t parse_position(std::string_view text) {
    const auto fail = [&] {
        throw ArgumentError("'" + std::string(text) + "' is not a position count "
                            "(expected an integer like 10000 or 1e4, at most 1e15)");
    };
    if (text.empty())
        fail();

    std::string_view mantissa = text;
    std::string_view exponent;
    const std::size_t e_pos = text.find_first_of("eE");
    if (e_pos != std::string_view::npos) {
        mantissa = text.substr(0, e_pos);
        exponent = text.substr(e_pos + 1);
        if (!exponent.empty() && exponent.front() == '+')
            exponent.remove_prefix(1);
        if (exponent.empty())
            fail();
    }

    unsigned __int128 value = 0;
    int fraction_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_dot)
                fail();
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail();
        seen_digit = true;
        value = value * 10 + static_cast<unsigned>(c - '0');
        if (seen_dot)
            ++fraction_digits;
        if (value > static_cast<unsigned __int128>(kMaxPosition) * 1'000'000)
            fail(); // way past the guard already; stop before overflow
    }
    if (!seen_digit)
        fail();

    int exp_value = 0;
    for (char c : exponent) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail();
        exp_value = exp_value * 10 + (c - '0');
        if (exp_value > 30)
            fail();
    }
    int shift = exp_value - fraction_digits;
    while (shift > 0 && value <= static_cast<unsigned __int128>(kMaxPosition)) {
        value *= 10;
        --shift;
    }
    while (shift < 0) {
        if (value % 10 != 0)
            fail(); // not an integer
        value /= 10;
        ++shift;
    }
    if (shift != 0 || value > kMaxPosition)
        fail();
    return static_cast<position_t>(value);
}

} // namespace kolaseq
