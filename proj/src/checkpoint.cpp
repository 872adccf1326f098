#include "kolaseq/checkpoint.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "kolaseq/crc64.hpp"
#include "kolaseq/errors.hpp"

namespace kolaseq {

namespace {

using u64 = std::uint64_t;

u64 parse_u64(std::string_view text, const char* field) {
    u64 value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw CheckpointFormatError(std::string("checkpoint: field '") + field +
                                    "' holds a malformed integer '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Reads lines of the form "name value" in a fixed order.
class FieldReader {
public:
    explicit FieldReader(std::string_view text) : text_(text) {}

    std::string_view next(std::string_view name) {
        if (pos_ >= text_.size())
            throw CheckpointFormatError("checkpoint: missing field '" + std::string(name) + "'");
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos)
            end = text_.size();
        const std::string_view line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        const std::size_t space = line.find(' ');
        if (space == std::string_view::npos || line.substr(0, space) != name)
            throw CheckpointFormatError("checkpoint: expected field '" + std::string(name) +
                                        "', found line '" + std::string(line) + "'");
        return line.substr(space + 1);
    }

    std::size_t offset() const noexcept { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

void append_counter_list(std::string& out, const char* name, const std::vector<u64>& values) {
    out += name;
    out += ' ';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(values[i]);
    }
    out += '\n';
}

std::vector<u64> parse_counter_list(std::string_view text, const char* field) {
    std::vector<u64> values;
    for (std::string_view part : split(text, ','))
        values.push_back(parse_u64(part, field));
    return values;
}

bool is_power_of_ten(u64 value) {
    if (value == 0)
        return false;
    while (value % 10 == 0)
        value /= 10;
    return value == 1;
}

} // namespace

CheckpointState snapshot(const CursorEngine& engine, const CensusAccumulator& census) {
    if (engine.position() != census.position())
        throw ArgumentError("snapshot: engine position " + std::to_string(engine.position()) +
                            " and census position " + std::to_string(census.position()) +
                            " disagree (snapshot only at a consumed run boundary)");
    CheckpointState state;
    state.params = engine.params();
    state.position = engine.position();
    state.prefix_emitted = engine.prefix_emitted();
    state.stack.assign(engine.stack().begin(), engine.stack().end());
    state.count_r = census.count_r();
    state.count_s = census.count_s();
    state.decade_end = census.decade_end();
    state.decade_max = census.decade_max();
    state.rows = census.rows();
    state.profile = engine.work_profile();
    return state;
}

void validate(const CheckpointState& state) {
    try {
        validate(state.params);
    } catch (const ArgumentError& e) {
        throw CheckpointInvariantError(std::string("checkpoint: ") + e.what());
    }
    const SequenceParams& params = state.params;
    if (state.prefix_emitted != params.has_prefix())
        throw CheckpointInvariantError("checkpoint: prefix_emitted flag contradicts r");
    if (state.stack.empty())
        throw CheckpointInvariantError("checkpoint: cursor stack is empty");
    for (const CursorCell& cell : state.stack) {
        if (!params.contains(cell.symbol))
            throw CheckpointInvariantError("checkpoint: stack symbol " +
                                           std::to_string(cell.symbol) + " outside alphabet");
        if (cell.remaining < 1 || cell.remaining > params.max_symbol())
            throw CheckpointInvariantError("checkpoint: cell remaining " +
                                           std::to_string(cell.remaining) + " outside [1, " +
                                           std::to_string(params.max_symbol()) + "]");
    }
    if (state.position < 1 || state.position > kMaxPosition)
        throw CheckpointInvariantError("checkpoint: position outside [1, 10^15]");
    if (state.count_r + state.count_s != state.position)
        throw CheckpointInvariantError("checkpoint: counts do not sum to the position");
    if (!is_power_of_ten(state.decade_end))
        throw CheckpointInvariantError("checkpoint: decade endpoint is not a power of 10");
    if (state.position >= state.decade_end || state.position < state.decade_end / 10)
        throw CheckpointInvariantError("checkpoint: position outside the decade in progress");
    if (state.decade_max) {
        if (state.decade_max->denominator < 2 ||
            state.decade_max->numerator * 2 > state.decade_max->denominator)
            throw CheckpointInvariantError("checkpoint: running deviation outside [0, 1/2]");
    }
    if (state.rows.empty() || state.rows.front().n != 1 ||
        state.rows.back().n != state.decade_end / 10)
        throw CheckpointInvariantError("checkpoint: decade rows do not span 1 .. decade/10");
    for (std::size_t i = 0; i < state.rows.size(); ++i) {
        const DecadeRow& row = state.rows[i];
        if (i > 0 && row.n != state.rows[i - 1].n * 10)
            throw CheckpointInvariantError("checkpoint: decade rows must step by factor 10");
        if (row.count > row.n)
            throw CheckpointInvariantError("checkpoint: row count exceeds its position");
        if (row.deviation && (row.deviation->denominator < 2 ||
                              row.deviation->numerator * 2 > row.deviation->denominator))
            throw CheckpointInvariantError("checkpoint: row deviation outside [0, 1/2]");
    }
    const WorkProfile& profile = state.profile;
    if (profile.p.size() != state.stack.size() || profile.a.size() != state.stack.size() ||
        profile.b.size() != state.stack.size())
        throw CheckpointInvariantError("checkpoint: work counters do not cover the stack levels");
    for (std::size_t k = 1; k < profile.p.size(); ++k)
        if (profile.p[k] != profile.a[k] + profile.b[k])
            throw CheckpointInvariantError("checkpoint: work ledger p[k] != a[k] + b[k] at level " +
                                           std::to_string(k));
    if (profile.p.size() >= 2 && profile.p[0] != profile.p[1])
        throw CheckpointInvariantError("checkpoint: work ledger p[0] != p[1]");
}

std::string serialize(const CheckpointState& state) {
    std::string out;
    out.reserve(512 + state.stack.size() * 8);
    out += "format_version " + std::to_string(state.format_version) + '\n';
    out += "r " + std::to_string(state.params.r) + '\n';
    out += "s " + std::to_string(state.params.s) + '\n';
    out += "counted_symbol " + std::to_string(state.params.counted_symbol) + '\n';
    out += "position " + std::to_string(state.position) + '\n';
    out += "prefix_emitted " + std::string(state.prefix_emitted ? "1" : "0") + '\n';
    out += "stack ";
    for (std::size_t i = 0; i < state.stack.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(state.stack[i].symbol) + ':' + std::to_string(state.stack[i].remaining);
    }
    out += '\n';
    out += "count_r " + std::to_string(state.count_r) + '\n';
    out += "count_s " + std::to_string(state.count_s) + '\n';
    out += "decade " + std::to_string(state.decade_end) + '\n';
    out += "deviation_num " +
           std::to_string(state.decade_max ? state.decade_max->numerator : 0) + '\n';
    out += "deviation_den " +
           std::to_string(state.decade_max ? state.decade_max->denominator : 0) + '\n';
    out += "rows ";
    if (state.rows.empty()) {
        out += '-';
    } else {
        for (std::size_t i = 0; i < state.rows.size(); ++i) {
            const DecadeRow& row = state.rows[i];
            if (i)
                out += ',';
            out += std::to_string(row.n) + ':' + std::to_string(row.count) + ':' +
                   std::to_string(row.depth) + ':';
            if (row.deviation)
                out += std::to_string(row.deviation->numerator) + ':' +
                       std::to_string(row.deviation->denominator);
            else
                out += "-:-";
        }
    }
    out += '\n';
    append_counter_list(out, "p", state.profile.p);
    append_counter_list(out, "a", state.profile.a);
    append_counter_list(out, "b", state.profile.b);
    char digest[32];
    std::snprintf(digest, sizeof digest, "digest %016llx\n",
                  static_cast<unsigned long long>(crc64_xz(out)));
    out += digest;
    return out;
}

CheckpointState deserialize(const std::string& text) {
    // version gate first: future formats may differ beyond this line
    FieldReader probe(text);
    const u64 version = parse_u64(probe.next("format_version"), "format_version");
    if (version != kCheckpointFormatVersion)
        throw CheckpointVersionError("checkpoint: unsupported format_version " +
                                     std::to_string(version) + " (expected " +
                                     std::to_string(kCheckpointFormatVersion) + ")");

    const std::size_t digest_pos = text.rfind("digest ");
    if (digest_pos == std::string::npos || (digest_pos != 0 && text[digest_pos - 1] != '\n'))
        throw CheckpointFormatError("checkpoint: missing digest line");
    std::string_view digest_text = std::string_view(text).substr(digest_pos + 7);
    if (!digest_text.empty() && digest_text.back() == '\n')
        digest_text.remove_suffix(1);
    if (digest_text.size() != 16)
        throw CheckpointFormatError("checkpoint: digest must be 16 hex digits");
    u64 stored_digest = 0;
    for (char c : digest_text) {
        int nibble;
        if (c >= '0' && c <= '9')
            nibble = c - '0';
        else if (c >= 'a' && c <= 'f')
            nibble = c - 'a' + 10;
        else
            throw CheckpointFormatError("checkpoint: digest must be lowercase hex");
        stored_digest = stored_digest << 4 | static_cast<u64>(nibble);
    }
    const u64 actual = crc64_xz(std::string_view(text).substr(0, digest_pos));
    if (actual != stored_digest)
        throw CheckpointDigestError("checkpoint: digest mismatch (file corrupt or tampered)");

    FieldReader reader(std::string_view(text).substr(0, digest_pos));
    CheckpointState state;
    state.format_version = static_cast<std::uint32_t>(parse_u64(reader.next("format_version"),
                                                                "format_version"));
    state.params.r = static_cast<symbol_t>(parse_u64(reader.next("r"), "r"));
    state.params.s = static_cast<symbol_t>(parse_u64(reader.next("s"), "s"));
    state.params.counted_symbol =
        static_cast<symbol_t>(parse_u64(reader.next("counted_symbol"), "counted_symbol"));
    state.position = parse_u64(reader.next("position"), "position");
    const std::string_view prefix = reader.next("prefix_emitted");
    if (prefix != "0" && prefix != "1")
        throw CheckpointFormatError("checkpoint: prefix_emitted must be 0 or 1");
    state.prefix_emitted = prefix == "1";
    for (std::string_view part : split(reader.next("stack"), ',')) {
        const auto pieces = split(part, ':');
        if (pieces.size() != 2)
            throw CheckpointFormatError("checkpoint: malformed stack cell '" + std::string(part) + "'");
        state.stack.push_back(CursorCell{
            static_cast<symbol_t>(parse_u64(pieces[0], "stack")),
            static_cast<symbol_t>(parse_u64(pieces[1], "stack"))});
    }
    state.count_r = parse_u64(reader.next("count_r"), "count_r");
    state.count_s = parse_u64(reader.next("count_s"), "count_s");
    state.decade_end = parse_u64(reader.next("decade"), "decade");
    const u64 dev_num = parse_u64(reader.next("deviation_num"), "deviation_num");
    const u64 dev_den = parse_u64(reader.next("deviation_den"), "deviation_den");
    if (dev_den == 0) {
        if (dev_num != 0)
            throw CheckpointFormatError("checkpoint: deviation 0 denominator with nonzero numerator");
        state.decade_max = std::nullopt;
    } else {
        state.decade_max = Deviation{dev_num, dev_den};
    }
    const std::string_view rows_text = reader.next("rows");
    if (rows_text != "-") {
        for (std::string_view part : split(rows_text, ',')) {
            const auto pieces = split(part, ':');
            if (pieces.size() != 5)
                throw CheckpointFormatError("checkpoint: malformed row '" + std::string(part) + "'");
            DecadeRow row;
            row.n = parse_u64(pieces[0], "rows");
            row.count = parse_u64(pieces[1], "rows");
            row.depth = static_cast<std::uint32_t>(parse_u64(pieces[2], "rows"));
            if (pieces[3] == "-" || pieces[4] == "-") {
                if (pieces[3] != "-" || pieces[4] != "-")
                    throw CheckpointFormatError("checkpoint: half-absent row deviation");
            } else {
                row.deviation = Deviation{parse_u64(pieces[3], "rows"), parse_u64(pieces[4], "rows")};
            }
            state.rows.push_back(row);
        }
    }
    state.profile.p = parse_counter_list(reader.next("p"), "p");
    state.profile.a = parse_counter_list(reader.next("a"), "a");
    state.profile.b = parse_counter_list(reader.next("b"), "b");
    if (reader.offset() < digest_pos)
        throw CheckpointFormatError("checkpoint: unexpected trailing content before digest");

    validate(state);
    return state;
}

CursorEngine engine_from(const CheckpointState& state) {
    return CursorEngine(state.params, state.stack, state.position, state.profile);
}

CensusAccumulator census_from(const CheckpointState& state) {
    return CensusAccumulator(state.params, state.position, state.count_r, state.count_s,
                             state.decade_end, state.decade_max, state.rows);
}

void save_checkpoint(const CheckpointState& state, const std::filesystem::path& destination) {
    validate(state);
    const std::string text = serialize(state);
    const std::filesystem::path temp = destination.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("checkpoint: cannot open '" + temp.string() + "' for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out)
            throw IoError("checkpoint: write to '" + temp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(temp, destination, ec);
    if (ec)
        throw IoError("checkpoint: rename '" + temp.string() + "' -> '" + destination.string() +
                      "' failed: " + ec.message());
}

CheckpointState load_checkpoint(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in)
        throw IoError("checkpoint: cannot open '" + source.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("checkpoint: read from '" + source.string() + "' failed");
    return deserialize(buffer.str());
}

} // namespace kolaseq
