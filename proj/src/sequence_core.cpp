#include "kolaseq/sequence_core.hpp"

#include <string>

#include "kolaseq/errors.hpp"

namespace kolaseq {

Word brute_prefix(const SequenceParams& params, std::uint64_t n, std::uint64_t ceiling) {
    validate(params);
    if (n == 0)
        throw ArgumentError("brute_prefix: n must be at least 1");
    if (n > ceiling)
        throw ResourceError("brute_prefix: n=" + std::to_string(n) +
                            " exceeds the brute-force ceiling " + std::to_string(ceiling));

    Word seq;
    seq.reserve(n);
    symbol_t symbol = params.r;
    std::uint64_t run_index = 1; // term run_index gives run run_index's length
    while (seq.size() < n) {
        // During bootstrap the reader can point at the run being written; the
        // term there is the run's own first symbol.
        const symbol_t length =
            run_index <= seq.size() ? seq[run_index - 1] : symbol;
        for (symbol_t i = 0; i < length && seq.size() < n; ++i)
            seq.push_back(symbol);
        symbol = params.other(symbol);
        ++run_index;
    }
    return seq;
}

Word rl_decode(const SequenceParams& params, const Word& lengths, symbol_t start_symbol) {
    validate(params);
    if (lengths.empty())
        throw ArgumentError("rl_decode: empty length sequence");
    if (!params.contains(start_symbol))
        throw ArgumentError("rl_decode: start symbol " + std::to_string(start_symbol) +
                            " is not in the alphabet");

    Word word;
    std::uint64_t total = 0;
    for (symbol_t len : lengths)
        total += len;
    word.reserve(total);
    symbol_t symbol = start_symbol;
    for (symbol_t len : lengths) {
        for (symbol_t i = 0; i < len; ++i)
            word.push_back(symbol);
        symbol = params.other(symbol);
    }
    return word;
}

RunLengthEncoding rl_encode(const SequenceParams& params, const Word& word) {
    validate(params);
    if (word.empty())
        throw ArgumentError("rl_encode: empty word");

    RunLengthEncoding enc;
    std::uint64_t run_length = 1;
    for (std::size_t i = 1; i < word.size(); ++i) {
        if (word[i] == word[i - 1]) {
            ++run_length;
            continue;
        }
        if (!params.contains(static_cast<symbol_t>(run_length)))
            enc.complete_runs_in_alphabet = false;
        enc.lengths.push_back(static_cast<symbol_t>(run_length));
        run_length = 1;
    }
    enc.lengths.push_back(static_cast<symbol_t>(run_length));
    // The last run ends at the word boundary; only a run already at the
    // maximal length is certainly complete.
    enc.final_run_truncated = run_length < params.max_symbol();
    return enc;
}

Word fan_word(const SequenceParams& params, std::uint32_t k, std::uint64_t ceiling) {
    validate(params);
    Word w;
    if (params.r == 1) {
        // Decoding the bare [1] is a fixed point, so seed with the first two
        // runs instead; classically this is the fan's w_0 = 122.
        w.push_back(1);
        for (symbol_t i = 0; i < params.s; ++i)
            w.push_back(params.s);
    } else {
        w.push_back(params.r);
    }
    if (w.size() > ceiling)
        throw ResourceError("fan_word: seed exceeds the ceiling");

    for (std::uint32_t level = 0; level < k; ++level) {
        std::uint64_t next_size = 0;
        for (symbol_t len : w)
            next_size += len;
        if (next_size > ceiling)
            throw ResourceError("fan_word: |w_" + std::to_string(level + 1) + "| = " +
                                std::to_string(next_size) + " exceeds the ceiling " +
                                std::to_string(ceiling));
        w = rl_decode(params, w, w.front());
    }
    return w;
}

} // namespace kolaseq
