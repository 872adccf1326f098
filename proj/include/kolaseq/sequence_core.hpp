#pragma once

#include <cstdint>
#include <vector>

#include "kolaseq/params.hpp"

namespace kolaseq {

/// A finite word over the alphabet {r,s}. Symbols are stored as their
/// numeric values because run lengths are read off them directly.
using Word = std::vector<symbol_t>;

/// Memory ceiling for the brute-force reference path (symbols, not bytes).
inline constexpr std::uint64_t kDefaultBruteCeiling = 100'000'000ULL;

/// First n symbols of K(r,s) by the two-index read/append method: each term
/// already written gives the length of the next run, alternating symbols.
/// O(n) memory; this is the independent oracle for all engine tests.
///
/// Throws ArgumentError for n = 0 and ResourceError when n exceeds ceiling.
Word brute_prefix(const SequenceParams& params, std::uint64_t n,
                  std::uint64_t ceiling = kDefaultBruteCeiling);

/// Word whose k-th run has length lengths[k], run symbols alternating from
/// start_symbol. Throws ArgumentError for an empty input or a start symbol
/// outside the alphabet.
Word rl_decode(const SequenceParams& params, const Word& lengths, symbol_t start_symbol);

struct RunLengthEncoding {
    Word lengths;
    /// The final run of a finite word may continue past its boundary; it is
    /// flagged whenever its observed length is shorter than max(r,s).
    bool final_run_truncated = false;
    /// Every complete run (all but possibly the final one) has length r or s.
    bool complete_runs_in_alphabet = true;
};

/// Run lengths of word. Throws ArgumentError for an empty word.
RunLengthEncoding rl_encode(const SequenceParams& params, const Word& word);

/// The word family w_0, w_1, ... with w_{k+1} = rl_decode(w_k, w_k[0]);
/// every w_k is a prefix of K(r,s) (the Kolakoski fan in the classical
/// case, where w_0 = 122). For r >= 2 the seed is the one-symbol word [r];
/// for r = 1 the seed is 1 followed by s copies of s, since decoding the
/// bare [1] is a fixed point and generates nothing.
///
/// Throws ResourceError when |w_k| would exceed ceiling.
Word fan_word(const SequenceParams& params, std::uint32_t k,
              std::uint64_t ceiling = kDefaultBruteCeiling);

} // namespace kolaseq
