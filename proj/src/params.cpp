#include "kolaseq/params.hpp"

#include <string>

#include "kolaseq/errors.hpp"

namespace kolaseq {

void validate(const SequenceParams& params) {
    if (params.r < 1 || params.s < 1)
        throw ArgumentError("sequence symbols must be positive (got r=" +
                            std::to_string(params.r) + ", s=" + std::to_string(params.s) + ")");
    if (params.r == params.s)
        throw ArgumentError("sequence symbols must differ (got r=s=" +
                            std::to_string(params.r) + ")");
    if (!params.contains(params.counted_symbol))
        throw ArgumentError("counted symbol " + std::to_string(params.counted_symbol) +
                            " is not in the alphabet {" + std::to_string(params.r) + "," +
                            std::to_string(params.s) + "}");
}

SequenceParams SequenceParams::make(symbol_t r, symbol_t s, std::optional<symbol_t> counted) {
    SequenceParams params;
    params.r = r;
    params.s = s;
    params.counted_symbol = counted.value_or(r < s ? r : s);
    validate(params);
    return params;
}

std::string SequenceParams::name() const {
    return "K(" + std::to_string(r) + "," + std::to_string(s) + ")";
}

} // namespace kolaseq
