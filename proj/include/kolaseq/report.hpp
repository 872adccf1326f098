#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kolaseq/census.hpp"
#include "kolaseq/params.hpp"

namespace kolaseq {

/// Printable form of a DecadeRow; the CSV and tabular renderings contain
/// these same strings.
struct ReportRow {
    std::string n;
    std::string count;
    std::string depth;
    std::string deviation; // empty for n = 1
};

ReportRow to_report_row(const DecadeRow& row);

/// Known OEIS identifiers for the streamed sequence and its decade counts.
struct OeisIds {
    std::string sequence;
    std::string decade_counts;
};
std::optional<OeisIds> oeis_ids(const SequenceParams& params);

void write_table(std::ostream& out, const std::vector<DecadeRow>& rows);

/// Fixed schema: header `n,count,depth,deviation`, one row per line.
void write_csv(std::ostream& out, const std::vector<DecadeRow>& rows);

/// Mirrors the CSV fields plus params and OEIS identifiers as metadata.
void write_json(std::ostream& out, const SequenceParams& params,
                const std::vector<DecadeRow>& rows);

} // namespace kolaseq
