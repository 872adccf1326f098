#include "kolaseq/report.hpp"

#include <algorithm>
#include <iomanip>

#include "json.hpp"

namespace kolaseq {

ReportRow to_report_row(const DecadeRow& row) {
    ReportRow out;
    out.n = std::to_string(row.n);
    out.count = std::to_string(row.count);
    out.depth = std::to_string(row.depth);
    out.deviation = row.deviation ? format_deviation(*row.deviation) : std::string{};
    return out;
}

std::optional<OeisIds> oeis_ids(const SequenceParams& params) {
    if (params.r == 1 && params.s == 2)
        return OeisIds{"A000002", "A195206"};
    if (params.r == 2 && params.s == 3)
        return OeisIds{"A071820", "A195211"};
    return std::nullopt;
}

void write_table(std::ostream& out, const std::vector<DecadeRow>& rows) {
    std::size_t n_width = 1;
    std::size_t count_width = 5;
    for (const DecadeRow& row : rows) {
        n_width = std::max(n_width, std::to_string(row.n).size());
        count_width = std::max(count_width, std::to_string(row.count).size());
    }
    out << std::setw(static_cast<int>(n_width)) << "n" << "  "
        << std::setw(static_cast<int>(count_width)) << "count" << "  depth  deviation\n";
    for (const DecadeRow& row : rows) {
        const ReportRow r = to_report_row(row);
        out << std::setw(static_cast<int>(n_width)) << r.n << "  "
            << std::setw(static_cast<int>(count_width)) << r.count << "  "
            << std::setw(5) << r.depth;
        if (!r.deviation.empty())
            out << "  " << r.deviation;
        out << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<DecadeRow>& rows) {
    out << "n,count,depth,deviation\n";
    for (const DecadeRow& row : rows) {
        const ReportRow r = to_report_row(row);
        out << r.n << ',' << r.count << ',' << r.depth << ',' << r.deviation << '\n';
    }
}

void write_json(std::ostream& out, const SequenceParams& params,
                const std::vector<DecadeRow>& rows) {
    nlohmann::ordered_json doc;
    doc["params"] = {{"r", params.r}, {"s", params.s}, {"counted_symbol", params.counted_symbol},
                     {"sequence", params.name()}};
    if (const auto ids = oeis_ids(params))
        doc["oeis"] = {{"sequence", ids->sequence}, {"decade_counts", ids->decade_counts}};
    doc["rows"] = nlohmann::ordered_json::array();
    for (const DecadeRow& row : rows) {
        nlohmann::ordered_json entry;
        entry["n"] = row.n;
        entry["count"] = row.count;
        entry["depth"] = row.depth;
        if (row.deviation)
            entry["deviation"] = format_deviation(*row.deviation);
        else
            entry["deviation"] = nullptr;
        doc["rows"].push_back(std::move(entry));
    }
    out << doc.dump(2) << '\n';
}

} // namespace kolaseq
