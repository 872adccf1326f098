#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>

#include "kolaseq/census.hpp"
#include "kolaseq/checkpoint.hpp"
#include "kolaseq/engine.hpp"
#include "kolaseq/errors.hpp"
#include "kolaseq/sequence_core.hpp"
#include "kolaseq/session.hpp"

namespace py = pybind11;
using namespace kolaseq;

namespace {

SequenceParams make(symbol_t r, symbol_t s, std::optional<symbol_t> counted) {
    return SequenceParams::make(r, s, counted);
}

py::dict row_to_dict(const DecadeRow& row) {
    py::dict out;
    out["n"] = row.n;
    out["count"] = row.count;
    out["depth"] = row.depth;
    out["deviation"] = row.deviation ? py::object(py::str(format_deviation(*row.deviation)))
                                     : py::object(py::none());
    return out;
}

py::list rows_to_list(const std::vector<DecadeRow>& rows) {
    py::list out;
    for (const DecadeRow& row : rows)
        out.append(row_to_dict(row));
    return out;
}

} // namespace

PYBIND11_MODULE(_kolaseq, m) {
    m.doc() = "Logarithmic-space Kolakoski sequence streaming and exact digit census";
    m.attr("__version__") = "0.1.0";
    m.attr("MAX_POSITION") = kMaxPosition;
    m.attr("DEFAULT_BRUTE_CEILING") = kDefaultBruteCeiling;

    py::register_exception<Error>(m, "KolaseqError", PyExc_RuntimeError);

    m.def(
        "brute_prefix",
        [](symbol_t r, symbol_t s, std::uint64_t n, std::uint64_t ceiling) {
            return brute_prefix(make(r, s, std::nullopt), n, ceiling);
        },
        py::arg("r"), py::arg("s"), py::arg("n"), py::arg("ceiling") = kDefaultBruteCeiling,
        "First n symbols of K(r,s) by the brute-force reference method.");

    m.def(
        "rl_decode",
        [](symbol_t r, symbol_t s, const Word& lengths, symbol_t start) {
            return rl_decode(make(r, s, std::nullopt), lengths, start);
        },
        py::arg("r"), py::arg("s"), py::arg("lengths"), py::arg("start"));

    m.def(
        "rl_encode",
        [](symbol_t r, symbol_t s, const Word& word) {
            const RunLengthEncoding enc = rl_encode(make(r, s, std::nullopt), word);
            return py::make_tuple(enc.lengths, enc.final_run_truncated,
                                  enc.complete_runs_in_alphabet);
        },
        py::arg("r"), py::arg("s"), py::arg("word"),
        "Run lengths of word plus (final_run_truncated, complete_runs_in_alphabet) flags.");

    m.def(
        "fan_word",
        [](symbol_t r, symbol_t s, std::uint32_t k, std::uint64_t ceiling) {
            return fan_word(make(r, s, std::nullopt), k, ceiling);
        },
        py::arg("r"), py::arg("s"), py::arg("k"), py::arg("ceiling") = kDefaultBruteCeiling);

    m.def(
        "format_deviation",
        [](std::uint64_t numerator, std::uint64_t denominator) {
            return format_deviation(Deviation{numerator, denominator});
        },
        py::arg("numerator"), py::arg("denominator"));

    py::class_<RunEvent>(m, "RunEvent")
        .def_readonly("symbol", &RunEvent::symbol)
        .def_readonly("length", &RunEvent::length)
        .def_readonly("start_position", &RunEvent::start_position)
        .def("__repr__", [](const RunEvent& e) {
            return "RunEvent(symbol=" + std::to_string(e.symbol) +
                   ", length=" + std::to_string(e.length) +
                   ", start_position=" + std::to_string(e.start_position) + ")";
        });

    py::class_<CursorEngine>(m, "Engine")
        .def(py::init([](symbol_t r, symbol_t s) { return CursorEngine(make(r, s, std::nullopt)); }),
             py::arg("r") = 1, py::arg("s") = 2)
        .def("next_event", &CursorEngine::next_event)
        .def("next_run", &CursorEngine::next_run)
        .def_property_readonly("depth", &CursorEngine::depth)
        .def_property_readonly("position", &CursorEngine::position)
        .def_property_readonly("row_position", &CursorEngine::row_position)
        .def("stack",
             [](const CursorEngine& engine) {
                 py::list out;
                 for (const CursorCell& cell : engine.stack())
                     out.append(py::make_tuple(cell.symbol, cell.remaining));
                 return out;
             })
        .def("work_profile", [](const CursorEngine& engine) {
            const WorkProfile& profile = engine.work_profile();
            py::dict out;
            out["p"] = profile.p;
            out["a"] = profile.a;
            out["b"] = profile.b;
            return out;
        });

    m.def(
        "census",
        [](symbol_t r, symbol_t s, std::uint64_t n, std::optional<symbol_t> counted) {
            std::vector<DecadeRow> rows;
            {
                py::gil_scoped_release release;
                CensusSession session(make(r, s, counted));
                session.run_to(n);
                rows = session.report_rows(n);
            }
            return rows_to_list(rows);
        },
        py::arg("r"), py::arg("s"), py::arg("n"), py::arg("counted") = std::nullopt,
        "Decade rows (n, count, depth, deviation) for K(r,s) up to position n.");

    m.def(
        "census_to_checkpoint",
        [](symbol_t r, symbol_t s, std::uint64_t n, const std::filesystem::path& path,
           std::optional<symbol_t> counted) {
            std::vector<DecadeRow> rows;
            {
                py::gil_scoped_release release;
                CensusSession session(make(r, s, counted));
                session.run_to(n);
                session.save(path);
                rows = session.report_rows(n);
            }
            return rows_to_list(rows);
        },
        py::arg("r"), py::arg("s"), py::arg("n"), py::arg("path"),
        py::arg("counted") = std::nullopt,
        "Run a census to n, save a checkpoint, and return the rows.");

    m.def(
        "resume_census",
        [](const std::filesystem::path& path, std::uint64_t n) {
            std::vector<DecadeRow> rows;
            {
                py::gil_scoped_release release;
                CensusSession session = CensusSession::resume(path);
                if (n <= session.position())
                    throw ArgumentError("resume: n must exceed the checkpoint position " +
                                        std::to_string(session.position()));
                session.run_to(n);
                rows = session.report_rows(n);
            }
            return rows_to_list(rows);
        },
        py::arg("path"), py::arg("n"),
        "Resume a census from a checkpoint file and return the rows up to n.");

    m.def(
        "verify",
        [](symbol_t r, symbol_t s, std::uint64_t n, std::uint64_t ceiling) -> std::uint64_t {
            py::gil_scoped_release release;
            const SequenceParams params = make(r, s, std::nullopt);
            const Word oracle = brute_prefix(params, n, ceiling);
            CursorEngine engine(params);
            position_t covered = 0;
            while (covered < n) {
                const RunEvent event = engine.next_event();
                for (position_t i = event.start_position;
                     i <= event.end_position() && i <= n; ++i)
                    if (event.symbol != oracle[i - 1])
                        return i;
                covered = event.end_position();
            }
            return 0;
        },
        py::arg("r"), py::arg("s"), py::arg("n"), py::arg("ceiling") = kDefaultBruteCeiling,
        "Position of the first engine/oracle mismatch, or 0 when the streams agree.");
}
