// kolaseq — stream classical and generalised Kolakoski sequences K(r,s) in
// logarithmic space, census their digit distribution, and cross-check the
// streaming engine against a brute-force oracle.
//
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 I/O or checkpoint error.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "kolaseq/census.hpp"
#include "kolaseq/checkpoint.hpp"
#include "kolaseq/engine.hpp"
#include "kolaseq/errors.hpp"
#include "kolaseq/report.hpp"
#include "kolaseq/sequence_core.hpp"
#include "kolaseq/session.hpp"

namespace {

using namespace kolaseq;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitArgument = 2;
constexpr int kExitIo = 3;

struct ParamsFlags {
    symbol_t r = 1;
    symbol_t s = 2;
    std::optional<symbol_t> counted;

    SequenceParams make() const { return SequenceParams::make(r, s, counted); }

    void attach(CLI::App& cmd) {
        cmd.add_option("--r", r, "first alphabet symbol (sequence starts with r)")
            ->capture_default_str();
        cmd.add_option("--s", s, "second alphabet symbol")->capture_default_str();
        cmd.add_option("--counted-symbol", counted,
                       "symbol whose proportion is censused (default: the smaller symbol)");
    }
};

void render_rows(std::ostream& out, const std::string& format, const SequenceParams& params,
                 const std::vector<DecadeRow>& rows) {
    if (format == "csv")
        write_csv(out, rows);
    else if (format == "json")
        write_json(out, params, rows);
    else
        write_table(out, rows);
}

struct CensusJob {
    SequenceParams params;
    position_t n_max;
    std::string format;
    SessionOptions options;
    std::optional<std::string> out_path; // stdout when absent
};

int run_census_job(const CensusJob& job) {
    CensusSession session(job.params);
    session.run_to(job.n_max, job.options);
    const auto rows = session.report_rows(job.n_max);
    if (job.out_path) {
        std::ofstream out(*job.out_path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + *job.out_path + "' for writing");
        render_rows(out, job.format, job.params, rows);
        if (!out)
            throw IoError("write to '" + *job.out_path + "' failed");
    } else {
        render_rows(std::cout, job.format, job.params, rows);
    }
    return kExitOk;
}

int classify(const std::exception& e) {
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const CheckpointError*>(&e))
        return kExitIo;
    if (dynamic_cast<const Error*>(&e))
        return kExitArgument; // argument, query, overflow, resource ceiling
    return kExitIo;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return classify(e);
    }
}

SequenceParams parse_pair(const std::string& text, std::optional<symbol_t> counted) {
    const std::size_t sep = text.find_first_of(",:");
    if (sep == std::string::npos)
        throw ArgumentError("--pair expects 'r,s' (got '" + text + "')");
    try {
        const unsigned long r = std::stoul(text.substr(0, sep));
        const unsigned long s = std::stoul(text.substr(sep + 1));
        return SequenceParams::make(static_cast<symbol_t>(r), static_cast<symbol_t>(s), counted);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw ArgumentError("--pair expects 'r,s' (got '" + text + "')");
    }
}

std::string sanitized_pair_name(const SequenceParams& params, const std::string& format) {
    const std::string ext = format == "json" ? "json" : format == "csv" ? "csv" : "txt";
    return "census_K_" + std::to_string(params.r) + "_" + std::to_string(params.s) + "." + ext;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kolakoski sequence streaming census (logarithmic-space cursor stack)"};
    app.require_subcommand(1);

    // census ---------------------------------------------------------------
    auto* census_cmd = app.add_subcommand("census", "stream to n and report decade rows");
    ParamsFlags census_params;
    census_params.attach(*census_cmd);
    std::string census_n;
    std::string census_format = "table";
    std::string census_checkpoint;
    std::string census_every = "1e9";
    bool census_progress = false;
    std::vector<std::string> census_pairs;
    unsigned census_jobs = 1;
    std::string census_out_dir;
    census_cmd->add_option("--n", census_n, "target position (scientific notation accepted)")
        ->required();
    census_cmd->add_option("--format", census_format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    census_cmd->add_option("--checkpoint", census_checkpoint,
                           "write periodic checkpoints to this path");
    census_cmd->add_option("--checkpoint-every", census_every,
                           "positions between periodic checkpoints")
        ->capture_default_str();
    census_cmd->add_flag("--progress", census_progress, "progress lines on stderr ('#'-prefixed)");
    census_cmd->add_option("--pair", census_pairs,
                           "census several sequences: repeatable 'r,s' (writes files to --out-dir)");
    census_cmd->add_option("--jobs", census_jobs, "parallel workers for --pair runs")
        ->capture_default_str();
    census_cmd->add_option("--out-dir", census_out_dir, "output directory for --pair runs");

    // generate ---------------------------------------------------------------
    auto* generate_cmd = app.add_subcommand("generate", "print the first n symbols");
    ParamsFlags generate_params;
    generate_params.attach(*generate_cmd);
    std::string generate_n;
    std::string generate_mode = "engine";
    std::string generate_ceiling = std::to_string(kDefaultBruteCeiling);
    generate_cmd->add_option("--n", generate_n, "symbol count")->required();
    generate_cmd->add_option("--mode", generate_mode, "generator to use")
        ->check(CLI::IsMember({"engine", "oracle"}))
        ->capture_default_str();
    generate_cmd->add_option("--ceiling", generate_ceiling, "brute-force symbol ceiling")
        ->capture_default_str();

    // verify -----------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "cross-check the engine against the oracle");
    ParamsFlags verify_params;
    verify_params.attach(*verify_cmd);
    std::string verify_n;
    std::string verify_ceiling = std::to_string(kDefaultBruteCeiling);
    position_t corrupt_at = 0;
    verify_cmd->add_option("--n", verify_n, "positions to compare")->required();
    verify_cmd->add_option("--ceiling", verify_ceiling, "brute-force symbol ceiling")
        ->capture_default_str();
    verify_cmd->add_option("--corrupt-at", corrupt_at, "")->group(""); // test fixture hook

    // profile ----------------------------------------------------------------
    auto* profile_cmd = app.add_subcommand("profile", "per-level work counters and depth trajectory");
    ParamsFlags profile_params;
    profile_params.attach(*profile_cmd);
    std::string profile_n;
    profile_cmd->add_option("--n", profile_n, "target position (at least 1e3)")->required();

    // resume -----------------------------------------------------------------
    auto* resume_cmd = app.add_subcommand("resume", "continue a census from a checkpoint");
    std::string resume_checkpoint;
    std::string resume_n;
    std::string resume_format = "table";
    std::string resume_checkpoint_out;
    std::string resume_every = "1e9";
    bool resume_progress = false;
    resume_cmd->add_option("--checkpoint", resume_checkpoint, "checkpoint file to resume from")
        ->required();
    resume_cmd->add_option("--n", resume_n, "target position")->required();
    resume_cmd->add_option("--format", resume_format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    resume_cmd->add_option("--checkpoint-out", resume_checkpoint_out,
                           "keep writing periodic checkpoints to this path");
    resume_cmd->add_option("--checkpoint-every", resume_every,
                           "positions between periodic checkpoints")
        ->capture_default_str();
    resume_cmd->add_flag("--progress", resume_progress, "progress lines on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitArgument;
    }

    if (app.got_subcommand(census_cmd)) {
        return guarded([&]() -> int {
            const position_t n_max = parse_position(census_n);
            if (n_max < 1)
                throw ArgumentError("census: --n must be at least 1");
            SessionOptions options;
            if (!census_checkpoint.empty())
                options.checkpoint_path = census_checkpoint;
            options.checkpoint_every = parse_position(census_every);
            if (census_progress)
                options.progress = &std::cerr;

            if (census_pairs.empty()) {
                CensusJob job{census_params.make(), n_max, census_format, options, std::nullopt};
                return run_census_job(job);
            }

            // independent parameter sets in parallel workers, nothing shared
            if (census_out_dir.empty())
                throw ArgumentError("census: --pair runs need --out-dir");
            if (!census_checkpoint.empty())
                throw ArgumentError("census: --checkpoint applies to single-sequence runs only");
            std::vector<CensusJob> jobs;
            for (const std::string& pair : census_pairs) {
                CensusJob job{parse_pair(pair, census_params.counted), n_max, census_format,
                              SessionOptions{}, std::nullopt};
                job.out_path = census_out_dir + "/" + sanitized_pair_name(job.params, census_format);
                jobs.push_back(std::move(job));
            }
            std::mutex failures_mutex;
            std::vector<std::string> failures;
            std::atomic<std::size_t> next{0};
            const unsigned worker_count =
                std::min<unsigned>(std::max(1u, census_jobs), static_cast<unsigned>(jobs.size()));
            std::vector<std::thread> workers;
            for (unsigned w = 0; w < worker_count; ++w) {
                workers.emplace_back([&] {
                    while (true) {
                        const std::size_t index = next.fetch_add(1);
                        if (index >= jobs.size())
                            return;
                        try {
                            run_census_job(jobs[index]);
                        } catch (const std::exception& e) {
                            const std::lock_guard<std::mutex> lock(failures_mutex);
                            failures.push_back(jobs[index].params.name() + ": " + e.what());
                        }
                    }
                });
            }
            for (std::thread& worker : workers)
                worker.join();
            for (const std::string& failure : failures)
                std::cerr << "error: " << failure << '\n';
            return failures.empty() ? kExitOk : kExitIo;
        });
    }

    if (app.got_subcommand(generate_cmd)) {
        return guarded([&]() -> int {
            const SequenceParams params = generate_params.make();
            const position_t n = parse_position(generate_n);
            if (n < 1)
                throw ArgumentError("generate: --n must be at least 1");
            const bool plain_digits = params.single_digit_alphabet();
            std::string buffer;
            buffer.reserve(1 << 16);
            position_t emitted = 0;
            const auto push_symbol = [&](symbol_t symbol) {
                if (plain_digits) {
                    buffer.push_back(static_cast<char>('0' + symbol));
                } else {
                    if (emitted)
                        buffer.push_back(',');
                    buffer += std::to_string(symbol);
                }
                ++emitted;
                if (buffer.size() >= (1 << 16) - 16) {
                    std::fwrite(buffer.data(), 1, buffer.size(), stdout);
                    buffer.clear();
                }
            };
            if (generate_mode == "oracle") {
                const Word word = brute_prefix(params, n, parse_position(generate_ceiling));
                for (symbol_t symbol : word)
                    push_symbol(symbol);
            } else {
                CursorEngine engine(params);
                while (emitted < n) {
                    const RunEvent event = engine.next_event();
                    for (symbol_t i = 0; i < event.length && emitted < n; ++i)
                        push_symbol(event.symbol);
                }
            }
            buffer.push_back('\n');
            std::fwrite(buffer.data(), 1, buffer.size(), stdout);
            return kExitOk;
        });
    }

    if (app.got_subcommand(verify_cmd)) {
        return guarded([&]() -> int {
            const SequenceParams params = verify_params.make();
            const position_t n = parse_position(verify_n);
            if (n < 1)
                throw ArgumentError("verify: --n must be at least 1");
            const Word oracle = brute_prefix(params, n, parse_position(verify_ceiling));

            CursorEngine engine(params);
            CensusAccumulator census(params);
            position_t covered = 0;
            while (covered < n) {
                const RunEvent event = engine.next_event();
                census.observe(event, engine.depth());
                for (position_t i = event.start_position; i <= event.end_position() && i <= n; ++i) {
                    symbol_t symbol = event.symbol;
                    if (i == corrupt_at)
                        symbol = params.other(symbol); // injected fault (test fixture)
                    if (symbol != oracle[i - 1]) {
                        std::cout << "FAIL " << params.name() << ": first mismatch at position "
                                  << i << " (engine=" << symbol << ", oracle=" << oracle[i - 1]
                                  << ")\n";
                        return kExitVerifyFailed;
                    }
                }
                covered = event.end_position();
            }

            // decade counts, both routes
            std::uint64_t oracle_count = 0;
            position_t next_boundary = 1;
            std::size_t row_index = 0;
            for (position_t i = 1; i <= n; ++i) {
                if (oracle[i - 1] == params.counted_symbol)
                    ++oracle_count;
                if (i == next_boundary) {
                    if (row_index >= census.rows().size() ||
                        census.rows()[row_index].n != i ||
                        census.rows()[row_index].count != oracle_count) {
                        std::cout << "FAIL " << params.name() << ": decade count mismatch at n="
                                  << i << '\n';
                        return kExitVerifyFailed;
                    }
                    ++row_index;
                    next_boundary *= 10;
                }
            }
            std::cout << "OK " << params.name() << ": engine matches oracle for n=" << n
                      << " (symbols and decade counts)\n";
            return kExitOk;
        });
    }

    if (app.got_subcommand(profile_cmd)) {
        return guarded([&]() -> int {
            const SequenceParams params = profile_params.make();
            const position_t n = parse_position(profile_n);
            if (n < 1000)
                throw ArgumentError("profile: --n must be at least 1e3 for meaningful ratios");
            CursorEngine engine(params);
            CensusAccumulator census(params);
            while (census.position() < n) {
                const RunEvent event = engine.next_event();
                census.observe(event, engine.depth());
            }
            const WorkProfile& profile = engine.work_profile();
            const std::uint64_t runs = profile.p[0];
            const std::uint64_t total = profile.total_work();
            std::printf("# work profile %s to position %llu\n", params.name().c_str(),
                        static_cast<unsigned long long>(n));
            std::printf("position %llu\n", static_cast<unsigned long long>(engine.position()));
            std::printf("runs %llu\n", static_cast<unsigned long long>(runs));
            std::printf("total_work %llu\n", static_cast<unsigned long long>(total));
            std::printf("work_per_run %.4f\n", runs ? double(total) / double(runs) : 0.0);
            std::printf("work_per_position %.4f\n", double(total) / double(engine.position()));
            std::printf("depth %zu\n", engine.depth());
            for (const DecadeRow& row : census.rows())
                std::printf("depth_at %llu %u\n", static_cast<unsigned long long>(row.n), row.depth);
            std::printf("level p a b next_ratio\n");
            for (std::size_t k = 0; k < profile.p.size(); ++k) {
                if (k + 1 < profile.p.size() && profile.p[k] > 0)
                    std::printf("%zu %llu %llu %llu %.4f\n", k,
                                static_cast<unsigned long long>(profile.p[k]),
                                static_cast<unsigned long long>(profile.a[k]),
                                static_cast<unsigned long long>(profile.b[k]),
                                double(profile.p[k + 1]) / double(profile.p[k]));
                else
                    std::printf("%zu %llu %llu %llu -\n", k,
                                static_cast<unsigned long long>(profile.p[k]),
                                static_cast<unsigned long long>(profile.a[k]),
                                static_cast<unsigned long long>(profile.b[k]));
            }
            return kExitOk;
        });
    }

    if (app.got_subcommand(resume_cmd)) {
        return guarded([&]() -> int {
            const position_t n_max = parse_position(resume_n);
            CensusSession session = CensusSession::resume(resume_checkpoint);
            if (n_max <= session.position())
                throw ArgumentError("resume: --n " + std::to_string(n_max) +
                                    " must exceed the checkpoint position " +
                                    std::to_string(session.position()));
            SessionOptions options;
            if (!resume_checkpoint_out.empty())
                options.checkpoint_path = resume_checkpoint_out;
            options.checkpoint_every = parse_position(resume_every);
            if (resume_progress)
                options.progress = &std::cerr;
            session.run_to(n_max, options);
            render_rows(std::cout, resume_format, session.census().params(),
                        session.report_rows(n_max));
            return kExitOk;
        });
    }

    std::cerr << "error: no subcommand\n";
    return kExitArgument;
}
