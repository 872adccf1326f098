#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "kolaseq/session.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/// Runs the CLI binary with sh -c semantics and captures stdout.
RunResult run_cli(const std::string& args) {
    const std::string command = std::string(KOLASEQ_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> chunk{};
    std::size_t n = 0;
    while ((n = fread(chunk.data(), 1, chunk.size(), pipe)) > 0)
        result.out.append(chunk.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("kolaseq_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("generate prints the documented prefixes") {
    CHECK(run_cli("generate --n 14").out == "12211212212211\n");
    CHECK(run_cli("generate --n 14 --mode oracle").out == "12211212212211\n");
    CHECK(run_cli("generate --r 2 --s 3 --n 10").out == "2233222333\n");
    CHECK(run_cli("generate --n 1").out == "1\n");
}

TEST_CASE("generate separates symbols for multi-digit alphabets") {
    const RunResult result = run_cli("generate --r 10 --s 11 --n 12");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "10,10,10,10,10,10,10,10,10,10,11,11\n");
}

TEST_CASE("census csv matches the published head rows") {
    const RunResult result = run_cli("census --n 1e4 --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.out ==
          "n,count,depth,deviation\n"
          "1,1,1,\n"
          "10,5,4,1.667e-01\n"
          "100,49,10,8.333e-02\n"
          "1000,502,16,1.351e-02\n"
          "10000,4996,22,3.588e-03\n");
}

TEST_CASE("census of K(2,3) reproduces the generalised counts") {
    const RunResult result = run_cli("census --r 2 --s 3 --n 1e3 --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.out ==
          "n,count,depth,deviation\n"
          "1,1,1,\n"
          "10,5,3,2.143e-01\n"
          "100,51,6,8.333e-02\n"
          "1000,502,9,2.459e-02\n");
}

TEST_CASE("census emits a final partial row for non-decade targets") {
    const RunResult result = run_cli("census --n 13 --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("13,6,") != std::string::npos);
}

TEST_CASE("census --n 1 prints the single countless row") {
    const RunResult result = run_cli("census --n 1 --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "n,count,depth,deviation\n1,1,1,\n");
}

TEST_CASE("deterministic output: identical invocations, identical bytes") {
    const RunResult a = run_cli("census --n 12345 --format json");
    const RunResult b = run_cli("census --n 12345 --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"A000002\"") != std::string::npos);
    CHECK(a.out.find("\"A195206\"") != std::string::npos);
}

TEST_CASE("verify passes on supported parameter sets") {
    CHECK(run_cli("verify --n 1e5").exit_code == 0);
    CHECK(run_cli("verify --r 2 --s 3 --n 1e5").exit_code == 0);
}

TEST_CASE("verify reports the first mismatch for a corrupted stream") {
    const RunResult result = run_cli("verify --n 1000 --corrupt-at 137");
    CHECK(result.exit_code == 1);
    CHECK(result.out.find("position 137") != std::string::npos);
}

TEST_CASE("profile prints the ledger identities") {
    const RunResult result = run_cli("profile --n 1e3");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("depth_at 10 4") != std::string::npos);
    CHECK(result.out.find("runs ") != std::string::npos);
    // p[0] appears as level 0 and equals level 1's p
    CHECK(run_cli("profile --n 99").exit_code == 2); // below the 1e3 precondition
}

TEST_CASE("checkpoint, resume, and the exit-code discipline") {
    TempDir dir;
    const std::string ckpt = (dir.path / "run.ckpt").string();

    const RunResult save = run_cli("census --n 2e4 --format csv --checkpoint " + ckpt);
    CHECK(save.exit_code == 0);
    REQUIRE(std::filesystem::exists(ckpt));

    const RunResult full = run_cli("census --n 1e5 --format csv");
    const RunResult resumed = run_cli("resume --checkpoint " + ckpt + " --n 1e5 --format csv");
    CHECK(resumed.exit_code == 0);
    CHECK(resumed.out == full.out); // byte-identical CSV

    // argument error: target does not exceed the checkpoint position
    CHECK(run_cli("resume --checkpoint " + ckpt + " --n 100").exit_code == 2);
    // persistence error: missing checkpoint file
    CHECK(run_cli("resume --checkpoint " + ckpt + ".missing --n 1e5").exit_code == 3);
    // tampered checkpoint is a persistence error
    {
        std::ifstream in(ckpt, std::ios::binary);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        const auto pos = text.find("count_r ");
        text[pos + 8] = text[pos + 8] == '1' ? '2' : '1';
        std::ofstream out(ckpt + ".bad", std::ios::binary);
        out << text;
    }
    CHECK(run_cli("resume --checkpoint " + ckpt + ".bad --n 1e5").exit_code == 3);
}

TEST_CASE("argument errors exit with code 2") {
    CHECK(run_cli("census --n 0").exit_code == 2);
    CHECK(run_cli("census --r 2 --s 2 --n 10").exit_code == 2);
    CHECK(run_cli("census --n nonsense").exit_code == 2);
    CHECK(run_cli("generate --n 1e16").exit_code == 2);
    CHECK(run_cli("generate --n 1e9 --mode oracle --ceiling 1e6").exit_code == 2);
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("parallel --pair runs write per-sequence files") {
    TempDir dir;
    const RunResult result = run_cli("census --n 1e3 --format csv --pair 1,2 --pair 2,3 "
                                     "--jobs 2 --out-dir " + dir.path.string());
    CHECK(result.exit_code == 0);
    const std::filesystem::path classical = dir.path / "census_K_1_2.csv";
    const std::filesystem::path generalised = dir.path / "census_K_2_3.csv";
    REQUIRE(std::filesystem::exists(classical));
    REQUIRE(std::filesystem::exists(generalised));
    std::ifstream in(classical);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,count,depth,deviation");
}
