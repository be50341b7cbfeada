#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "tmalab/angles.hpp"

namespace {

#ifndef TMALAB_CLI_PATH
#define TMALAB_CLI_PATH "tmalab"
#endif
#ifndef TMALAB_CONFIG_DIR
#define TMALAB_CONFIG_DIR "configs"
#endif

std::string cfg(const std::string& name) {
    return std::string(TMALAB_CONFIG_DIR) + "/" + name;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(TMALAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// rows of a CSV, comment and header stripped
std::vector<std::vector<double>> csv_rows(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::vector<double>> rows;
    std::string line;
    int skipped = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (skipped++ == 0) {
            continue; // header
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            row.push_back(std::strtod(cell.c_str(), nullptr));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = "/tmp/tmalab_cli_" + name;
    std::ofstream out(path);
    out << body;
    return path;
}

double total_bearing_change(const std::string& bearings_csv) {
    auto rows = csv_rows(bearings_csv);
    double total = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        total += std::abs(tmalab::wrap180(rows[k][1] - rows[k - 1][1]));
    }
    return total;
}

} // namespace

TEST_CASE("version and usage") {
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("estimate") == 2); // missing config argument
}

TEST_CASE("bearings exports one row per sample, deterministically") {
    CHECK(run_cli("bearings " + cfg("scenario1_ct30.cfg") + " --seed 7 --out /tmp/tma_b1") == 0);
    auto rows = csv_rows("/tmp/tma_b1/bearings.csv");
    CHECK(rows.size() == 7); // n_samples in the bundled scenario
    REQUIRE(!rows.empty());
    CHECK(rows[0].size() == 7);

    CHECK(run_cli("bearings " + cfg("scenario1_ct30.cfg") + " --seed 7 --out /tmp/tma_b2") == 0);
    CHECK(slurp("/tmp/tma_b1/bearings.csv") == slurp("/tmp/tma_b2/bearings.csv"));

    CHECK(run_cli("bearings " + cfg("scenario1_ct30.cfg") + " --seed 8 --out /tmp/tma_b3") == 0);
    CHECK(slurp("/tmp/tma_b1/bearings.csv") != slurp("/tmp/tma_b3/bearings.csv"));
}

TEST_CASE("noiseless bearings have identical true and measured columns") {
    std::string path = write_temp("quiet.cfg",
                                  "type = scenario\n"
                                  "b0_deg = 45\n"
                                  "target_r0_m = 5000\n"
                                  "target_course_deg = 30\n"
                                  "target_speed_mps = 5\n"
                                  "leg = course_deg=100 speed_mps=5 duration_s=400\n"
                                  "leg = course_deg=20 speed_mps=5 duration_s=400\n"
                                  "ts_s = 10\n"
                                  "n_samples = 50\n"
                                  "noise_sigma_deg = 0\n");
    CHECK(run_cli("bearings " + path + " --seed 3 --out /tmp/tma_quiet") == 0);
    for (const auto& row : csv_rows("/tmp/tma_quiet/bearings.csv")) {
        CHECK(row[1] == row[2]);
    }
}

TEST_CASE("total bearing change is larger for the cross-course target") {
    CHECK(run_cli("bearings " + cfg("scenario1_ct30.cfg") + " --seed 7 --out /tmp/tma_f30") == 0);
    CHECK(run_cli("bearings " + cfg("scenario1_ct170.cfg") + " --seed 7 --out /tmp/tma_f170") == 0);
    double change30 = total_bearing_change("/tmp/tma_f30/bearings.csv");
    double change170 = total_bearing_change("/tmp/tma_f170/bearings.csv");
    CHECK(change170 > change30);
}

TEST_CASE("estimate writes deterministic summaries") {
    std::string flags = " --runs 2 --seed 7 --r0 4900:5100:50 --course 168:172:1"
                        " --speed 3:7:1 --cost both";
    CHECK(run_cli("estimate " + cfg("scenario1_ct170.cfg") + flags + " --out /tmp/tma_e1") == 0);
    CHECK(run_cli("estimate " + cfg("scenario1_ct170.cfg") + flags + " --out /tmp/tma_e2") == 0);
    CHECK(slurp("/tmp/tma_e1/summary.csv") == slurp("/tmp/tma_e2/summary.csv"));
    CHECK(slurp("/tmp/tma_e1/runs.csv") == slurp("/tmp/tma_e2/runs.csv"));
    CHECK(csv_rows("/tmp/tma_e1/summary.csv").size() == 2); // one row per cost kind
    CHECK(csv_rows("/tmp/tma_e1/runs.csv").size() == 4);    // 2 runs x 2 costs

    // thread count must not change the artifacts
    CHECK(run_cli("estimate " + cfg("scenario1_ct170.cfg") + flags +
                  " --threads 1 --out /tmp/tma_e3") == 0);
    CHECK(slurp("/tmp/tma_e1/summary.csv") == slurp("/tmp/tma_e3/summary.csv"));

    // scalar kernels must agree with the dispatched ones at the summary level
    CHECK(run_cli("estimate " + cfg("scenario1_ct170.cfg") + flags +
                  " --kernel scalar --out /tmp/tma_e4") == 0);
    CHECK(slurp("/tmp/tma_e1/summary.csv") == slurp("/tmp/tma_e4/summary.csv"));
}

TEST_CASE("bias experiment artifacts are reproducible") {
    CHECK(run_cli("bias " + cfg("bias_r5000_ct30.cfg") +
                  " --runs 2000 --seed 7 --out /tmp/tma_k1") == 0);
    CHECK(run_cli("bias " + cfg("bias_r5000_ct30.cfg") +
                  " --runs 2000 --seed 7 --out /tmp/tma_k2") == 0);
    CHECK(slurp("/tmp/tma_k1/histogram.csv") == slurp("/tmp/tma_k2/histogram.csv"));
    CHECK(slurp("/tmp/tma_k1/bias_report.txt") == slurp("/tmp/tma_k2/bias_report.txt"));
    CHECK(csv_rows("/tmp/tma_k1/histogram.csv").size() == 101);

    CHECK(run_cli("bias " + cfg("bias_four_ranges.cfg") +
                  " --sweep --runs 2000 --seed 7 --out /tmp/tma_k3") == 0);
    CHECK(csv_rows("/tmp/tma_k3/sweep.csv").size() == 4);
}

TEST_CASE("config and validation failures exit with code 2") {
    CHECK(run_cli("estimate /tmp/no_such_file.cfg") == 2);
    CHECK(run_cli("bias " + cfg("scenario1_ct30.cfg")) == 2); // wrong config type
    CHECK(run_cli("estimate " + cfg("scenario1_ct30.cfg") + " --cost nonsense") == 2);
    CHECK(run_cli("estimate " + cfg("scenario1_ct30.cfg") + " --r0 5:4:1") == 2);
    std::string few = write_temp("few_runs.cfg",
                                 "type = bias\n"
                                 "r0_m = 5000\n"
                                 "b0_deg = 45\n"
                                 "target_course_deg = 30\n"
                                 "target_speed_mps = 5\n"
                                 "ownship_course_deg = 90\n"
                                 "ownship_speed_mps = 5\n"
                                 "ts_s = 150\n"
                                 "noise_sigma_deg = 1\n"
                                 "runs = 100\n");
    CHECK(run_cli("bias " + few) == 2);
    CHECK(run_cli("bias " + cfg("bias_r5000_ct30.cfg") + " --runs 100") == 2);
    CHECK(run_cli("bias " + cfg("bias_r5000_ct30.cfg") + " --sweep") == 2); // no sweep defined
}

TEST_CASE("runtime failures exit with code 1") {
    CHECK(run_cli("bearings " + cfg("scenario1_ct30.cfg") +
                  " --out /proc/tmalab_cannot_write") == 1);
}
