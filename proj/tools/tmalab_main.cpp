// Command-line front-end: estimate / bias / bearings.
// Exit codes: 0 success, 1 runtime failure, 2 config or usage error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmalab/bias_lab.hpp"
#include "tmalab/config.hpp"
#include "tmalab/csv.hpp"
#include "tmalab/estimator.hpp"

namespace fs = std::filesystem;
using namespace tmalab;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int threads = 0;
    int runs = 0; // 0 = command default / config value
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_path, "config file")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "base random seed");
    cmd->add_option("--threads", args.threads, "worker thread cap (0 = all cores)");
    cmd->add_option("--runs", args.runs, "Monte Carlo run count override");
}

void echo_config(std::ofstream& report, const std::string& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        report << "config| " << line << "\n";
    }
}

GridAxis parse_axis(const std::string& text, const std::string& flag) {
    GridAxis axis;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &axis.lo, &axis.hi, &axis.step) != 3) {
        throw ConfigError(flag + " must look like lo:hi:step");
    }
    if (!(axis.step > 0.0) || axis.hi < axis.lo) {
        throw ConfigError(flag + " needs step > 0 and hi >= lo");
    }
    return axis;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

struct EstimateArgs {
    CommonArgs common;
    std::string cost = "both";
    std::string anchor = "true-b0";
    std::string kernel = "auto";
    std::string r0_axis, course_axis, speed_axis;
};

int run_estimate(const EstimateArgs& args) {
    Scenario scenario = load_scenario_file(args.common.config_path);
    std::uint64_t hash = file_hash(args.common.config_path);

    SearchSpace space = SearchSpace::centered_on(scenario.target);
    if (!args.r0_axis.empty()) {
        space.r0 = parse_axis(args.r0_axis, "--r0");
    }
    if (!args.course_axis.empty()) {
        space.course = parse_axis(args.course_axis, "--course");
    }
    if (!args.speed_axis.empty()) {
        space.speed = parse_axis(args.speed_axis, "--speed");
    }

    SearchOptions opts;
    opts.threads = args.common.threads;
    opts.backend = kernels::backend_from_name(args.kernel);
    if (args.anchor == "true-b0") {
        opts.anchor = AnchorMode::TrueB0;
    } else if (args.anchor == "measured-b0") {
        opts.anchor = AnchorMode::MeasuredB0;
    } else {
        throw ConfigError("--anchor must be true-b0 or measured-b0");
    }

    std::vector<CostKind> kinds;
    if (args.cost == "both") {
        kinds = {CostKind::BearingDiff, CostKind::Equidistant};
    } else if (args.cost == "bearing-diff") {
        kinds = {CostKind::BearingDiff};
    } else if (args.cost == "equidistant") {
        kinds = {CostKind::Equidistant};
    } else {
        throw ConfigError("--cost must be both, bearing-diff or equidistant");
    }
    const int runs = args.common.runs > 0 ? args.common.runs : 20;

    fs::create_directories(args.common.out_dir);
    const std::string summary_path = args.common.out_dir + "/summary.csv";
    const std::string runs_path = args.common.out_dir + "/runs.csv";
    CsvFile summary(summary_path, hash, args.common.seed);
    summary.row({"cost_kind", "mean_abs_dr0_m", "mean_abs_dcourse_deg", "mean_abs_dspeed_mps",
                 "mean_rms_m", "runs", "failed_runs"});
    CsvFile detail(runs_path, hash, args.common.seed);
    detail.row({"cost_kind", "run", "run_seed", "r0_m", "course_deg", "speed_mps", "dr0_m",
                "dcourse_deg", "dspeed_mps", "rms_m", "cost", "cells_evaluated"});

    const double t_start = now_seconds();
    for (CostKind kind : kinds) {
        MonteCarloSummary mc = monte_carlo(scenario, space, kind, runs, args.common.seed, opts);
        summary.row({cost_kind_name(kind), format_number(mc.mean_abs_param_error[0]),
                     format_number(mc.mean_abs_param_error[1]),
                     format_number(mc.mean_abs_param_error[2]), format_number(mc.mean_rms_error),
                     format_u64(mc.runs), format_u64(mc.failed_runs)});
        for (std::size_t i = 0; i < mc.per_run.size(); ++i) {
            const RunOutcome& out = mc.per_run[i];
            if (!out.ok) {
                detail.row({cost_kind_name(kind), format_u64(i), format_u64(out.seed), "", "", "",
                            "", "", "", "", "failed: " + out.error, ""});
                continue;
            }
            const EstimationResult& r = out.result;
            detail.row({cost_kind_name(kind), format_u64(i), format_u64(out.seed),
                        format_number(r.best.r0), format_number(r.best.course.value),
                        format_number(r.best.speed), format_number(r.param_error[0]),
                        format_number(r.param_error[1]), format_number(r.param_error[2]),
                        format_number(r.rms_error), format_number(r.cost),
                        format_u64(r.cells_evaluated)});
        }
        std::cout << cost_kind_name(kind) << ": mean |dR0| " << mc.mean_abs_param_error[0]
                  << " m, mean |dC| " << mc.mean_abs_param_error[1] << " deg, mean |dS| "
                  << mc.mean_abs_param_error[2] << " m/s, mean RMS " << mc.mean_rms_error
                  << " m (" << mc.runs - mc.failed_runs << "/" << mc.runs << " runs ok)\n";
    }
    const double wall = now_seconds() - t_start;

    std::ofstream report(args.common.out_dir + "/report.txt");
    report << "command = estimate\n"
           << "config = " << args.common.config_path << "\n"
           << "config_hash = " << format_u64(hash) << "\n"
           << "seed = " << args.common.seed << "\n"
           << "runs = " << runs << "\n"
           << "cost = " << args.cost << "\n"
           << "anchor = " << args.anchor << "\n"
           << "kernel = " << kernels::backend_name(*opts.backend) << "\n"
           << "wall_clock_s = " << wall << "\n"
           << "artifacts = " << summary_path << ", " << runs_path << "\n";
    echo_config(report, args.common.config_path);
    std::cout << "wrote " << summary_path << " and " << runs_path << "\n";
    return 0;
}

struct BiasArgs {
    CommonArgs common;
    bool sweep = false;
};

int run_bias(const BiasArgs& args) {
    BiasFile file = load_bias_file(args.common.config_path);
    std::uint64_t hash = file_hash(args.common.config_path);
    if (args.common.runs > 0) {
        file.config.runs = args.common.runs;
        file.config.validate();
    }

    fs::create_directories(args.common.out_dir);
    const double t_start = now_seconds();
    std::string artifacts;

    if (args.sweep) {
        if (file.sweep_values.empty()) {
            throw ConfigError("--sweep needs sweep_r0_m or sweep_r0_values_m in the config");
        }
        std::vector<SweepPoint> points =
            range_sweep(file.config, file.sweep_values, args.common.seed, args.common.threads);
        const std::string sweep_path = args.common.out_dir + "/sweep.csv";
        CsvFile csv(sweep_path, hash, args.common.seed);
        csv.row({"r0_m", "kurtosis", "status"});
        for (const SweepPoint& p : points) {
            csv.row({format_number(p.r0), p.ok ? format_number(p.kurtosis) : "",
                     p.ok ? "ok" : p.error});
        }
        artifacts = sweep_path;
        std::cout << "swept " << points.size() << " range values -> " << sweep_path << "\n";
    } else {
        BiasReport report = bias_experiment(file.config, args.common.seed, args.common.threads);
        const std::string report_path = args.common.out_dir + "/bias_report.txt";
        std::ofstream out(report_path);
        out << "runs_kept = " << report.runs_kept << "\n"
            << "runs_rejected = " << report.runs_rejected << "\n"
            << "mean_m = " << format_number(report.mean) << "\n"
            << "std_m = " << format_number(report.std_dev) << "\n"
            << "kurtosis = " << format_number(report.kurtosis) << "\n"
            << "geometry_warning = " << (report.geometry_warning ? "true" : "false") << "\n";
        const std::string hist_path = args.common.out_dir + "/histogram.csv";
        CsvFile csv(hist_path, hash, args.common.seed);
        csv.row({"bin_lo", "bin_hi", "count"});
        for (std::size_t b = 0; b < report.histogram.counts.size(); ++b) {
            csv.row({format_number(report.histogram.bin_edges[b]),
                     format_number(report.histogram.bin_edges[b + 1]),
                     format_u64(report.histogram.counts[b])});
        }
        artifacts = report_path + ", " + hist_path;
        std::cout << "kurtosis " << report.kurtosis << " (mean " << report.mean << " m, std "
                  << report.std_dev << " m, rejected " << report.runs_rejected << ") -> "
                  << report_path << "\n";
    }
    const double wall = now_seconds() - t_start;

    std::ofstream report(args.common.out_dir + "/report.txt");
    report << "command = bias\n"
           << "config = " << args.common.config_path << "\n"
           << "config_hash = " << format_u64(hash) << "\n"
           << "seed = " << args.common.seed << "\n"
           << "sweep = " << (args.sweep ? "true" : "false") << "\n"
           << "wall_clock_s = " << wall << "\n"
           << "artifacts = " << artifacts << "\n";
    echo_config(report, args.common.config_path);
    return 0;
}

int run_bearings(const CommonArgs& args) {
    Scenario scenario = load_scenario_file(args.config_path);
    std::uint64_t hash = file_hash(args.config_path);
    BearingSeries series = generate_bearings(scenario, args.seed);

    fs::create_directories(args.out_dir);
    const std::string path = args.out_dir + "/bearings.csv";
    CsvFile csv(path, hash, args.seed);
    csv.row({"t_s", "true_bearing_deg", "measured_bearing_deg", "ownship_x_m", "ownship_y_m",
             "target_x_m", "target_y_m"});
    for (std::size_t k = 0; k < series.size(); ++k) {
        Position tgt = target_position_at(scenario, series.times[k]);
        csv.row({format_number(series.times[k]), format_number(series.true_bearings[k]),
                 format_number(series.measured_bearings[k]),
                 format_number(series.ownship_positions[k].x),
                 format_number(series.ownship_positions[k].y), format_number(tgt.x),
                 format_number(tgt.y)});
    }
    std::cout << "wrote " << series.size() << " samples -> " << path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bearings-only target motion analysis laboratory"};
    app.set_version_flag("--version", std::string("tmalab ") + kToolVersion);
    app.require_subcommand(1);

    EstimateArgs est;
    CLI::App* estimate = app.add_subcommand("estimate", "grid-search Monte Carlo estimation");
    add_common(estimate, est.common);
    estimate->add_option("--cost", est.cost, "both | bearing-diff | equidistant");
    estimate->add_option("--anchor", est.anchor, "true-b0 | measured-b0");
    estimate->add_option("--kernel", est.kernel, "auto | scalar | avx2");
    estimate->add_option("--r0", est.r0_axis, "range grid lo:hi:step (meters)");
    estimate->add_option("--course", est.course_axis, "course grid lo:hi:step (degrees)");
    estimate->add_option("--speed", est.speed_axis, "speed grid lo:hi:step (m/s)");

    BiasArgs bias;
    CLI::App* bias_cmd = app.add_subcommand("bias", "segment-length bias experiment");
    add_common(bias_cmd, bias.common);
    bias_cmd->add_flag("--sweep", bias.sweep, "run the range sweep defined in the config");

    CommonArgs bearings;
    CLI::App* bearings_cmd = app.add_subcommand("bearings", "export one bearing series as CSV");
    add_common(bearings_cmd, bearings);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (estimate->parsed()) {
            return run_estimate(est);
        }
        if (bias_cmd->parsed()) {
            return run_bias(bias);
        }
        return run_bearings(bearings);
    } catch (const ConfigError& e) {
        std::cerr << "config error";
        if (e.line_number > 0) {
            std::cerr << " (line " << e.line_number << ")";
        }
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
