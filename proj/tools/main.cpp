// SPDX-License-Identifier: Apache-2.0
//
// treescatter - path loss modelling for single-tree mmWave scattering links
// Copyright (C) 2025-2026 the treescatter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// treescatter CLI. Subcommands:
//   predict  path loss for one angle and bandwidth
//   curve    plot-ready path-loss curve CSV over an angle grid
//   fit      regenerate cubic coefficients from (angle, PL) points
//   process  measurement-to-path-loss chain over a dataset directory
//   synth    synthetic dataset generator with ground-truth sidecar
//   ecdf     empirical CDF of a sample column
//
// Exit codes: 0 ok, 2 usage, 3 domain/range, 4 data format, 5 numerical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "treescatter/detail/msg.hpp"
#include "treescatter/fitting.hpp"
#include "treescatter/io.hpp"
#include "treescatter/pipeline.hpp"
#include "treescatter/pl_model.hpp"
#include "treescatter/synth.hpp"

namespace ts = treescatter;
namespace fs = std::filesystem;

namespace {

ts::ModelTable load_table(const std::string& table_file) {
    if (table_file.empty() || table_file == "default")
        return ts::default_table();
    return ts::read_model_table(table_file);
}

std::vector<double> angle_grid(double start_deg, double stop_deg, double step_deg) {
    if (!(step_deg > 0.0) || stop_deg < start_deg)
        throw std::invalid_argument("angle grid requires stop >= start and step > 0");
    const auto count = static_cast<std::size_t>(
        std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = start_deg + static_cast<double>(i) * step_deg;
    return grid;
}

// Writes through `fn` to the named file, or to stdout when the name is empty.
template <typename Fn>
void with_output(const std::string& out_file, Fn&& fn) {
    if (out_file.empty() || out_file == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(out_file, std::ios::binary);
    if (!out)
        throw ts::error(ts::detail::msg("cannot open '%s' for writing", out_file.c_str()));
    fn(out);
    out.flush();
    if (!out)
        throw ts::error(ts::detail::msg("failed writing '%s'", out_file.c_str()));
}

// Inline ground truth: "angle:pl[,angle:pl...]".
std::map<double, double> parse_inline_ground_truth(const std::string& arg) {
    std::map<double, double> out;
    std::size_t start = 0;
    while (start <= arg.size()) {
        const std::size_t comma = arg.find(',', start);
        const std::string item =
            arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ts::parse_error(ts::detail::msg("bad ground-truth item '%s'", item.c_str()));
        try {
            const double angle = std::stod(item.substr(0, colon));
            const double pl = std::stod(item.substr(colon + 1));
            out[angle] = pl;
        } catch (const std::exception&) {
            throw ts::parse_error(ts::detail::msg("bad ground-truth item '%s'", item.c_str()));
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (out.empty())
        throw ts::parse_error("empty inline ground truth");
    return out;
}

struct PredictArgs {
    double angle_deg = 0.0;
    double bandwidth_mhz = 0.0;
    std::string table_file;
    bool interpolate = false;
    bool allow_out_of_range = false;
};

struct CurveArgs {
    std::vector<double> bandwidths_mhz;
    double start_deg = 20.0;
    double stop_deg = 180.0;
    double step_deg = 1.0;
    std::string table_file;
    std::string out_file;
    bool interpolate = false;
};

struct FitArgs {
    std::string input_file;
    double default_bandwidth_mhz = ts::testbed::max_analysis_bandwidth_hz / 1e6;
    double carrier_ghz = ts::testbed::carrier_hz / 1e9;
    std::string out_file;
};

struct ProcessArgs {
    std::string dataset_dir;
    double bandwidth_mhz = 0.0;
    std::string cal_file;
    std::string geometry_file;
    std::string out_file;
};

struct SynthArgs {
    std::string ground_truth;
    std::vector<double> angles_deg;
    double bandwidth_mhz = ts::testbed::max_analysis_bandwidth_hz / 1e6;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    std::size_t impulses = ts::testbed::impulse_count;
    std::size_t bins = 4096;
    double sample_rate_mhz = ts::testbed::sweep_bandwidth_hz / 1e6;
    double signal_band_mhz = ts::testbed::signal_band_hz / 1e6;
    std::string cal_file;
    std::string geometry_file;
    std::string out_dir;
};

struct EcdfArgs {
    std::string input_file;
    std::string out_file;
};

int cmd_predict(const PredictArgs& args) {
    const ts::ModelTable table = load_table(args.table_file);
    const auto mode = args.interpolate ? ts::PredictMode::interpolate : ts::PredictMode::exact;
    const ts::Prediction p = ts::predict(args.angle_deg, args.bandwidth_mhz * 1e6, table, mode,
                                         args.allow_out_of_range);
    if (p.out_of_validity)
        std::fprintf(stderr, "warning: angle %g deg is outside the validity range [%g, %g] deg\n",
                     args.angle_deg, table.angle_min_deg, table.angle_max_deg);
    std::printf("PL = %.4f dB\n", p.pl_db);
    return 0;
}

int cmd_curve(const CurveArgs& args) {
    const ts::ModelTable table = load_table(args.table_file);
    std::vector<double> bandwidths_hz;
    if (args.bandwidths_mhz.empty()) {
        for (const auto& e : table.entries)
            bandwidths_hz.push_back(e.bandwidth_hz);
    } else {
        for (double b : args.bandwidths_mhz)
            bandwidths_hz.push_back(b * 1e6);
    }
    const auto grid = angle_grid(args.start_deg, args.stop_deg, args.step_deg);
    const auto mode = args.interpolate ? ts::PredictMode::interpolate : ts::PredictMode::exact;
    const auto rows = ts::export_curve(table, bandwidths_hz, grid, mode);
    with_output(args.out_file, [&](std::ostream& out) { ts::write_curve_csv(rows, out); });
    return 0;
}

int cmd_fit(const FitArgs& args) {
    std::ifstream in(args.input_file, std::ios::binary);
    if (!in)
        throw ts::parse_error(ts::detail::msg("cannot open '%s' for reading", args.input_file.c_str()));
    const auto groups = ts::read_points_csv(in, args.default_bandwidth_mhz * 1e6);
    const ts::ModelTable table = ts::fit_table(groups, args.carrier_ghz * 1e9);
    for (const auto& group : groups) {
        const ts::FitResult r = ts::fit_cubic(group.points);
        std::printf("B = %g MHz: c = %.4f dB/rad^3, d = %.4f dB/rad^2, e = %.4f dB/rad, "
                    "f = %.4f dB  (rms residual %.6f dB, max %.6f dB, %zu points)\n",
                    group.bandwidth_hz / 1e6, r.coeffs.c, r.coeffs.d, r.coeffs.e, r.coeffs.f,
                    r.rms_residual_db, r.max_abs_residual_db, group.points.size());
    }
    ts::write_model_table(table, args.out_file);
    return 0;
}

int cmd_process(const ProcessArgs& args) {
    std::vector<fs::path> files;
    if (!fs::is_directory(args.dataset_dir))
        throw ts::parse_error(ts::detail::msg("'%s' is not a directory", args.dataset_dir.c_str()));
    for (const auto& entry : fs::directory_iterator(args.dataset_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".spectra")
            files.push_back(entry.path());
    }
    if (files.empty())
        throw ts::parse_error(ts::detail::msg("no .spectra files in '%s'", args.dataset_dir.c_str()));
    std::sort(files.begin(), files.end());

    std::vector<ts::ImpulseSpectra> dataset;
    dataset.reserve(files.size());
    for (const auto& f : files)
        dataset.push_back(ts::read_dataset(f));

    const ts::CalibrationConstants cal = args.cal_file.empty()
                                             ? ts::CalibrationConstants{}
                                             : ts::read_calibration(args.cal_file);
    const ts::LinkGeometry geometry = args.geometry_file.empty()
                                          ? ts::default_geometry()
                                          : ts::read_geometry(args.geometry_file);

    const auto results = ts::process_dataset(dataset, cal, geometry, args.bandwidth_mhz * 1e6);
    for (const auto& r : results)
        std::printf("alpha %7.2f deg  mean power %11.4f dB  correction %9.4f dB  PL %9.4f dB\n",
                    r.angle_deg, r.mean_power_db, r.correction_db, r.pl_db);
    with_output(args.out_file, [&](std::ostream& out) { ts::write_results_csv(results, out); });
    return 0;
}

int cmd_synth(const SynthArgs& args) {
    ts::SynthConfig config;
    config.impulse_count = args.impulses;
    config.bin_count = args.bins;
    config.sample_rate_hz = args.sample_rate_mhz * 1e6;
    config.signal_band_hz = args.signal_band_mhz * 1e6;
    config.snr_db = args.snr_db;
    config.seed = args.seed;
    if (!args.cal_file.empty())
        config.cal = ts::read_calibration(args.cal_file);
    if (!args.geometry_file.empty())
        config.geometry = ts::read_geometry(args.geometry_file);

    std::optional<double> table_bandwidth_hz;
    if (args.ground_truth.find(':') != std::string::npos) {
        config.ground_truth_pl_db = parse_inline_ground_truth(args.ground_truth);
        if (args.angles_deg.empty()) {
            for (const auto& [angle, pl] : config.ground_truth_pl_db)
                config.angles_deg.push_back(angle);
        } else {
            config.angles_deg = args.angles_deg;
        }
    } else {
        if (args.angles_deg.empty())
            throw ts::config_error("--angles is required with a table ground truth");
        const ts::ModelTable table = load_table(args.ground_truth);
        config.angles_deg = args.angles_deg;
        table_bandwidth_hz = args.bandwidth_mhz * 1e6;
        std::vector<double> angles = config.angles_deg;
        const double reference = config.geometry.reference_angle_deg;
        if (std::find(angles.begin(), angles.end(), reference) == angles.end())
            angles.push_back(reference);
        config.ground_truth_pl_db =
            ts::ground_truth_from_table(table, *table_bandwidth_hz, angles);
    }

    const auto dataset = ts::generate(config);

    fs::create_directories(args.out_dir);
    ts::DatasetMeta meta;
    meta.carrier_hz = config.geometry.carrier_hz;
    meta.signal_band_hz = config.signal_band_hz;
    for (const auto& spectra : dataset) {
        char name[64];
        std::snprintf(name, sizeof name, "angle_%07.2f.spectra", spectra.angle_deg);
        ts::write_dataset(spectra, fs::path(args.out_dir) / name,
                          ts::PayloadEncoding::binary_f32le, meta);
    }

    ts::GroundTruthRecord record;
    record.seed = config.seed;
    record.snr_db = config.snr_db;
    record.impulse_count = config.impulse_count;
    record.bin_count = config.bin_count;
    record.sample_rate_hz = config.sample_rate_hz;
    record.signal_band_hz = config.signal_band_hz;
    record.bandwidth_hz = table_bandwidth_hz;
    for (const auto& spectra : dataset)
        record.pl_db.push_back({spectra.angle_deg, config.ground_truth_pl_db.at(spectra.angle_deg)});
    ts::write_ground_truth(record, fs::path(args.out_dir) / "ground_truth.json");

    std::printf("wrote %zu angle datasets and ground_truth.json to %s\n", dataset.size(),
                args.out_dir.c_str());
    return 0;
}

int cmd_ecdf(const EcdfArgs& args) {
    std::ifstream in(args.input_file, std::ios::binary);
    if (!in)
        throw ts::parse_error(ts::detail::msg("cannot open '%s' for reading", args.input_file.c_str()));
    const auto samples = ts::read_samples_csv(in);
    const ts::Ecdf e = ts::ecdf(samples);
    with_output(args.out_file, [&](std::ostream& out) { ts::write_ecdf_csv(e, out); });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"angle- and bandwidth-dependent path loss toolkit for single-tree "
                 "mmWave scattering links"};
    app.require_subcommand(1);

    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "Path loss for one angle and bandwidth");
    predict->add_option("--angle-deg", predict_args.angle_deg, "Reception angle in degrees")
        ->required();
    predict->add_option("--bandwidth-mhz", predict_args.bandwidth_mhz, "Analysis bandwidth in MHz")
        ->required();
    predict->add_option("--table", predict_args.table_file,
                        "Coefficient table JSON (default: bundled table)");
    predict->add_flag("--interpolate", predict_args.interpolate,
                      "Interpolate coefficients between tabulated bandwidths");
    predict->add_flag("--allow-out-of-range", predict_args.allow_out_of_range,
                      "Evaluate outside the validity range (prints a warning)");

    CurveArgs curve_args;
    auto* curve = app.add_subcommand("curve", "Path-loss curve CSV over an angle grid");
    curve->add_option("--bandwidth-mhz", curve_args.bandwidths_mhz,
                      "Bandwidths in MHz (default: all tabulated)")
        ->delimiter(',');
    curve->add_option("--start-deg", curve_args.start_deg, "Grid start angle [20]");
    curve->add_option("--stop-deg", curve_args.stop_deg, "Grid stop angle [180]");
    curve->add_option("--step-deg", curve_args.step_deg, "Grid step [1]");
    curve->add_option("--table", curve_args.table_file,
                      "Coefficient table JSON (default: bundled table)");
    curve->add_option("--out", curve_args.out_file, "Output CSV (default: stdout)");
    curve->add_flag("--interpolate", curve_args.interpolate,
                    "Interpolate coefficients between tabulated bandwidths");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Fit cubic coefficients to (angle, PL) points");
    fit->add_option("--input", fit_args.input_file, "Points CSV: alpha_deg,pl_db rows")
        ->required();
    fit->add_option("--bandwidth-mhz", fit_args.default_bandwidth_mhz,
                    "Bandwidth label for files without a bandwidth column [1960]");
    fit->add_option("--carrier-ghz", fit_args.carrier_ghz, "Carrier for the output table [81.6]");
    fit->add_option("--out", fit_args.out_file, "Output table JSON")->required();

    ProcessArgs process_args;
    auto* process = app.add_subcommand("process",
                                       "Measurement-to-path-loss chain over a dataset directory");
    process->add_option("--dataset", process_args.dataset_dir, "Directory of .spectra files")
        ->required();
    process->add_option("--bandwidth-mhz", process_args.bandwidth_mhz,
                        "Analysis bandwidth in MHz")
        ->required();
    process->add_option("--cal", process_args.cal_file, "Calibration JSON (default: bundled)");
    process->add_option("--geometry", process_args.geometry_file,
                        "Geometry JSON (default: bundled)");
    process->add_option("--out", process_args.out_file, "Output results CSV")->required();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with known PLs");
    synth->add_option("--ground-truth", synth_args.ground_truth,
                      "Table JSON path, 'default', or inline angle:pl[,angle:pl...]")
        ->required();
    synth->add_option("--angles", synth_args.angles_deg,
                      "Angles in degrees (required with a table ground truth)")
        ->delimiter(',');
    synth->add_option("--bandwidth-mhz", synth_args.bandwidth_mhz,
                      "Bandwidth at which a table ground truth is evaluated [1960]");
    synth->add_option("--snr-db", synth_args.snr_db,
                      "Per-bin in-band SNR in dB (omit for noiseless)");
    synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
    synth->add_option("--impulses", synth_args.impulses, "Impulses per angle [1000]");
    synth->add_option("--bins", synth_args.bins, "Frequency bins per impulse [4096]");
    synth->add_option("--sample-rate-mhz", synth_args.sample_rate_mhz, "Sample rate [2048]");
    synth->add_option("--signal-band-mhz", synth_args.signal_band_mhz,
                      "Occupied signal band [1960]");
    synth->add_option("--cal", synth_args.cal_file, "Calibration JSON (default: bundled)");
    synth->add_option("--geometry", synth_args.geometry_file, "Geometry JSON (default: bundled)");
    synth->add_option("--out", synth_args.out_dir, "Output directory")->required();

    EcdfArgs ecdf_args;
    auto* ecdf_cmd = app.add_subcommand("ecdf", "Empirical CDF of a sample column");
    ecdf_cmd->add_option("--input", ecdf_args.input_file, "Samples CSV, one value per line")
        ->required();
    ecdf_cmd->add_option("--out", ecdf_args.out_file, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (predict->parsed())
            return cmd_predict(predict_args);
        if (curve->parsed())
            return cmd_curve(curve_args);
        if (fit->parsed())
            return cmd_fit(fit_args);
        if (process->parsed())
            return cmd_process(process_args);
        if (synth->parsed())
            return cmd_synth(synth_args);
        if (ecdf_cmd->parsed())
            return cmd_ecdf(ecdf_args);
    } catch (const ts::format_error& e) {
        std::fprintf(stderr, "treescatter: %s\n", e.what());
        return 4;
    } catch (const ts::numeric_error& e) {
        std::fprintf(stderr, "treescatter: %s\n", e.what());
        return 5;
    } catch (const ts::domain_error& e) {
        std::fprintf(stderr, "treescatter: %s\n", e.what());
        return 3;
    } catch (const ts::error& e) {
        std::fprintf(stderr, "treescatter: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "treescatter: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "treescatter: %s\n", e.what());
        return 1;
    }
    return 0;
}
