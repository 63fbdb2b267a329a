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

#ifndef TREESCATTER_IO_HPP
#define TREESCATTER_IO_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "treescatter/fitting.hpp"
#include "treescatter/pipeline.hpp"
#include "treescatter/pl_model.hpp"

namespace treescatter {

// ---------------------------------------------------------------- datasets
//
// A dataset file is one impulse-spectra batch: a single-line JSON header
// terminated by '\n', followed by the payload.
//   binary-f32le payload: M*N complex bins, impulse-major, each bin two
//     little-endian IEEE-754 float32 values (re, im).
//   csv payload: one "impulse_index,bin_index,re,im" row per bin with
//     0-based indices, in any order, each bin exactly once; values carry
//     9 significant digits so float32 amplitudes round-trip losslessly.

inline constexpr int dataset_format_version = 1;

enum class PayloadEncoding { binary_f32le, csv };

struct DatasetMeta {
    std::optional<double> carrier_hz;
    std::optional<double> signal_band_hz;
    std::string notes;
};

struct DatasetHeader {
    int format_version = dataset_format_version;
    double angle_deg = 0.0;
    std::size_t impulse_count = 0;
    std::size_t bin_count = 0;
    double sample_rate_hz = 0.0;
    PayloadEncoding payload_encoding = PayloadEncoding::binary_f32le;
    DatasetMeta meta;
};

DatasetHeader read_dataset_header(const std::filesystem::path& path);
ImpulseSpectra read_dataset(const std::filesystem::path& path);
void write_dataset(const ImpulseSpectra& spectra, const std::filesystem::path& path,
                   PayloadEncoding encoding = PayloadEncoding::binary_f32le,
                   const DatasetMeta& meta = {});

// Unnormalized forward DFT of M x N time-domain frames, reordered to the
// centered bin convention. Rectangular input required.
ImpulseSpectra to_spectra(const std::vector<std::vector<std::complex<double>>>& frames,
                          double sample_rate_hz, double angle_deg = 0.0);

// ------------------------------------------------------------ model tables
//
// Coefficient table file, JSON:
//   { "carrier_ghz": 81.6, "valid_angle_deg": [20, 180],
//     "entries": [ { "bandwidth_mhz": 200, "c": 5.14, "d": -25.95,
//                    "e": 33.98, "f": 103.81 }, ... ] }

ModelTable parse_model_table(std::istream& in);
ModelTable read_model_table(const std::filesystem::path& path);
std::string model_table_to_json(const ModelTable& table);
void write_model_table(const ModelTable& table, const std::filesystem::path& path);

// ------------------------------------------------------------------ curves
//
// Curve CSV: header line "alpha_deg,bandwidth_mhz,pl_db", then one row per
// (bandwidth, angle) pair, bandwidth-major, angles ascending, path loss
// formatted with 4 decimal places.

struct CurveRow {
    double alpha_deg = 0.0;
    double bandwidth_mhz = 0.0;
    double pl_db = 0.0;
};

std::vector<CurveRow> export_curve(const ModelTable& table, std::span<const double> bandwidths_hz,
                                   std::span<const double> angles_deg,
                                   PredictMode mode = PredictMode::exact);
void write_curve_csv(std::span<const CurveRow> rows, std::ostream& out);

// ------------------------------------------------------- points and results

// Fit input: CSV rows "alpha_deg,pl_db", or "bandwidth_mhz,alpha_deg,pl_db"
// for multi-bandwidth files. A header line is recognized by a non-numeric
// first field and may name columns in any order (angle_deg is accepted as a
// synonym for alpha_deg, so processing results can be fitted directly).
// Points with no bandwidth information fall into one group tagged with
// default_bandwidth_hz.
std::vector<BandwidthPoints> read_points_csv(std::istream& in,
                                             double default_bandwidth_hz
                                             = testbed::max_analysis_bandwidth_hz);

// Results CSV: header "angle_deg,mean_power_db,correction_db,pl_db,bandwidth_mhz".
void write_results_csv(std::span<const AngleResult> results, std::ostream& out);

// One sample per line, optional header line.
std::vector<double> read_samples_csv(std::istream& in);

// ECDF CSV: header "value_db,probability".
void write_ecdf_csv(const Ecdf& e, std::ostream& out);

// --------------------------------------------- calibration and geometry
//
// Calibration JSON: { "attenuator_db": 79, "tx_antenna_gain_dbi": 7,
//                     "rx_antenna_gain_dbi": 7 }
// Geometry JSON:    { "carrier_ghz": 81.6, "reference_angle_deg": 180,
//                     "distances": [ { "angle_deg": 21, "distance_m": 13.8 },
//                                    ... ] }

CalibrationConstants read_calibration(const std::filesystem::path& path);
LinkGeometry read_geometry(const std::filesystem::path& path);

// ------------------------------------------------- synthetic ground truth
//
// Sidecar written next to generated datasets so recovered path losses can
// be compared against what was injected.

struct GroundTruthRecord {
    std::uint64_t seed = 0;
    double snr_db = 0.0;
    std::size_t impulse_count = 0;
    std::size_t bin_count = 0;
    double sample_rate_hz = 0.0;
    double signal_band_hz = 0.0;
    std::optional<double> bandwidth_hz; // set when derived from a table
    std::vector<AnglePlPoint> pl_db;
};

void write_ground_truth(const GroundTruthRecord& record, const std::filesystem::path& path);
GroundTruthRecord read_ground_truth(const std::filesystem::path& path);

} // namespace treescatter

#endif
