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

#ifndef TREESCATTER_SYNTH_HPP
#define TREESCATTER_SYNTH_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "treescatter/pipeline.hpp"
#include "treescatter/pl_model.hpp"

namespace treescatter {

// Configuration of the synthetic measurement generator. The generator
// inverts the processing chain: it picks per-angle mean powers such that
// running process_dataset over the output recovers the ground-truth path
// losses exactly in the noiseless case and within noise tolerance otherwise.
//
// The signal is flat in band (constant magnitude, uniform random phase per
// bin per impulse) so each impulse carries exactly the target in-band power;
// noise is circularly symmetric complex Gaussian per bin, with snr_db
// defined as in-band per-bin signal power over per-bin noise power.
// snr_db = +infinity disables noise. Given a fixed seed the output is
// deterministic; per-angle streams use independent sub-seeds (see rng.hpp),
// so generation order does not matter.
struct SynthConfig {
    std::vector<double> angles_deg;
    std::map<double, double> ground_truth_pl_db; // angle_deg -> PL
    std::size_t impulse_count = testbed::impulse_count; // M
    std::size_t bin_count = 4096;                       // N
    double sample_rate_hz = testbed::sweep_bandwidth_hz;
    double signal_band_hz = testbed::signal_band_hz;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    CalibrationConstants cal;
    LinkGeometry geometry = default_geometry();
};

// Resolves ground-truth path losses for a set of angles by evaluating a
// coefficient table at one bandwidth. Angle or bandwidth problems are
// reported as config_error.
std::map<double, double> ground_truth_from_table(const ModelTable& table, double bandwidth_hz,
                                                 std::span<const double> angles_deg,
                                                 PredictMode mode = PredictMode::exact);

// Generates one spectra batch per angle, reference angle always included,
// in ascending angle order. Throws config_error for invalid configurations
// or a ground truth lacking a requested angle.
std::vector<ImpulseSpectra> generate(const SynthConfig& config);

// Scales every amplitude by 10^(scale_db/20).
ImpulseSpectra perturb(ImpulseSpectra spectra, double scale_db);

} // namespace treescatter

#endif
