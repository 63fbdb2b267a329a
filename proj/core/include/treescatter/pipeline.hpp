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

#ifndef TREESCATTER_PIPELINE_HPP
#define TREESCATTER_PIPELINE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "treescatter/constants.hpp"
#include "treescatter/errors.hpp"
#include "treescatter/pl_model.hpp"

namespace treescatter {

struct CalibrationConstants {
    double attenuator_db = testbed::attenuator_db;
    double tx_antenna_gain_dbi = testbed::antenna_gain_dbi;
    double rx_antenna_gain_dbi = testbed::antenna_gain_dbi;
};

// A batch of M sounding impulses observed at one reception angle, stored in
// the frequency domain: M x N complex bins, impulse-major, in centered bin
// order. Bin k maps to baseband frequency (k - N/2) * sample_rate / N for
// even N and (k - (N-1)/2) * sample_rate / N for odd N. The transform is the
// unnormalized forward DFT, so total spectral power is N times the
// time-domain power.
struct ImpulseSpectra {
    double angle_deg = 0.0;
    std::size_t bin_count = 0; // N
    double sample_rate_hz = 0.0;
    std::vector<std::complex<double>> bins; // size M * N

    std::size_t impulse_count() const {
        return bin_count == 0 ? 0 : bins.size() / bin_count;
    }
    // Bins of one impulse; m is zero-based. Throws index_error out of range.
    std::span<const std::complex<double>> impulse(std::size_t m) const;
    std::span<std::complex<double>> impulse(std::size_t m);
    // Baseband frequency of centered bin k.
    double bin_frequency_hz(std::size_t k) const;
};

// True when centered bin k falls inside the band |f| <= bandwidth/2.
// Edge bins are inclusive.
bool bin_in_band(const ImpulseSpectra& spectra, std::size_t k, double bandwidth_hz);

// Total power of impulse m: sum of |X(n)|^2 over all bins.
double impulse_power(const ImpulseSpectra& spectra, std::size_t m);

// Mean of impulse_power over the batch. Throws empty_input_error when M = 0.
double mean_power(const ImpulseSpectra& spectra);

// Power of impulse m restricted to bins with |f| <= bandwidth/2.
// Throws bandwidth_error unless 0 < bandwidth <= sample rate.
double band_power(const ImpulseSpectra& spectra, double bandwidth_hz, std::size_t m);

// Mean of band_power over the batch.
double mean_band_power(const ImpulseSpectra& spectra, double bandwidth_hz);

// Linear ratio of a mean power to the reference-angle mean power.
double correction_coeff(double mean_power_alpha, double mean_power_reference);

// Calibrated path loss of the direct (reference-angle) link:
// attenuator + both antenna gains + 10*log10(mean reference power).
double pl_direct(double mean_power_reference, const CalibrationConstants& cal);

// Path loss at an angle from the reference path loss and the linear
// correction coefficient.
double pl_at_angle(double pl_direct_db, double corr);

// Same, plus the distance correction for an angle whose receiver sits at a
// different distance than the reference. Requires geometry entries for both
// this angle and the reference angle.
double pl_at_near_angle(double pl_direct_db, double corr, const LinkGeometry& geometry,
                        double angle_deg);

struct AngleResult {
    double angle_deg = 0.0;
    double mean_power_db = 0.0;
    double correction_db = 0.0;
    double pl_db = 0.0;
    double bandwidth_mhz = 0.0;
};

// Full measurement-to-path-loss chain over a per-angle dataset: band-limited
// power per impulse, batch mean, correction against the reference angle,
// calibrated reference path loss, and the per-angle combination with the
// geometry correction where one applies. The dataset must contain the
// reference angle, and all batches must share M, N and sample rate. Results
// are returned in ascending angle order; sums run in ascending impulse and
// bin order so dB outputs are bit-stable.
std::vector<AngleResult> process_dataset(const std::vector<ImpulseSpectra>& dataset,
                                         const CalibrationConstants& cal,
                                         const LinkGeometry& geometry, double bandwidth_hz);

// Empirical CDF: sorted sample values with cumulative probabilities i/M.
struct Ecdf {
    std::vector<double> value_db;
    std::vector<double> probability;
};

Ecdf ecdf(std::span<const double> samples_db);

} // namespace treescatter

#endif
