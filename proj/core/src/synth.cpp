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

#include "treescatter/synth.hpp"

#include <algorithm>
#include <cmath>

#include "treescatter/detail/msg.hpp"
#include "treescatter/rng.hpp"

namespace treescatter {

std::map<double, double> ground_truth_from_table(const ModelTable& table, double bandwidth_hz,
                                                 std::span<const double> angles_deg,
                                                 PredictMode mode) {
    std::map<double, double> out;
    for (double angle : angles_deg) {
        try {
            out[angle] = predict(angle, bandwidth_hz, table, mode).pl_db;
        } catch (const error& e) {
            throw config_error(
                detail::msg("ground truth unavailable at %g deg: %s", angle, e.what()));
        } catch (const std::invalid_argument& e) {
            throw config_error(
                detail::msg("ground truth unavailable at %g deg: %s", angle, e.what()));
        }
    }
    return out;
}

namespace {

void validate_config(const SynthConfig& config) {
    if (config.angles_deg.empty())
        throw config_error("no angles requested");
    if (config.impulse_count < 1)
        throw config_error("impulse count must be at least 1");
    if (config.bin_count < 2)
        throw config_error("bin count must be at least 2");
    if (!std::isfinite(config.sample_rate_hz) || config.sample_rate_hz <= 0.0)
        throw config_error("sample rate must be positive and finite");
    if (!std::isfinite(config.signal_band_hz) || config.signal_band_hz <= 0.0
        || config.signal_band_hz > config.sample_rate_hz)
        throw config_error("signal band must be positive and no wider than the sample rate");
    if (std::isnan(config.snr_db))
        throw config_error("snr must be a number or +infinity");
    for (double angle : config.angles_deg) {
        if (!std::isfinite(angle))
            throw config_error("angles must be finite");
    }
}

double ground_truth_at(const SynthConfig& config, double angle_deg) {
    auto it = config.ground_truth_pl_db.find(angle_deg);
    if (it == config.ground_truth_pl_db.end())
        throw config_error(detail::msg("ground truth lacks angle %g deg", angle_deg));
    return it->second;
}

} // namespace

std::vector<ImpulseSpectra> generate(const SynthConfig& config) {
    validate_config(config);

    std::vector<double> angles = config.angles_deg;
    const double reference = config.geometry.reference_angle_deg;
    if (std::find(angles.begin(), angles.end(), reference) == angles.end())
        angles.push_back(reference);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

    // Invert the calibrated chain: pick each angle's mean in-band power so
    // that processing the output returns the injected path losses.
    const double cal_db = config.cal.attenuator_db + config.cal.tx_antenna_gain_dbi
                          + config.cal.rx_antenna_gain_dbi;
    const double pl_reference = ground_truth_at(config, reference);
    const double p_reference = std::pow(10.0, (pl_reference - cal_db) / 10.0);

    // In-band bin set shared with band_power via the same predicate.
    ImpulseSpectra shape;
    shape.bin_count = config.bin_count;
    shape.sample_rate_hz = config.sample_rate_hz;
    std::vector<std::size_t> in_band;
    for (std::size_t k = 0; k < config.bin_count; ++k) {
        if (bin_in_band(shape, k, config.signal_band_hz))
            in_band.push_back(k);
    }
    if (in_band.empty())
        throw config_error("signal band narrower than one bin");
    const auto k_in = static_cast<double>(in_band.size());

    const bool noiseless = std::isinf(config.snr_db) && config.snr_db > 0.0;
    const double snr_linear = noiseless ? 0.0 : std::pow(10.0, config.snr_db / 10.0);

    std::vector<ImpulseSpectra> dataset;
    dataset.reserve(angles.size());
    for (double angle : angles) {
        const double pl_angle = ground_truth_at(config, angle);
        double correction_db = 0.0;
        if (config.geometry.has(angle)) {
            if (!config.geometry.has(reference))
                throw config_error("geometry lacks the reference angle distance");
            correction_db = delta_pl(config.geometry.distance_at(reference),
                                     config.geometry.distance_at(angle));
        }
        const double corr = std::pow(10.0, (pl_reference + correction_db - pl_angle) / 10.0);
        const double p_mean = corr * p_reference;
        const double amplitude = std::sqrt(p_mean / k_in);
        const double noise_power = noiseless ? 0.0 : amplitude * amplitude / snr_linear;

        ImpulseSpectra s;
        s.angle_deg = angle;
        s.bin_count = config.bin_count;
        s.sample_rate_hz = config.sample_rate_hz;
        s.bins.assign(config.impulse_count * config.bin_count, {0.0, 0.0});

        NoiseRng rng(substream_seed(config.seed, angle));
        for (std::size_t m = 0; m < config.impulse_count; ++m) {
            auto impulse = s.impulse(m);
            auto in_band_it = in_band.begin();
            for (std::size_t k = 0; k < config.bin_count; ++k) {
                std::complex<double> z{0.0, 0.0};
                if (in_band_it != in_band.end() && *in_band_it == k) {
                    ++in_band_it;
                    const double phase = 2.0 * pi * rng.uniform();
                    z = {amplitude * std::cos(phase), amplitude * std::sin(phase)};
                }
                if (!noiseless)
                    z += rng.complex_gaussian(noise_power);
                impulse[k] = z;
            }
        }
        dataset.push_back(std::move(s));
    }
    return dataset;
}

ImpulseSpectra perturb(ImpulseSpectra spectra, double scale_db) {
    if (!std::isfinite(scale_db))
        throw std::invalid_argument("scale must be finite");
    const double scale = std::pow(10.0, scale_db / 20.0);
    for (auto& z : spectra.bins)
        z *= scale;
    return spectra;
}

} // namespace treescatter
