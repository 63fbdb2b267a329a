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

#include "treescatter/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "treescatter/detail/msg.hpp"

namespace treescatter {

std::span<const std::complex<double>> ImpulseSpectra::impulse(std::size_t m) const {
    if (m >= impulse_count())
        throw index_error(detail::msg("impulse index %zu out of range (M = %zu)", m, impulse_count()));
    return {bins.data() + m * bin_count, bin_count};
}

std::span<std::complex<double>> ImpulseSpectra::impulse(std::size_t m) {
    if (m >= impulse_count())
        throw index_error(detail::msg("impulse index %zu out of range (M = %zu)", m, impulse_count()));
    return {bins.data() + m * bin_count, bin_count};
}

double ImpulseSpectra::bin_frequency_hz(std::size_t k) const {
    if (k >= bin_count)
        throw index_error(detail::msg("bin index %zu out of range (N = %zu)", k, bin_count));
    const auto n = static_cast<std::ptrdiff_t>(bin_count);
    const auto center = static_cast<std::ptrdiff_t>(bin_count / 2); // (N-1)/2 for odd N
    return static_cast<double>(static_cast<std::ptrdiff_t>(k) - center)
           * (sample_rate_hz / static_cast<double>(n));
}

bool bin_in_band(const ImpulseSpectra& spectra, std::size_t k, double bandwidth_hz) {
    return std::abs(spectra.bin_frequency_hz(k)) <= 0.5 * bandwidth_hz;
}

double impulse_power(const ImpulseSpectra& spectra, std::size_t m) {
    double sum = 0.0;
    for (const auto& z : spectra.impulse(m))
        sum += std::norm(z);
    return sum;
}

double mean_power(const ImpulseSpectra& spectra) {
    const std::size_t m_count = spectra.impulse_count();
    if (m_count == 0)
        throw empty_input_error("spectra batch has no impulses");
    double sum = 0.0;
    for (std::size_t m = 0; m < m_count; ++m)
        sum += impulse_power(spectra, m);
    return sum / static_cast<double>(m_count);
}

double band_power(const ImpulseSpectra& spectra, double bandwidth_hz, std::size_t m) {
    if (!std::isfinite(bandwidth_hz) || bandwidth_hz <= 0.0
        || bandwidth_hz > spectra.sample_rate_hz)
        throw bandwidth_error(detail::msg(
            "bandwidth %g MHz must be in (0, %g] MHz", bandwidth_hz / 1e6,
            spectra.sample_rate_hz / 1e6));
    const auto impulse = spectra.impulse(m);
    double sum = 0.0;
    for (std::size_t k = 0; k < spectra.bin_count; ++k) {
        if (bin_in_band(spectra, k, bandwidth_hz))
            sum += std::norm(impulse[k]);
    }
    return sum;
}

double mean_band_power(const ImpulseSpectra& spectra, double bandwidth_hz) {
    const std::size_t m_count = spectra.impulse_count();
    if (m_count == 0)
        throw empty_input_error("spectra batch has no impulses");
    double sum = 0.0;
    for (std::size_t m = 0; m < m_count; ++m)
        sum += band_power(spectra, bandwidth_hz, m);
    return sum / static_cast<double>(m_count);
}

double correction_coeff(double mean_power_alpha, double mean_power_reference) {
    if (!std::isfinite(mean_power_alpha) || mean_power_alpha <= 0.0)
        throw std::invalid_argument("mean power must be positive and finite");
    if (!std::isfinite(mean_power_reference) || mean_power_reference <= 0.0)
        throw division_error("reference mean power must be positive");
    return mean_power_alpha / mean_power_reference;
}

double pl_direct(double mean_power_reference, const CalibrationConstants& cal) {
    if (!std::isfinite(mean_power_reference) || mean_power_reference <= 0.0)
        throw domain_error("reference mean power must be positive");
    if (!std::isfinite(cal.attenuator_db) || !std::isfinite(cal.tx_antenna_gain_dbi)
        || !std::isfinite(cal.rx_antenna_gain_dbi))
        throw std::invalid_argument("calibration constants must be finite");
    return cal.attenuator_db + cal.tx_antenna_gain_dbi + cal.rx_antenna_gain_dbi
           + 10.0 * std::log10(mean_power_reference);
}

double pl_at_angle(double pl_direct_db, double corr) {
    if (!std::isfinite(pl_direct_db))
        throw std::invalid_argument("path loss must be finite");
    if (!std::isfinite(corr) || corr <= 0.0)
        throw domain_error("correction coefficient must be positive");
    return pl_direct_db - 10.0 * std::log10(corr);
}

double pl_at_near_angle(double pl_direct_db, double corr, const LinkGeometry& geometry,
                        double angle_deg) {
    const double d_near = geometry.distance_at(angle_deg);
    const double d_reference = geometry.distance_at(geometry.reference_angle_deg);
    return pl_at_angle(pl_direct_db, corr) + delta_pl(d_reference, d_near);
}

std::vector<AngleResult> process_dataset(const std::vector<ImpulseSpectra>& dataset,
                                         const CalibrationConstants& cal,
                                         const LinkGeometry& geometry, double bandwidth_hz) {
    if (dataset.empty())
        throw empty_input_error("dataset has no angles");

    std::vector<const ImpulseSpectra*> by_angle;
    by_angle.reserve(dataset.size());
    for (const auto& s : dataset)
        by_angle.push_back(&s);
    std::sort(by_angle.begin(), by_angle.end(),
              [](const ImpulseSpectra* a, const ImpulseSpectra* b) {
                  return a->angle_deg < b->angle_deg;
              });

    const ImpulseSpectra& first = *by_angle.front();
    const ImpulseSpectra* reference = nullptr;
    for (std::size_t i = 0; i < by_angle.size(); ++i) {
        const ImpulseSpectra& s = *by_angle[i];
        if (s.bin_count != first.bin_count || s.impulse_count() != first.impulse_count()
            || s.sample_rate_hz != first.sample_rate_hz)
            throw shape_error(detail::msg(
                "batch at %g deg does not match the shared M/N/sample-rate shape", s.angle_deg));
        if (i > 0 && s.angle_deg == by_angle[i - 1]->angle_deg)
            throw std::invalid_argument(detail::msg("duplicate angle %g deg", s.angle_deg));
        if (s.angle_deg == geometry.reference_angle_deg)
            reference = &s;
    }
    if (reference == nullptr)
        throw reference_error(detail::msg("dataset lacks the reference angle %g deg",
                                          geometry.reference_angle_deg));

    const double p_reference = mean_band_power(*reference, bandwidth_hz);
    const double pl0 = pl_direct(p_reference, cal);

    std::vector<AngleResult> results;
    results.reserve(by_angle.size());
    for (const ImpulseSpectra* s : by_angle) {
        const double p_mean = mean_band_power(*s, bandwidth_hz);
        const double corr = correction_coeff(p_mean, p_reference);
        double pl;
        if (geometry.has(s->angle_deg))
            pl = pl_at_near_angle(pl0, corr, geometry, s->angle_deg);
        else
            pl = pl_at_angle(pl0, corr);
        results.push_back({s->angle_deg, 10.0 * std::log10(p_mean), 10.0 * std::log10(corr), pl,
                           bandwidth_hz / 1e6});
    }
    return results;
}

Ecdf ecdf(std::span<const double> samples_db) {
    if (samples_db.empty())
        throw empty_input_error("ecdf requires at least one sample");
    for (double v : samples_db) {
        if (!std::isfinite(v))
            throw std::invalid_argument("ecdf samples must be finite");
    }
    Ecdf out;
    out.value_db.assign(samples_db.begin(), samples_db.end());
    std::sort(out.value_db.begin(), out.value_db.end());
    const auto n = out.value_db.size();
    out.probability.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.probability[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    return out;
}

} // namespace treescatter
