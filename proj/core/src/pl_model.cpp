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

#include "treescatter/pl_model.hpp"

#include <algorithm>
#include <cmath>

#include "treescatter/detail/msg.hpp"

namespace treescatter {

namespace {

bool finite(const CubicCoeffs& k) {
    return std::isfinite(k.c) && std::isfinite(k.d) && std::isfinite(k.e) && std::isfinite(k.f);
}

// Nearly-equal test for bandwidths given in different unit scales.
bool same_bandwidth(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

CubicCoeffs coeffs_for(const ModelTable& table, double bandwidth_hz, PredictMode mode) {
    const auto& e = table.entries;
    for (const auto& row : e) {
        if (same_bandwidth(row.bandwidth_hz, bandwidth_hz))
            return row.coeffs;
    }
    if (mode == PredictMode::exact) {
        throw bandwidth_error(detail::msg(
            "bandwidth %g MHz is not tabulated (exact mode)", bandwidth_hz / 1e6));
    }
    if (bandwidth_hz < e.front().bandwidth_hz || bandwidth_hz > e.back().bandwidth_hz) {
        throw bandwidth_error(detail::msg(
            "bandwidth %g MHz is outside the tabulated span [%g, %g] MHz",
            bandwidth_hz / 1e6, e.front().bandwidth_hz / 1e6, e.back().bandwidth_hz / 1e6));
    }
    auto hi = std::lower_bound(e.begin(), e.end(), bandwidth_hz,
                               [](const TableEntry& row, double b) { return row.bandwidth_hz < b; });
    auto lo = hi - 1;
    const double t = (bandwidth_hz - lo->bandwidth_hz) / (hi->bandwidth_hz - lo->bandwidth_hz);
    auto lerp = [t](double a, double b) { return a + t * (b - a); };
    return {lerp(lo->coeffs.c, hi->coeffs.c), lerp(lo->coeffs.d, hi->coeffs.d),
            lerp(lo->coeffs.e, hi->coeffs.e), lerp(lo->coeffs.f, hi->coeffs.f)};
}

} // namespace

double ModelTable::min_bandwidth_hz() const {
    if (entries.empty())
        throw bandwidth_error("model table has no entries");
    return entries.front().bandwidth_hz;
}

double ModelTable::max_bandwidth_hz() const {
    if (entries.empty())
        throw bandwidth_error("model table has no entries");
    return entries.back().bandwidth_hz;
}

void ModelTable::validate() const {
    if (!std::isfinite(carrier_hz) || carrier_hz <= 0.0)
        throw std::invalid_argument("carrier frequency must be positive and finite");
    if (!std::isfinite(angle_min_deg) || !std::isfinite(angle_max_deg)
        || angle_min_deg >= angle_max_deg)
        throw std::invalid_argument("invalid angle validity range");
    if (entries.empty())
        throw std::invalid_argument("model table has no entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!std::isfinite(entries[i].bandwidth_hz) || entries[i].bandwidth_hz <= 0.0)
            throw std::invalid_argument("bandwidths must be positive and finite");
        if (!finite(entries[i].coeffs))
            throw std::invalid_argument("coefficients must be finite");
        if (i > 0 && entries[i].bandwidth_hz <= entries[i - 1].bandwidth_hz)
            throw std::invalid_argument(
                "bandwidths must be strictly ascending with no duplicates");
    }
}

bool LinkGeometry::has(double angle_deg) const {
    return distance_m.find(angle_deg) != distance_m.end();
}

double LinkGeometry::distance_at(double angle_deg) const {
    auto it = distance_m.find(angle_deg);
    if (it == distance_m.end())
        throw geometry_error(detail::msg("no distance entry for angle %g deg", angle_deg));
    return it->second;
}

double eval_poly(double alpha_rad, const CubicCoeffs& coeffs) {
    if (!std::isfinite(alpha_rad))
        throw std::invalid_argument("angle must be finite");
    if (!finite(coeffs))
        throw std::invalid_argument("coefficients must be finite");
    return ((coeffs.c * alpha_rad + coeffs.d) * alpha_rad + coeffs.e) * alpha_rad + coeffs.f;
}

Prediction predict(double alpha_deg, double bandwidth_hz, const ModelTable& table,
                   PredictMode mode, bool allow_out_of_range) {
    if (!std::isfinite(alpha_deg))
        throw std::invalid_argument("angle must be finite");
    if (!std::isfinite(bandwidth_hz) || bandwidth_hz <= 0.0)
        throw std::invalid_argument("bandwidth must be positive and finite");
    if (table.entries.empty())
        throw bandwidth_error("model table has no entries");

    const bool out = alpha_deg < table.angle_min_deg || alpha_deg > table.angle_max_deg;
    if (out && !allow_out_of_range) {
        throw domain_error(detail::msg("angle %g deg is outside the validity range [%g, %g] deg",
                                       alpha_deg, table.angle_min_deg, table.angle_max_deg));
    }
    const CubicCoeffs coeffs = coeffs_for(table, bandwidth_hz, mode);
    return {eval_poly(deg_to_rad(alpha_deg), coeffs), out};
}

StationaryPoints stationary_points(const CubicCoeffs& k) {
    if (!finite(k))
        throw std::invalid_argument("coefficients must be finite");
    if (k.c == 0.0 && k.d == 0.0)
        throw degenerate_error("polynomial has no quadratic or cubic term");

    StationaryPoints out;
    auto classify = [&](double root_rad) {
        const double second = 6.0 * k.c * root_rad + 2.0 * k.d;
        if (second < 0.0)
            out.local_max_deg = rad_to_deg(root_rad);
        else if (second > 0.0)
            out.local_min_deg = rad_to_deg(root_rad);
        // second == 0: saddle, left unclassified
    };

    // dPL/da = 3c a^2 + 2d a + e
    const double a = 3.0 * k.c;
    const double b = 2.0 * k.d;
    const double c = k.e;
    if (a == 0.0) {
        classify(-c / b);
        return out;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        return out;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
    classify(q / a);
    if (q != 0.0)
        classify(c / q);
    else
        classify(0.0); // double root at the origin when b == c == 0
    return out;
}

double fspl(double distance_m, double freq_hz) {
    if (!std::isfinite(distance_m) || distance_m <= 0.0)
        throw std::invalid_argument("distance must be positive and finite");
    if (!std::isfinite(freq_hz) || freq_hz <= 0.0)
        throw std::invalid_argument("frequency must be positive and finite");
    return 20.0 * std::log10(distance_m) + 20.0 * std::log10(freq_hz)
           + 20.0 * std::log10(4.0 * pi / speed_of_light_mps);
}

double delta_pl(double d_reference_m, double d_near_m) {
    if (!std::isfinite(d_reference_m) || d_reference_m <= 0.0 || !std::isfinite(d_near_m)
        || d_near_m <= 0.0)
        throw std::invalid_argument("distances must be positive and finite");
    return 20.0 * std::log10(d_reference_m) - 20.0 * std::log10(d_near_m);
}

double specific_attenuation(double depth_m, double gamma_db_per_m) {
    if (!std::isfinite(depth_m) || depth_m < 0.0)
        throw std::invalid_argument("depth must be non-negative and finite");
    if (!std::isfinite(gamma_db_per_m))
        throw std::invalid_argument("attenuation rate must be finite");
    return gamma_db_per_m * depth_m;
}

ModelTable default_table() {
    ModelTable t;
    t.carrier_hz = testbed::carrier_hz;
    t.angle_min_deg = 20.0;
    t.angle_max_deg = 180.0;
    t.entries = {
        {200e6, {5.14, -25.95, 33.98, 103.81}},
        {500e6, {6.63, -34.28, 45.25, 104.31}},
        {1000e6, {7.55, -38.47, 51.09, 104.35}},
        {1500e6, {7.63, -38.87, 51.55, 105.43}},
        {1960e6, {7.75, -39.45, 52.55, 105.32}},
    };
    return t;
}

LinkGeometry default_geometry() {
    LinkGeometry g;
    g.carrier_hz = testbed::carrier_hz;
    g.reference_angle_deg = testbed::reference_angle_deg;
    g.distance_m = {
        {testbed::near_angle_deg, testbed::near_distance_m},
        {testbed::reference_angle_deg, testbed::far_distance_m},
    };
    return g;
}

} // namespace treescatter
