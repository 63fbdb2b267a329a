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

#ifndef TREESCATTER_PL_MODEL_HPP
#define TREESCATTER_PL_MODEL_HPP

#include <map>
#include <optional>
#include <vector>

#include "treescatter/constants.hpp"
#include "treescatter/errors.hpp"

namespace treescatter {

// Coefficients of the cubic path-loss polynomial
//     PL(a) = c*a^3 + d*a^2 + e*a + f
// with the reception angle a in radians and the result in dB.
struct CubicCoeffs {
    double c = 0.0; // dB/rad^3
    double d = 0.0; // dB/rad^2
    double e = 0.0; // dB/rad
    double f = 0.0; // dB
};

struct TableEntry {
    double bandwidth_hz = 0.0;
    CubicCoeffs coeffs;
};

// One cubic per analysis bandwidth, all sharing a carrier frequency and an
// angular validity range. Entries are kept strictly ascending in bandwidth.
struct ModelTable {
    double carrier_hz = testbed::carrier_hz;
    double angle_min_deg = 20.0;
    double angle_max_deg = 180.0;
    std::vector<TableEntry> entries;

    double min_bandwidth_hz() const;
    double max_bandwidth_hz() const;

    // Throws std::invalid_argument if any invariant is violated (empty table,
    // unsorted or duplicate bandwidths, non-finite values, bad angle range).
    void validate() const;
};

// TX-RX distance per reception angle. Angles without an explicit entry are
// assumed to sit at the reference-angle distance, so they need no
// geometry-based correction.
struct LinkGeometry {
    double carrier_hz = testbed::carrier_hz;
    double reference_angle_deg = testbed::reference_angle_deg;
    std::map<double, double> distance_m; // angle_deg -> metres

    bool has(double angle_deg) const;
    // Throws geometry_error when the angle has no entry.
    double distance_at(double angle_deg) const;
};

enum class PredictMode { exact, interpolate };

struct Prediction {
    double pl_db = 0.0;
    // Set when the angle lies outside the table's validity range and
    // evaluation was forced with allow_out_of_range.
    bool out_of_validity = false;
};

struct StationaryPoints {
    std::optional<double> local_max_deg;
    std::optional<double> local_min_deg;
};

// Evaluates the cubic at an angle given in radians.
double eval_poly(double alpha_rad, const CubicCoeffs& coeffs);

// Path loss at a reception angle (degrees) for a given analysis bandwidth.
// exact mode requires a tabulated bandwidth; interpolate mode linearly
// interpolates each coefficient between the two bracketing table rows.
// Angles outside the validity range throw domain_error unless
// allow_out_of_range is set, in which case the result carries a marker.
Prediction predict(double alpha_deg, double bandwidth_hz, const ModelTable& table,
                   PredictMode mode = PredictMode::exact, bool allow_out_of_range = false);

// Solves dPL/da = 0 and classifies the roots by the second derivative.
// Roots with a vanishing second derivative are left unclassified. Returns
// empty optionals when no real stationary points exist; throws
// degenerate_error when both cubic and quadratic coefficients are zero.
StationaryPoints stationary_points(const CubicCoeffs& coeffs);

// Free-space path loss: 20*log10(d) + 20*log10(f) + 20*log10(4*pi/c).
double fspl(double distance_m, double freq_hz);

// Distance-only FSPL difference between two receiver positions; the
// frequency terms cancel. Positive when the near distance is shorter.
double delta_pl(double d_reference_m, double d_near_m);

// Vegetation loss for a given depth at a constant per-metre rate.
double specific_attenuation(double depth_m,
                            double gamma_db_per_m = testbed::specific_attenuation_db_per_m);

// Bundled coefficient table for the 81.6 GHz single-tree link, one row per
// analysis bandwidth from 200 to 1960 MHz, valid for 20..180 degrees.
ModelTable default_table();

// Bundled link geometry: all receiver positions at 15.61 m except the
// 21 degree position at 13.80 m; reference angle 180 degrees.
LinkGeometry default_geometry();

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline double deg_to_rad(double deg) { return deg * (pi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / pi); }

} // namespace treescatter

#endif
