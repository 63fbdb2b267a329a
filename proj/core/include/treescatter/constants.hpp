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

#ifndef TREESCATTER_CONSTANTS_HPP
#define TREESCATTER_CONSTANTS_HPP

#include <cstddef>

namespace treescatter {

inline constexpr double speed_of_light_mps = 299'792'458.0;

// Parameters of the E-band channel-sounding link the bundled coefficient
// table was derived from. All overridable through the public interfaces;
// these are just the defaults.
namespace testbed {

inline constexpr double carrier_hz = 81.6e9;

// FMCW sounding waveform: 2.048 GHz sweep over 8 us. The occupied baseband
// band is +/-980 MHz, so 1960 MHz is the widest band worth analysing.
inline constexpr double sweep_bandwidth_hz = 2.048e9;
inline constexpr double sweep_duration_s = 8e-6;
inline constexpr double signal_band_hz = 1.96e9;
inline constexpr double max_analysis_bandwidth_hz = 1.96e9;

// Calibration chain: fixed attenuator plus open-ended waveguide antennas.
inline constexpr double attenuator_db = 79.0;
inline constexpr double antenna_gain_dbi = 7.0;

// Link geometry: one receiver position sits closer to the tree than the rest.
inline constexpr double far_distance_m = 15.61;
inline constexpr double near_distance_m = 13.80;
inline constexpr double near_angle_deg = 21.0;
inline constexpr double reference_angle_deg = 180.0;

inline constexpr std::size_t impulse_count = 1000;

// Reference specific attenuation of the foliage, dB per metre of depth.
inline constexpr double specific_attenuation_db_per_m = 4.83;

} // namespace testbed

} // namespace treescatter

#endif
