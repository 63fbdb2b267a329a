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

#ifndef TREESCATTER_FITTING_HPP
#define TREESCATTER_FITTING_HPP

#include <span>
#include <vector>

#include "treescatter/pl_model.hpp"

namespace treescatter {

struct AnglePlPoint {
    double alpha_deg = 0.0;
    double pl_db = 0.0;
};

struct FitResult {
    CubicCoeffs coeffs;
    double rms_residual_db = 0.0;
    double max_abs_residual_db = 0.0;
};

// Least-squares fit of the cubic to (angle, PL) points, angles converted to
// radians so the reported coefficients share the basis of the bundled table.
// Solved by Householder QR on the m x 4 design matrix. Requires at least 4
// distinct angles (underdetermined_error otherwise); a numerically singular
// system throws conditioning_error. With exactly 4 distinct angles the fit
// interpolates, so residuals vanish up to round-off.
FitResult fit_cubic(std::span<const AnglePlPoint> points);

struct BandwidthPoints {
    double bandwidth_hz = 0.0;
    std::vector<AnglePlPoint> points;
};

// fit_cubic per bandwidth, assembled into a sorted table. Fit errors are
// rethrown with the offending bandwidth named in the message.
ModelTable fit_table(std::span<const BandwidthPoints> sets,
                     double carrier_hz = testbed::carrier_hz, double angle_min_deg = 20.0,
                     double angle_max_deg = 180.0);

} // namespace treescatter

#endif
