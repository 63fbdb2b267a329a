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

#include "treescatter/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "treescatter/detail/msg.hpp"

namespace treescatter {

namespace {

constexpr std::size_t n_coeffs = 4;

// Householder QR least squares on a column-major m x 4 design matrix.
// Overwrites a and y; returns the solution of min ||a x - y||.
std::array<double, n_coeffs> qr_solve(std::vector<double>& a, std::vector<double>& y,
                                      std::size_t m) {
    std::array<double, n_coeffs> diag{};
    for (std::size_t k = 0; k < n_coeffs; ++k) {
        double* col = a.data() + k * m;
        double sigma2 = 0.0;
        for (std::size_t i = k; i < m; ++i)
            sigma2 += col[i] * col[i];
        const double sigma = std::sqrt(sigma2);
        if (sigma == 0.0)
            throw conditioning_error("design matrix is numerically singular");
        const double alpha = col[k] > 0.0 ? -sigma : sigma;
        // Householder vector v = x - alpha*e1, stored in place of the column.
        col[k] -= alpha;
        double vv = 0.0;
        for (std::size_t i = k; i < m; ++i)
            vv += col[i] * col[i];
        auto reflect = [&](double* target) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i)
                dot += col[i] * target[i];
            const double scale = 2.0 * dot / vv;
            for (std::size_t i = k; i < m; ++i)
                target[i] -= scale * col[i];
        };
        for (std::size_t j = k + 1; j < n_coeffs; ++j)
            reflect(a.data() + j * m);
        reflect(y.data());
        diag[k] = alpha;
    }

    // Scale check on the R diagonal.
    double max_diag = 0.0;
    for (double d : diag)
        max_diag = std::max(max_diag, std::abs(d));
    for (double d : diag) {
        if (std::abs(d) < 1e-13 * std::max(1.0, max_diag))
            throw conditioning_error("design matrix is numerically singular");
    }

    // Back-substitution on R x = Q^T y. R's strict upper triangle lives in
    // the reflected columns above the Householder vectors.
    std::array<double, n_coeffs> x{};
    for (std::size_t ri = n_coeffs; ri-- > 0;) {
        double s = y[ri];
        for (std::size_t j = ri + 1; j < n_coeffs; ++j)
            s -= a[j * m + ri] * x[j];
        x[ri] = s / diag[ri];
    }
    return x;
}

} // namespace

FitResult fit_cubic(std::span<const AnglePlPoint> points) {
    for (const auto& p : points) {
        if (!std::isfinite(p.alpha_deg) || !std::isfinite(p.pl_db))
            throw std::invalid_argument("fit points must be finite");
    }
    std::set<double> distinct;
    for (const auto& p : points)
        distinct.insert(p.alpha_deg);
    if (distinct.size() < n_coeffs)
        throw underdetermined_error(detail::msg(
            "cubic fit needs at least 4 distinct angles, got %zu", distinct.size()));

    const std::size_t m = points.size();
    std::vector<double> a(m * n_coeffs);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = deg_to_rad(points[i].alpha_deg);
        a[0 * m + i] = 1.0;
        a[1 * m + i] = r;
        a[2 * m + i] = r * r;
        a[3 * m + i] = r * r * r;
        y[i] = points[i].pl_db;
    }
    const auto x = qr_solve(a, y, m);

    FitResult out;
    out.coeffs = {x[3], x[2], x[1], x[0]};
    double sum2 = 0.0;
    double max_abs = 0.0;
    for (const auto& p : points) {
        const double r = p.pl_db - eval_poly(deg_to_rad(p.alpha_deg), out.coeffs);
        sum2 += r * r;
        max_abs = std::max(max_abs, std::abs(r));
    }
    out.rms_residual_db = std::sqrt(sum2 / static_cast<double>(m));
    out.max_abs_residual_db = max_abs;
    return out;
}

ModelTable fit_table(std::span<const BandwidthPoints> sets, double carrier_hz,
                     double angle_min_deg, double angle_max_deg) {
    if (sets.empty())
        throw empty_input_error("no bandwidth point sets to fit");
    ModelTable table;
    table.carrier_hz = carrier_hz;
    table.angle_min_deg = angle_min_deg;
    table.angle_max_deg = angle_max_deg;
    for (const auto& set : sets) {
        auto tag = [&](const char* what) {
            return detail::msg("bandwidth %g MHz: %s", set.bandwidth_hz / 1e6, what);
        };
        try {
            table.entries.push_back({set.bandwidth_hz, fit_cubic(set.points).coeffs});
        } catch (const underdetermined_error& e) {
            throw underdetermined_error(tag(e.what()));
        } catch (const conditioning_error& e) {
            throw conditioning_error(tag(e.what()));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(tag(e.what()));
        }
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const TableEntry& a, const TableEntry& b) {
                  return a.bandwidth_hz < b.bandwidth_hz;
              });
    table.validate();
    return table;
}

} // namespace treescatter
