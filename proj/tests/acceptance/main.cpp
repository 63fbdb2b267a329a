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
//
// Release acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits non-zero if any criterion fails. All tolerances
// are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "treescatter/fitting.hpp"
#include "treescatter/pipeline.hpp"
#include "treescatter/pl_model.hpp"
#include "treescatter/rng.hpp"
#include "treescatter/synth.hpp"

#include "support/oracles.hpp"

using namespace treescatter;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s%s\n", pass ? "PASS" : "FAIL", id, name,
                detail.empty() ? "" : " (", detail.c_str(), detail.empty() ? "" : ")");
    if (!pass)
        ++g_failures;
}

template <typename Fn>
void criterion(int id, const char* name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const double check_angles[] = {20.0, 21.0, 50.0, 90.0, 105.0, 145.0, 180.0};

void criterion_1_table_fidelity(const ModelTable& table) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const auto& row : oracles::coefficient_rows) {
        for (double deg : check_angles) {
            const double got = predict(deg, row.bandwidth_mhz * 1e6, table).pl_db;
            const double expected = oracles::poly_db(oracles::deg2rad(deg), row);
            worst = std::max(worst, std::abs(got - expected));
        }
    }
    const double spot = predict(90.0, 1960e6, table).pl_db;
    const double spot_err = std::abs(spot - 120.5637041014);
    const double t = elapsed_s(start);
    report(1, "table fidelity at 7 angles x 5 bandwidths, <= 1e-9 dB vs oracle",
           worst <= 1e-9 && spot_err <= 1e-9 && t < 1.0,
           fmt("max |err| %.3g dB, spot(90deg,1960MHz) %.6f dB, %.3f s", worst, spot, t));
}

void criterion_2_f_column(const ModelTable& table) {
    double lo = 1e9, hi = -1e9;
    bool ok = true;
    for (const auto& e : table.entries) {
        lo = std::min(lo, e.coeffs.f);
        hi = std::max(hi, e.coeffs.f);
        ok = ok && std::abs(e.coeffs.f - 105.0) <= 1.5;
    }
    report(2, "near-transmitter loss within 105 +/- 1.5 dB for every bandwidth", ok,
           fmt("observed span %.2f..%.2f dB", lo, hi));
}

void criterion_3_stationary(const ModelTable& table) {
    bool ok = true;
    for (const auto& e : table.entries) {
        const auto got = stationary_points(e.coeffs);
        ok = ok && got.local_max_deg && got.local_min_deg && *got.local_max_deg >= 45.0
             && *got.local_max_deg <= 60.0 && *got.local_min_deg >= 135.0
             && *got.local_min_deg <= 150.0;
    }
    const auto widest = stationary_points(table.entries.back().coeffs);
    const auto expected = oracles::stationary(oracles::coefficient_rows[4]);
    const bool widest_ok = widest.local_max_deg && widest.local_min_deg
                           && std::abs(*widest.local_max_deg - *expected.max_deg) <= 0.5
                           && std::abs(*widest.local_min_deg - *expected.min_deg) <= 0.5
                           && std::abs(*widest.local_max_deg - 52.1) <= 0.5
                           && std::abs(*widest.local_min_deg - 142.3) <= 0.5;
    report(3, "attenuation peak in [45,60] deg and dip in [135,150] deg per bandwidth",
           ok && widest_ok,
           fmt("widest bandwidth: max %.1f deg, min %.1f deg",
               widest.local_max_deg.value_or(0.0), widest.local_min_deg.value_or(0.0)));
}

void criterion_4_distance_correction() {
    const double got = delta_pl(15.61, 13.80);
    report(4, "near-position distance correction 1.07 +/- 0.005 dB",
           std::abs(got - 1.07) <= 0.005, fmt("got %.4f dB", got));
}

void criterion_5_bandwidth_monotonicity(const ModelTable& table) {
    bool monotone_90 = true;
    double previous = -1e9;
    for (const auto& e : table.entries) {
        const double pl = predict(90.0, e.bandwidth_hz, table).pl_db;
        monotone_90 = monotone_90 && pl > previous;
        previous = pl;
    }
    double worst = 0.0;
    int worst_deg = 0;
    double worst_lo = 0.0, worst_hi = 0.0;
    for (int deg = 20; deg <= 180; ++deg) {
        std::vector<double> pl;
        for (const auto& e : table.entries)
            pl.push_back(predict(deg, e.bandwidth_hz, table).pl_db);
        for (std::size_t i = 0; i < pl.size(); ++i) {
            for (std::size_t j = i + 1; j < pl.size(); ++j) {
                if (pl[i] - pl[j] > worst) {
                    worst = pl[i] - pl[j];
                    worst_deg = deg;
                    worst_lo = table.entries[i].bandwidth_hz / 1e6;
                    worst_hi = table.entries[j].bandwidth_hz / 1e6;
                }
            }
        }
    }
    report(5, "PL strictly grows with bandwidth at 90 deg; inversions <= 0.2 dB on the 1-deg grid",
           monotone_90 && worst <= 0.2,
           fmt("monotone at 90 deg: %s; max inversion %.4f dB at %d deg (%g vs %g MHz)",
               monotone_90 ? "yes" : "no", worst, worst_deg, worst_lo, worst_hi));
}

void criterion_6_fit_round_trip() {
    const auto start = std::chrono::steady_clock::now();
    const auto& row = oracles::coefficient_rows[4];
    const CubicCoeffs truth{row.c, row.d, row.e, row.f};

    std::vector<AnglePlPoint> dense(50);
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const double a = 20.0 + 160.0 * static_cast<double>(i) / 49.0;
        dense[i] = {a, eval_poly(deg_to_rad(a), truth)};
    }
    const FitResult dense_fit = fit_cubic(dense);
    const double dense_err =
        std::max({std::abs(dense_fit.coeffs.c - truth.c), std::abs(dense_fit.coeffs.d - truth.d),
                  std::abs(dense_fit.coeffs.e - truth.e), std::abs(dense_fit.coeffs.f - truth.f)});

    std::vector<AnglePlPoint> four;
    for (double a : {21.0, 105.0, 145.0, 180.0})
        four.push_back({a, eval_poly(deg_to_rad(a), truth)});
    const FitResult four_fit = fit_cubic(four);
    const double t = elapsed_s(start);
    report(6, "fit round trip: 50 exact samples within 1e-6, 4-point residual <= 1e-9 dB",
           dense_err <= 1e-6 && four_fit.max_abs_residual_db <= 1e-9 && t < 1.0,
           fmt("max coeff err %.3g, 4-point residual %.3g dB, %.3f s", dense_err,
               four_fit.max_abs_residual_db, t));
}

void criterion_7_pipeline_oracle(const ModelTable& table) {
    const auto start = std::chrono::steady_clock::now();
    SynthConfig config;
    config.angles_deg = {21.0, 105.0, 145.0, 180.0};
    config.ground_truth_pl_db = ground_truth_from_table(table, 1960e6, config.angles_deg);
    config.impulse_count = 1000;
    config.bin_count = 4096;
    config.snr_db = 40.0;
    config.seed = 424242;

    auto max_error = [&](const SynthConfig& c) {
        const auto results = process_dataset(generate(c), c.cal, c.geometry, 1960e6);
        double worst = 0.0;
        for (const auto& r : results)
            worst = std::max(worst, std::abs(r.pl_db - c.ground_truth_pl_db.at(r.angle_deg)));
        return worst;
    };
    const double noisy = max_error(config);
    SynthConfig noiseless = config;
    noiseless.snr_db = std::numeric_limits<double>::infinity();
    const double clean = max_error(noiseless);
    const double t = elapsed_s(start);
    report(7, "synthetic round trip: 40 dB SNR within 0.05 dB, noiseless within 1e-9 dB",
           noisy <= 0.05 && clean <= 1e-9 && t < 60.0,
           fmt("max |err| %.4g dB noisy, %.3g dB noiseless, %.1f s", noisy, clean, t));
}

void criterion_8_fspl() {
    const double got = fspl(15.61, 81.6e9);
    const double oracle = oracles::fspl_db(15.61, 81.6e9);
    report(8, "free-space loss at 15.61 m / 81.6 GHz equals 94.55 +/- 0.01 dB",
           std::abs(got - 94.55) <= 0.01 && std::abs(got - oracle) <= 1e-9,
           fmt("got %.4f dB, oracle %.4f dB", got, oracle));
}

void criterion_9_ecdf() {
    NoiseRng rng(1234);
    std::vector<double> samples(1000);
    for (auto& v : samples)
        v = rng.gaussian();
    const Ecdf e = ecdf(samples);

    bool monotone = true;
    for (std::size_t i = 1; i < e.value_db.size(); ++i)
        monotone = monotone && e.value_db[i] >= e.value_db[i - 1];
    bool steps_ok = e.probability.back() == 1.0;
    for (std::size_t i = 0; i < e.probability.size(); ++i)
        steps_ok = steps_ok
                   && std::abs(e.probability[i] - static_cast<double>(i + 1) / 1000.0) <= 1e-15;
    const double ks = oracles::ks_distance(e.value_db, oracles::std_normal_cdf);
    report(9, "ECDF monotone with uniform 1/M steps ending at 1; normal KS distance < 0.05",
           monotone && steps_ok && ks < 0.05, fmt("ks %.4f", ks));
}

void criterion_10_equivariance(const ModelTable& table) {
    SynthConfig config;
    config.angles_deg = {21.0, 105.0, 145.0, 180.0};
    config.ground_truth_pl_db = ground_truth_from_table(table, 1960e6, config.angles_deg);
    config.impulse_count = 20;
    config.bin_count = 512;
    config.snr_db = 35.0;
    config.seed = 99;
    const auto dataset = generate(config);
    const auto base = process_dataset(dataset, config.cal, config.geometry, 1960e6);

    // global scale: corrections fixed, every PL shifted by 20 log10(scale)
    const double scale_db = 7.0;
    auto scaled = dataset;
    for (auto& s : scaled)
        s = perturb(std::move(s), scale_db);
    const auto shifted = process_dataset(scaled, config.cal, config.geometry, 1960e6);
    bool global_ok = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
        global_ok = global_ok
                    && std::abs(shifted[i].correction_db - base[i].correction_db) <= 1e-9
                    && std::abs((shifted[i].pl_db - base[i].pl_db) - scale_db) <= 1e-9;
    }

    // per-angle +10 dB lowers exactly that angle's PL by 10 dB
    auto boosted = dataset;
    boosted[1] = perturb(std::move(boosted[1]), 10.0); // 105 deg
    const auto boosted_results = process_dataset(boosted, config.cal, config.geometry, 1960e6);
    bool local_ok = true;
    double boosted_delta = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double delta = base[i].pl_db - boosted_results[i].pl_db;
        if (base[i].angle_deg == 105.0) {
            boosted_delta = delta;
            local_ok = local_ok && std::abs(delta - 10.0) <= 1e-9;
        } else {
            local_ok = local_ok && std::abs(delta) <= 1e-9;
        }
    }
    report(10, "amplitude-scaling equivariance of corrections and path losses",
           global_ok && local_ok,
           fmt("global shift ok: %s; +10 dB at 105 deg lowered PL by %.6f dB",
               global_ok ? "yes" : "no", boosted_delta));
}

} // namespace

int main() {
    const ModelTable table = default_table();
    std::printf("treescatter acceptance suite\n");

    criterion(1, "table fidelity", [&] { criterion_1_table_fidelity(table); });
    criterion(2, "f column", [&] { criterion_2_f_column(table); });
    criterion(3, "stationary points", [&] { criterion_3_stationary(table); });
    criterion(4, "distance correction", [&] { criterion_4_distance_correction(); });
    criterion(5, "bandwidth monotonicity", [&] { criterion_5_bandwidth_monotonicity(table); });
    criterion(6, "fit round trip", [&] { criterion_6_fit_round_trip(); });
    criterion(7, "pipeline oracle", [&] { criterion_7_pipeline_oracle(table); });
    criterion(8, "fspl", [&] { criterion_8_fspl(); });
    criterion(9, "ecdf", [&] { criterion_9_ecdf(); });
    criterion(10, "equivariance", [&] { criterion_10_equivariance(table); });

    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
