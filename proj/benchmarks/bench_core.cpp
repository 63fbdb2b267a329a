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

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "treescatter/fitting.hpp"
#include "treescatter/io.hpp"
#include "treescatter/pipeline.hpp"
#include "treescatter/pl_model.hpp"
#include "treescatter/synth.hpp"

namespace ts = treescatter;

namespace {

ts::ImpulseSpectra make_batch(std::size_t m_count, std::size_t n) {
    ts::ImpulseSpectra s;
    s.angle_deg = 90.0;
    s.bin_count = n;
    s.sample_rate_hz = 2.048e9;
    s.bins.resize(m_count * n);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& z : s.bins)
        z = {dist(rng), dist(rng)};
    return s;
}

void BM_Predict(benchmark::State& state) {
    const ts::ModelTable table = ts::default_table();
    double angle = 20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ts::predict(angle, 1960e6, table).pl_db);
        angle = angle < 180.0 ? angle + 1.0 : 20.0;
    }
}
BENCHMARK(BM_Predict);

void BM_PredictInterpolated(benchmark::State& state) {
    const ts::ModelTable table = ts::default_table();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ts::predict(90.0, 750e6, table, ts::PredictMode::interpolate).pl_db);
}
BENCHMARK(BM_PredictInterpolated);

void BM_BandPower(benchmark::State& state) {
    const auto s = make_batch(1, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(ts::band_power(s, 1.96e9, 0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BandPower)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_ProcessDataset(benchmark::State& state) {
    std::vector<ts::ImpulseSpectra> dataset;
    for (double angle : {21.0, 105.0, 145.0, 180.0}) {
        auto s = make_batch(static_cast<std::size_t>(state.range(0)), 1024);
        s.angle_deg = angle;
        dataset.push_back(std::move(s));
    }
    const ts::CalibrationConstants cal;
    const ts::LinkGeometry geometry = ts::default_geometry();
    for (auto _ : state)
        benchmark::DoNotOptimize(ts::process_dataset(dataset, cal, geometry, 1.96e9));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProcessDataset)->RangeMultiplier(4)->Range(16, 256)->Complexity();

void BM_FitCubic(benchmark::State& state) {
    const ts::CubicCoeffs truth{7.75, -39.45, 52.55, 105.32};
    std::vector<ts::AnglePlPoint> points(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double a = 20.0 + 160.0 * static_cast<double>(i)
                         / static_cast<double>(points.size() - 1);
        points[i] = {a, ts::eval_poly(ts::deg_to_rad(a), truth)};
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(ts::fit_cubic(points).coeffs.c);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitCubic)->RangeMultiplier(10)->Range(50, 5000)->Complexity();

void BM_SynthGenerate(benchmark::State& state) {
    ts::SynthConfig config;
    config.angles_deg = {105.0, 180.0};
    config.ground_truth_pl_db = {{105.0, 112.0}, {180.0, 108.0}};
    config.impulse_count = static_cast<std::size_t>(state.range(0));
    config.bin_count = 1024;
    config.snr_db = 40.0;
    config.seed = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(ts::generate(config).front().bins.size());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SynthGenerate)->RangeMultiplier(4)->Range(4, 64)->Complexity();

void BM_ToSpectraFft(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<std::complex<double>>> frames(
        4, std::vector<std::complex<double>>(n));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& frame : frames) {
        for (auto& x : frame)
            x = {dist(rng), dist(rng)};
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(ts::to_spectra(frames, 2.048e9).bins.size());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToSpectraFft)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

} // namespace

BENCHMARK_MAIN();
