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

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "treescatter/io.hpp"
#include "treescatter/synth.hpp"

#include "support/oracles.hpp"

using namespace treescatter;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path()
               / ("treescatter_io_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// A batch whose amplitudes are exactly representable in float32, so binary
// and CSV round trips are bit-identical.
ImpulseSpectra f32_batch(std::size_t m_count, std::size_t n, std::uint64_t seed) {
    ImpulseSpectra s;
    s.angle_deg = 105.0;
    s.bin_count = n;
    s.sample_rate_hz = 2.048e9;
    s.bins.resize(m_count * n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(-2.0f, 2.0f);
    for (auto& z : s.bins)
        z = {static_cast<double>(dist(rng)), static_cast<double>(dist(rng))};
    return s;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("dataset binary round trip") {
    TempDir dir;
    const auto file = dir.path / "batch.spectra";
    const ImpulseSpectra original = f32_batch(3, 16, 1);
    DatasetMeta meta;
    meta.carrier_hz = 81.6e9;
    meta.signal_band_hz = 1.96e9;
    meta.notes = "fixture";
    write_dataset(original, file, PayloadEncoding::binary_f32le, meta);

    const DatasetHeader h = read_dataset_header(file);
    CHECK(h.format_version == 1);
    CHECK(h.angle_deg == 105.0);
    CHECK(h.impulse_count == 3);
    CHECK(h.bin_count == 16);
    CHECK(h.sample_rate_hz == 2.048e9);
    CHECK(h.payload_encoding == PayloadEncoding::binary_f32le);
    REQUIRE(h.meta.carrier_hz.has_value());
    CHECK(*h.meta.carrier_hz == 81.6e9);
    CHECK(h.meta.notes == "fixture");

    const ImpulseSpectra loaded = read_dataset(file);
    CHECK(loaded.angle_deg == original.angle_deg);
    CHECK(loaded.bins == original.bins);
}

TEST_CASE("dataset csv round trip") {
    TempDir dir;
    const auto file = dir.path / "batch_csv.spectra";
    const ImpulseSpectra original = f32_batch(2, 8, 2);
    write_dataset(original, file, PayloadEncoding::csv);
    const ImpulseSpectra loaded = read_dataset(file);
    CHECK(loaded.bins == original.bins);
    CHECK(read_dataset_header(file).payload_encoding == PayloadEncoding::csv);
}

TEST_CASE("dataset error paths") {
    TempDir dir;
    const auto file = dir.path / "batch.spectra";
    write_dataset(f32_batch(2, 8, 3), file);

    SECTION("truncated payload") {
        auto bytes = slurp(file);
        std::ofstream out(dir.path / "short.spectra", std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 5));
        out.close();
        CHECK_THROWS_AS(read_dataset(dir.path / "short.spectra"), shape_error);
    }
    SECTION("oversized payload") {
        auto bytes = slurp(file);
        bytes += "XXXX";
        std::ofstream out(dir.path / "long.spectra", std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.close();
        CHECK_THROWS_AS(read_dataset(dir.path / "long.spectra"), shape_error);
    }
    SECTION("unknown version") {
        std::ofstream out(dir.path / "v9.spectra", std::ios::binary);
        out << R"({"format_version":9,"angle_deg":1,"impulse_count":1,"bin_count":2,)"
            << R"("sample_rate_hz":1000,"payload_encoding":"csv"})" << "\n";
        out.close();
        CHECK_THROWS_AS(read_dataset(dir.path / "v9.spectra"), version_error);
    }
    SECTION("malformed header") {
        std::ofstream out(dir.path / "bad.spectra", std::ios::binary);
        out << "not json at all\n";
        out.close();
        CHECK_THROWS_AS(read_dataset(dir.path / "bad.spectra"), parse_error);
    }
    SECTION("csv with a non-numeric field names the line") {
        std::ofstream out(dir.path / "nn.spectra", std::ios::binary);
        out << R"({"format_version":1,"angle_deg":1,"impulse_count":1,"bin_count":2,)"
            << R"("sample_rate_hz":1000,"payload_encoding":"csv"})" << "\n";
        out << "0,0,1.0,0.0\n";
        out << "0,1,oops,0.0\n";
        out.close();
        try {
            read_dataset(dir.path / "nn.spectra");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SECTION("csv with a missing bin") {
        std::ofstream out(dir.path / "missing.spectra", std::ios::binary);
        out << R"({"format_version":1,"angle_deg":1,"impulse_count":1,"bin_count":2,)"
            << R"("sample_rate_hz":1000,"payload_encoding":"csv"})" << "\n";
        out << "0,0,1.0,0.0\n";
        out.close();
        CHECK_THROWS_AS(read_dataset(dir.path / "missing.spectra"), shape_error);
    }
    SECTION("csv with a duplicate bin") {
        std::ofstream out(dir.path / "dup.spectra", std::ios::binary);
        out << R"({"format_version":1,"angle_deg":1,"impulse_count":1,"bin_count":2,)"
            << R"("sample_rate_hz":1000,"payload_encoding":"csv"})" << "\n";
        out << "0,0,1.0,0.0\n0,0,2.0,0.0\n";
        out.close();
        CHECK_THROWS_AS(read_dataset(dir.path / "dup.spectra"), shape_error);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(read_dataset(dir.path / "absent.spectra"), parse_error);
    }
}

TEST_CASE("to_spectra") {
    SECTION("pure tone lands in its centered bin") {
        const std::size_t n = 64;
        const double fs = 6400.0;
        std::vector<std::vector<std::complex<double>>> frames(1);
        frames[0].resize(n);
        const int k0 = 5; // +500 Hz at 100 Hz spacing
        for (std::size_t t = 0; t < n; ++t) {
            const double phase = 2.0 * pi * k0 * static_cast<double>(t) / static_cast<double>(n);
            frames[0][t] = {std::cos(phase), std::sin(phase)};
        }
        const ImpulseSpectra s = to_spectra(frames, fs);
        double peak = 0.0;
        std::size_t peak_bin = 0;
        double off_peak = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double mag = std::abs(s.bins[k]);
            if (mag > peak) {
                peak = mag;
                peak_bin = k;
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (k != peak_bin)
                off_peak = std::max(off_peak, std::abs(s.bins[k]));
        }
        CHECK(peak_bin == n / 2 + k0);
        CHECK(s.bin_frequency_hz(peak_bin) == 500.0);
        CHECK_THAT(peak, Catch::Matchers::WithinRel(static_cast<double>(n), 1e-12));
        CHECK(off_peak <= 1e-10 * peak);
    }
    SECTION("negative-frequency tone") {
        const std::size_t n = 32;
        std::vector<std::vector<std::complex<double>>> frames(1);
        frames[0].resize(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double phase = -2.0 * pi * 3.0 * static_cast<double>(t) / static_cast<double>(n);
            frames[0][t] = {std::cos(phase), std::sin(phase)};
        }
        const ImpulseSpectra s = to_spectra(frames, 3200.0);
        // -3 bins from center at 100 Hz spacing
        CHECK_THAT(std::abs(s.bins[n / 2 - 3]), Catch::Matchers::WithinRel(32.0, 1e-12));
    }
    SECTION("time impulse spreads flat") {
        std::vector<std::vector<std::complex<double>>> frames(1);
        frames[0].assign(16, {0.0, 0.0});
        frames[0][0] = {1.0, 0.0};
        const ImpulseSpectra s = to_spectra(frames, 1600.0);
        for (const auto& z : s.bins)
            CHECK_THAT(std::abs(z), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("unnormalized transform satisfies the Parseval relation") {
        for (std::size_t n : {std::size_t{64}, std::size_t{48}}) { // radix-2 and naive paths
            std::mt19937_64 rng(n);
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            std::vector<std::vector<std::complex<double>>> frames(3);
            double time_power = 0.0;
            for (auto& frame : frames) {
                frame.resize(n);
                for (auto& x : frame) {
                    x = {dist(rng), dist(rng)};
                    time_power += std::norm(x);
                }
            }
            const ImpulseSpectra s = to_spectra(frames, 1e6);
            double spectral_power = 0.0;
            for (std::size_t m = 0; m < 3; ++m)
                spectral_power += impulse_power(s, m);
            CHECK_THAT(spectral_power,
                       Catch::Matchers::WithinRel(static_cast<double>(n) * time_power, 1e-9));
        }
    }
    SECTION("ragged input") {
        std::vector<std::vector<std::complex<double>>> frames(2);
        frames[0].resize(8);
        frames[1].resize(9);
        CHECK_THROWS_AS(to_spectra(frames, 1e6), shape_error);
    }
    SECTION("empty input") {
        CHECK_THROWS_AS(to_spectra({}, 1e6), empty_input_error);
    }
}

TEST_CASE("model table file format") {
    TempDir dir;
    const auto file = dir.path / "table.json";

    SECTION("bundled table round-trips digit for digit") {
        write_model_table(default_table(), file);
        const std::string text = slurp(file);
        for (const char* token : {"81.6", "5.14", "-25.95", "33.98", "103.81", "6.63", "-34.28",
                                  "45.25", "104.31", "7.55", "-38.47", "51.09", "104.35", "7.63",
                                  "-38.87", "51.55", "105.43", "7.75", "-39.45", "52.55", "105.32"})
            CHECK(text.find(token) != std::string::npos);

        const ModelTable loaded = read_model_table(file);
        REQUIRE(loaded.entries.size() == 5);
        const ModelTable original = default_table();
        CHECK(loaded.carrier_hz == original.carrier_hz);
        CHECK(loaded.angle_min_deg == original.angle_min_deg);
        CHECK(loaded.angle_max_deg == original.angle_max_deg);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(loaded.entries[i].bandwidth_hz == original.entries[i].bandwidth_hz);
            CHECK(loaded.entries[i].coeffs.c == original.entries[i].coeffs.c);
            CHECK(loaded.entries[i].coeffs.d == original.entries[i].coeffs.d);
            CHECK(loaded.entries[i].coeffs.e == original.entries[i].coeffs.e);
            CHECK(loaded.entries[i].coeffs.f == original.entries[i].coeffs.f);
        }
    }
    SECTION("malformed json") {
        std::istringstream in("{ nope");
        CHECK_THROWS_AS(parse_model_table(in), parse_error);
    }
    SECTION("missing keys") {
        std::istringstream in(R"({"carrier_ghz": 81.6})");
        CHECK_THROWS_AS(parse_model_table(in), parse_error);
    }
    SECTION("unsorted entries are rejected") {
        std::istringstream in(R"({"carrier_ghz": 81.6, "valid_angle_deg": [20, 180],
            "entries": [
              {"bandwidth_mhz": 500, "c": 1, "d": 1, "e": 1, "f": 1},
              {"bandwidth_mhz": 200, "c": 1, "d": 1, "e": 1, "f": 1}]})");
        CHECK_THROWS_AS(parse_model_table(in), parse_error);
    }
}

TEST_CASE("curve export") {
    const ModelTable table = default_table();

    SECTION("full grid size and ordering") {
        std::vector<double> grid;
        for (int deg = 20; deg <= 180; ++deg)
            grid.push_back(deg);
        std::vector<double> bandwidths;
        for (const auto& e : table.entries)
            bandwidths.push_back(e.bandwidth_hz);
        const auto rows = export_curve(table, bandwidths, grid);
        REQUIRE(rows.size() == 161 * 5);
        CHECK(rows[0].alpha_deg == 20.0);
        CHECK(rows[0].bandwidth_mhz == 200.0);
        CHECK(rows[161].bandwidth_mhz == 500.0); // bandwidth-major
        CHECK(rows[1].alpha_deg == 21.0);        // ascending angles inside a bandwidth
    }
    SECTION("single row matches predict before formatting") {
        const auto rows = export_curve(table, std::vector<double>{1960e6},
                                       std::vector<double>{90.0});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].pl_db == predict(90.0, 1960e6, table).pl_db);
        CHECK_THAT(rows[0].pl_db, Catch::Matchers::WithinAbs(120.5637041014, 1e-9));
    }
    SECTION("csv formatting carries 4 decimals") {
        const auto rows = export_curve(table, std::vector<double>{1960e6},
                                       std::vector<double>{90.0});
        std::ostringstream out;
        write_curve_csv(rows, out);
        CHECK(out.str() == "alpha_deg,bandwidth_mhz,pl_db\n90,1960,120.5637\n");
    }
    SECTION("errors propagate from predict") {
        CHECK_THROWS_AS(export_curve(table, std::vector<double>{1960e6},
                                     std::vector<double>{5.0}),
                        domain_error);
        CHECK_THROWS_AS(export_curve(table, std::vector<double>{750e6},
                                     std::vector<double>{90.0}),
                        bandwidth_error);
    }
}

TEST_CASE("points csv reader") {
    SECTION("bare two-column rows") {
        std::istringstream in("21,110.5\n105,112.25\n145,109\n180,111\n");
        const auto groups = read_points_csv(in);
        REQUIRE(groups.size() == 1);
        CHECK(groups[0].bandwidth_hz == 1960e6);
        REQUIRE(groups[0].points.size() == 4);
        CHECK(groups[0].points[1].alpha_deg == 105.0);
        CHECK(groups[0].points[1].pl_db == 112.25);
    }
    SECTION("bare three-column rows group by bandwidth") {
        std::istringstream in("200,21,110.5\n200,105,112\n1960,21,118\n");
        const auto groups = read_points_csv(in);
        REQUIRE(groups.size() == 2);
        CHECK(groups[0].bandwidth_hz == 200e6);
        CHECK(groups[0].points.size() == 2);
        CHECK(groups[1].bandwidth_hz == 1960e6);
    }
    SECTION("named header with shuffled columns") {
        std::istringstream in("pl_db,bandwidth_mhz,alpha_deg\n110.5,500,21\n");
        const auto groups = read_points_csv(in);
        REQUIRE(groups.size() == 1);
        CHECK(groups[0].bandwidth_hz == 500e6);
        CHECK(groups[0].points[0].alpha_deg == 21.0);
        CHECK(groups[0].points[0].pl_db == 110.5);
    }
    SECTION("processing results feed straight back in") {
        const std::vector<AngleResult> results{{21.0, 30.0, 2.0, 119.5, 1960.0},
                                               {180.0, 28.0, 0.0, 121.25, 1960.0}};
        std::ostringstream out;
        write_results_csv(results, out);
        std::istringstream in(out.str());
        const auto groups = read_points_csv(in);
        REQUIRE(groups.size() == 1);
        CHECK(groups[0].bandwidth_hz == 1960e6);
        REQUIRE(groups[0].points.size() == 2);
        CHECK(groups[0].points[0].alpha_deg == 21.0);
        CHECK_THAT(groups[0].points[0].pl_db, Catch::Matchers::WithinAbs(119.5, 1e-6));
    }
    SECTION("header missing the required columns") {
        std::istringstream in("foo,bar\n1,2\n");
        CHECK_THROWS_AS(read_points_csv(in), parse_error);
    }
    SECTION("non-numeric data names the line") {
        std::istringstream in("alpha_deg,pl_db\n21,110\nbad,111\n");
        try {
            read_points_csv(in);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SECTION("empty file") {
        std::istringstream in("");
        CHECK_THROWS_AS(read_points_csv(in), empty_input_error);
    }
}

TEST_CASE("samples and ecdf csv") {
    SECTION("reader skips a header and keeps order") {
        std::istringstream in("value_db\n1.5\n-2\n0.25\n");
        const auto samples = read_samples_csv(in);
        CHECK(samples == std::vector<double>{1.5, -2.0, 0.25});
    }
    SECTION("bare numbers work too") {
        std::istringstream in("3\n1\n2\n");
        CHECK(read_samples_csv(in).size() == 3);
    }
    SECTION("writer format") {
        Ecdf e;
        e.value_db = {0.5, 1.5};
        e.probability = {0.5, 1.0};
        std::ostringstream out;
        write_ecdf_csv(e, out);
        CHECK(out.str() == "value_db,probability\n0.5,0.5\n1.5,1\n");
    }
}

TEST_CASE("calibration and geometry files") {
    TempDir dir;
    SECTION("calibration overrides and defaults") {
        const auto file = dir.path / "cal.json";
        std::ofstream(file) << R"({"attenuator_db": 60, "tx_antenna_gain_dbi": 10})";
        const CalibrationConstants cal = read_calibration(file);
        CHECK(cal.attenuator_db == 60.0);
        CHECK(cal.tx_antenna_gain_dbi == 10.0);
        CHECK(cal.rx_antenna_gain_dbi == 7.0); // default kept
    }
    SECTION("geometry file") {
        const auto file = dir.path / "geometry.json";
        std::ofstream(file) << R"({"carrier_ghz": 60, "reference_angle_deg": 180,
            "distances": [{"angle_deg": 21, "distance_m": 13.8},
                          {"angle_deg": 180, "distance_m": 15.61}]})";
        const LinkGeometry g = read_geometry(file);
        CHECK(g.carrier_hz == 60e9);
        CHECK(g.distance_at(21.0) == 13.8);
        CHECK(g.distance_at(180.0) == 15.61);
    }
    SECTION("non-positive distance") {
        const auto file = dir.path / "bad_geometry.json";
        std::ofstream(file) << R"({"distances": [{"angle_deg": 21, "distance_m": 0}]})";
        CHECK_THROWS_AS(read_geometry(file), parse_error);
    }
    SECTION("duplicate angle") {
        const auto file = dir.path / "dup_geometry.json";
        std::ofstream(file) << R"({"distances": [{"angle_deg": 21, "distance_m": 1},
                                                 {"angle_deg": 21, "distance_m": 2}]})";
        CHECK_THROWS_AS(read_geometry(file), parse_error);
    }
    SECTION("missing distances array") {
        const auto file = dir.path / "no_distances.json";
        std::ofstream(file) << R"({"carrier_ghz": 81.6})";
        CHECK_THROWS_AS(read_geometry(file), parse_error);
    }
}

TEST_CASE("ground truth sidecar round trip") {
    TempDir dir;
    const auto file = dir.path / "ground_truth.json";
    GroundTruthRecord r;
    r.seed = 42;
    r.snr_db = std::numeric_limits<double>::infinity();
    r.impulse_count = 1000;
    r.bin_count = 4096;
    r.sample_rate_hz = 2.048e9;
    r.signal_band_hz = 1.96e9;
    r.bandwidth_hz = 1960e6;
    r.pl_db = {{21.0, 119.66}, {180.0, 121.35}};
    write_ground_truth(r, file);
    const GroundTruthRecord loaded = read_ground_truth(file);
    CHECK(loaded.seed == 42);
    CHECK(std::isinf(loaded.snr_db));
    CHECK(loaded.impulse_count == 1000);
    REQUIRE(loaded.bandwidth_hz.has_value());
    CHECK(*loaded.bandwidth_hz == 1960e6);
    REQUIRE(loaded.pl_db.size() == 2);
    CHECK(loaded.pl_db[0].alpha_deg == 21.0);
    CHECK(loaded.pl_db[1].pl_db == 121.35);
}
