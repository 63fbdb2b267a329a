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

#include "treescatter/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "json.hpp"

#include "treescatter/detail/msg.hpp"

namespace treescatter {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error(detail::msg("cannot open '%s' for reading", path.string().c_str()));
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw error(detail::msg("cannot open '%s' for writing", path.string().c_str()));
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

bool try_parse_double(const std::string& field, double& value) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first != last && (*first == ' ' || *first == '\t'))
        ++first;
    const char* end = last;
    while (end != first && (end[-1] == ' ' || end[-1] == '\t'))
        --end;
    auto [ptr, ec] = std::from_chars(first, end, value);
    return ec == std::errc() && ptr == end && end != first;
}

double parse_double_field(const std::string& field, std::size_t line_no) {
    double value;
    if (!try_parse_double(field, value) || !std::isfinite(value))
        throw parse_error(detail::msg("non-numeric field '%s' at line %zu", field.c_str(), line_no));
    return value;
}

std::size_t parse_index_field(const std::string& field, std::size_t line_no) {
    std::size_t value;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
        throw parse_error(detail::msg("non-numeric field '%s' at line %zu", field.c_str(), line_no));
    return value;
}

void append_f32le(std::string& out, double value) {
    const auto u = std::bit_cast<std::uint32_t>(static_cast<float>(value));
    out.push_back(static_cast<char>(u & 0xff));
    out.push_back(static_cast<char>((u >> 8) & 0xff));
    out.push_back(static_cast<char>((u >> 16) & 0xff));
    out.push_back(static_cast<char>((u >> 24) & 0xff));
}

float read_f32le(const unsigned char* p) {
    const std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8)
                            | (static_cast<std::uint32_t>(p[2]) << 16)
                            | (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(u);
}

// Narrow a value to the float32 payload precision. The volatile keeps
// GCC 11's SLP vectorizer from eliding the narrowing at -O3.
double quantize_f32(double v) {
    volatile float f = static_cast<float>(v);
    return static_cast<double>(f);
}

const char* encoding_name(PayloadEncoding e) {
    return e == PayloadEncoding::binary_f32le ? "binary-f32le" : "csv";
}

PayloadEncoding encoding_from_name(const std::string& name) {
    if (name == "binary-f32le")
        return PayloadEncoding::binary_f32le;
    if (name == "csv")
        return PayloadEncoding::csv;
    throw parse_error(detail::msg("unknown payload encoding '%s'", name.c_str()));
}

DatasetHeader parse_header_json(const std::string& line, const std::filesystem::path& path) {
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw parse_error(detail::msg("malformed dataset header in '%s'", path.string().c_str()));
    DatasetHeader h;
    try {
        h.format_version = j.at("format_version").get<int>();
        if (h.format_version != dataset_format_version)
            throw version_error(detail::msg("unsupported dataset format version %d in '%s'",
                                            h.format_version, path.string().c_str()));
        h.angle_deg = j.at("angle_deg").get<double>();
        h.impulse_count = j.at("impulse_count").get<std::size_t>();
        h.bin_count = j.at("bin_count").get<std::size_t>();
        h.sample_rate_hz = j.at("sample_rate_hz").get<double>();
        h.payload_encoding = encoding_from_name(j.at("payload_encoding").get<std::string>());
        if (j.contains("carrier_hz"))
            h.meta.carrier_hz = j.at("carrier_hz").get<double>();
        if (j.contains("signal_band_hz"))
            h.meta.signal_band_hz = j.at("signal_band_hz").get<double>();
        if (j.contains("notes"))
            h.meta.notes = j.at("notes").get<std::string>();
    } catch (const json::exception& e) {
        throw parse_error(
            detail::msg("malformed dataset header in '%s': %s", path.string().c_str(), e.what()));
    }
    if (h.impulse_count < 1 || h.bin_count < 2 || !std::isfinite(h.sample_rate_hz)
        || h.sample_rate_hz <= 0.0 || !std::isfinite(h.angle_deg))
        throw parse_error(detail::msg("invalid dataset header values in '%s'", path.string().c_str()));
    return h;
}

// ------------------------------------------------------------------- DFT

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

void fft_pow2(std::vector<std::complex<double>>& x,
              const std::vector<std::complex<double>>& twiddles) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = x[base + j];
                const auto v = x[base + j + len / 2] * twiddles[j * step];
                x[base + j] = u + v;
                x[base + j + len / 2] = u - v;
            }
        }
    }
}

void dft_naive(const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out) {
    const std::size_t n = in.size();
    out.assign(n, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t t = 0; t < n; ++t) {
            const double phase = -2.0 * pi * static_cast<double>((k * t) % n)
                                 / static_cast<double>(n);
            acc += in[t] * std::complex<double>{std::cos(phase), std::sin(phase)};
        }
        out[k] = acc;
    }
}

} // namespace

// ----------------------------------------------------------------- datasets

DatasetHeader read_dataset_header(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line))
        throw parse_error(detail::msg("'%s' is empty", path.string().c_str()));
    strip_cr(line);
    return parse_header_json(line, path);
}

ImpulseSpectra read_dataset(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line))
        throw parse_error(detail::msg("'%s' is empty", path.string().c_str()));
    strip_cr(line);
    const DatasetHeader h = parse_header_json(line, path);

    ImpulseSpectra s;
    s.angle_deg = h.angle_deg;
    s.bin_count = h.bin_count;
    s.sample_rate_hz = h.sample_rate_hz;
    const std::size_t total = h.impulse_count * h.bin_count;

    if (h.payload_encoding == PayloadEncoding::binary_f32le) {
        std::string payload(total * 8, '\0');
        in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (static_cast<std::size_t>(in.gcount()) != payload.size())
            throw shape_error(detail::msg(
                "payload of '%s' is shorter than impulse_count * bin_count", path.string().c_str()));
        if (in.peek() != std::char_traits<char>::eof())
            throw shape_error(detail::msg(
                "payload of '%s' is longer than impulse_count * bin_count", path.string().c_str()));
        s.bins.resize(total);
        const auto* p = reinterpret_cast<const unsigned char*>(payload.data());
        for (std::size_t i = 0; i < total; ++i, p += 8)
            s.bins[i] = {static_cast<double>(read_f32le(p)), static_cast<double>(read_f32le(p + 4))};
        return s;
    }

    s.bins.assign(total, {0.0, 0.0});
    std::vector<bool> seen(total, false);
    std::size_t filled = 0;
    std::size_t line_no = 1; // header was line 1
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty())
            continue;
        const auto fields = split_fields(line);
        if (fields.size() != 4)
            throw parse_error(detail::msg("expected 4 fields at line %zu of '%s'", line_no,
                                          path.string().c_str()));
        const std::size_t m = parse_index_field(fields[0], line_no);
        const std::size_t k = parse_index_field(fields[1], line_no);
        const double re = parse_double_field(fields[2], line_no);
        const double im = parse_double_field(fields[3], line_no);
        if (m >= h.impulse_count || k >= h.bin_count)
            throw shape_error(detail::msg("bin index (%zu, %zu) at line %zu of '%s' is out of range",
                                          m, k, line_no, path.string().c_str()));
        const std::size_t idx = m * h.bin_count + k;
        if (seen[idx])
            throw shape_error(detail::msg("duplicate bin (%zu, %zu) at line %zu of '%s'", m, k,
                                          line_no, path.string().c_str()));
        seen[idx] = true;
        ++filled;
        s.bins[idx] = {quantize_f32(re), quantize_f32(im)};
    }
    if (filled != total)
        throw shape_error(detail::msg("payload of '%s' holds %zu bins, expected %zu", path.string().c_str(),
                                      filled, total));
    return s;
}

void write_dataset(const ImpulseSpectra& spectra, const std::filesystem::path& path,
                   PayloadEncoding encoding, const DatasetMeta& meta) {
    const std::size_t n = spectra.bin_count;
    if (n < 2 || spectra.bins.size() % n != 0 || spectra.bins.empty())
        throw shape_error("spectra shape is inconsistent");
    const std::size_t m_count = spectra.bins.size() / n;

    ordered_json h;
    h["format_version"] = dataset_format_version;
    h["angle_deg"] = spectra.angle_deg;
    h["impulse_count"] = m_count;
    h["bin_count"] = n;
    h["sample_rate_hz"] = spectra.sample_rate_hz;
    h["payload_encoding"] = encoding_name(encoding);
    if (meta.carrier_hz)
        h["carrier_hz"] = *meta.carrier_hz;
    if (meta.signal_band_hz)
        h["signal_band_hz"] = *meta.signal_band_hz;
    if (!meta.notes.empty())
        h["notes"] = meta.notes;

    auto out = open_output(path);
    out << h.dump() << '\n';

    if (encoding == PayloadEncoding::binary_f32le) {
        std::string payload;
        payload.reserve(spectra.bins.size() * 8);
        for (const auto& z : spectra.bins) {
            append_f32le(payload, z.real());
            append_f32le(payload, z.imag());
        }
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    } else {
        // payload precision is float32 regardless of encoding; quantize first
        // so the 9-significant-digit text round-trips bit-exactly
        char buf[96];
        for (std::size_t m = 0; m < m_count; ++m) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto& z = spectra.bins[m * n + k];
                const int len = std::snprintf(buf, sizeof buf, "%zu,%zu,%.9g,%.9g\n", m, k,
                                              quantize_f32(z.real()), quantize_f32(z.imag()));
                out.write(buf, len);
            }
        }
    }
    out.flush();
    if (!out)
        throw error(detail::msg("failed writing '%s'", path.string().c_str()));
}

ImpulseSpectra to_spectra(const std::vector<std::vector<std::complex<double>>>& frames,
                          double sample_rate_hz, double angle_deg) {
    if (frames.empty())
        throw empty_input_error("no time-domain frames");
    if (!std::isfinite(sample_rate_hz) || sample_rate_hz <= 0.0)
        throw std::invalid_argument("sample rate must be positive and finite");
    const std::size_t n = frames.front().size();
    if (n < 2)
        throw shape_error("frames must hold at least 2 samples");
    for (std::size_t m = 0; m < frames.size(); ++m) {
        if (frames[m].size() != n)
            throw shape_error(detail::msg("ragged input: frame %zu has %zu samples, expected %zu", m,
                                          frames[m].size(), n));
    }

    std::vector<std::complex<double>> twiddles;
    if (is_pow2(n)) {
        twiddles.resize(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            const double phase = -2.0 * pi * static_cast<double>(j) / static_cast<double>(n);
            twiddles[j] = {std::cos(phase), std::sin(phase)};
        }
    }

    ImpulseSpectra s;
    s.angle_deg = angle_deg;
    s.bin_count = n;
    s.sample_rate_hz = sample_rate_hz;
    s.bins.resize(frames.size() * n);

    std::vector<std::complex<double>> spectrum;
    for (std::size_t m = 0; m < frames.size(); ++m) {
        if (is_pow2(n)) {
            spectrum = frames[m];
            fft_pow2(spectrum, twiddles);
        } else {
            dft_naive(frames[m], spectrum);
        }
        // natural DFT order -> centered bins (index 0 = most negative frequency)
        auto impulse = s.impulse(m);
        for (std::size_t k = 0; k < n; ++k)
            impulse[(k + n / 2) % n] = spectrum[k];
    }
    return s;
}

// -------------------------------------------------------------- model tables

ModelTable parse_model_table(std::istream& in) {
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw parse_error("malformed model table JSON");
    ModelTable t;
    try {
        t.carrier_hz = j.at("carrier_ghz").get<double>() * 1e9;
        const auto& range = j.at("valid_angle_deg");
        if (!range.is_array() || range.size() != 2)
            throw parse_error("valid_angle_deg must be [min, max]");
        t.angle_min_deg = range[0].get<double>();
        t.angle_max_deg = range[1].get<double>();
        for (const auto& row : j.at("entries")) {
            TableEntry e;
            e.bandwidth_hz = row.at("bandwidth_mhz").get<double>() * 1e6;
            e.coeffs.c = row.at("c").get<double>();
            e.coeffs.d = row.at("d").get<double>();
            e.coeffs.e = row.at("e").get<double>();
            e.coeffs.f = row.at("f").get<double>();
            t.entries.push_back(e);
        }
    } catch (const json::exception& e) {
        throw parse_error(detail::msg("malformed model table: %s", e.what()));
    }
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(detail::msg("invalid model table: %s", e.what()));
    }
    return t;
}

ModelTable read_model_table(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_model_table(in);
}

std::string model_table_to_json(const ModelTable& table) {
    table.validate();
    ordered_json j;
    j["carrier_ghz"] = table.carrier_hz / 1e9;
    j["valid_angle_deg"] = {table.angle_min_deg, table.angle_max_deg};
    j["entries"] = ordered_json::array();
    for (const auto& e : table.entries) {
        ordered_json row;
        row["bandwidth_mhz"] = e.bandwidth_hz / 1e6;
        row["c"] = e.coeffs.c;
        row["d"] = e.coeffs.d;
        row["e"] = e.coeffs.e;
        row["f"] = e.coeffs.f;
        j["entries"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

void write_model_table(const ModelTable& table, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << model_table_to_json(table);
    out.flush();
    if (!out)
        throw error(detail::msg("failed writing '%s'", path.string().c_str()));
}

// --------------------------------------------------------------------- curves

std::vector<CurveRow> export_curve(const ModelTable& table, std::span<const double> bandwidths_hz,
                                   std::span<const double> angles_deg, PredictMode mode) {
    std::vector<double> angles(angles_deg.begin(), angles_deg.end());
    std::sort(angles.begin(), angles.end());
    std::vector<CurveRow> rows;
    rows.reserve(bandwidths_hz.size() * angles.size());
    for (double b : bandwidths_hz) {
        for (double a : angles)
            rows.push_back({a, b / 1e6, predict(a, b, table, mode).pl_db});
    }
    return rows;
}

void write_curve_csv(std::span<const CurveRow> rows, std::ostream& out) {
    out << "alpha_deg,bandwidth_mhz,pl_db\n";
    char buf[96];
    for (const auto& r : rows) {
        const int len = std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.4f\n", r.alpha_deg,
                                      r.bandwidth_mhz, r.pl_db);
        out.write(buf, len);
    }
}

// ---------------------------------------------------------- points / results

std::vector<BandwidthPoints> read_points_csv(std::istream& in, double default_bandwidth_hz) {
    std::map<double, std::vector<AnglePlPoint>> groups;
    std::string line;
    std::size_t line_no = 0;
    // column layout; -1 = not present
    int alpha_col = -1, pl_col = -1, bw_col = -1;
    bool layout_known = false;

    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line.front() == '#')
            continue;
        auto fields = split_fields(line);
        if (!layout_known) {
            double probe;
            if (!try_parse_double(fields[0], probe)) {
                // header: map columns by name
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    std::string name = fields[i];
                    std::transform(name.begin(), name.end(), name.begin(),
                                   [](unsigned char c) { return std::tolower(c); });
                    if (name == "alpha_deg" || name == "angle_deg")
                        alpha_col = static_cast<int>(i);
                    else if (name == "pl_db")
                        pl_col = static_cast<int>(i);
                    else if (name == "bandwidth_mhz")
                        bw_col = static_cast<int>(i);
                }
                if (alpha_col < 0 || pl_col < 0)
                    throw parse_error(detail::msg(
                        "header at line %zu lacks alpha_deg/pl_db columns", line_no));
                layout_known = true;
                continue;
            }
            if (fields.size() == 2) {
                alpha_col = 0;
                pl_col = 1;
            } else if (fields.size() == 3) {
                bw_col = 0;
                alpha_col = 1;
                pl_col = 2;
            } else {
                throw parse_error(detail::msg(
                    "expected 2 or 3 columns at line %zu, got %zu", line_no, fields.size()));
            }
            layout_known = true;
        }
        const std::size_t needed = static_cast<std::size_t>(std::max({alpha_col, pl_col, bw_col}))
                                   + 1;
        if (fields.size() < needed)
            throw parse_error(detail::msg("too few fields at line %zu", line_no));
        AnglePlPoint p;
        p.alpha_deg = parse_double_field(fields[static_cast<std::size_t>(alpha_col)], line_no);
        p.pl_db = parse_double_field(fields[static_cast<std::size_t>(pl_col)], line_no);
        const double bw_hz = bw_col >= 0
                                 ? parse_double_field(fields[static_cast<std::size_t>(bw_col)],
                                                      line_no)
                                       * 1e6
                                 : default_bandwidth_hz;
        groups[bw_hz].push_back(p);
    }
    if (groups.empty())
        throw empty_input_error("points file holds no data rows");

    std::vector<BandwidthPoints> out;
    out.reserve(groups.size());
    for (auto& [bw, points] : groups)
        out.push_back({bw, std::move(points)});
    return out;
}

void write_results_csv(std::span<const AngleResult> results, std::ostream& out) {
    out << "angle_deg,mean_power_db,correction_db,pl_db,bandwidth_mhz\n";
    char buf[160];
    for (const auto& r : results) {
        const int len = std::snprintf(buf, sizeof buf, "%.10g,%.6f,%.6f,%.6f,%.10g\n", r.angle_deg,
                                      r.mean_power_db, r.correction_db, r.pl_db, r.bandwidth_mhz);
        out.write(buf, len);
    }
}

std::vector<double> read_samples_csv(std::istream& in) {
    std::vector<double> samples;
    std::string line;
    std::size_t line_no = 0;
    bool first_significant = true;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line.front() == '#')
            continue;
        const auto fields = split_fields(line);
        double value;
        if (!try_parse_double(fields[0], value)) {
            if (first_significant) {
                first_significant = false; // header line
                continue;
            }
            throw parse_error(detail::msg("non-numeric field '%s' at line %zu", fields[0].c_str(), line_no));
        }
        first_significant = false;
        if (!std::isfinite(value))
            throw parse_error(detail::msg("non-finite sample at line %zu", line_no));
        samples.push_back(value);
    }
    return samples;
}

void write_ecdf_csv(const Ecdf& e, std::ostream& out) {
    out << "value_db,probability\n";
    char buf[80];
    for (std::size_t i = 0; i < e.value_db.size(); ++i) {
        const int len = std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", e.value_db[i],
                                      e.probability[i]);
        out.write(buf, len);
    }
}

// --------------------------------------------- calibration and geometry

CalibrationConstants read_calibration(const std::filesystem::path& path) {
    auto in = open_input(path);
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw parse_error(detail::msg("malformed calibration JSON in '%s'", path.string().c_str()));
    CalibrationConstants cal;
    try {
        cal.attenuator_db = j.value("attenuator_db", cal.attenuator_db);
        cal.tx_antenna_gain_dbi = j.value("tx_antenna_gain_dbi", cal.tx_antenna_gain_dbi);
        cal.rx_antenna_gain_dbi = j.value("rx_antenna_gain_dbi", cal.rx_antenna_gain_dbi);
    } catch (const json::exception& e) {
        throw parse_error(detail::msg("malformed calibration file: %s", e.what()));
    }
    if (!std::isfinite(cal.attenuator_db) || !std::isfinite(cal.tx_antenna_gain_dbi)
        || !std::isfinite(cal.rx_antenna_gain_dbi))
        throw parse_error(detail::msg("calibration values in '%s' must be finite", path.string().c_str()));
    return cal;
}

LinkGeometry read_geometry(const std::filesystem::path& path) {
    auto in = open_input(path);
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw parse_error(detail::msg("malformed geometry JSON in '%s'", path.string().c_str()));
    LinkGeometry g;
    g.distance_m.clear();
    try {
        g.carrier_hz = j.value("carrier_ghz", g.carrier_hz / 1e9) * 1e9;
        g.reference_angle_deg = j.value("reference_angle_deg", g.reference_angle_deg);
        for (const auto& row : j.at("distances")) {
            const double angle = row.at("angle_deg").get<double>();
            const double distance = row.at("distance_m").get<double>();
            if (!std::isfinite(distance) || distance <= 0.0)
                throw parse_error(detail::msg("distance for angle %g deg in '%s' must be positive",
                                              angle, path.string().c_str()));
            if (!g.distance_m.emplace(angle, distance).second)
                throw parse_error(detail::msg("duplicate geometry angle %g deg in '%s'", angle,
                                              path.string().c_str()));
        }
    } catch (const json::exception& e) {
        throw parse_error(detail::msg("malformed geometry file: %s", e.what()));
    }
    return g;
}

// ------------------------------------------------- synthetic ground truth

void write_ground_truth(const GroundTruthRecord& record, const std::filesystem::path& path) {
    ordered_json j;
    j["seed"] = record.seed;
    if (std::isfinite(record.snr_db))
        j["snr_db"] = record.snr_db;
    else
        j["snr_db"] = "inf";
    j["impulse_count"] = record.impulse_count;
    j["bin_count"] = record.bin_count;
    j["sample_rate_hz"] = record.sample_rate_hz;
    j["signal_band_hz"] = record.signal_band_hz;
    if (record.bandwidth_hz)
        j["bandwidth_mhz"] = *record.bandwidth_hz / 1e6;
    j["angles"] = ordered_json::array();
    for (const auto& p : record.pl_db) {
        ordered_json row;
        row["angle_deg"] = p.alpha_deg;
        row["pl_db"] = p.pl_db;
        j["angles"].push_back(std::move(row));
    }
    auto out = open_output(path);
    out << j.dump(2) << '\n';
    out.flush();
    if (!out)
        throw error(detail::msg("failed writing '%s'", path.string().c_str()));
}

GroundTruthRecord read_ground_truth(const std::filesystem::path& path) {
    auto in = open_input(path);
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw parse_error(detail::msg("malformed ground-truth JSON in '%s'", path.string().c_str()));
    GroundTruthRecord r;
    try {
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.at("snr_db").is_string())
            r.snr_db = std::numeric_limits<double>::infinity();
        else
            r.snr_db = j.at("snr_db").get<double>();
        r.impulse_count = j.at("impulse_count").get<std::size_t>();
        r.bin_count = j.at("bin_count").get<std::size_t>();
        r.sample_rate_hz = j.at("sample_rate_hz").get<double>();
        r.signal_band_hz = j.at("signal_band_hz").get<double>();
        if (j.contains("bandwidth_mhz"))
            r.bandwidth_hz = j.at("bandwidth_mhz").get<double>() * 1e6;
        for (const auto& row : j.at("angles"))
            r.pl_db.push_back({row.at("angle_deg").get<double>(), row.at("pl_db").get<double>()});
    } catch (const json::exception& e) {
        throw parse_error(detail::msg("malformed ground-truth file: %s", e.what()));
    }
    return r;
}

} // namespace treescatter
