// Copyright 2026 The cewlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cewlab/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cewlab/error.h"

namespace cewlab {
namespace {

using json = nlohmann::json;

void require_even(std::size_t n) {
    if (n == 0 || n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "balanced dataset size must be positive and even");
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

Dataset empty_like(const Dataset &d) {
    Dataset out;
    out.kind = d.kind;
    out.preset = d.preset;
    out.seed = d.seed;
    out.balanced = d.balanced;
    return out;
}

[[noreturn]] void format_error(const std::filesystem::path &path, std::size_t line, const std::string &what) {
    throw Error(ErrorCode::FormatError, path.string() + ":" + std::to_string(line) + ": " + what);
}

std::string header_for(std::size_t width) {
    std::string h;
    for (std::size_t i = 1; i <= width; ++i) h += "f" + std::to_string(i) + ",";
    return h + "negativity,label";
}

}  // namespace

std::size_t Dataset::entangled_count() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const FeatureVector &r) { return r.entangled; }));
}

double Dataset::entangled_fraction() const {
    return records.empty() ? 0.0 : static_cast<double>(entangled_count()) / static_cast<double>(records.size());
}

Dataset generate_balanced(SystemKind kind, const MeasurementPreset &preset, std::size_t n, std::uint64_t seed,
                          GenerationStats *stats) {
    require_even(n);
    if (preset.kind != kind) throw Error(ErrorCode::InvalidPreset, "preset kind does not match system kind");
    validate_preset(preset);

    Dataset d;
    d.kind = kind;
    d.preset = preset;
    d.seed = seed;
    d.balanced = true;
    d.records.reserve(n);
    d.draw_indices.reserve(n);

    const std::size_t quota = n / 2;
    std::size_t filled[2] = {0, 0};
    GenerationStats local;
    for (std::uint64_t draw = 0; d.records.size() < n; ++draw) {
        ++local.draws;
        Rng rng(seed, draw);
        const DensityMatrix rho = sample_density(kind, rng);
        const bool entangled = negativity(rho) > kEntanglementThreshold;
        if (filled[entangled] >= quota) continue;
        try {
            d.records.push_back(features(rho, preset));
        } catch (const Error &e) {
            if (e.code() != ErrorCode::DegenerateConditioning) throw;
            ++local.degenerate;
            continue;
        }
        d.draw_indices.push_back(draw);
        ++filled[entangled];
    }
    if (stats) *stats = local;
    return d;
}

Dataset generate_unbalanced(SystemKind kind, const MeasurementPreset &preset, std::size_t n, std::uint64_t seed,
                            GenerationStats *stats) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "dataset size must be positive");
    if (preset.kind != kind) throw Error(ErrorCode::InvalidPreset, "preset kind does not match system kind");
    validate_preset(preset);

    Dataset d;
    d.kind = kind;
    d.preset = preset;
    d.seed = seed;
    d.balanced = false;
    GenerationStats local;
    for (std::uint64_t draw = 0; d.records.size() < n; ++draw) {
        ++local.draws;
        Rng rng(seed, draw);
        const DensityMatrix rho = sample_density(kind, rng);
        try {
            d.records.push_back(features(rho, preset));
        } catch (const Error &e) {
            if (e.code() != ErrorCode::DegenerateConditioning) throw;
            ++local.degenerate;
            continue;
        }
        d.draw_indices.push_back(draw);
    }
    if (stats) *stats = local;
    return d;
}

DensityMatrix regenerate_state(const Dataset &d, std::size_t record) {
    if (record >= d.draw_indices.size())
        throw Error(ErrorCode::InvalidArgument, "regenerate_state: record index out of range");
    Rng rng(d.seed, d.draw_indices[record]);
    return sample_density(d.kind, rng);
}

Splits split(const Dataset &d, SplitFractions f) {
    if (f.train < 0.0 || f.validation < 0.0 || f.test < 0.0 ||
        std::abs(f.train + f.validation + f.test - 1.0) > 1e-9)
        throw Error(ErrorCode::InvalidArgument, "split fractions must be non-negative and sum to 1");

    // Per-class cut points; records keep their original relative order.
    std::size_t class_total[2] = {0, 0};
    for (const auto &r : d.records) ++class_total[r.entangled];
    std::size_t cut_train[2], cut_val[2];
    for (int c = 0; c < 2; ++c) {
        const double total = static_cast<double>(class_total[c]);
        cut_train[c] = static_cast<std::size_t>(std::llround(total * f.train));
        cut_val[c] = std::min(class_total[c],
                              cut_train[c] + static_cast<std::size_t>(std::llround(total * f.validation)));
    }

    Splits s{empty_like(d), empty_like(d), empty_like(d)};
    std::size_t seen[2] = {0, 0};
    for (std::size_t i = 0; i < d.records.size(); ++i) {
        const int c = d.records[i].entangled;
        const std::size_t pos = seen[c]++;
        Dataset &target = pos < cut_train[c] ? s.train : (pos < cut_val[c] ? s.validation : s.test);
        target.records.push_back(d.records[i]);
        if (i < d.draw_indices.size()) target.draw_indices.push_back(d.draw_indices[i]);
    }
    if (s.train.records.empty() || s.validation.records.empty() || s.test.records.empty())
        throw Error(ErrorCode::EmptyDataset, "split would produce an empty part");
    return s;
}

Dataset project(const Dataset &d, const MeasurementPreset &preset) {
    if (preset.kind != d.kind) throw Error(ErrorCode::InvalidPreset, "project: preset kind mismatch");
    std::vector<std::size_t> columns;
    for (auto [x, y] : preset.pairs) {
        auto it = std::find_if(d.preset.pairs.begin(), d.preset.pairs.end(), [x = x, y = y](const EffectPair &p) {
            return (p.first == x && p.second == y) || (p.first == y && p.second == x);
        });
        if (it == d.preset.pairs.end())
            throw Error(ErrorCode::InvalidPreset, "project: pair (" + std::to_string(x) + "," + std::to_string(y) +
                                                      ") is not measured in preset '" + d.preset.name + "'");
        columns.push_back(static_cast<std::size_t>(it - d.preset.pairs.begin()));
    }
    Dataset out = empty_like(d);
    out.preset = preset;
    out.draw_indices = d.draw_indices;
    out.records.reserve(d.records.size());
    for (const auto &r : d.records) {
        FeatureVector fv;
        fv.values.reserve(columns.size());
        for (auto c : columns) fv.values.push_back(r.values[c]);
        fv.negativity = r.negativity;
        fv.entangled = r.entangled;
        out.records.push_back(std::move(fv));
    }
    return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path &path) {
    std::filesystem::path meta = path;
    meta += ".meta";
    return meta;
}

void save_dataset(const Dataset &d, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << header_for(d.preset.size()) << '\n';
    std::string line;
    for (const auto &r : d.records) {
        line.clear();
        for (double v : r.values) {
            line += format_double(v);
            line += ',';
        }
        line += format_double(r.negativity);
        line += r.entangled ? ",1\n" : ",0\n";
        out << line;
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());

    json pairs = json::array();
    for (auto [x, y] : d.preset.pairs) pairs.push_back({x, y});
    json meta = {
        {"format", "cewlab-dataset"},
        {"version", 1},
        {"kind", std::string(kind_name(d.kind))},
        {"preset", {{"name", d.preset.name}, {"pairs", pairs}}},
        {"seed", d.seed},
        {"balanced", d.balanced},
        {"count", d.count()},
        {"entangled", d.entangled_count()},
        {"prevalence_entangled", d.entangled_fraction()},
        {"draw_indices", d.draw_indices},
    };
    std::ofstream mout(sidecar_path(path), std::ios::binary);
    if (!mout) throw Error(ErrorCode::IoError, "cannot open " + sidecar_path(path).string() + " for writing");
    mout << meta.dump(1) << '\n';
    if (!mout) throw Error(ErrorCode::IoError, "write failed for " + sidecar_path(path).string());
}

Dataset load_dataset(const std::filesystem::path &path) {
    const auto meta_path = sidecar_path(path);
    std::ifstream min(meta_path, std::ios::binary);
    if (!min) throw Error(ErrorCode::IoError, "cannot open " + meta_path.string());

    Dataset d;
    std::size_t declared_count = 0;
    try {
        const json meta = json::parse(min);
        if (meta.at("format") != "cewlab-dataset") format_error(meta_path, 1, "not a cewlab dataset sidecar");
        d.kind = parse_kind(meta.at("kind").get<std::string>());
        d.preset.kind = d.kind;
        d.preset.name = meta.at("preset").at("name").get<std::string>();
        for (const auto &p : meta.at("preset").at("pairs")) d.preset.pairs.emplace_back(p.at(0), p.at(1));
        d.seed = meta.at("seed").get<std::uint64_t>();
        d.balanced = meta.at("balanced").get<bool>();
        declared_count = meta.at("count").get<std::size_t>();
        d.draw_indices = meta.at("draw_indices").get<std::vector<std::uint64_t>>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::FormatError, meta_path.string() + ": " + e.what());
    } catch (const Error &e) {
        if (e.code() == ErrorCode::FormatError) throw;
        throw Error(ErrorCode::FormatError, meta_path.string() + ": " + e.what());
    }
    try {
        validate_preset(d.preset);
    } catch (const Error &e) {
        throw Error(ErrorCode::FormatError, meta_path.string() + ": " + e.what());
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    const std::size_t width = d.preset.size();
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) format_error(path, line_no, "missing header");
    if (line != header_for(width)) format_error(path, line_no, "header does not match " + std::to_string(width) + " features");

    std::vector<double> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) format_error(path, line_no, "empty line");
        fields.clear();
        const char *p = line.data();
        const char *end = line.data() + line.size();
        while (true) {
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc() || !std::isfinite(v)) format_error(path, line_no, "malformed number");
            fields.push_back(v);
            if (next == end) break;
            if (*next != ',') format_error(path, line_no, "expected ','");
            p = next + 1;
        }
        if (fields.size() != width + 2)
            format_error(path, line_no, "expected " + std::to_string(width + 2) + " fields, found " +
                                            std::to_string(fields.size()));
        const double label = fields.back();
        if (label != 0.0 && label != 1.0) format_error(path, line_no, "label must be 0 or 1");
        FeatureVector fv;
        fv.values.assign(fields.begin(), fields.begin() + static_cast<std::ptrdiff_t>(width));
        fv.negativity = fields[width];
        fv.entangled = label == 1.0;
        d.records.push_back(std::move(fv));
    }
    if (d.records.size() != declared_count)
        format_error(meta_path, 1, "sidecar declares " + std::to_string(declared_count) + " records, file has " +
                                       std::to_string(d.records.size()));
    if (!d.draw_indices.empty() && d.draw_indices.size() != d.records.size())
        format_error(meta_path, 1, "draw_indices length does not match record count");
    return d;
}

}  // namespace cewlab
