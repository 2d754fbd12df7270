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

#include "cewlab/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cewlab/error.h"

namespace cewlab {
namespace {

// Analytic criteria are compared against their bounds with this margin so
// that states on the boundary (e.g. product states with M = 1) are not
// flagged through rounding.
constexpr double kCriterionMargin = 1e-12;

std::string shortest(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

void require_two_qubit(const DensityMatrix &rho, const char *what) {
    if (rho.kind() != SystemKind::TwoQubit)
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is defined for two-qubit states only");
}

}  // namespace

RocCurve roc_curve(std::span<const double> scores, const std::vector<bool> &labels) {
    if (scores.size() < 2 || scores.size() != labels.size())
        throw Error(ErrorCode::EmptyDataset, "roc_curve: need at least two scores with matching labels");
    const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
    const std::size_t negatives = labels.size() - positives;
    if (positives == 0 || negatives == 0)
        throw Error(ErrorCode::DegenerateLabels, "roc_curve: both classes must be present");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::size_t tp = 0;
    std::size_t fp = 0;
    const double p = static_cast<double>(positives);
    const double n = static_cast<double>(negatives);
    for (std::size_t k = 0; k < order.size();) {
        const double threshold = scores[order[k]];
        while (k < order.size() && scores[order[k]] == threshold) {
            if (labels[order[k]])
                ++tp;
            else
                ++fp;
            ++k;
        }
        curve.points.push_back({static_cast<double>(fp) / n, static_cast<double>(tp) / p, threshold});
    }

    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint &a = curve.points[i - 1];
        const RocPoint &b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    curve.auc = area;
    return curve;
}

double tpr_at_fpr(const RocCurve &curve, double fpr_cap) {
    double best = 0.0;
    for (const auto &pt : curve.points)
        if (pt.fpr <= fpr_cap) best = std::max(best, pt.tpr);
    return best;
}

void write_roc(const RocCurve &curve, std::ostream &out) {
    out << "fpr,tpr,threshold\n";
    for (const auto &pt : curve.points)
        out << shortest(pt.fpr) << ',' << shortest(pt.tpr) << ',' << shortest(pt.threshold) << '\n';
    out << "# auc=" << shortest(curve.auc) << '\n';
}

void write_roc(const RocCurve &curve, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    write_roc(curve, out);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_roc_svg(const RocCurve &curve, const std::filesystem::path &path, std::string_view title) {
    constexpr double size = 400.0;
    constexpr double pad = 40.0;
    std::ostringstream poly;
    poly.setf(std::ios::fixed);
    poly.precision(2);
    // Keep the file small: drop points closer than half a pixel.
    double last_x = -1.0;
    double last_y = -1.0;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const double x = pad + curve.points[i].fpr * size;
        const double y = pad + (1.0 - curve.points[i].tpr) * size;
        const bool endpoint = i == 0 || i + 1 == curve.points.size();
        if (!endpoint && std::abs(x - last_x) < 0.5 && std::abs(y - last_y) < 0.5) continue;
        poly << x << ',' << y << ' ';
        last_x = x;
        last_y = y;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    const double lo = pad;
    const double hi = pad + size;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << hi + pad << "\" height=\"" << hi + pad << "\">\n"
        << "<rect x=\"" << lo << "\" y=\"" << lo << "\" width=\"" << size << "\" height=\"" << size
        << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<line x1=\"" << lo << "\" y1=\"" << hi << "\" x2=\"" << hi << "\" y2=\"" << lo
        << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n"
        << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"" << poly.str() << "\"/>\n"
        << "<text x=\"" << lo << "\" y=\"" << lo - 12 << "\" font-size=\"14\">" << xml_escape(title)
        << " (AUC=" << shortest(curve.auc) << ")</text>\n"
        << "<text x=\"" << lo + size / 2 - 20 << "\" y=\"" << hi + 28 << "\" font-size=\"12\">FPR</text>\n"
        << "<text x=\"4\" y=\"" << lo + size / 2 << "\" font-size=\"12\">TPR</text>\n"
        << "</svg>\n";
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

ChshResult chsh_violation(const DensityMatrix &rho) {
    require_two_qubit(rho, "CHSH");
    double t[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = trace_of_product(rho.mat(), kron(pauli(i + 1), pauli(j + 1))).real();
    CMat ttt(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
            ttt(i, j) = s;
        }
    const std::vector<double> eig = hermitian_eigenvalues(ttt);
    const double m = eig[2] + eig[1];
    return {m > 1.0 + kCriterionMargin, m};
}

double fef(const DensityMatrix &rho) {
    require_two_qubit(rho, "FEF");
    using namespace std::complex_literals;
    const double h = 1.0 / std::sqrt(2.0);
    const cplx basis[4][4] = {
        {h, 0.0, 0.0, h},
        {1i * h, 0.0, 0.0, -1i * h},
        {0.0, 1i * h, 1i * h, 0.0},
        {0.0, h, -h, 0.0},
    };
    CMat re(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) s += std::conj(basis[i][a]) * rho.mat()(a, b) * basis[j][b];
            re(i, j) = s.real();
        }
    return hermitian_eigenvalues(re).back();
}

std::string_view witness_name(Witness w) {
    switch (w) {
        case Witness::NegativityOracle: return "negativity";
        case Witness::Chsh: return "chsh";
        case Witness::Fef: return "fef";
    }
    return "unknown";
}

Witness parse_witness(std::string_view name) {
    if (name == "negativity") return Witness::NegativityOracle;
    if (name == "chsh") return Witness::Chsh;
    if (name == "fef") return Witness::Fef;
    throw Error(ErrorCode::InvalidArgument, "unknown witness '" + std::string(name) + "'");
}

bool witness_applicable(Witness w, SystemKind kind) {
    return w == Witness::NegativityOracle || kind == SystemKind::TwoQubit;
}

bool witness_detects(const DensityMatrix &rho, Witness w) {
    switch (w) {
        case Witness::NegativityOracle: return is_entangled(rho);
        case Witness::Chsh: return chsh_violation(rho).violated;
        case Witness::Fef: return fef(rho) > 0.5 + kCriterionMargin;
    }
    return false;
}

BaselineResult baseline_sensitivity(const Dataset &d, Witness w) {
    if (!witness_applicable(w, d.kind))
        throw Error(ErrorCode::DimensionMismatch, std::string(witness_name(w)) + " is defined for two-qubit states only");
    if (d.records.empty()) throw Error(ErrorCode::EmptyDataset, "baseline_sensitivity: empty dataset");
    if (d.draw_indices.size() != d.records.size())
        throw Error(ErrorCode::InvalidArgument, "baseline_sensitivity: dataset has no draw indices to regenerate states");
    BaselineResult r{w};
    for (std::size_t i = 0; i < d.records.size(); ++i) {
        const bool detected = witness_detects(regenerate_state(d, i), w);
        if (d.records[i].entangled) {
            ++r.positives;
            r.true_positives += detected;
        } else {
            ++r.negatives;
            r.false_positives += detected;
        }
    }
    return r;
}

}  // namespace cewlab
