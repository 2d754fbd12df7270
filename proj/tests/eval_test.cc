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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cewlab/error.h"
#include "cewlab/pipeline.h"
#include "test_util.h"

using namespace cewlab;
namespace tu = cewlab::testing;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const auto &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no cewlab::Error thrown";
    return ErrorCode::InvalidArgument;
}

std::vector<std::pair<double, double>> operating_points(const RocCurve &c) {
    std::vector<std::pair<double, double>> out;
    for (const auto &p : c.points) out.emplace_back(p.fpr, p.tpr);
    return out;
}

// Haar-random maximally entangled state (I (x) U)|Phi+>.
std::vector<cplx> random_max_entangled(Rng &rng) {
    const CMat u = haar_unitary(2, rng);
    std::vector<cplx> psi(4);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) psi[a * 2 + b] = u(b, a) / std::sqrt(2.0);
    return psi;
}

double expectation(const CMat &rho, const std::vector<cplx> &psi) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) s += std::conj(psi[i]) * rho(i, j) * psi[j];
    return s.real();
}

DensityMatrix local_rotate(const DensityMatrix &rho, const CMat &ua, const CMat &ub) {
    const CMat u = kron(ua, ub);
    CMat m = u * rho.mat() * u.adjoint();
    return DensityMatrix(rho.kind(), (m + m.adjoint()) * cplx(0.5));
}

}  // namespace

TEST(Roc, PerfectSeparation) {
    const std::vector<double> s{0.9, 0.8, 0.2, 0.1};
    const RocCurve c = roc_curve(s, {true, true, false, false});
    EXPECT_EQ(c.auc, 1.0);
    EXPECT_EQ(tpr_at_fpr(c, 0.0), 1.0);
}

TEST(Roc, AllTiedScores) {
    const std::vector<double> s(6, 0.3);
    const RocCurve c = roc_curve(s, {true, false, true, false, true, false});
    EXPECT_EQ(operating_points(c), (std::vector<std::pair<double, double>>{{0, 0}, {1, 1}}));
    EXPECT_EQ(c.auc, 0.5);
    EXPECT_TRUE(std::isinf(c.points.front().threshold));
    EXPECT_EQ(c.points.back().threshold, 0.3);
}

TEST(Roc, WorkedExample) {
    const std::vector<double> s{0.9, 0.4, 0.35, 0.1};
    const RocCurve c = roc_curve(s, {true, false, true, false});
    EXPECT_DOUBLE_EQ(c.auc, 0.75);
    EXPECT_EQ(operating_points(c),
              (std::vector<std::pair<double, double>>{{0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1}, {1, 1}}));
    EXPECT_EQ(tpr_at_fpr(c, 1.0), 1.0);
    EXPECT_EQ(tpr_at_fpr(c, 0.0), 0.5);
    EXPECT_EQ(tpr_at_fpr(c, 0.5), 1.0);
    EXPECT_EQ(tpr_at_fpr(c, 0.49), 0.5);
}

TEST(Roc, ReversedScoresGiveZeroTpr) {
    const std::vector<double> s{0.1, 0.2, 0.8, 0.9};
    const RocCurve c = roc_curve(s, {true, true, false, false});
    EXPECT_EQ(c.auc, 0.0);
    EXPECT_EQ(tpr_at_fpr(c, 0.0), 0.0);
}

TEST(Roc, MatchesMannWhitney) {
    Rng rng(4, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 20 + rng.below(200);
        std::vector<double> s(n);
        std::vector<bool> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform() < 0.4;
            // Coarse grid so ties happen.
            s[i] = std::floor((rng.uniform() + (y[i] ? 0.3 : 0.0)) * 10.0) / 10.0;
        }
        y[0] = true;
        y[1] = false;
        const RocCurve c = roc_curve(s, y);
        EXPECT_NEAR(c.auc, tu::mann_whitney_auc(s, y), 1e-12);

        for (std::size_t k = 1; k < c.points.size(); ++k) {
            EXPECT_GE(c.points[k].fpr, c.points[k - 1].fpr);
            EXPECT_GE(c.points[k].tpr, c.points[k - 1].tpr);
            EXPECT_LT(c.points[k].threshold, c.points[k - 1].threshold);
        }
        EXPECT_EQ(operating_points(c).front(), std::make_pair(0.0, 0.0));
        EXPECT_EQ(operating_points(c).back(), std::make_pair(1.0, 1.0));
        EXPECT_GE(c.auc, 0.0);
        EXPECT_LE(c.auc, 1.0);

        // Monotone transforms leave the curve alone.
        std::vector<double> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = std::exp(3.0 * s[i]) - 7.0;
        EXPECT_EQ(operating_points(roc_curve(t, y)), operating_points(c));

        // Flipping scores reflects the area.
        std::vector<double> neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -s[i];
        EXPECT_NEAR(roc_curve(neg, y).auc, 1.0 - c.auc, 1e-12);

        // tpr_at_fpr is non-decreasing in the cap.
        double last = -1.0;
        for (double cap = 0.0; cap <= 1.0; cap += 0.05) {
            const double v = tpr_at_fpr(c, cap);
            EXPECT_GE(v, last);
            last = v;
        }
    }
}

TEST(Roc, Errors) {
    const std::vector<double> s{0.1, 0.2, 0.3};
    EXPECT_EQ(code_of([&] { roc_curve(s, {true, true, true}); }), ErrorCode::DegenerateLabels);
    EXPECT_EQ(code_of([&] { roc_curve(s, {false, false, false}); }), ErrorCode::DegenerateLabels);
    EXPECT_EQ(code_of([&] { roc_curve(std::span<const double>(), {}); }), ErrorCode::EmptyDataset);
    EXPECT_EQ(code_of([&] { roc_curve(s, {true, false}); }), ErrorCode::EmptyDataset);
}

TEST(Roc, FileFormat) {
    const std::vector<double> s{0.9, 0.4, 0.35, 0.1};
    const RocCurve c = roc_curve(s, {true, false, true, false});
    std::ostringstream out;
    write_roc(c, out);
    EXPECT_EQ(out.str(),
              "fpr,tpr,threshold\n"
              "0,0,inf\n"
              "0,0.5,0.9\n"
              "0.5,0.5,0.4\n"
              "0.5,1,0.35\n"
              "1,1,0.1\n"
              "# auc=0.75\n");
}

TEST(Roc, SvgIsWritten) {
    const std::vector<double> s{0.9, 0.4, 0.35, 0.1};
    const RocCurve c = roc_curve(s, {true, false, true, false});
    const fs::path p = fs::temp_directory_path() / "cewlab_eval_test_roc.svg";
    write_roc_svg(c, p, "B3 <two-qubit>");
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str().rfind("<svg", 0), 0u);
    EXPECT_NE(ss.str().find("&lt;two-qubit&gt;"), std::string::npos);
    EXPECT_NE(ss.str().find("</svg>"), std::string::npos);
    fs::remove(p);
}

TEST(Chsh, KnownStates) {
    const ChshResult singlet = chsh_violation(DensityMatrix(SystemKind::TwoQubit, tu::singlet_matrix()));
    EXPECT_NEAR(singlet.m_value, 2.0, 1e-12);
    EXPECT_TRUE(singlet.violated);

    const std::vector<cplx> zero{1.0, 0.0};
    const ChshResult product = chsh_violation(tu::product_state(SystemKind::TwoQubit, zero, zero));
    EXPECT_NEAR(product.m_value, 1.0, 1e-12);
    EXPECT_FALSE(product.violated);

    EXPECT_NEAR(chsh_violation(DensityMatrix(SystemKind::TwoQubit, CMat::identity(4) * cplx(0.25))).m_value, 0.0,
                1e-15);
}

TEST(Chsh, WernerThreshold) {
    for (double p = 0.0; p <= 1.0; p += 0.05) {
        const ChshResult r = chsh_violation(tu::werner(p));
        EXPECT_NEAR(r.m_value, 2.0 * p * p, 1e-12) << p;
        EXPECT_EQ(r.violated, p > 1.0 / std::sqrt(2.0) + 1e-6) << p;
    }
}

TEST(Chsh, RejectsQubitQutrit) {
    Rng rng(1, 0);
    const DensityMatrix rho = sample_density(SystemKind::QubitQutrit, rng);
    EXPECT_EQ(code_of([&] { chsh_violation(rho); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { fef(rho); }), ErrorCode::DimensionMismatch);
}

TEST(Fef, KnownStates) {
    EXPECT_NEAR(fef(DensityMatrix(SystemKind::TwoQubit, tu::singlet_matrix())), 1.0, 1e-12);
    EXPECT_NEAR(fef(DensityMatrix(SystemKind::TwoQubit, CMat::identity(4) * cplx(0.25))), 0.25, 1e-12);
    const std::vector<cplx> zero{1.0, 0.0};
    EXPECT_NEAR(fef(tu::product_state(SystemKind::TwoQubit, zero, zero)), 0.5, 1e-12);
    for (double p = 0.0; p <= 1.0; p += 0.1) EXPECT_NEAR(fef(tu::werner(p)), (1.0 + 3.0 * p) / 4.0, 1e-12) << p;
}

TEST(Fef, MatchesSearchOverMaximallyEntangledStates) {
    Rng rng(8, 0);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = sample_density(SystemKind::TwoQubit, rng);
        const double f = fef(rho);
        double best = 0.0;
        for (int k = 0; k < 20000; ++k) best = std::max(best, expectation(rho.mat(), random_max_entangled(rng)));
        EXPECT_LE(best, f + 1e-12);
        EXPECT_GE(best, f - 0.01);
    }
}

TEST(Fef, FloorAndLocalUnitaryInvariance) {
    Rng rng(9, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho = sample_density(SystemKind::TwoQubit, rng);
        const double f = fef(rho);
        EXPECT_GE(f, 0.25 - 1e-12);
        EXPECT_LE(f, 1.0 + 1e-12);
        const DensityMatrix r2 = local_rotate(rho, haar_unitary(2, rng), haar_unitary(2, rng));
        EXPECT_NEAR(fef(r2), f, 1e-10);
        EXPECT_NEAR(chsh_violation(r2).m_value, chsh_violation(rho).m_value, 1e-10);
        // Both analytic criteria only fire on entangled states.
        if (!is_entangled(rho)) {
            EXPECT_FALSE(witness_detects(rho, Witness::Chsh));
            EXPECT_FALSE(witness_detects(rho, Witness::Fef));
        }
    }
}

TEST(Witnesses, Names) {
    for (Witness w : {Witness::NegativityOracle, Witness::Chsh, Witness::Fef})
        EXPECT_EQ(parse_witness(witness_name(w)), w);
    EXPECT_EQ(code_of([] { parse_witness("ppt"); }), ErrorCode::InvalidArgument);
    EXPECT_TRUE(witness_applicable(Witness::NegativityOracle, SystemKind::QubitQutrit));
    EXPECT_FALSE(witness_applicable(Witness::Fef, SystemKind::QubitQutrit));
    EXPECT_TRUE(witness_applicable(Witness::Chsh, SystemKind::TwoQubit));
}

TEST(Baselines, Ordering) {
    const Dataset d = generate_balanced(SystemKind::TwoQubit, find_preset(SystemKind::TwoQubit, "B1"), 2000, 13);
    const BaselineResult oracle = baseline_sensitivity(d, Witness::NegativityOracle);
    const BaselineResult chsh = baseline_sensitivity(d, Witness::Chsh);
    const BaselineResult f = baseline_sensitivity(d, Witness::Fef);
    EXPECT_EQ(oracle.positives, 1000u);
    EXPECT_EQ(oracle.negatives, 1000u);
    EXPECT_EQ(oracle.sensitivity(), 1.0);
    EXPECT_EQ(oracle.fpr(), 0.0);
    EXPECT_EQ(chsh.fpr(), 0.0);
    EXPECT_EQ(f.fpr(), 0.0);
    EXPECT_LT(chsh.sensitivity(), f.sensitivity());
    EXPECT_LT(f.sensitivity(), oracle.sensitivity());
    EXPECT_LE(chsh.true_positives, f.true_positives);

    const Dataset q = generate_balanced(SystemKind::QubitQutrit, find_preset(SystemKind::QubitQutrit, "B1"), 20, 1);
    EXPECT_EQ(code_of([&] { baseline_sensitivity(q, Witness::Chsh); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(baseline_sensitivity(q, Witness::NegativityOracle).sensitivity(), 1.0);
}

TEST(EvaluateModel, ClampsScores) {
    const Dataset d = generate_balanced(SystemKind::TwoQubit, find_preset(SystemKind::TwoQubit, "B3"), 40, 2);
    std::vector<DenseLayer> layers{DenseLayer(3, 2), DenseLayer(2, 1)};
    layers[0].w(0, 0) = 1.0;
    layers[1].w(0, 0) = 100.0;  // raw outputs far above 0.5
    layers[1].biases[0] = 1.0;
    const EvalSummary s = evaluate_model(Mlp(layers), d);
    // Every clamped score is 0.5, so the ROC collapses to the diagonal.
    EXPECT_EQ(s.roc.auc, 0.5);
    EXPECT_EQ(s.roc.points.size(), 2u);
    EXPECT_EQ(s.tpr_at_fpr_0, 0.0);
}

TEST(Sweep, SmallRunSharesSplits) {
    SweepConfig cfg;
    cfg.kind = SystemKind::TwoQubit;
    cfg.presets = {find_preset(SystemKind::TwoQubit, "B3"), find_preset(SystemKind::TwoQubit, "B10")};
    cfg.n_train = 800;
    cfg.n_validation = 200;
    cfg.n_test = 200;
    cfg.seed = 5;
    cfg.train.seed = 6;
    cfg.train.max_epochs = 20;
    const fs::path out = fs::temp_directory_path() / "cewlab_eval_test_sweep";
    fs::remove_all(out);
    cfg.out_dir = out;
    const SweepResult r = run_sweep(cfg);
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_EQ(r.entries[0].preset.name, "B3");
    for (const auto &e : r.entries) {
        EXPECT_GT(e.summary.roc.auc, 0.5);
        EXPECT_EQ(std::count_if(e.summary.roc.points.begin(), e.summary.roc.points.end(),
                                [](const RocPoint &p) { return p.fpr == 1.0 && p.tpr == 1.0; }),
                  1);
    }
    for (const char *f : {"train.csv", "validation.csv", "test.csv", "summary.csv", "roc_B3.csv", "roc_B10.csv",
                          "model_B3.mlp.json", "model_B10.mlp.json"})
        EXPECT_TRUE(fs::exists(out / f)) << f;
    const Dataset test = load_dataset(out / "test.csv");
    EXPECT_EQ(test.count(), 200u);
    EXPECT_EQ(test.entangled_count(), 100u);
    // The saved model reproduces the reported metrics on the shared test split.
    const Mlp m = load_model(out / "model_B3.mlp.json");
    EXPECT_EQ(evaluate_model(m, project(test, cfg.presets[0])).roc.auc, r.entries[0].summary.roc.auc);
    fs::remove_all(out);

    cfg.presets.clear();
    EXPECT_EQ(code_of([&] { run_sweep(cfg); }), ErrorCode::InvalidArgument);
}
