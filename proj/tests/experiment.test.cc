// Copyright 2026 The walkqed Authors
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

#include "walkqed/experiment.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracle.h"

using namespace walkqed;

namespace {

std::vector<double> grid(std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; i++) {
        out[i] = kPi * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

std::array<double, 4> as4(std::initializer_list<double> v) {
    std::array<double, 4> a{};
    std::copy(v.begin(), v.end(), a.begin());
    return a;
}

}  // namespace

TEST(experiment, corrected_logical_forms) {
    ASSERT_EQ(corrected_logical(as4({1, 0, 0, 0})), 1.0);
    ASSERT_EQ(corrected_logical(as4({0, 0, 0, 1})), 1.0);
    ASSERT_EQ(corrected_logical(as4({0.5, 0, 0, 0.5})), 1.0);
    ASSERT_EQ(corrected_logical(as4({0.5, 0, 0, 0.5}), CorrectedObservableForm::Literal), 0.0);
    ASSERT_EQ(corrected_logical(as4({0, 1, 0, 0})), -1.0);
}

TEST(experiment, noiseless_sweep_matches_oracle) {
    auto eps = grid(21);
    for (auto scheme : {Scheme::Static, Scheme::Walking}) {
        auto records = run_error_sweep(scheme, eps);
        ASSERT_EQ(records.size(), 21u);
        for (const auto &r : records) {
            ASSERT_NEAR(r.anc_expectation, std::cos(r.epsilon), 1e-9);
            ASSERT_NEAR(r.raw_logical, std::cos(r.epsilon), 1e-9);
            ASSERT_NEAR(r.corrected_logical, 1.0, 1e-9);
            double total = 0;
            for (double p : r.joint_probs) {
                ASSERT_GE(p, 0.0);
                total += p;
            }
            ASSERT_NEAR(total, 1.0, 1e-9);
        }
        ASSERT_NEAR(records[0].joint_probs[0], 1.0, 1e-12);
    }
}

TEST(experiment, scheme_equivalence) {
    auto eps = grid(21);
    auto s = run_error_sweep(Scheme::Static, eps);
    auto w = run_error_sweep(Scheme::Walking, eps);
    for (std::size_t i = 0; i < eps.size(); i++) {
        for (int k = 0; k < 4; k++) {
            ASSERT_NEAR(s[i].joint_probs[k], w[i].joint_probs[k], 1e-10);
        }
    }
}

TEST(experiment, sweep_validation) {
    ASSERT_THROW(run_error_sweep(Scheme::Static, std::vector<double>{}), std::invalid_argument);
    RunOptions o;
    o.shots = 0;
    ASSERT_THROW(run_error_sweep(Scheme::Static, grid(3), o), std::invalid_argument);
}

TEST(experiment, shot_sampling) {
    std::vector<double> certain{1, 0};
    ASSERT_EQ(sample_shots(certain, 17, 3), certain);
    std::vector<double> half{0.5, 0.5};
    auto a = sample_shots(half, 1000000, 42);
    ASSERT_NEAR(a[0], 0.5, 0.003);
    ASSERT_NEAR(a[0] + a[1], 1.0, 1e-15);
    ASSERT_EQ(a, sample_shots(half, 1000000, 42));
    ASSERT_NE(a, sample_shots(half, 1000000, 43));
    ASSERT_NE(sample_shots(half, 100000, 42, 0), sample_shots(half, 100000, 42, 1));
    ASSERT_EQ(sample_shots(half, 1000, 42, 5), sample_shots(half, 1000, 42, 5));
    std::vector<double> zero_tail{0.3, 0.7, 0.0};
    ASSERT_EQ(sample_shots(zero_tail, 10000, 1)[2], 0.0);
    ASSERT_THROW(sample_shots(std::vector<double>{0.5, 0.6}, 10, 1), std::invalid_argument);
    ASSERT_THROW(sample_shots(half, 0, 1), std::invalid_argument);
}

TEST(experiment, shots_converge_to_exact) {
    auto eps = grid(5);
    RunOptions o;
    o.noise = NoiseModel::fitted_device();
    auto exact = run_error_sweep(Scheme::Walking, eps, o);
    o.shots = 1000000;
    o.seed = 7;
    auto sampled = run_error_sweep(Scheme::Walking, eps, o);
    for (std::size_t i = 0; i < eps.size(); i++) {
        for (int k = 0; k < 4; k++) {
            double p = exact[i].joint_probs[k];
            double sigma = std::sqrt(p * (1 - p) / 1e6);
            ASSERT_LE(std::abs(sampled[i].joint_probs[k] - p), 5 * sigma + 1e-12);
        }
    }
    ASSERT_EQ(sampled[2].joint_probs, run_error_sweep(Scheme::Walking, eps, o)[2].joint_probs);
}

TEST(experiment, confusion_matrix) {
    ASSERT_NO_THROW(ConfusionMatrix::identity().validate());
    auto s = ConfusionMatrix::symmetric(0.88);
    ASSERT_NEAR(s.entries[0][1], 0.12, 1e-15);
    ConfusionMatrix bad{{{{0.9, 0.2}, {0.0, 1.0}}}};
    ASSERT_THROW(bad.validate(), std::invalid_argument);
    ConfusionMatrix neg{{{{1.1, -0.1}, {0.0, 1.0}}}};
    ASSERT_THROW(neg.validate(), std::invalid_argument);
    auto r = DeviceProfile::three_transmon_chain().readout();
    ASSERT_EQ(r.size(), 3u);
    ASSERT_NEAR(r[1].entries[1][1], 0.83, 1e-15);
}

TEST(experiment, spam_correct_examples) {
    std::vector<double> raw{0.9, 0.1};
    std::vector<ConfusionMatrix> id{ConfusionMatrix::identity()};
    ASSERT_EQ(spam_correct(raw, id), raw);

    // The exact inverse of the 5% symmetric confusion matrix.
    std::vector<ConfusionMatrix> five{ConfusionMatrix::symmetric(0.95)};
    auto corrected = spam_correct(raw, five);
    ASSERT_NEAR(corrected[0], 17.0 / 18.0, 1e-12);
    ASSERT_NEAR(corrected[1], 1.0 / 18.0, 1e-12);
    auto forward = apply_confusion(corrected, five);
    ASSERT_NEAR(forward[0], 0.9, 1e-12);

    auto reported = apply_confusion(raw, five);
    ASSERT_NEAR(reported[0], 0.9 * 0.95 + 0.1 * 0.05, 1e-15);

    std::vector<ConfusionMatrix> singular{ConfusionMatrix::symmetric(0.5)};
    ASSERT_THROW(spam_correct(raw, singular), std::domain_error);
    ASSERT_THROW(spam_correct(std::vector<double>{0.5, 0.25, 0.25}, five), std::invalid_argument);
}

// Forward confusion on random distributions, then correction, recovers the
// original. Asymmetric per-qubit matrices check the tensor-product ordering
// against a dense Kronecker oracle.
TEST(experiment, spam_round_trip_property) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_real_distribution<double> err(0, 0.3);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t bits = 1 + trial % 3;
        std::vector<double> p(std::size_t{1} << bits);
        double total = 0;
        for (auto &x : p) {
            x = u(rng);
            total += x;
        }
        for (auto &x : p) {
            x /= total;
        }
        std::vector<ConfusionMatrix> conf;
        Eigen::MatrixXd dense = Eigen::MatrixXd::Identity(1, 1);
        for (std::size_t k = 0; k < bits; k++) {
            double e0 = err(rng), e1 = err(rng);
            conf.push_back({{{{1 - e0, e0}, {e1, 1 - e1}}}});
            Eigen::Matrix2d m;  // m(reported, true)
            m << 1 - e0, e1, e0, 1 - e1;
            Eigen::MatrixXd next(dense.rows() * 2, dense.cols() * 2);
            for (int i = 0; i < dense.rows(); i++) {
                for (int j = 0; j < dense.cols(); j++) {
                    next.block(2 * i, 2 * j, 2, 2) = dense(i, j) * m;
                }
            }
            dense = next;
        }
        auto fwd = apply_confusion(p, conf);
        Eigen::VectorXd pv = Eigen::Map<Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
        Eigen::VectorXd want = dense * pv;
        for (std::size_t i = 0; i < p.size(); i++) {
            ASSERT_NEAR(fwd[i], want(static_cast<Eigen::Index>(i)), 1e-12);
        }
        auto back = spam_correct(fwd, conf);
        for (std::size_t i = 0; i < p.size(); i++) {
            ASSERT_NEAR(back[i], p[i], 1e-10);
        }
    }
}

TEST(experiment, readout_without_shots_is_transparent) {
    RunOptions o;
    o.noise = NoiseModel::fitted_device();
    auto plain = run_error_sweep(Scheme::Static, grid(5), o);
    o.readout = DeviceProfile::three_transmon_chain().readout();
    auto corrected = run_error_sweep(Scheme::Static, grid(5), o);
    for (std::size_t i = 0; i < plain.size(); i++) {
        for (int k = 0; k < 4; k++) {
            ASSERT_NEAR(plain[i].joint_probs[k], corrected[i].joint_probs[k], 1e-10);
        }
    }
}

TEST(experiment, tomography_ground_state) {
    auto r = run_tomography({0.0, 0.0});
    const auto &all = r.branch(Branch::All);
    ASSERT_NEAR(all.pauli_expectations[0], 0.0, 1e-12);
    ASSERT_NEAR(all.pauli_expectations[1], 0.0, 1e-12);
    ASSERT_NEAR(all.pauli_expectations[2], 1.0, 1e-12);
    ASSERT_NEAR(all.fidelity, 1.0, 1e-12);
    ASSERT_NEAR(r.dropout, 0.0, 1e-12);
    // The empty branch is reported as maximally mixed.
    ASSERT_NEAR(r.branch(Branch::SyndromeMinus).weight, 0.0, 1e-12);
    ASSERT_NEAR(r.branch(Branch::SyndromeMinus).fidelity, 0.5, 1e-12);
}

TEST(experiment, tomography_ideal_curves) {
    for (int i = 0; i < 25; i++) {
        double phi = 2 * kPi * i / 25;
        double theta = kPi * i / 24;
        auto x = run_tomography({kHalfPi, phi});
        ASSERT_NEAR(x.branch(Branch::All).pauli_expectations[0], std::cos(phi), 1e-9);
        ASSERT_NEAR(x.branch(Branch::All).pauli_expectations[1], std::sin(phi), 1e-9);
        ASSERT_NEAR(x.branch(Branch::All).fidelity, 1.0, 1e-9);
        auto z = run_tomography({theta, 0.0});
        ASSERT_NEAR(z.branch(Branch::All).pauli_expectations[2], std::cos(theta), 1e-9);
    }
}

TEST(experiment, tomography_branch_decomposition) {
    RunOptions noisy;
    noisy.noise = NoiseModel::fitted_device();
    RunOptions shots = noisy;
    shots.shots = 4000;
    shots.seed = 5;
    for (const auto &opt : {RunOptions{}, noisy, shots}) {
        for (const auto &s : reference_states()) {
            auto r = run_tomography(s, opt);
            const auto &plus = r.branch(Branch::SyndromePlus);
            const auto &minus = r.branch(Branch::SyndromeMinus);
            ASSERT_NEAR(plus.weight + minus.weight, 1.0, 1e-9);
            ASSERT_NEAR(r.dropout, minus.weight, 1e-12);
            if (!opt.shots) {
                // Exact branches: All is the weight-average. With shots the
                // per-basis weights differ, so only the exact case is checked.
                for (int k = 0; k < 3; k++) {
                    ASSERT_NEAR(
                        r.branch(Branch::All).pauli_expectations[k],
                        plus.weight * plus.pauli_expectations[k] + minus.weight * minus.pauli_expectations[k], 1e-9);
                }
            }
            for (const auto &b : r.branches) {
                ComplexMatrix rho = (ComplexMatrix::Identity(2, 2) + b.pauli_expectations[0] * oracle::X() +
                                     b.pauli_expectations[1] * oracle::Y() + b.pauli_expectations[2] * oracle::Z()) /
                                    2.0;
                ASSERT_LT((rho - b.rho).cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
}

TEST(experiment, fidelity_ordering_under_device_noise) {
    RunOptions o;
    o.noise = NoiseModel::fitted_device();
    for (const auto &s : reference_states()) {
        auto r = run_tomography(s, o);
        double plus = r.branch(Branch::SyndromePlus).fidelity;
        double all = r.branch(Branch::All).fidelity;
        double minus = r.branch(Branch::SyndromeMinus).fidelity;
        ASSERT_GE(plus, all);
        ASSERT_GE(all, minus);
        ASSERT_GE(plus - minus, 0.02);
    }
}

TEST(experiment, projection_to_physical) {
    RunOptions o;
    o.noise = NoiseModel::fitted_device();
    o.shots = 50;
    o.seed = 3;
    o.project_to_physical = true;
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        o.seed = seed;
        auto r = run_tomography({1.57, 1.88}, o);
        for (const auto &b : r.branches) {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b.rho);
            ASSERT_GE(es.eigenvalues().minCoeff(), -1e-12);
            ASSERT_NEAR(b.rho.trace().real(), 1.0, 1e-12);
            double len = std::hypot(b.pauli_expectations[0], b.pauli_expectations[1], b.pauli_expectations[2]);
            ASSERT_LE(len, 1.0 + 1e-12);
        }
    }
}

TEST(experiment, tomography_determinism) {
    RunOptions o;
    o.noise = NoiseModel::fitted_device();
    o.shots = 2000;
    o.seed = 99;
    auto a = run_tomography({1.0, 2.0}, o);
    auto b = run_tomography({1.0, 2.0}, o);
    for (int i = 0; i < 3; i++) {
        ASSERT_EQ(a.branches[i].pauli_expectations, b.branches[i].pauli_expectations);
    }
}

TEST(experiment, logical_state_validation) {
    ASSERT_THROW(run_tomography({-0.1, 0.0}), std::invalid_argument);
    ASSERT_THROW(run_tomography({0.1, 2 * kPi}), std::invalid_argument);
    LogicalStateSpec s{kHalfPi, kHalfPi};
    auto v = s.ideal_state().amplitudes();
    ASSERT_NEAR(std::abs(v(1) - Complex(0, 1) / std::sqrt(2.0)), 0, 1e-15);
}
