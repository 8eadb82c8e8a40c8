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

#include "walkqed/circuit.h"

#include "gtest/gtest.h"
#include "oracle.h"
#include "walkqed/noise.h"
#include "walkqed/transpile.h"

using namespace walkqed;

namespace {

// Statevector oracle for the static circuit: RX(eps) on Q3, CNOT(Q1->Q2), CNOT(Q3->Q2).
oracle::Mat static_oracle(double eps) {
    return oracle::cnot(3, 2, 1) * oracle::cnot(3, 0, 1) * oracle::on(3, 2, oracle::RX(eps));
}

// Walking: RX(eps) on Q3, CNOT(Q2->Q1), SWAP(Q1,Q2), CNOT(Q3->Q2), SWAP(Q2,Q3).
oracle::Mat walking_oracle(double eps) {
    return oracle::swap(3, 1, 2) * oracle::cnot(3, 2, 1) * oracle::swap(3, 0, 1) * oracle::cnot(3, 1, 0) *
           oracle::on(3, 2, oracle::RX(eps));
}

std::vector<double> joint_of(const Circuit &c) {
    auto rho = simulate(c);
    return oracle::joint(rho.matrix(), 3, c.label_index(kAncillaLabel), c.label_index(kLogicalLabel));
}

}  // namespace

TEST(circuit, append_packs_into_moments) {
    Circuit c(3);
    c.append(GateKind::h(), {0});
    c.append(GateKind::h(), {2});
    ASSERT_EQ(c.moments().size(), 1u);
    c.append(GateKind::cz(), {0, 1});
    ASSERT_EQ(c.moments().size(), 2u);
    c.append(GateKind::x(), {2});
    ASSERT_EQ(c.moments().size(), 2u);
    ASSERT_EQ(c.operation_count(), 4u);
    ASSERT_EQ(c.operations()[2], (Operation{GateKind::cz(), {0, 1}}));
}

TEST(circuit, validation) {
    Circuit c(3);
    ASSERT_THROW(c.append(GateKind::cz(), {0}), std::invalid_argument);
    ASSERT_THROW(c.append(GateKind::cz(), {1, 1}), std::invalid_argument);
    ASSERT_THROW(c.append(GateKind::h(), {3}), std::out_of_range);
    ASSERT_THROW(c.append_moment({{GateKind::h(), {0}}, {GateKind::cz(), {0, 1}}}), std::invalid_argument);
    ASSERT_THROW(Circuit(0), std::invalid_argument);
    Circuit other(2);
    ASSERT_THROW(c.extend(other), std::invalid_argument);
    ASSERT_THROW(c.label_index("ancilla"), std::out_of_range);
}

TEST(circuit, topology_chain) {
    auto t = Topology::chain(3);
    ASSERT_TRUE(t.adjacent(0, 1));
    ASSERT_TRUE(t.adjacent(2, 1));
    ASSERT_FALSE(t.adjacent(0, 2));
    ASSERT_EQ(t.incident_edges(1).size(), 2u);
    ASSERT_EQ(t.incident_edges(0).size(), 1u);
}

TEST(circuit, static_detection) {
    auto j0 = joint_of(build_static_detection(0));
    ASSERT_NEAR(j0[0], 1.0, 1e-12);
    auto jpi = joint_of(build_static_detection(kPi));
    ASSERT_NEAR(jpi[3], 1.0, 1e-12);
    auto jh = joint_of(build_static_detection(kHalfPi));
    ASSERT_NEAR(jh[0] + jh[1], 0.5, 1e-12);
    ASSERT_NEAR(jh[2] + jh[3], 0.5, 1e-12);
}

TEST(circuit, builders_match_statevector_oracle) {
    for (int i = 0; i <= 20; i++) {
        double eps = kPi * i / 20;
        ASSERT_LT(oracle::phase_distance(circuit_unitary(build_static_detection(eps)), static_oracle(eps)), 1e-12);
        ASSERT_LT(oracle::phase_distance(circuit_unitary(build_walking_detection(eps)), walking_oracle(eps)), 1e-12);
    }
}

TEST(circuit, walking_detection) {
    auto j0 = joint_of(build_walking_detection(0));
    ASSERT_NEAR(j0[0] + j0[1], 1.0, 1e-12);
    auto jh = joint_of(build_walking_detection(kHalfPi));
    ASSERT_NEAR(jh[0] + jh[1] - jh[2] - jh[3], 0.0, 1e-12);

    auto c = build_walking_detection(0.3);
    ASSERT_EQ(c.label_index(kAncillaLabel), 2u);
    ASSERT_EQ(c.label_index(kLogicalLabel), 1u);
    auto first = build_walking_detection(0.3, InjectionTarget::FirstChecked);
    ASSERT_EQ(first.label_index(kLogicalLabel), 0u);
}

// U_static = SWAP(Q2,Q3) U_walking SWAP(Q1,Q2), built from the oracle matrices.
TEST(circuit, walking_static_relabeling_oracle) {
    for (int i = 0; i <= 20; i++) {
        double eps = kPi * i / 20;
        oracle::Mat relabeled =
            oracle::swap(3, 1, 2) * circuit_unitary(build_walking_detection(eps)) * oracle::swap(3, 0, 1);
        ASSERT_LT((relabeled - circuit_unitary(build_static_detection(eps))).cwiseAbs().maxCoeff(), 1e-12) << eps;

        auto s = joint_of(build_static_detection(eps));
        auto w = joint_of(build_walking_detection(eps));
        auto wf = joint_of(build_walking_detection(eps, InjectionTarget::FirstChecked));
        for (int k = 0; k < 4; k++) {
            ASSERT_NEAR(s[k], w[k], 1e-10);
            ASSERT_NEAR(s[k], wf[k], 1e-10);
        }
    }
}

TEST(circuit, tomography_ideal_curves) {
    auto expect_logical = [](const Circuit &c) {
        auto j = joint_of(c);
        return j[0] + j[2] - j[1] - j[3];
    };
    for (double phi : {0.0, 0.7, 2.0, 4.5}) {
        ASSERT_NEAR(expect_logical(build_tomography_circuit(0, phi, TomographyBasis::Z)), 1.0, 1e-12);
    }
    ASSERT_NEAR(expect_logical(build_tomography_circuit(kHalfPi, 0, TomographyBasis::X)), 1.0, 1e-12);
    for (int i = 0; i < 25; i++) {
        double phi = 2 * kPi * i / 25;
        double theta = kPi * i / 24;
        ASSERT_NEAR(expect_logical(build_tomography_circuit(kHalfPi, phi, TomographyBasis::X)), std::cos(phi), 1e-12);
        ASSERT_NEAR(expect_logical(build_tomography_circuit(kHalfPi, phi, TomographyBasis::Y)), std::sin(phi), 1e-12);
        ASSERT_NEAR(expect_logical(build_tomography_circuit(theta, 0, TomographyBasis::Z)), std::cos(theta), 1e-12);
    }
    auto c = build_tomography_circuit(1.0, 1.0, TomographyBasis::X);
    ASSERT_EQ(c.label_index(kLogicalLabel), 0u);
    ASSERT_EQ(c.label_index(kAncillaLabel), 2u);
}

TEST(circuit, state_preparation_oracle) {
    for (double theta : {0.0, 0.4, kHalfPi, 2.5, kPi}) {
        for (double phi : {0.0, 1.0, 3.0, 5.5}) {
            Circuit c(1);
            append_state_preparation(c, 0, theta, phi);
            oracle::Vec psi = circuit_unitary(c) * oracle::ground(1);
            oracle::Vec want(2);
            want << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
            ASSERT_NEAR(std::abs(want.dot(psi)), 1.0, 1e-12);
        }
    }
}
