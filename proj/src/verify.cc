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

#include "walkqed/verify.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "walkqed/circuit.h"
#include "walkqed/experiment.h"

namespace walkqed {

namespace {

std::vector<Circuit> builder_circuits() {
    std::vector<Circuit> out;
    for (double eps : {0.0, 0.3, kHalfPi, 2.1, kPi}) {
        out.push_back(build_static_detection(eps));
        out.push_back(build_walking_detection(eps));
        out.push_back(build_walking_detection(eps, InjectionTarget::FirstChecked));
    }
    for (auto [theta, phi] : {std::pair{0.0, 0.0}, {kHalfPi, 0.0}, {1.57, 1.26}, {2.2, 4.0}}) {
        for (auto b : {TomographyBasis::X, TomographyBasis::Y, TomographyBasis::Z}) {
            out.push_back(build_tomography_circuit(theta, phi, b));
        }
    }
    return out;
}

Circuit cnot_then_swap() {
    Circuit c(2);
    c.append(GateKind::cnot(), {0, 1});
    c.append(GateKind::swap(), {0, 1});
    return c;
}

}  // namespace

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome &c) { return c.passed; });
}

WalkingRelabeling walking_to_static_relabeling() {
    ComplexMatrix swap = matrix_of(GateKind::swap());
    std::size_t in[] = {0, 1};
    std::size_t out[] = {1, 2};
    return {embed(swap, in, 3), embed(swap, out, 3)};
}

VerificationReport run_verification(double tolerance, const TranspileOptions &options) {
    VerificationReport report{tolerance, {}};
    const Topology chain = Topology::chain(3);

    {
        double worst = 0;
        bool native = true;
        for (const auto &c : builder_circuits()) {
            Circuit t = transpile(c, chain, options);
            worst = std::max(
                worst, equivalent_up_to_global_phase(circuit_unitary(t), circuit_unitary(c), tolerance).max_entry_deviation);
            for (const auto &op : t.operations()) {
                native = native && is_native(op.gate);
            }
        }
        report.checks.push_back({"transpile_soundness", worst < tolerance, worst, "builder circuits vs transpiled"});
        report.checks.push_back({"transpile_native_only", native, 0.0, "every transpiled gate is RX(pi/2), RZ or CZ"});
    }

    {
        double worst = 0;
        auto relabel = walking_to_static_relabeling();
        for (std::size_t i = 0; i < 21; i++) {
            double eps = kPi * static_cast<double>(i) / 20.0;
            auto s = readout_distribution(transpile(build_static_detection(eps), chain, options), std::nullopt, true);
            auto w = readout_distribution(transpile(build_walking_detection(eps), chain, options), std::nullopt, true);
            for (std::size_t k = 0; k < 4; k++) {
                worst = std::max(worst, std::abs(s[k] - w[k]));
            }
            ComplexMatrix us = circuit_unitary(build_static_detection(eps));
            ComplexMatrix uw = circuit_unitary(build_walking_detection(eps));
            worst = std::max(worst, (us - relabel.output * uw * relabel.input).cwiseAbs().maxCoeff());
        }
        report.checks.push_back(
            {"walking_static_equivalence", worst < tolerance, worst, "21-point epsilon grid, distributions and 8x8 unitaries"});
    }

    {
        auto a = makhlin_invariants(circuit_unitary(cnot_then_swap()));
        auto b = makhlin_invariants(matrix_of(GateKind::iswap()));
        double dev = std::max(std::abs(a.g1 - b.g1), std::abs(a.g2 - b.g2));
        std::ostringstream detail;
        detail << "G1 = " << a.g1.real() << (a.g1.imag() < 0 ? "-" : "+") << std::abs(a.g1.imag()) << "i, G2 = " << a.g2;
        report.checks.push_back({"fusion_makhlin_iswap", dev < tolerance, dev, detail.str()});
    }

    {
        const Topology pair = Topology::chain(2);
        ComplexMatrix target = circuit_unitary(cnot_then_swap());
        Circuit two_cz = transpile(cnot_then_swap(), pair, options);
        auto r = equivalent_up_to_global_phase(circuit_unitary(two_cz), target, tolerance);
        bool count_ok = metrics(two_cz).cz_count == 2;
        report.checks.push_back(
            {"fusion_two_cz", r.verdict && count_ok, r.max_entry_deviation, "CNOT.SWAP as two CZ gates"});

        TranspileOptions iswap_options = options;
        iswap_options.fusion = FusionTarget::ISwap;
        Circuit iswap = transpile(cnot_then_swap(), pair, iswap_options);
        auto ri = equivalent_up_to_global_phase(circuit_unitary(iswap), target, tolerance);
        report.checks.push_back({"fusion_iswap", ri.verdict, ri.max_entry_deviation, "CNOT.SWAP as one dressed ISWAP"});
    }

    {
        auto s = metrics(transpile(build_static_detection(0.3), chain, options));
        auto w = metrics(transpile(build_walking_detection(0.3), chain, options));
        bool ok = s.cz_count == 2 && w.cz_count == 4 && s.two_qubit_depth == 2 && w.two_qubit_depth == 4;
        std::ostringstream detail;
        detail << "static cz=" << s.cz_count << " depth2q=" << s.two_qubit_depth << ", walking cz=" << w.cz_count
               << " depth2q=" << w.two_qubit_depth;
        report.checks.push_back({"depth_claim", ok, 0.0, detail.str()});
    }
    return report;
}

}  // namespace walkqed
