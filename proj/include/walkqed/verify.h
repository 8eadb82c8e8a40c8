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

#ifndef WALKQED_VERIFY_H
#define WALKQED_VERIFY_H

#include <string>
#include <vector>

#include "walkqed/linalg.h"
#include "walkqed/transpile.h"

namespace walkqed {

struct CheckOutcome {
    std::string name;
    bool passed;
    double max_deviation;
    std::string detail;
};

struct VerificationReport {
    double tolerance;
    std::vector<CheckOutcome> checks;

    bool passed() const;
};

/// Maps the walking circuit onto the static one:
/// U_static = output * U_walking * input, where `input` swaps Q1/Q2 roles and
/// `output` swaps Q2/Q3 roles.
struct WalkingRelabeling {
    ComplexMatrix input;
    ComplexMatrix output;
};
WalkingRelabeling walking_to_static_relabeling();

/// Transpile soundness and nativeness over the builder circuits, noiseless
/// walking/static equivalence, the CNOT.SWAP fusion certificates and the CZ
/// counts of both detection circuits.
VerificationReport run_verification(double tolerance, const TranspileOptions &options = {});

}  // namespace walkqed

#endif
