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

#ifndef WALKQED_EXPERIMENT_H
#define WALKQED_EXPERIMENT_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "walkqed/circuit.h"
#include "walkqed/linalg.h"
#include "walkqed/noise.h"

namespace walkqed {

/// Per-qubit readout assignment probabilities. entries[i][j] is the chance of
/// reporting j when the qubit was in i; rows sum to 1.
struct ConfusionMatrix {
    std::array<std::array<double, 2>, 2> entries{{{1.0, 0.0}, {0.0, 1.0}}};

    static ConfusionMatrix identity() {
        return {};
    }
    /// Both states read out correctly with probability `fidelity`.
    static ConfusionMatrix symmetric(double fidelity);

    /// Throws std::invalid_argument for negative entries or rows not summing
    /// to 1 within 1e-12.
    void validate() const;
};

/// Readout model of the three-transmon device: individual readout fidelities
/// 88%, 83%, 93% and the fitted noise parameters.
struct DeviceProfile {
    NoiseModel noise = NoiseModel::fitted_device();
    std::array<double, 3> readout_fidelity{0.88, 0.83, 0.93};

    static DeviceProfile three_transmon_chain() {
        return {};
    }
    /// One confusion matrix per physical qubit.
    std::vector<ConfusionMatrix> readout() const;
};

/// Distribution over bitstrings -> reported distribution. confusion[k] acts
/// on the leftmost-but-k bit (confusion[0] on the most significant bit).
std::vector<double> apply_confusion(std::span<const double> probs, std::span<const ConfusionMatrix> confusion);

/// Inverts the tensor-product confusion matrix, clips negatives to zero and
/// renormalizes. Throws std::domain_error for a singular confusion matrix.
std::vector<double> spam_correct(std::span<const double> raw, std::span<const ConfusionMatrix> confusion);

/// Empirical frequencies of `n` draws. Deterministic for a fixed seed. Throws
/// std::invalid_argument for negative entries or a total away from 1 (1e-9).
std::vector<double> sample_shots(std::span<const double> probs, std::size_t n, std::uint64_t seed);

/// Same as above but seeded from (seed, stream) so that independent grid
/// points and bases draw from independent streams.
std::vector<double> sample_shots(std::span<const double> probs, std::size_t n, std::uint64_t seed, std::uint64_t stream);

enum class CorrectedObservableForm {
    /// p00 + p11 - p01 - p10, i.e. <Z_A Z_L>.
    Parity,
    /// 1 - (p00 + p11).
    Literal,
};

/// joint = {p00, p01, p10, p11}, index 2 * ancilla_bit + data_bit.
double corrected_logical(std::span<const double, 4> joint, CorrectedObservableForm form = CorrectedObservableForm::Parity);

struct DetectionRecord {
    double epsilon;
    std::array<double, 4> joint_probs;
    double anc_expectation;
    double raw_logical;
    double corrected_logical;
};

struct RunOptions {
    std::optional<NoiseModel> noise;
    /// Absent means exact probabilities.
    std::optional<std::size_t> shots;
    std::uint64_t seed = 0;
    /// Per physical qubit; empty means ideal readout. When present, outcomes
    /// pass through the confusion matrices and are SPAM-corrected afterwards.
    std::vector<ConfusionMatrix> readout;
    CorrectedObservableForm corrected_form = CorrectedObservableForm::Parity;
    /// Clip reconstructed single-qubit states to the Bloch ball.
    bool project_to_physical = false;
};

/// Exact {p00, p01, p10, p11} over (ancilla, logical) for a circuit carrying
/// the builder labels. Transpiles first unless `already_native`.
std::array<double, 4> readout_distribution(
    const Circuit &circuit, const std::optional<NoiseModel> &noise, bool already_native = false);

/// One record per epsilon. Point i draws shots from seed stream (seed + i).
std::vector<DetectionRecord> run_error_sweep(
    Scheme scheme, std::span<const double> epsilons, const RunOptions &options = {});

struct LogicalStateSpec {
    double theta = 0.0;
    double phi = 0.0;

    /// Throws unless theta in [0, pi] and phi in [0, 2 pi).
    void validate() const;
    /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
    PureState ideal_state() const;
};

enum class Branch { All = 0, SyndromePlus = 1, SyndromeMinus = 2 };

struct BranchResult {
    /// <X_L>, <Y_L>, <Z_L>.
    std::array<double, 3> pauli_expectations{};
    /// (I + x sigma_x + y sigma_y + z sigma_z) / 2. Not necessarily positive
    /// for shot-sampled data unless projection was requested.
    ComplexMatrix rho;
    double fidelity = 0.0;
    double weight = 0.0;
};

struct TomographyResult {
    LogicalStateSpec spec;
    std::array<BranchResult, 3> branches;
    /// Probability of the ancilla reporting Z_A = -1.
    double dropout = 0.0;

    const BranchResult &branch(Branch b) const {
        return branches[static_cast<std::size_t>(b)];
    }
};

/// Runs the X, Y and Z basis circuits and conditions on the ancilla outcome.
/// Basis b draws shots from stream (options.seed, b).
TomographyResult run_tomography(const LogicalStateSpec &spec, const RunOptions &options = {});

/// The four logical states used for the per-state fidelity comparison:
/// |0_L>, |-i_L>, (1.57, 1.26), (1.57, 1.88).
std::vector<LogicalStateSpec> reference_states();

}  // namespace walkqed

#endif
