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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "walkqed/transpile.h"

namespace walkqed {

namespace {

// Applies a 2x2 matrix to bit k (0 = most significant) of an m-bit outcome vector.
void apply_on_bit(std::vector<double> &v, const std::array<std::array<double, 2>, 2> &a, std::size_t k, std::size_t m) {
    std::size_t bit = std::size_t{1} << (m - 1 - k);
    for (std::size_t x = 0; x < v.size(); x++) {
        if (x & bit) {
            continue;
        }
        double v0 = v[x];
        double v1 = v[x | bit];
        v[x] = a[0][0] * v0 + a[0][1] * v1;
        v[x | bit] = a[1][0] * v0 + a[1][1] * v1;
    }
}

std::size_t outcome_bits(std::size_t size, std::size_t confusion_count) {
    std::size_t m = 0;
    while ((std::size_t{1} << m) < size) {
        m++;
    }
    if ((std::size_t{1} << m) != size || m != confusion_count) {
        throw std::invalid_argument("distribution size does not match the number of confusion matrices");
    }
    return m;
}

std::vector<double> draw(std::span<const double> probs, std::size_t n, std::mt19937_64 &rng) {
    if (n == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); i++) {
        if (probs[i] < 0) {
            throw std::invalid_argument("negative probability");
        }
        acc += probs[i];
        cdf[i] = acc;
    }
    if (std::abs(acc - 1.0) > 1e-9) {
        throw std::invalid_argument("probabilities must sum to 1");
    }
    std::vector<std::size_t> counts(probs.size(), 0);
    for (std::size_t s = 0; s < n; s++) {
        // 53 random bits -> [0, 1), independent of the library's distribution classes.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        counts[std::min<std::size_t>(it - cdf.begin(), probs.size() - 1)]++;
    }
    std::vector<double> out(probs.size());
    for (std::size_t i = 0; i < out.size(); i++) {
        out[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    }
    return out;
}

constexpr double kEmptyBranch = 1e-12;

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

// Exact distribution -> readout errors -> shots -> SPAM correction.
std::array<double, 4> measure(
    std::array<double, 4> exact, const RunOptions &options, std::span<const std::size_t> measured, std::uint64_t seed,
    std::uint64_t stream) {
    std::vector<double> dist(exact.begin(), exact.end());
    std::vector<ConfusionMatrix> confusion;
    if (!options.readout.empty()) {
        for (auto q : measured) {
            confusion.push_back(options.readout.at(q));
        }
        dist = apply_confusion(dist, confusion);
    }
    if (options.shots) {
        dist = sample_shots(dist, *options.shots, seed, stream);
    }
    if (!confusion.empty()) {
        dist = spam_correct(dist, confusion);
    }
    return {dist[0], dist[1], dist[2], dist[3]};
}

const Topology &chain3() {
    static const Topology t = Topology::chain(3);
    return t;
}

BranchResult make_branch(const std::array<double, 3> &bloch, double weight, const PureState &ideal, bool project) {
    BranchResult b;
    b.pauli_expectations = bloch;
    b.weight = weight;
    b.rho = (ComplexMatrix::Identity(2, 2) + bloch[0] * pauli_matrix(Pauli::X) + bloch[1] * pauli_matrix(Pauli::Y) +
             bloch[2] * pauli_matrix(Pauli::Z)) /
            2.0;
    if (project) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(b.rho);
        Eigen::VectorXd w = solver.eigenvalues().cwiseMax(0.0);
        w /= w.sum();
        b.rho = solver.eigenvectors() * w.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
        b.pauli_expectations = {
            (b.rho * pauli_matrix(Pauli::X)).trace().real(), (b.rho * pauli_matrix(Pauli::Y)).trace().real(),
            (b.rho * pauli_matrix(Pauli::Z)).trace().real()};
    }
    const auto &v = ideal.amplitudes();
    b.fidelity = v.dot(b.rho * v).real();
    return b;
}

}  // namespace

ConfusionMatrix ConfusionMatrix::symmetric(double fidelity) {
    if (!(fidelity >= 0 && fidelity <= 1)) {
        throw std::invalid_argument("assignment fidelity must lie in [0, 1]");
    }
    ConfusionMatrix c;
    c.entries = {{{fidelity, 1 - fidelity}, {1 - fidelity, fidelity}}};
    return c;
}

void ConfusionMatrix::validate() const {
    for (const auto &row : entries) {
        if (row[0] < 0 || row[1] < 0 || std::abs(row[0] + row[1] - 1.0) > 1e-12) {
            throw std::invalid_argument("confusion matrix rows must be probability vectors");
        }
    }
}

std::vector<ConfusionMatrix> DeviceProfile::readout() const {
    std::vector<ConfusionMatrix> out;
    for (double f : readout_fidelity) {
        out.push_back(ConfusionMatrix::symmetric(f));
    }
    return out;
}

std::vector<double> apply_confusion(std::span<const double> probs, std::span<const ConfusionMatrix> confusion) {
    std::size_t m = outcome_bits(probs.size(), confusion.size());
    std::vector<double> v(probs.begin(), probs.end());
    for (std::size_t k = 0; k < m; k++) {
        confusion[k].validate();
        const auto &e = confusion[k].entries;
        // reported_j = sum_i e[i][j] true_i
        apply_on_bit(v, {{{e[0][0], e[1][0]}, {e[0][1], e[1][1]}}}, k, m);
    }
    return v;
}

std::vector<double> spam_correct(std::span<const double> raw, std::span<const ConfusionMatrix> confusion) {
    std::size_t m = outcome_bits(raw.size(), confusion.size());
    std::vector<double> v(raw.begin(), raw.end());
    for (std::size_t k = 0; k < m; k++) {
        confusion[k].validate();
        const auto &e = confusion[k].entries;
        double a = e[0][0], b = e[1][0], c = e[0][1], d = e[1][1];
        double det = a * d - b * c;
        if (std::abs(det) < 1e-12) {
            throw std::domain_error("confusion matrix is singular");
        }
        apply_on_bit(v, {{{d / det, -b / det}, {-c / det, a / det}}}, k, m);
    }
    double total = 0;
    for (auto &p : v) {
        p = std::max(p, 0.0);
        total += p;
    }
    if (total <= 0) {
        throw std::domain_error("SPAM correction removed all probability mass");
    }
    for (auto &p : v) {
        p /= total;
    }
    return v;
}

std::vector<double> sample_shots(std::span<const double> probs, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return draw(probs, n, rng);
}

std::vector<double> sample_shots(std::span<const double> probs, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    auto rng = seeded(seed, stream);
    return draw(probs, n, rng);
}

double corrected_logical(std::span<const double, 4> joint, CorrectedObservableForm form) {
    if (form == CorrectedObservableForm::Literal) {
        return 1.0 - (joint[0] + joint[3]);
    }
    return joint[0] + joint[3] - joint[1] - joint[2];
}

std::array<double, 4> readout_distribution(
    const Circuit &circuit, const std::optional<NoiseModel> &noise, bool already_native) {
    std::optional<Circuit> lowered;
    if (!already_native) {
        lowered = transpile(circuit, chain3());
    }
    const Circuit &native = lowered ? *lowered : circuit;
    std::size_t targets[] = {native.label_index(kAncillaLabel), native.label_index(kLogicalLabel)};
    DensityMatrix rho = noise ? simulate(insert_noise(native, *noise, Topology::chain(native.qubit_count())))
                              : simulate(native);
    auto dist = z_basis_distribution(rho, targets);
    return {dist[0], dist[1], dist[2], dist[3]};
}

std::vector<DetectionRecord> run_error_sweep(Scheme scheme, std::span<const double> epsilons, const RunOptions &options) {
    if (epsilons.empty()) {
        throw std::invalid_argument("error sweep needs at least one epsilon");
    }
    if (options.shots && *options.shots == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    std::vector<DetectionRecord> out;
    for (std::size_t i = 0; i < epsilons.size(); i++) {
        Circuit c = build_detection(scheme, epsilons[i]);
        std::size_t measured[] = {c.label_index(kAncillaLabel), c.label_index(kLogicalLabel)};
        auto joint = measure(readout_distribution(c, options.noise), options, measured, options.seed + i, 0);
        DetectionRecord r;
        r.epsilon = epsilons[i];
        r.joint_probs = joint;
        r.anc_expectation = joint[0] + joint[1] - joint[2] - joint[3];
        r.raw_logical = joint[0] + joint[2] - joint[1] - joint[3];
        r.corrected_logical = corrected_logical(std::span<const double, 4>(joint), options.corrected_form);
        out.push_back(r);
    }
    return out;
}

void LogicalStateSpec::validate() const {
    if (!(theta >= 0 && theta <= kPi)) {
        throw std::invalid_argument("theta must lie in [0, pi]");
    }
    if (!(phi >= 0 && phi < 2 * kPi)) {
        throw std::invalid_argument("phi must lie in [0, 2 pi)");
    }
}

PureState LogicalStateSpec::ideal_state() const {
    ComplexVector v(2);
    v << std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2);
    return PureState(v);
}

TomographyResult run_tomography(const LogicalStateSpec &spec, const RunOptions &options) {
    spec.validate();
    if (options.shots && *options.shots == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    constexpr TomographyBasis bases[] = {TomographyBasis::X, TomographyBasis::Y, TomographyBasis::Z};
    std::array<double, 3> all{};
    std::array<double, 3> plus{};
    std::array<double, 3> minus{};
    double plus_weight = 0;
    for (std::size_t b = 0; b < 3; b++) {
        Circuit c = build_tomography_circuit(spec.theta, spec.phi, bases[b]);
        std::size_t measured[] = {c.label_index(kAncillaLabel), c.label_index(kLogicalLabel)};
        auto p = measure(readout_distribution(c, options.noise), options, measured, options.seed, b);
        double p_plus = p[0] + p[1];
        double p_minus = p[2] + p[3];
        all[b] = p[0] + p[2] - p[1] - p[3];
        // Below kEmptyBranch the branch is simulation roundoff, not data.
        plus[b] = p_plus > kEmptyBranch ? (p[0] - p[1]) / p_plus : 0.0;
        minus[b] = p_minus > kEmptyBranch ? (p[2] - p[3]) / p_minus : 0.0;
        plus_weight += p_plus / 3.0;
    }
    TomographyResult r;
    r.spec = spec;
    PureState ideal = spec.ideal_state();
    r.branches[static_cast<std::size_t>(Branch::All)] = make_branch(all, 1.0, ideal, options.project_to_physical);
    r.branches[static_cast<std::size_t>(Branch::SyndromePlus)] =
        make_branch(plus, plus_weight, ideal, options.project_to_physical);
    r.branches[static_cast<std::size_t>(Branch::SyndromeMinus)] =
        make_branch(minus, 1.0 - plus_weight, ideal, options.project_to_physical);
    r.dropout = 1.0 - plus_weight;
    return r;
}

std::vector<LogicalStateSpec> reference_states() {
    return {{0.0, 0.0}, {kHalfPi, 3 * kHalfPi}, {1.57, 1.26}, {1.57, 1.88}};
}

}  // namespace walkqed
