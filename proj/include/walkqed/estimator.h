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

#ifndef WALKQED_ESTIMATOR_H
#define WALKQED_ESTIMATOR_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "walkqed/circuit.h"
#include "walkqed/noise.h"

namespace walkqed {

/// Logical expectation values to fit: <X_L>(phi) at theta = pi/2 and
/// <Z_L>(theta) at phi = 0, optionally a full (theta, phi) grid.
struct FitDataset {
    struct GridPoint {
        double theta;
        double phi;
        double x_l;
        double z_l;
    };

    std::vector<double> phi_grid;
    std::vector<double> x_l;
    std::vector<double> theta_grid;
    std::vector<double> z_l;
    std::optional<std::size_t> shots;
    std::uint64_t seed = 0;
    std::vector<GridPoint> full_grid;

    /// Throws std::invalid_argument for empty or mismatched grids, or
    /// expectations outside [-1, 1].
    void validate() const;
};

struct ParameterBounds {
    std::pair<double, double> delta_phi{-0.2, 0.2};
    std::pair<double, double> theta{0.0, 1.0};
    std::pair<double, double> p1{0.0, 0.1};
    std::pair<double, double> p2{0.0, 0.1};

    void validate() const;
    bool contains(const NoiseModel &m) const;
};

struct FitOptions {
    ParameterBounds bounds;
    std::uint64_t seed = 0;
    /// Maximum number of objective evaluations.
    std::size_t budget = 4000;
    /// Fit a single depolarizing probability shared by p1 and p2.
    bool tie_depolarization = false;
};

struct FitResult {
    NoiseModel params;
    double residual = 0.0;
    std::size_t evaluations = 0;
    std::uint64_t seed = 0;
    /// The search stopped because the budget ran out rather than on convergence.
    bool budget_exhausted = false;
};

/// Sum of squared differences between simulated (exact, all shots kept) and
/// measured logical expectations. Transpiled circuits are built once.
class FitObjective {
   public:
    explicit FitObjective(const FitDataset &data);

    double operator()(const NoiseModel &params) const;
    std::size_t point_count() const {
        return points_.size();
    }

   private:
    struct Point {
        Circuit native;
        double measured;
    };
    std::vector<Point> points_;
};

double objective(const NoiseModel &params, const FitDataset &data);

/// Annealing search over the bounded box (Tsallis-cooled Cauchy jumps with
/// Metropolis acceptance, reannealing when cold) followed by Nelder-Mead
/// polishing. Deterministic for a fixed seed.
FitResult fit(const FitDataset &data, const FitOptions &options = {});

/// phi_points uniform over [0, 2 pi), theta_points uniform over [0, pi].
/// With shots, grid point i samples from seed stream (seed + i), phi points
/// first.
FitDataset generate_synthetic_dataset(
    const NoiseModel &params, std::size_t phi_points, std::size_t theta_points, std::optional<std::size_t> shots,
    std::uint64_t seed);

}  // namespace walkqed

#endif
