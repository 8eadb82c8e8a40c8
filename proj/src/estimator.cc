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

#include "walkqed/estimator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "walkqed/experiment.h"
#include "walkqed/transpile.h"

namespace walkqed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_unit_range(double v) {
    return v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12;
}

void check_pair(std::pair<double, double> b, const char *name) {
    if (!std::isfinite(b.first) || !std::isfinite(b.second) || b.first > b.second) {
        throw std::invalid_argument(std::string("bad bounds for ") + name);
    }
}

double expectation_from(const std::array<double, 4> &p) {
    // Logical bit is the low bit of the (ancilla, logical) index.
    return p[0] + p[2] - p[1] - p[3];
}

Circuit native_tomography(double theta, double phi, TomographyBasis basis) {
    static const Topology chain = Topology::chain(3);
    return transpile(build_tomography_circuit(theta, phi, basis), chain);
}

using Point = std::vector<double>;

/// Unit-cube search state shared by the annealing and polishing phases.
class Search {
   public:
    Search(const FitObjective &f, const FitOptions &options)
        : f_(f), options_(options), dims_(options.tie_depolarization ? 3 : 4) {
    }

    std::size_t dims() const {
        return dims_;
    }
    bool exhausted() const {
        return evaluations_ >= options_.budget;
    }
    std::size_t evaluations() const {
        return evaluations_;
    }
    const Point &best_x() const {
        return best_x_;
    }
    double best_f() const {
        return best_f_;
    }

    NoiseModel to_model(const Point &u) const {
        const auto &b = options_.bounds;
        auto lerp = [](std::pair<double, double> r, double t) {
            return r.first + (r.second - r.first) * std::clamp(t, 0.0, 1.0);
        };
        NoiseModel m;
        m.delta_phi = lerp(b.delta_phi, u[0]);
        m.theta = lerp(b.theta, u[1]);
        m.p1 = lerp(b.p1, u[2]);
        m.p2 = options_.tie_depolarization ? lerp(b.p2, u[2]) : lerp(b.p2, u[3]);
        if (options_.tie_depolarization) {
            m.p2 = m.p1;
        }
        return m;
    }

    /// Returns +inf without evaluating once the budget is spent.
    double eval(const Point &u) {
        if (exhausted()) {
            return kInf;
        }
        evaluations_++;
        double v = f_(to_model(u));
        if (v < best_f_) {
            best_f_ = v;
            best_x_ = u;
        }
        return v;
    }

   private:
    const FitObjective &f_;
    const FitOptions &options_;
    std::size_t dims_;
    std::size_t evaluations_ = 0;
    Point best_x_;
    double best_f_ = kInf;
};

double reflect(double v) {
    v = std::fmod(std::abs(v), 2.0);
    return v > 1.0 ? 2.0 - v : v;
}

struct LocalResult {
    bool converged;
};

/// Bounded Nelder-Mead on the unit cube; vertices are clamped into [0, 1].
LocalResult nelder_mead(Search &s, const Point &start, double step, std::size_t max_evals) {
    std::size_t n = s.dims();
    std::size_t stop_at = s.evaluations() + max_evals;
    std::vector<Point> x(n + 1, start);
    std::vector<double> fx(n + 1);
    for (std::size_t i = 0; i < n; i++) {
        x[i + 1][i] += start[i] + step <= 1.0 ? step : -step;
    }
    for (std::size_t i = 0; i <= n; i++) {
        fx[i] = s.eval(x[i]);
    }
    auto clamp_point = [](Point p) {
        for (auto &v : p) {
            v = std::clamp(v, 0.0, 1.0);
        }
        return p;
    };
    std::vector<std::size_t> order(n + 1);
    while (!s.exhausted() && s.evaluations() < stop_at) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::vector<Point> xs;
        std::vector<double> fs;
        for (auto i : order) {
            xs.push_back(x[i]);
            fs.push_back(fx[i]);
        }
        x = std::move(xs);
        fx = std::move(fs);

        double spread = 0;
        for (std::size_t i = 1; i <= n; i++) {
            for (std::size_t d = 0; d < n; d++) {
                spread = std::max(spread, std::abs(x[i][d] - x[0][d]));
            }
        }
        if (spread < 1e-10 || fx[n] - fx[0] <= 1e-14 * std::max(fx[0], 1e-14)) {
            return {true};
        }

        Point centroid(n, 0.0);
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t d = 0; d < n; d++) {
                centroid[d] += x[i][d] / static_cast<double>(n);
            }
        }
        auto along = [&](double t) {
            Point p(n);
            for (std::size_t d = 0; d < n; d++) {
                p[d] = centroid[d] + t * (x[n][d] - centroid[d]);
            }
            return clamp_point(p);
        };

        Point xr = along(-1.0);
        double fr = s.eval(xr);
        if (fr < fx[0]) {
            Point xe = along(-2.0);
            double fe = s.eval(xe);
            if (fe < fr) {
                x[n] = xe;
                fx[n] = fe;
            } else {
                x[n] = xr;
                fx[n] = fr;
            }
            continue;
        }
        if (fr < fx[n - 1]) {
            x[n] = xr;
            fx[n] = fr;
            continue;
        }
        bool outside = fr < fx[n];
        Point xc = along(outside ? -0.5 : 0.5);
        double fc = s.eval(xc);
        if (fc < (outside ? fr : fx[n])) {
            x[n] = xc;
            fx[n] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= n; i++) {
            for (std::size_t d = 0; d < n; d++) {
                x[i][d] = x[0][d] + 0.5 * (x[i][d] - x[0][d]);
            }
            fx[i] = s.eval(x[i]);
        }
    }
    return {false};
}

}  // namespace

void FitDataset::validate() const {
    if (phi_grid.empty() || theta_grid.empty()) {
        throw std::invalid_argument("dataset grids must be non-empty");
    }
    if (phi_grid.size() != x_l.size() || theta_grid.size() != z_l.size()) {
        throw std::invalid_argument("dataset grid and expectation lengths differ");
    }
    auto check = [](double v) {
        if (!std::isfinite(v) || !in_unit_range(v)) {
            throw std::invalid_argument("expectation values must lie in [-1, 1]");
        }
    };
    for (double v : x_l) {
        check(v);
    }
    for (double v : z_l) {
        check(v);
    }
    for (const auto &p : full_grid) {
        check(p.x_l);
        check(p.z_l);
    }
}

void ParameterBounds::validate() const {
    check_pair(delta_phi, "delta_phi");
    check_pair(theta, "theta");
    check_pair(p1, "p1");
    check_pair(p2, "p2");
    if (p1.first < 0 || p1.second > 1 || p2.first < 0 || p2.second > 1) {
        throw std::invalid_argument("probability bounds must lie in [0, 1]");
    }
}

bool ParameterBounds::contains(const NoiseModel &m) const {
    auto in = [](std::pair<double, double> b, double v) { return v >= b.first && v <= b.second; };
    return in(delta_phi, m.delta_phi) && in(theta, m.theta) && in(p1, m.p1) && in(p2, m.p2);
}

FitObjective::FitObjective(const FitDataset &data) {
    data.validate();
    for (std::size_t i = 0; i < data.phi_grid.size(); i++) {
        points_.push_back({native_tomography(kHalfPi, data.phi_grid[i], TomographyBasis::X), data.x_l[i]});
    }
    for (std::size_t i = 0; i < data.theta_grid.size(); i++) {
        points_.push_back({native_tomography(data.theta_grid[i], 0.0, TomographyBasis::Z), data.z_l[i]});
    }
    for (const auto &p : data.full_grid) {
        points_.push_back({native_tomography(p.theta, p.phi, TomographyBasis::X), p.x_l});
        points_.push_back({native_tomography(p.theta, p.phi, TomographyBasis::Z), p.z_l});
    }
}

double FitObjective::operator()(const NoiseModel &params) const {
    double total = 0;
    for (const auto &p : points_) {
        double r = expectation_from(readout_distribution(p.native, params, true)) - p.measured;
        total += r * r;
    }
    return total;
}

double objective(const NoiseModel &params, const FitDataset &data) {
    return FitObjective(data)(params);
}

FitResult fit(const FitDataset &data, const FitOptions &options) {
    options.bounds.validate();
    if (options.budget == 0) {
        throw std::invalid_argument("fit budget must be at least 1");
    }
    FitObjective f(data);
    Search s(f, options);
    std::mt19937_64 rng(options.seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::size_t n = s.dims();

    Point x(n);
    for (auto &v : x) {
        v = uniform();
    }
    double fx = s.eval(x);
    double scale = std::max(fx, 1e-12);

    // Annealing phase: 40% of the budget.
    const std::size_t anneal_stop = std::max<std::size_t>(1, options.budget * 2 / 5);
    const double qv = 2.62;
    const double t1 = std::pow(2.0, qv - 1.0) - 1.0;
    std::size_t step = 1;
    while (s.evaluations() < anneal_stop) {
        double temperature = t1 / (std::pow(1.0 + static_cast<double>(step), qv - 1.0) - 1.0);
        if (temperature < 1e-4) {
            step = 1;
            x = s.best_x();
            fx = s.best_f();
            continue;
        }
        double best_before = s.best_f();
        // One full-dimensional jump followed by one jump per coordinate.
        for (std::size_t move = 0; move <= n && s.evaluations() < anneal_stop; move++) {
            Point candidate = x;
            for (std::size_t d = 0; d < n; d++) {
                if (move == 0 || move - 1 == d) {
                    double cauchy = std::tan(kPi * (uniform() - 0.5));
                    candidate[d] = reflect(candidate[d] + temperature * cauchy);
                }
            }
            double fc = s.eval(candidate);
            if (fc <= fx || uniform() < std::exp(-(fc - fx) / (temperature * scale))) {
                x = candidate;
                fx = fc;
            }
        }
        step++;
        if (s.best_f() < best_before && s.evaluations() < anneal_stop) {
            nelder_mead(s, s.best_x(), 0.02, std::min<std::size_t>(30 * n, anneal_stop - s.evaluations()));
        }
    }

    // Polish from the best point until a restart stops improving.
    bool converged = false;
    while (!s.exhausted()) {
        double before = s.best_f();
        auto local = nelder_mead(s, s.best_x(), 0.01, options.budget);
        if (local.converged && s.best_f() >= before * (1.0 - 1e-9)) {
            converged = true;
            break;
        }
    }

    FitResult r;
    r.params = s.to_model(s.best_x());
    r.residual = s.best_f();
    r.evaluations = s.evaluations();
    r.seed = options.seed;
    r.budget_exhausted = !converged;
    return r;
}

FitDataset generate_synthetic_dataset(
    const NoiseModel &params, std::size_t phi_points, std::size_t theta_points, std::optional<std::size_t> shots,
    std::uint64_t seed) {
    if (phi_points < 2 || theta_points < 2) {
        throw std::invalid_argument("synthetic grids need at least two points");
    }
    params.validate();
    FitDataset data;
    data.shots = shots;
    data.seed = seed;
    auto measure = [&](const Circuit &c, std::size_t index) {
        auto p = readout_distribution(c, params, true);
        if (!shots) {
            return expectation_from(p);
        }
        auto sampled = sample_shots(p, *shots, seed + index, 0);
        return sampled[0] + sampled[2] - sampled[1] - sampled[3];
    };
    for (std::size_t i = 0; i < phi_points; i++) {
        double phi = 2 * kPi * static_cast<double>(i) / static_cast<double>(phi_points);
        data.phi_grid.push_back(phi);
        data.x_l.push_back(measure(native_tomography(kHalfPi, phi, TomographyBasis::X), i));
    }
    for (std::size_t j = 0; j < theta_points; j++) {
        double theta = kPi * static_cast<double>(j) / static_cast<double>(theta_points - 1);
        data.theta_grid.push_back(theta);
        data.z_l.push_back(measure(native_tomography(theta, 0.0, TomographyBasis::Z), phi_points + j));
    }
    return data;
}

}  // namespace walkqed
