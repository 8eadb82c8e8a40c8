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

#include "walkqed/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "walkqed/circuit.h"
#include "walkqed/estimator.h"
#include "walkqed/experiment.h"
#include "walkqed/json_io.h"
#include "walkqed/noise.h"
#include "walkqed/transpile.h"
#include "walkqed/verify.h"

namespace walkqed {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", v == 0.0 ? 0.0 : v);
    return buf;
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file '" + path + "'");
    }
    f << contents;
    if (!f) {
        throw UsageError("failed writing '" + path + "'");
    }
}

/// Shared noise/profile/shots/seed configuration.
struct NoiseFlags {
    std::string noise;
    std::string profile;
    std::optional<std::size_t> shots;
    std::uint64_t seed = 0;

    void attach(CLI::App *cmd) {
        cmd->add_option("--noise", noise, "Noise-model JSON path, or 'none'");
        cmd->add_option("--profile", profile, "Device profile: 'paper' or a profile JSON path");
        cmd->add_option("--shots", shots, "Shots per circuit (default: exact probabilities)")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Base RNG seed");
    }

    /// Profile values first, then an explicit --noise overrides the model.
    RunOptions resolve() const {
        RunOptions o;
        o.shots = shots;
        o.seed = seed;
        if (!profile.empty()) {
            DeviceProfile p = load_profile(profile);
            o.noise = p.noise;
            o.readout = p.readout();
        }
        if (noise == "none") {
            o.noise.reset();
        } else if (!noise.empty()) {
            o.noise = noise_model_from_json(read_json_file(noise));
        }
        return o;
    }

    static DeviceProfile load_profile(const std::string &name) {
        if (name == "paper") {
            return DeviceProfile::three_transmon_chain();
        }
        auto j = read_json_file(name);
        DeviceProfile p;
        if (!j.is_object() || !j.contains("noise") || !j.contains("readout_fidelity")) {
            throw FormatError("profile '" + name + "' needs 'noise' and 'readout_fidelity'");
        }
        p.noise = noise_model_from_json(j["noise"]);
        const auto &r = j["readout_fidelity"];
        if (!r.is_array() || r.size() != 3) {
            throw FormatError("profile 'readout_fidelity' must hold three numbers");
        }
        for (std::size_t q = 0; q < 3; q++) {
            if (!r[q].is_number()) {
                throw FormatError("profile 'readout_fidelity' must hold three numbers");
            }
            p.readout_fidelity[q] = r[q].get<double>();
        }
        p.readout();  // validates
        return p;
    }
};

struct SweepCmd {
    std::string scheme = "walking";
    std::size_t points = 21;
    std::string out;
    bool literal = false;
    NoiseFlags flags;

    std::string run() const {
        Scheme s = scheme == "static" ? Scheme::Static : Scheme::Walking;
        RunOptions o = flags.resolve();
        if (literal) {
            o.corrected_form = CorrectedObservableForm::Literal;
        }
        std::vector<double> eps(points);
        for (std::size_t i = 0; i < points; i++) {
            eps[i] = kPi * static_cast<double>(i) / static_cast<double>(points - 1);
        }
        std::string csv = "epsilon,p00,p01,p10,p11,z_anc,z_log_raw,z_log_corrected\n";
        for (const auto &r : run_error_sweep(s, eps, o)) {
            csv += num(r.epsilon);
            for (double p : r.joint_probs) {
                csv += "," + num(p);
            }
            csv += "," + num(r.anc_expectation) + "," + num(r.raw_logical) + "," + num(r.corrected_logical) + "\n";
        }
        return csv;
    }
};

struct TomoCmd {
    std::string grid = "states";
    std::size_t points = 25;
    std::string out;
    bool project = false;
    NoiseFlags flags;

    std::vector<LogicalStateSpec> states() const {
        std::vector<LogicalStateSpec> s;
        auto n = static_cast<double>(points);
        if (grid == "states") {
            return reference_states();
        } else if (grid == "theta") {
            for (std::size_t i = 0; i < points; i++) {
                s.push_back({kPi * static_cast<double>(i) / (n - 1), 0.0});
            }
        } else if (grid == "phi") {
            for (std::size_t i = 0; i < points; i++) {
                s.push_back({kHalfPi, 2 * kPi * static_cast<double>(i) / n});
            }
        } else {
            for (std::size_t i = 0; i < points; i++) {
                for (std::size_t j = 0; j < points; j++) {
                    s.push_back({kPi * static_cast<double>(i) / (n - 1), 2 * kPi * static_cast<double>(j) / n});
                }
            }
        }
        return s;
    }

    std::string run() const {
        RunOptions o = flags.resolve();
        o.project_to_physical = project;
        std::string csv = "theta,phi,branch,x_l,y_l,z_l,fidelity,weight,dropout\n";
        auto grid_states = states();
        for (std::size_t i = 0; i < grid_states.size(); i++) {
            o.seed = flags.seed + i;
            auto t = run_tomography(grid_states[i], o);
            static constexpr const char *kNames[] = {"all", "plus", "minus"};
            for (std::size_t b = 0; b < 3; b++) {
                const auto &br = t.branches[b];
                csv += num(t.spec.theta) + "," + num(t.spec.phi) + "," + kNames[b];
                for (double v : br.pauli_expectations) {
                    csv += "," + num(v);
                }
                csv += "," + num(br.fidelity) + "," + num(br.weight) + "," + num(t.dropout) + "\n";
            }
        }
        return csv;
    }
};

struct DatasetCmd {
    std::size_t points = 13;
    std::string out;
    NoiseFlags flags;

    FitDataset build() const {
        return generate_synthetic_dataset(truth(), points, points, flags.shots, flags.seed);
    }

    /// Without --noise or --profile the fitted device model is the truth;
    /// `--noise none` gives a noiseless dataset.
    NoiseModel truth() const {
        if (flags.noise.empty() && flags.profile.empty()) {
            return NoiseModel::fitted_device();
        }
        return flags.resolve().noise.value_or(NoiseModel{0.0, 0.0, 0.0, 0.0});
    }
};

struct FitCmd {
    std::string data;
    std::size_t budget = 4000;
    std::uint64_t fit_seed = 0;
    bool tie = false;
    std::string out;
    DatasetCmd synthetic;

    std::string run() const {
        FitDataset d;
        nlohmann::json truth;
        if (!data.empty()) {
            d = dataset_from_json(read_json_file(data));
        } else {
            d = synthetic.build();
            truth = noise_model_to_json(synthetic.truth());
        }
        FitOptions opt;
        opt.budget = budget;
        opt.seed = fit_seed;
        opt.tie_depolarization = tie;
        auto j = fit_result_to_json(fit(d, opt));
        if (!truth.is_null()) {
            j["truth"] = truth;
        }
        return j.dump(2) + "\n";
    }
};

struct TranspileCmd {
    std::string in;
    std::string builder;
    double epsilon = 0.3;
    std::string fusion = "cz";
    std::string out;
    std::string metrics_out;

    std::pair<std::string, std::string> run() const {
        if (in.empty() == builder.empty()) {
            throw UsageError("give exactly one of --in or --builder");
        }
        Circuit c(3);
        if (!in.empty()) {
            c = circuit_from_json(read_json_file(in));
        } else if (builder == "static") {
            c = build_static_detection(epsilon);
        } else if (builder == "walking") {
            c = build_walking_detection(epsilon);
        } else {
            c = build_tomography_circuit(kHalfPi, 0.0, TomographyBasis::X);
        }
        TranspileOptions o;
        o.fusion = fusion == "iswap" ? FusionTarget::ISwap : FusionTarget::TwoCz;
        Circuit t = transpile(c, Topology::chain(c.qubit_count()), o);
        return {circuit_to_json(t).dump(2) + "\n", metrics_to_json(metrics(t)).dump(2) + "\n"};
    }
};

struct VerifyCmd {
    double tolerance = 1e-9;
    std::string out;
    bool corrupt = false;

    std::pair<std::string, bool> run() const {
        TranspileOptions o;
        o.corrupt_hadamard_rule = corrupt;
        auto report = run_verification(tolerance, o);
        nlohmann::json j;
        j["tolerance"] = tolerance;
        j["passed"] = report.passed();
        j["checks"] = nlohmann::json::array();
        for (const auto &c : report.checks) {
            j["checks"].push_back(
                {{"name", c.name}, {"passed", c.passed}, {"max_deviation", c.max_deviation}, {"detail", c.detail}});
        }
        return {j.dump(2) + "\n", report.passed()};
    }
};

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Walking-ancilla error detection on a three-qubit chain"};
    app.name("walkqed");
    app.require_subcommand(1);

    SweepCmd sweep;
    auto *sw = app.add_subcommand("sweep", "Sweep the injected error angle over [0, pi]");
    sw->add_option("--scheme", sweep.scheme)->check(CLI::IsMember({"static", "walking"}));
    sw->add_option("--points", sweep.points)->check(CLI::Range(2, 100000));
    sw->add_option("--out", sweep.out, "Output CSV path")->required();
    sw->add_flag("--literal-corrected", sweep.literal, "Use 1 - (p00 + p11) for the corrected column");
    sweep.flags.attach(sw);

    TomoCmd tomo;
    auto *tm = app.add_subcommand("tomo", "Logical-state tomography with syndrome post-selection");
    tm->add_option("--grid", tomo.grid)->check(CLI::IsMember({"states", "theta", "phi", "full"}));
    tm->add_option("--points", tomo.points)->check(CLI::Range(2, 10000));
    tm->add_option("--out", tomo.out, "Output CSV path")->required();
    tm->add_flag("--project", tomo.project, "Project reconstructed states into the Bloch ball");
    tomo.flags.attach(tm);

    DatasetCmd dataset;
    auto *ds = app.add_subcommand("dataset", "Generate a synthetic tomography dataset for fitting");
    ds->add_option("--points", dataset.points, "Grid points per axis")->check(CLI::Range(2, 1000));
    ds->add_option("--out", dataset.out, "Output JSON path")->required();
    dataset.flags.attach(ds);

    FitCmd fitc;
    auto *ft = app.add_subcommand("fit", "Fit noise parameters to tomography data");
    ft->add_option("--data", fitc.data, "Dataset JSON (default: synthesize one)");
    ft->add_option("--budget", fitc.budget, "Objective evaluation budget")->check(CLI::PositiveNumber);
    ft->add_option("--fit-seed", fitc.fit_seed, "Optimizer seed");
    ft->add_flag("--tie", fitc.tie, "Share one depolarizing probability between p1 and p2");
    ft->add_option("--points", fitc.synthetic.points)->check(CLI::Range(2, 1000));
    ft->add_option("--out", fitc.out, "Output JSON path")->required();
    fitc.synthetic.flags.attach(ft);

    TranspileCmd tr;
    auto *tp = app.add_subcommand("transpile", "Lower a circuit to the native gate set on a chain");
    tp->add_option("--in", tr.in, "Circuit JSON");
    tp->add_option("--builder", tr.builder)->check(CLI::IsMember({"static", "walking", "tomography"}));
    tp->add_option("--epsilon", tr.epsilon);
    tp->add_option("--fusion", tr.fusion)->check(CLI::IsMember({"cz", "iswap"}));
    tp->add_option("--out", tr.out, "Output circuit JSON path")->required();
    tp->add_option("--metrics", tr.metrics_out, "Metrics JSON path (default: stdout)");

    VerifyCmd vf;
    auto *ve = app.add_subcommand("verify", "Run the equivalence property suite");
    ve->add_option("--tolerance", vf.tolerance)->check(CLI::PositiveNumber);
    ve->add_option("--out", vf.out, "Report JSON path (default: stdout)");
    ve->add_flag("--corrupt-rule", vf.corrupt)->group("");

    std::vector<std::string> argv_store{"walkqed"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sw->parsed()) {
            auto csv = sweep.run();
            write_file(sweep.out, csv);
        } else if (tm->parsed()) {
            auto csv = tomo.run();
            write_file(tomo.out, csv);
        } else if (ds->parsed()) {
            write_file(dataset.out, dataset_to_json(dataset.build()).dump(2) + "\n");
        } else if (ft->parsed()) {
            auto j = fitc.run();
            write_file(fitc.out, j);
        } else if (tp->parsed()) {
            auto [circuit, m] = tr.run();
            write_file(tr.out, circuit);
            if (tr.metrics_out.empty()) {
                out << m;
            } else {
                write_file(tr.metrics_out, m);
            }
        } else if (ve->parsed()) {
            auto [report, ok] = vf.run();
            if (vf.out.empty()) {
                out << report;
            } else {
                write_file(vf.out, report);
            }
            if (!ok) {
                err << "verification failed\n";
                return kExitFailure;
            }
        }
    } catch (const TopologyViolation &e) {
        err << "topology violation: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        // FormatError and precondition failures on user-supplied input.
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace walkqed
