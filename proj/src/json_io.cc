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

#include "walkqed/json_io.h"

#include <fstream>
#include <sstream>

namespace walkqed {

namespace {

template <typename T>
T field(const nlohmann::json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string("missing field \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("bad field \"") + key + "\": " + e.what());
    }
}

std::string convention_name(DepolDimensionConvention c) {
    return c == DepolDimensionConvention::PairSubspace ? "PairSubspace" : "PerGateSubspace";
}

}  // namespace

nlohmann::json circuit_to_json(const Circuit &c) {
    nlohmann::json moments = nlohmann::json::array();
    for (const auto &m : c.moments()) {
        nlohmann::json ops = nlohmann::json::array();
        for (const auto &op : m) {
            nlohmann::json o;
            o["gate"] = std::string(gate_name(op.gate.type));
            if (has_angle(op.gate.type)) {
                o["angle"] = op.gate.angle;
            }
            o["qubits"] = op.qubits;
            ops.push_back(std::move(o));
        }
        moments.push_back(std::move(ops));
    }
    nlohmann::json j;
    j["qubits"] = c.qubit_count();
    j["moments"] = std::move(moments);
    if (!c.labels().empty()) {
        j["labels"] = c.labels();
    }
    return j;
}

Circuit circuit_from_json(const nlohmann::json &j) {
    auto n = field<std::size_t>(j, "qubits");
    if (n == 0) {
        throw FormatError("circuit needs at least one qubit");
    }
    Circuit c(n);
    const auto moments = field<nlohmann::json>(j, "moments");
    if (!moments.is_array()) {
        throw FormatError("\"moments\" must be an array");
    }
    for (const auto &m : moments) {
        if (!m.is_array()) {
            throw FormatError("each moment must be an array of gates");
        }
        Moment moment;
        for (const auto &o : m) {
            auto name = field<std::string>(o, "gate");
            auto type = parse_gate_name(name);
            if (!type) {
                throw FormatError("unknown gate \"" + name + "\"");
            }
            GateKind g{*type, 0.0};
            if (has_angle(*type)) {
                g.angle = field<double>(o, "angle");
            }
            moment.push_back({g, field<std::vector<std::size_t>>(o, "qubits")});
        }
        try {
            c.append_moment(std::move(moment));
        } catch (const std::exception &e) {
            throw FormatError(e.what());
        }
    }
    if (j.contains("labels")) {
        for (const auto &[k, v] : field<std::map<std::string, std::string>>(j, "labels")) {
            c.set_label(k, v);
        }
    }
    return c;
}

nlohmann::json noise_model_to_json(const NoiseModel &m) {
    return {
        {"delta_phi", m.delta_phi},
        {"theta", m.theta},
        {"p1", m.p1},
        {"p2", m.p2},
        {"depol_dimension_convention", convention_name(m.depol_dimension_convention)},
    };
}

NoiseModel noise_model_from_json(const nlohmann::json &j) {
    NoiseModel m;
    m.delta_phi = field<double>(j, "delta_phi");
    m.theta = field<double>(j, "theta");
    m.p1 = field<double>(j, "p1");
    m.p2 = field<double>(j, "p2");
    if (j.contains("depol_dimension_convention")) {
        auto c = field<std::string>(j, "depol_dimension_convention");
        if (c == "PerGateSubspace") {
            m.depol_dimension_convention = DepolDimensionConvention::PerGateSubspace;
        } else if (c == "PairSubspace") {
            m.depol_dimension_convention = DepolDimensionConvention::PairSubspace;
        } else {
            throw FormatError("unknown depol_dimension_convention \"" + c + "\"");
        }
    }
    try {
        m.validate();
    } catch (const std::invalid_argument &e) {
        throw FormatError(e.what());
    }
    return m;
}

nlohmann::json dataset_to_json(const FitDataset &d) {
    nlohmann::json j;
    j["phi_grid"] = d.phi_grid;
    j["x_l"] = d.x_l;
    j["theta_grid"] = d.theta_grid;
    j["z_l"] = d.z_l;
    j["shots"] = d.shots ? nlohmann::json(*d.shots) : nlohmann::json(nullptr);
    j["seed"] = d.seed;
    if (!d.full_grid.empty()) {
        nlohmann::json grid = nlohmann::json::array();
        for (const auto &p : d.full_grid) {
            grid.push_back({{"theta", p.theta}, {"phi", p.phi}, {"x_l", p.x_l}, {"z_l", p.z_l}});
        }
        j["full_grid"] = std::move(grid);
    }
    return j;
}

FitDataset dataset_from_json(const nlohmann::json &j) {
    FitDataset d;
    d.phi_grid = field<std::vector<double>>(j, "phi_grid");
    d.x_l = field<std::vector<double>>(j, "x_l");
    d.theta_grid = field<std::vector<double>>(j, "theta_grid");
    d.z_l = field<std::vector<double>>(j, "z_l");
    if (j.contains("shots") && !j.at("shots").is_null()) {
        d.shots = field<std::size_t>(j, "shots");
    }
    if (j.contains("seed")) {
        d.seed = field<std::uint64_t>(j, "seed");
    }
    if (j.contains("full_grid")) {
        for (const auto &p : j.at("full_grid")) {
            d.full_grid.push_back(
                {field<double>(p, "theta"), field<double>(p, "phi"), field<double>(p, "x_l"), field<double>(p, "z_l")});
        }
    }
    try {
        d.validate();
    } catch (const std::invalid_argument &e) {
        throw FormatError(e.what());
    }
    return d;
}

nlohmann::json fit_result_to_json(const FitResult &r) {
    return {
        {"params", noise_model_to_json(r.params)},
        {"residual", r.residual},
        {"evaluations", r.evaluations},
        {"seed", r.seed},
        {"budget_exhausted", r.budget_exhausted},
    };
}

FitResult fit_result_from_json(const nlohmann::json &j) {
    FitResult r;
    r.params = noise_model_from_json(field<nlohmann::json>(j, "params"));
    r.residual = field<double>(j, "residual");
    r.evaluations = field<std::size_t>(j, "evaluations");
    r.seed = field<std::uint64_t>(j, "seed");
    r.budget_exhausted = field<bool>(j, "budget_exhausted");
    return r;
}

nlohmann::json metrics_to_json(const CircuitMetrics &m) {
    return {
        {"cz_count", m.cz_count},
        {"rx_count", m.rx_count},
        {"moment_depth", m.moment_depth},
        {"two_qubit_depth", m.two_qubit_depth},
    };
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError(path + ": " + e.what());
    }
}

}  // namespace walkqed
