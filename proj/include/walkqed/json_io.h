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

#ifndef WALKQED_JSON_IO_H
#define WALKQED_JSON_IO_H

#include <string>

#include "json.hpp"
#include "walkqed/circuit.h"
#include "walkqed/estimator.h"
#include "walkqed/noise.h"
#include "walkqed/transpile.h"

namespace walkqed {

/// Malformed or out-of-contract JSON input.
class FormatError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// {"qubits": n, "moments": [[{"gate": "CZ", "qubits": [0, 1]}, ...], ...]}
/// with "angle" on rotation gates and an optional "labels" object.
nlohmann::json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const nlohmann::json &j);

/// {"delta_phi", "theta", "p1", "p2", "depol_dimension_convention"}.
nlohmann::json noise_model_to_json(const NoiseModel &m);
NoiseModel noise_model_from_json(const nlohmann::json &j);

nlohmann::json dataset_to_json(const FitDataset &d);
FitDataset dataset_from_json(const nlohmann::json &j);

nlohmann::json fit_result_to_json(const FitResult &r);
FitResult fit_result_from_json(const nlohmann::json &j);

nlohmann::json metrics_to_json(const CircuitMetrics &m);

/// Reads and parses a JSON file; throws FormatError with the parser message.
nlohmann::json read_json_file(const std::string &path);

}  // namespace walkqed

#endif
