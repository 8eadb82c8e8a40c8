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

#ifndef WALKQED_GATES_H
#define WALKQED_GATES_H

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "walkqed/linalg.h"

namespace walkqed {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;

/// Every gate the circuits use. RX/RZ/CPHASE/RXXYY carry an angle in radians.
enum class GateType { RX, RZ, H, X, CZ, CNOT, SWAP, ISWAP, CPHASE, RXXYY };

struct GateKind {
    GateType type;
    double angle = 0.0;

    static GateKind rx(double a) {
        return {GateType::RX, a};
    }
    static GateKind rz(double a) {
        return {GateType::RZ, a};
    }
    static GateKind h() {
        return {GateType::H};
    }
    static GateKind x() {
        return {GateType::X};
    }
    static GateKind cz() {
        return {GateType::CZ};
    }
    static GateKind cnot() {
        return {GateType::CNOT};
    }
    static GateKind swap() {
        return {GateType::SWAP};
    }
    static GateKind iswap() {
        return {GateType::ISWAP};
    }
    static GateKind cphase(double a) {
        return {GateType::CPHASE, a};
    }
    static GateKind rxxyy(double a) {
        return {GateType::RXXYY, a};
    }

    bool operator==(const GateKind &other) const;
    std::string str() const;
};

std::size_t arity(GateType t);
bool has_angle(GateType t);
std::string_view gate_name(GateType t);
std::optional<GateType> parse_gate_name(std::string_view name);

/// Unitary of the gate. Rotations follow RX(a) = exp(-i a X/2),
/// RZ(a) = exp(-i a Z/2); CNOT's first qubit is the control;
/// CPHASE(a) = diag(1, 1, 1, e^{ia}); RXXYY(a) = exp(-i a (XX + YY)/4).
/// Global phases are kept as written. Throws on a non-finite angle.
ComplexMatrix matrix_of(const GateKind &g);

/// True for the device's native set: RX(pi/2), RZ(any), CZ.
bool is_native(const GateKind &g);

}  // namespace walkqed

#endif
