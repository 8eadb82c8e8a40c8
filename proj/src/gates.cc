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

#include "walkqed/gates.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace walkqed {

namespace {

constexpr Complex kI{0.0, 1.0};

struct NameEntry {
    GateType type;
    std::string_view name;
};

constexpr NameEntry kNames[] = {
    {GateType::RX, "RX"},
    {GateType::RZ, "RZ"},
    {GateType::H, "H"},
    {GateType::X, "X"},
    {GateType::CZ, "CZ"},
    {GateType::CNOT, "CNOT"},
    {GateType::SWAP, "SWAP"},
    {GateType::ISWAP, "ISWAP"},
    {GateType::CPHASE, "CPHASE"},
    {GateType::RXXYY, "RXXYY"},
};

}  // namespace

bool GateKind::operator==(const GateKind &other) const {
    return type == other.type && (!has_angle(type) || angle == other.angle);
}

std::string GateKind::str() const {
    std::ostringstream out;
    out << gate_name(type);
    if (has_angle(type)) {
        out << "(" << angle << ")";
    }
    return out.str();
}

std::size_t arity(GateType t) {
    switch (t) {
        case GateType::RX:
        case GateType::RZ:
        case GateType::H:
        case GateType::X:
            return 1;
        default:
            return 2;
    }
}

bool has_angle(GateType t) {
    return t == GateType::RX || t == GateType::RZ || t == GateType::CPHASE || t == GateType::RXXYY;
}

std::string_view gate_name(GateType t) {
    for (const auto &e : kNames) {
        if (e.type == t) {
            return e.name;
        }
    }
    return "?";
}

std::optional<GateType> parse_gate_name(std::string_view name) {
    for (const auto &e : kNames) {
        if (e.name == name) {
            return e.type;
        }
    }
    return std::nullopt;
}

ComplexMatrix matrix_of(const GateKind &g) {
    if (has_angle(g.type) && !std::isfinite(g.angle)) {
        throw std::invalid_argument("non-finite gate angle for " + std::string(gate_name(g.type)));
    }
    double c = std::cos(g.angle / 2);
    double s = std::sin(g.angle / 2);
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix m;
    switch (g.type) {
        case GateType::RX:
            m.resize(2, 2);
            m << c, -kI * s, -kI * s, c;
            break;
        case GateType::RZ:
            m.resize(2, 2);
            m << std::exp(-kI * (g.angle / 2)), 0, 0, std::exp(kI * (g.angle / 2));
            break;
        case GateType::H:
            m.resize(2, 2);
            m << r, r, r, -r;
            break;
        case GateType::X:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            break;
        case GateType::CZ:
            m = ComplexMatrix::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case GateType::CNOT:
            m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            break;
        case GateType::SWAP:
            m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            break;
        case GateType::ISWAP:
            m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = m(3, 3) = 1;
            m(1, 2) = m(2, 1) = kI;
            break;
        case GateType::CPHASE:
            m = ComplexMatrix::Identity(4, 4);
            m(3, 3) = std::exp(kI * g.angle);
            break;
        case GateType::RXXYY:
            m = ComplexMatrix::Identity(4, 4);
            m(1, 1) = m(2, 2) = c;
            m(1, 2) = m(2, 1) = -kI * s;
            break;
    }
    return m;
}

bool is_native(const GateKind &g) {
    switch (g.type) {
        case GateType::RZ:
        case GateType::CZ:
            return true;
        case GateType::RX:
            return std::abs(g.angle - kHalfPi) < 1e-12;
        default:
            return false;
    }
}

}  // namespace walkqed
