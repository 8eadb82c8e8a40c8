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

#ifndef WALKQED_TESTS_ORACLE_H
#define WALKQED_TESTS_ORACLE_H

// Reference implementations used only by tests. Operators are built from
// explicit Kronecker products of textbook 2x2 matrices, sharing no code with
// the library's embedding or simulation kernels.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline const double kPi = 3.14159265358979323846;

inline Mat m2(C a, C b, C c, C d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}
inline Mat I2() {
    return m2(1, 0, 0, 1);
}
inline Mat X() {
    return m2(0, 1, 1, 0);
}
inline Mat Y() {
    return m2(0, C(0, -1), C(0, 1), 0);
}
inline Mat Z() {
    return m2(1, 0, 0, -1);
}
inline Mat P0() {
    return m2(1, 0, 0, 0);
}
inline Mat P1() {
    return m2(0, 0, 0, 1);
}
inline Mat H() {
    return m2(1, 1, 1, -1) / std::sqrt(2.0);
}
inline Mat RX(double a) {
    return m2(std::cos(a / 2), C(0, -std::sin(a / 2)), C(0, -std::sin(a / 2)), std::cos(a / 2));
}
inline Mat RZ(double a) {
    return m2(std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2));
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// op_0 (x) op_1 (x) ... with qubit 0 leftmost.
inline Mat tensor(const std::vector<Mat> &ops) {
    Mat out = Mat::Identity(1, 1);
    for (const auto &o : ops) {
        out = kron(out, o);
    }
    return out;
}

inline Mat on(std::size_t n, std::size_t q, const Mat &g) {
    std::vector<Mat> ops(n, I2());
    ops[q] = g;
    return tensor(ops);
}

inline Mat pair(std::size_t n, std::size_t a, const Mat &ga, std::size_t b, const Mat &gb) {
    std::vector<Mat> ops(n, I2());
    ops[a] = ga;
    ops[b] = gb;
    return tensor(ops);
}

inline Mat cnot(std::size_t n, std::size_t c, std::size_t t) {
    return on(n, c, P0()) + pair(n, c, P1(), t, X());
}
inline Mat cz(std::size_t n, std::size_t a, std::size_t b) {
    return on(n, a, P0()) + pair(n, a, P1(), b, Z());
}
inline Mat swap(std::size_t n, std::size_t a, std::size_t b) {
    Mat dim_id = Mat::Identity(std::size_t{1} << n, std::size_t{1} << n);
    return (dim_id + pair(n, a, X(), b, X()) + pair(n, a, Y(), b, Y()) + pair(n, a, Z(), b, Z())) / 2.0;
}
/// exp(i pi/4 (XX + YY)).
inline Mat iswap(std::size_t n, std::size_t a, std::size_t b) {
    Mat xy = pair(n, a, X(), b, X()) + pair(n, a, Y(), b, Y());
    Mat dim_id = Mat::Identity(xy.rows(), xy.cols());
    // (XX + YY)/2 squares to the projector onto the single-excitation subspace.
    Mat half = xy / 2.0;
    Mat proj = half * half;
    return dim_id - proj + C(0, 1) * half;
}
/// exp(-i a (XX + YY)/4).
inline Mat rxxyy(std::size_t n, std::size_t a, std::size_t b, double angle) {
    Mat half = (pair(n, a, X(), b, X()) + pair(n, a, Y(), b, Y())) / 2.0;
    Mat proj = half * half;
    Mat dim_id = Mat::Identity(half.rows(), half.cols());
    return dim_id - proj + std::cos(angle / 2) * proj - C(0, std::sin(angle / 2)) * half;
}
inline Mat cphase(std::size_t n, std::size_t a, std::size_t b, double angle) {
    Mat both = pair(n, a, P1(), b, P1());
    Mat dim_id = Mat::Identity(both.rows(), both.cols());
    return dim_id + (std::polar(1.0, angle) - 1.0) * both;
}

inline Vec ground(std::size_t n) {
    Vec v = Vec::Zero(std::size_t{1} << n);
    v(0) = 1;
    return v;
}

/// Probability that qubit q reads 1.
inline double prob_one(const Vec &psi, std::size_t n, std::size_t q) {
    return (psi.adjoint() * on(n, q, P1()) * psi)(0, 0).real();
}

/// Joint distribution over (a, b) bits, index 2*bit_a + bit_b.
inline std::vector<double> joint(const Mat &rho, std::size_t n, std::size_t a, std::size_t b) {
    std::vector<double> out(4);
    Mat pa[] = {P0(), P1()};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out[2 * i + j] = (rho * pair(n, a, pa[i], b, pa[j])).trace().real();
        }
    }
    return out;
}

/// Minimum over unit-modulus c of max |u - c v|, approximated by aligning on
/// the trace inner product.
inline double phase_distance(const Mat &u, const Mat &v) {
    C ip = (v.adjoint() * u).trace();
    C phase = std::abs(ip) > 0 ? ip / std::abs(ip) : C(1);
    return (u - phase * v).cwiseAbs().maxCoeff();
}

inline Mat random_density(std::mt19937_64 &rng, std::size_t dim, std::size_t rank) {
    std::normal_distribution<double> g;
    Mat a(dim, rank);
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            a(i, j) = C(g(rng), g(rng));
        }
    }
    Mat rho = a * a.adjoint();
    return rho / rho.trace();
}

inline Mat random_unitary(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> g;
    Mat a(dim, dim);
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            a(i, j) = C(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Mat> qr(a);
    return qr.householderQ();
}

}  // namespace oracle

#endif
