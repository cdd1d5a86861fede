/*
 * Copyright 2026 The msq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "msq/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace msq {

namespace {

using cd = std::complex<double>;
using Mat = std::array<cd, 4>;  // row-major 2x2

Mat numeric_matrix(const Gate &g, std::span<const double> theta) {
    const double r = 1.0 / std::sqrt(2.0);
    const cd I(0.0, 1.0);
    switch (g.kind) {
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y:
            return {0.0, -I, I, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S:
            return {1.0, 0.0, 0.0, I};
        case GateKind::Sdg:
            return {1.0, 0.0, 0.0, -I};
        default:
            break;
    }
    double t = theta[g.param->index] * (g.param->negated ? -1.0 : 1.0);
    switch (g.kind) {
        case GateKind::Rx:
            return {std::cos(t / 2), -I * std::sin(t / 2), -I * std::sin(t / 2), std::cos(t / 2)};
        case GateKind::Ry:
            return {std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)};
        default:
            return {std::exp(-I * (t / 2)), 0.0, 0.0, std::exp(I * (t / 2))};
    }
}

}  // namespace

StateVector separable_state(std::span<const std::pair<double, double>> amps) {
    StateVector psi{1.0};
    for (const auto &[a, b] : amps) {
        StateVector next(psi.size() * 2);
        for (size_t k = 0; k < psi.size(); ++k) {
            next[2 * k] = psi[k] * a;
            next[2 * k + 1] = psi[k] * b;
        }
        psi = std::move(next);
    }
    return psi;
}

StateVector oracle_state(const Circuit &c, std::span<const double> theta, const StateVector &input) {
    const int n = c.n_qubits();
    const size_t dim = size_t{1} << n;
    if (theta.size() != c.params().size()) throw std::invalid_argument("angle count does not match circuit");
    StateVector psi;
    if (!input.empty()) {
        if (input.size() != dim) throw std::invalid_argument("input state dimension mismatch");
        psi = input;
    } else if (c.input() == InputKind::Zeros) {
        psi.assign(dim, 0.0);
        psi[0] = 1.0;
    } else if (c.input() == InputKind::Vector) {
        for (const Coeff &a : c.input_vector()) psi.push_back(a.to_complex());
    } else {
        throw std::invalid_argument("separable circuit needs an explicit numeric input state");
    }
    for (const Gate &g : c.gates()) {
        Mat m = numeric_matrix(g, theta);
        const size_t stride = size_t{1} << (n - g.target);
        size_t ctrl = 0;
        for (int q : g.controls) ctrl |= size_t{1} << (n - q);
        for (size_t base = 0; base < dim; base += 2 * stride) {
            for (size_t off = 0; off < stride; ++off) {
                size_t i0 = base + off, i1 = i0 + stride;
                if ((i0 & ctrl) != ctrl) continue;
                cd x = psi[i0], y = psi[i1];
                psi[i0] = m[0] * x + m[1] * y;
                psi[i1] = m[2] * x + m[3] * y;
            }
        }
    }
    return psi;
}

std::complex<double> oracle_numeric(const Circuit &c, const MeasurementSpec &spec, std::span<const double> theta,
                                    const StateVector &input) {
    const int n = c.n_qubits();
    if (spec.kind == MeasureKind::KernelEntry) {
        StateVector psi = oracle_state(measured_circuit(c, spec), theta, input);
        return std::norm(psi[0]);
    }
    StateVector psi = oracle_state(c, theta, input);
    switch (spec.kind) {
        case MeasureKind::ProbZero: {
            double p = 0.0;
            const size_t bit = size_t{1} << (n - spec.qubit);
            for (size_t k = 0; k < psi.size(); ++k) {
                if (!(k & bit)) p += std::norm(psi[k]);
            }
            return p;
        }
        case MeasureKind::Amp0n:
            if (spec.part == Part::Real) return psi[0].real();
            if (spec.part == Part::Imag) return psi[0].imag();
            return psi[0];
        case MeasureKind::PauliTransition: {
            if (static_cast<int>(spec.pauli.size()) != n) throw std::invalid_argument("Pauli string length mismatch");
            // Apply each Pauli factor as a gate, then take the inner product.
            StateVector phi = psi;
            for (int q = 1; q <= n; ++q) {
                char p = spec.pauli[static_cast<size_t>(q - 1)];
                if (p == 'I') continue;
                const size_t bit = size_t{1} << (n - q);
                for (size_t k = 0; k < phi.size(); ++k) {
                    if (k & bit) continue;
                    cd x = phi[k], y = phi[k | bit];
                    if (p == 'X') {
                        phi[k] = y;
                        phi[k | bit] = x;
                    } else if (p == 'Y') {
                        phi[k] = cd(0, -1) * y;
                        phi[k | bit] = cd(0, 1) * x;
                    } else if (p == 'Z') {
                        phi[k | bit] = -y;
                    } else {
                        throw std::invalid_argument("malformed Pauli string");
                    }
                }
            }
            cd total = 0.0;
            for (size_t k = 0; k < psi.size(); ++k) total += std::conj(psi[k]) * phi[k];
            return total;
        }
        default:
            break;
    }
    return 0.0;
}

}  // namespace msq
