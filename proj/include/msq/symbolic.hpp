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

#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "msq/circuit.hpp"
#include "msq/expr.hpp"

namespace msq {

/// Symbols standing for rotation parameter k: C(k) = cos(theta_k / 2), S(k) = sin(theta_k / 2).
inline Sym param_cos(uint32_t k) {
    return Sym::c(k);
}
inline Sym param_sin(uint32_t k) {
    return Sym::s(k);
}

/// Output amplitudes of a circuit; index bit (n - q) holds qubit q.
struct SymState {
    int n_qubits = 0;
    std::vector<Poly> amps;
};

/// Exact statevector simulation. Separable inputs use real symbols
/// A(i), B(i) for the |0>, |1> amplitudes of qubit i.
SymState run_symbolic(const Circuit &c);

/// Sum of amp * conj(amp) over all basis states.
Expr norm_squared(const SymState &s);

enum class MeasureKind { ProbZero, Amp0n, PauliTransition, KernelEntry };
enum class Part { Complex, Real, Imag };

struct MeasurementSpec {
    MeasureKind kind = MeasureKind::Amp0n;
    int qubit = 1;                           // ProbZero
    std::string pauli;                       // PauliTransition, qubit 1 first
    Part part = Part::Complex;               // Amp0n
    std::shared_ptr<const Circuit> partner;  // KernelEntry: K = |<0|partner^dag c|0>|^2

    static MeasurementSpec prob_zero(int qubit);
    static MeasurementSpec amp0n(Part part = Part::Complex);
    static MeasurementSpec pauli_transition(std::string pauli);
    static MeasurementSpec kernel_entry(Circuit partner);

    std::string label() const;
};

/// The circuit whose parameter table indexes the extracted Expr: `c`
/// itself, or c followed by partner^dag for kernel entries.
Circuit measured_circuit(const Circuit &c, const MeasurementSpec &spec);

Expr extract(const Circuit &c, const MeasurementSpec &spec);
/// Non-kernel extraction from an already simulated state.
Expr extract(const SymState &s, const MeasurementSpec &spec);

/// {"kind":"prob_zero","qubit":1} | {"kind":"amp0n","part":"real"} |
/// {"kind":"pauli","pauli":"IZZI"} | {"kind":"kernel","partner":{circuit}}
MeasurementSpec measurement_from_json(const nlohmann::json &j);
nlohmann::json measurement_to_json(const MeasurementSpec &m);

/// Numeric values for every symbol of `c`: rotation angles theta (indexed
/// like c.params()) and separable input amplitudes (a_i, b_i) for qubit i+1.
Bindings bind_parameters(const Circuit &c, std::span<const double> theta,
                         std::span<const std::pair<double, double>> separable = {});

}  // namespace msq
