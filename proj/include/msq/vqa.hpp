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

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msq/circuit.hpp"
#include "msq/expr.hpp"

namespace msq {

enum class AnsatzFamily { Qdrl, LinearEntangled, FullEntangled, VqlsRyCz, PauliFeatureMap };

AnsatzFamily parse_family(std::string_view name);
std::string_view family_name(AnsatzFamily f);

/// Deterministic circuit on |0^n>.
///
/// qdrl: Rx, Rz initializer on every qubit, then `layers` blocks of a CNOT
///   chain (closed into a ring for n >= 3) followed by Rz(alpha) Ry(beta)
///   Rz(gamma) on every qubit.
/// linear-entangled: per layer, Ry on every qubit then CNOT(i -> i+1).
/// full-entangled: per layer, Ry on every qubit then CNOT(i -> j) for all i < j.
/// vqls-ry-cz: Ry layer, then (CZ chain, Ry layer) repeated layers - 1 times.
/// pauli-feature-map: see pauli_feature_map(); `layers` is the repetition count.
Circuit build_ansatz(AnsatzFamily family, int n_qubits, int layers, const std::string &prefix = "t");

/// Number of layers giving `params` rotation parameters, or -1 if none does.
int layers_for_params(AnsatzFamily family, int n_qubits, int params);

/// H and Rz(phi_q) on every qubit, then for each ring pair (q, q+1) (a single
/// pair when n = 2): CNOT, Rz(phi_{q,q+1}) on the second qubit, CNOT. Every
/// rotation has its own parameter, named `prefix` + index; feature_angles()
/// gives their values for a feature vector.
Circuit pauli_feature_map(int n_qubits, int reps = 1, const std::string &prefix = "x");

/// Rotation angles of pauli_feature_map for features x (one per qubit):
/// 2 x_q for single-qubit terms and 2 (pi - x_a)(pi - x_b) for pair terms.
std::vector<double> feature_angles(int n_qubits, std::span<const double> x, int reps = 1);

struct KernelEntry {
    Expr expr;            // over the C/S symbols of the composite circuit
    Circuit composite;    // U(x_i) followed by U(x_j)^dag, middle diagonal blocks merged
    std::vector<double> angles;  // composite parameter values for (x_i, x_j)
    double value;
};

/// K_ij = |<0| U(x_j)^dag U(x_i) |0>|^2 for the Pauli feature map.
///
/// The adjacent diagonal blocks in the middle of the composite are merged
/// into one block with parameters d_k = theta_k(x_i) - theta_k(x_j), so a
/// single repetition gives H, D(d), H with as many parameters as U(x).
KernelEntry kernel_entry(int n_qubits, std::span<const double> xi, std::span<const double> xj, int reps = 1);

struct PauliTerm {
    double coeff;
    std::string pauli;  // qubit 1 first
};

struct Hamiltonian {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;
};

/// Lines "coeff PAULISTRING"; blank lines and '#' comments are skipped.
Hamiltonian parse_hamiltonian(std::string_view text);
std::string format_hamiltonian(const Hamiltonian &h);

/// Per-term expectation <0|U^dag P U|0> as an Expr.
std::vector<std::pair<PauliTerm, Expr>> hamiltonian_expectation(const Hamiltonian &h, const Circuit &u);

/// Sum of coeff * value over the per-term Exprs at the given bindings.
double hamiltonian_value(const std::vector<std::pair<PauliTerm, Expr>> &terms, const Bindings &b);

}  // namespace msq
