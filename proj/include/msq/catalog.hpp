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

#include <string>
#include <vector>

#include "msq/circuit.hpp"
#include "msq/expr.hpp"
#include "msq/symbolic.hpp"

namespace msq {

enum class MatchMode {
    Exact,              // simplified Expr equals `expected` as a canonical polynomial
    ModuloConstraints,  // equal after constraint_normal_form
};

struct CaseExpectation {
    size_t stage;  // number of leading gates applied
    MeasurementSpec spec;
    Expr expected;
    MatchMode mode = MatchMode::Exact;
};

struct CatalogCase {
    std::string id;
    std::string description;
    Circuit circuit;
    std::vector<CaseExpectation> expectations;
};

/// Circuit made of the first `stage` gates of `c`.
Circuit prefix(const Circuit &c, size_t stage);

/// Rule regression corpus on separable inputs: six 3-qubit two-CNOT
/// arrangements (first CNOT 1->2; second 2->3, 3->2, 1->3, 3->1, 1->2, 2->1)
/// and two 2-qubit H + CNOT circuits (Bell preparation and its reverse).
std::vector<CatalogCase> case_catalog();

/// The 2-CNOT block CNOT(1->2), CNOT(2->1) repeated `times` on n qubits.
Circuit swap_cycle_block(int n_qubits, int times);

}  // namespace msq
