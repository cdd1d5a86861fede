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
#include <span>
#include <utility>
#include <vector>

#include "msq/circuit.hpp"
#include "msq/symbolic.hpp"

namespace msq {

using StateVector = std::vector<std::complex<double>>;

/// Tensor product of single-qubit states (a_i, b_i), qubit 1 first.
StateVector separable_state(std::span<const std::pair<double, double>> amps);

/// Dense double-precision simulation. `input` overrides the circuit's
/// input spec; it is required for separable circuits.
StateVector oracle_state(const Circuit &c, std::span<const double> theta, const StateVector &input = {});

/// Same measurement definitions as extract(), on the dense state. `theta`
/// is indexed by measured_circuit(c, spec).params().
std::complex<double> oracle_numeric(const Circuit &c, const MeasurementSpec &spec, std::span<const double> theta,
                                    const StateVector &input = {});

}  // namespace msq
