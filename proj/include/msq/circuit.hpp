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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msq/coeff.hpp"

namespace msq {

/// Base single-qubit operation; any gate may carry controls.
enum class GateKind : uint8_t { H, X, Y, Z, S, Sdg, Rx, Ry, Rz };

bool is_rotation(GateKind k);
std::string_view gate_name(GateKind k);

/// Rotation angle reference: +theta_index or -theta_index.
struct ParamRef {
    uint32_t index;
    bool negated = false;
    friend bool operator==(const ParamRef &, const ParamRef &) = default;
};

/// Qubit labels are 1-based; qubit 1 is the most significant bit of a basis index.
struct Gate {
    GateKind kind;
    int target;
    std::vector<int> controls;
    std::optional<ParamRef> param;
    friend bool operator==(const Gate &, const Gate &) = default;
};

enum class InputKind : uint8_t { Zeros, Separable, Vector };

class Circuit {
   public:
    static constexpr int kMaxSymbolicQubits = 12;
    static constexpr int kMaxOracleQubits = 24;

    explicit Circuit(int n_qubits, InputKind input = InputKind::Zeros);

    int n_qubits() const { return n_; }
    InputKind input() const { return input_; }
    /// Exact amplitudes of an explicit input vector (InputKind::Vector).
    const std::vector<Coeff> &input_vector() const { return input_vector_; }
    void set_input_vector(std::vector<Coeff> amplitudes);
    const std::vector<Gate> &gates() const { return gates_; }
    /// Parameter names; rotation parameter k is theta_k = params()[k].
    const std::vector<std::string> &params() const { return params_; }
    /// Index of `name`, adding it when new.
    uint32_t param(const std::string &name);
    std::optional<uint32_t> find_param(std::string_view name) const;

    Circuit &add(GateKind kind, int target, std::vector<int> controls = {},
                 std::optional<ParamRef> param = std::nullopt);
    Circuit &h(int t) { return add(GateKind::H, t); }
    Circuit &x(int t) { return add(GateKind::X, t); }
    Circuit &z(int t) { return add(GateKind::Z, t); }
    Circuit &cnot(int c, int t) { return add(GateKind::X, t, {c}); }
    Circuit &cz(int c, int t) { return add(GateKind::Z, t, {c}); }
    /// Rotation by the named parameter; a leading '-' negates the angle.
    Circuit &rot(GateKind kind, int target, const std::string &name, std::vector<int> controls = {});
    Circuit &rx(int t, const std::string &name) { return rot(GateKind::Rx, t, name); }
    Circuit &ry(int t, const std::string &name) { return rot(GateKind::Ry, t, name); }
    Circuit &rz(int t, const std::string &name) { return rot(GateKind::Rz, t, name); }

    /// Gates of `other` appended after this circuit's; parameters are
    /// matched by name. Input spec stays this circuit's.
    Circuit then(const Circuit &other) const;
    /// Inverse circuit (gates reversed and inverted), same input spec.
    Circuit adjoint() const;
    /// Copy acting on qubits shifted by `offset` inside an `n_total` register,
    /// with extra `controls` added to every gate.
    Circuit embedded(int n_total, int offset, const std::vector<int> &controls = {}) const;

   private:
    void check(const Gate &g) const;

    int n_;
    InputKind input_;
    std::vector<Coeff> input_vector_;
    std::vector<Gate> gates_;
    std::vector<std::string> params_;
};

/// {"qubits":n, "input":"zeros"|"separable"|[...], "gates":[{"g":"ry","t":2,"p":"theta_3"},
/// {"g":"cnot","c":1,"t":2}, ...]}. Gate names: h x y z s sdg rx ry rz, each
/// optionally prefixed by one 'c' per control ("cx"/"cnot", "cz", "cry",
/// "ccz", ...). "c" is a qubit or a list of qubits.
Circuit circuit_from_json(const nlohmann::json &j);
nlohmann::json circuit_to_json(const Circuit &c);

/// Basis index bit of 1-based qubit q in an n-qubit register.
inline uint64_t qubit_mask(int n, int q) {
    return uint64_t{1} << (n - q);
}

}  // namespace msq
