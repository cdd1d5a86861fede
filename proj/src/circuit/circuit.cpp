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

#include "msq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msq {

namespace {

struct GateSpelling {
    std::string_view name;
    GateKind kind;
};

constexpr GateSpelling kSpellings[] = {
    {"h", GateKind::H},   {"x", GateKind::X},     {"y", GateKind::Y},   {"z", GateKind::Z},   {"s", GateKind::S},
    {"sdg", GateKind::Sdg}, {"rx", GateKind::Rx}, {"ry", GateKind::Ry}, {"rz", GateKind::Rz},
};

GateKind parse_base(std::string_view name) {
    for (const auto &s : kSpellings) {
        if (s.name == name) return s.kind;
    }
    throw std::invalid_argument("unsupported gate '" + std::string(name) + "'");
}

Coeff exact_number(const nlohmann::json &v) {
    if (v.is_string()) return Coeff(Rational::parse(v.get<std::string>()));
    if (v.is_number_integer()) return Coeff(v.get<int64_t>());
    if (v.is_number_float()) {
        double x = v.get<double>();
        for (int k = 0; k <= 30; ++k) {
            double scaled = std::ldexp(x, k);
            if (scaled == std::floor(scaled) && std::abs(scaled) < 9e15) {
                return Coeff(Rational(static_cast<int64_t>(scaled), int64_t{1} << k));
            }
        }
        throw std::invalid_argument("input amplitude " + v.dump() + " is not exactly representable; give it as \"p/q\"");
    }
    throw std::invalid_argument("input amplitude must be a number or a \"p/q\" string");
}

}  // namespace

bool is_rotation(GateKind k) {
    return k == GateKind::Rx || k == GateKind::Ry || k == GateKind::Rz;
}

std::string_view gate_name(GateKind k) {
    for (const auto &s : kSpellings) {
        if (s.kind == k) return s.name;
    }
    return "?";
}

Circuit::Circuit(int n_qubits, InputKind input) : n_(n_qubits), input_(input) {
    if (n_qubits < 1 || n_qubits > kMaxOracleQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                                    std::to_string(kMaxOracleQubits) + "]");
    }
}

void Circuit::set_input_vector(std::vector<Coeff> amplitudes) {
    if (amplitudes.size() != (size_t{1} << n_)) {
        throw std::invalid_argument("input vector has " + std::to_string(amplitudes.size()) + " entries, expected " +
                                    std::to_string(size_t{1} << n_));
    }
    input_ = InputKind::Vector;
    input_vector_ = std::move(amplitudes);
}

uint32_t Circuit::param(const std::string &name) {
    if (auto k = find_param(name)) return *k;
    params_.push_back(name);
    return static_cast<uint32_t>(params_.size() - 1);
}

std::optional<uint32_t> Circuit::find_param(std::string_view name) const {
    auto it = std::find(params_.begin(), params_.end(), name);
    if (it == params_.end()) return std::nullopt;
    return static_cast<uint32_t>(it - params_.begin());
}

void Circuit::check(const Gate &g) const {
    auto in_range = [&](int q) { return q >= 1 && q <= n_; };
    if (!in_range(g.target)) throw std::invalid_argument("gate target " + std::to_string(g.target) + " out of range");
    for (size_t k = 0; k < g.controls.size(); ++k) {
        int c = g.controls[k];
        if (!in_range(c)) throw std::invalid_argument("gate control " + std::to_string(c) + " out of range");
        if (c == g.target) throw std::invalid_argument("gate control equals target " + std::to_string(c));
        for (size_t j = 0; j < k; ++j) {
            if (g.controls[j] == c) throw std::invalid_argument("repeated control " + std::to_string(c));
        }
    }
    if (is_rotation(g.kind) != g.param.has_value()) {
        throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                    (g.param ? " takes no parameter" : " needs a parameter"));
    }
    if (g.param && g.param->index >= params_.size()) throw std::invalid_argument("unknown parameter index");
}

Circuit &Circuit::add(GateKind kind, int target, std::vector<int> controls, std::optional<ParamRef> param) {
    Gate g{kind, target, std::move(controls), param};
    check(g);
    gates_.push_back(std::move(g));
    return *this;
}

Circuit &Circuit::rot(GateKind kind, int target, const std::string &name, std::vector<int> controls) {
    bool neg = !name.empty() && name[0] == '-';
    std::string base = neg ? name.substr(1) : name;
    if (base.empty()) throw std::invalid_argument("empty parameter name");
    return add(kind, target, std::move(controls), ParamRef{param(base), neg});
}

Circuit Circuit::then(const Circuit &other) const {
    if (other.n_ != n_) throw std::invalid_argument("cannot compose circuits on different qubit counts");
    Circuit r = *this;
    for (Gate g : other.gates_) {
        if (g.param) g.param->index = r.param(other.params_[g.param->index]);
        r.gates_.push_back(std::move(g));
    }
    return r;
}

Circuit Circuit::adjoint() const {
    Circuit r = *this;
    r.gates_.clear();
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::S) {
            g.kind = GateKind::Sdg;
        } else if (g.kind == GateKind::Sdg) {
            g.kind = GateKind::S;
        } else if (g.param) {
            g.param->negated = !g.param->negated;
        }
        r.gates_.push_back(std::move(g));
    }
    return r;
}

Circuit Circuit::embedded(int n_total, int offset, const std::vector<int> &controls) const {
    if (offset < 0 || offset + n_ > n_total) throw std::invalid_argument("embedding does not fit");
    Circuit r(n_total);
    r.params_ = params_;
    for (const Gate &g : gates_) {
        Gate e = g;
        e.target += offset;
        for (int &c : e.controls) c += offset;
        e.controls.insert(e.controls.begin(), controls.begin(), controls.end());
        r.check(e);
        r.gates_.push_back(std::move(e));
    }
    return r;
}

Circuit circuit_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("qubits")) throw std::invalid_argument("circuit needs a \"qubits\" field");
    Circuit c(j.at("qubits").get<int>());
    if (j.contains("input")) {
        const auto &in = j.at("input");
        if (in.is_string()) {
            std::string s = in.get<std::string>();
            if (s == "zeros") {
            } else if (s == "separable") {
                c = Circuit(c.n_qubits(), InputKind::Separable);
            } else {
                throw std::invalid_argument("unknown input spec \"" + s + "\"");
            }
        } else if (in.is_array()) {
            std::vector<Coeff> v;
            for (const auto &x : in) v.push_back(exact_number(x));
            c.set_input_vector(std::move(v));
        } else {
            throw std::invalid_argument("\"input\" must be a string or an array");
        }
    }
    if (j.contains("params")) {
        for (const auto &p : j.at("params")) c.param(p.get<std::string>());
    }
    size_t idx = 0;
    for (const auto &g : j.value("gates", nlohmann::json::array())) {
        try {
            std::string name = g.at("g").get<std::string>();
            std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
            if (name == "cnot") name = "cx";
            size_t n_ctrl = 0;
            while (n_ctrl < name.size() && name[n_ctrl] == 'c') ++n_ctrl;
            GateKind kind = parse_base(std::string_view(name).substr(n_ctrl));
            std::vector<int> controls;
            if (g.contains("c")) {
                if (g.at("c").is_array()) {
                    controls = g.at("c").get<std::vector<int>>();
                } else {
                    controls.push_back(g.at("c").get<int>());
                }
            }
            if (controls.size() != n_ctrl) {
                throw std::invalid_argument("gate '" + name + "' expects " + std::to_string(n_ctrl) + " control(s)");
            }
            int t = g.at("t").get<int>();
            if (is_rotation(kind)) {
                if (!g.contains("p")) throw std::invalid_argument("rotation needs a \"p\" parameter name");
                c.rot(kind, t, g.at("p").get<std::string>(), controls);
            } else {
                c.add(kind, t, controls);
            }
        } catch (const nlohmann::json::exception &e) {
            throw std::invalid_argument("gate " + std::to_string(idx) + ": " + e.what());
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("gate " + std::to_string(idx) + ": " + e.what());
        }
        ++idx;
    }
    return c;
}

nlohmann::json circuit_to_json(const Circuit &c) {
    nlohmann::json j;
    j["qubits"] = c.n_qubits();
    switch (c.input()) {
        case InputKind::Zeros:
            j["input"] = "zeros";
            break;
        case InputKind::Separable:
            j["input"] = "separable";
            break;
        case InputKind::Vector: {
            nlohmann::json v = nlohmann::json::array();
            for (const Coeff &a : c.input_vector()) {
                if (!a.is_rational()) throw std::invalid_argument("only real rational input vectors serialize");
                v.push_back(a[0].str());
            }
            j["input"] = v;
            break;
        }
    }
    j["params"] = c.params();
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate &g : c.gates()) {
        nlohmann::json e;
        std::string name(g.controls.size(), 'c');
        name += gate_name(g.kind);
        e["g"] = name;
        e["t"] = g.target;
        if (g.controls.size() == 1) e["c"] = g.controls[0];
        if (g.controls.size() > 1) e["c"] = g.controls;
        if (g.param) e["p"] = (g.param->negated ? "-" : "") + c.params()[g.param->index];
        gates.push_back(e);
    }
    j["gates"] = gates;
    return j;
}

}  // namespace msq
