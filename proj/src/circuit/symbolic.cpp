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

#include "msq/symbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace msq {

namespace {

struct Matrix2 {
    Poly m00, m01, m10, m11;
};

Poly cst(const Coeff &c) {
    return Poly::constant(c);
}

Matrix2 gate_matrix(const Gate &g) {
    const Coeff i = Coeff::i();
    const Coeff h = Coeff::inv_sqrt2();
    switch (g.kind) {
        case GateKind::H:
            return {cst(h), cst(h), cst(h), cst(-h)};
        case GateKind::X:
            return {{}, cst(1), cst(1), {}};
        case GateKind::Y:
            return {{}, cst(-i), cst(i), {}};
        case GateKind::Z:
            return {cst(1), {}, {}, cst(-1)};
        case GateKind::S:
            return {cst(1), {}, {}, cst(i)};
        case GateKind::Sdg:
            return {cst(1), {}, {}, cst(-i)};
        default:
            break;
    }
    Poly c = Poly::symbol(param_cos(g.param->index));
    Poly s = Poly::symbol(param_sin(g.param->index));
    if (g.param->negated) s = -s;
    switch (g.kind) {
        case GateKind::Rx:
            return {c, s.scaled(-i), s.scaled(-i), c};
        case GateKind::Ry:
            return {c, -s, s, c};
        default:
            return {c - s.scaled(i), {}, {}, c + s.scaled(i)};
    }
}

Poly combine(const Poly &x, const Poly &a, const Poly &y, const Poly &b) {
    if (x.is_zero()) return y * b;
    if (y.is_zero()) return x * a;
    return x * a + y * b;
}

void apply(std::vector<Poly> &amps, int n, const Gate &g) {
    uint64_t tmask = qubit_mask(n, g.target);
    uint64_t cmask = 0;
    for (int c : g.controls) cmask |= qubit_mask(n, c);
    Matrix2 m = gate_matrix(g);
    bool diag = m.m01.is_zero() && m.m10.is_zero();
    bool is_x = g.kind == GateKind::X;
    bool top_one = m.m00 == cst(1);
    for (uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & tmask) || (i & cmask) != cmask) continue;
        uint64_t j = i | tmask;
        Poly &a0 = amps[i];
        Poly &a1 = amps[j];
        if (a0.is_zero() && a1.is_zero()) continue;
        if (is_x) {
            std::swap(a0, a1);
        } else if (diag) {
            if (!top_one) a0 = m.m00 * a0;
            a1 = m.m11 * a1;
        } else {
            Poly n0 = combine(m.m00, a0, m.m01, a1);
            Poly n1 = combine(m.m10, a0, m.m11, a1);
            a0 = std::move(n0);
            a1 = std::move(n1);
        }
    }
}

Poly abs2(const Poly &p) {
    return p * p.conj();
}

Poly take_part(const Poly &p, Part part) {
    switch (part) {
        case Part::Real:
            return p.real_part();
        case Part::Imag:
            return p.imag_part();
        default:
            return p;
    }
}

}  // namespace

SymState run_symbolic(const Circuit &c) {
    int n = c.n_qubits();
    if (n > Circuit::kMaxSymbolicQubits) {
        throw std::invalid_argument("symbolic simulation is limited to " +
                                    std::to_string(Circuit::kMaxSymbolicQubits) + " qubits");
    }
    SymState s;
    s.n_qubits = n;
    size_t dim = size_t{1} << n;
    s.amps.assign(dim, Poly());
    switch (c.input()) {
        case InputKind::Zeros:
            s.amps[0] = cst(1);
            break;
        case InputKind::Vector:
            for (size_t k = 0; k < dim; ++k) s.amps[k] = cst(c.input_vector()[k]);
            break;
        case InputKind::Separable:
            for (size_t k = 0; k < dim; ++k) {
                Monomial m;
                for (int q = 1; q <= n; ++q) {
                    m = m * Monomial::of((k & qubit_mask(n, q)) ? Sym::b(static_cast<uint32_t>(q))
                                                                : Sym::a(static_cast<uint32_t>(q)));
                }
                s.amps[k] = Poly::monomial(m);
            }
            break;
    }
    for (const Gate &g : c.gates()) apply(s.amps, n, g);
    return s;
}

Expr norm_squared(const SymState &s) {
    Poly total;
    for (const Poly &a : s.amps) total += abs2(a);
    return Expr(total);
}

MeasurementSpec MeasurementSpec::prob_zero(int qubit) {
    MeasurementSpec m;
    m.kind = MeasureKind::ProbZero;
    m.qubit = qubit;
    return m;
}

MeasurementSpec MeasurementSpec::amp0n(Part part) {
    MeasurementSpec m;
    m.kind = MeasureKind::Amp0n;
    m.part = part;
    return m;
}

MeasurementSpec MeasurementSpec::pauli_transition(std::string pauli) {
    MeasurementSpec m;
    m.kind = MeasureKind::PauliTransition;
    m.pauli = std::move(pauli);
    return m;
}

MeasurementSpec MeasurementSpec::kernel_entry(Circuit partner) {
    MeasurementSpec m;
    m.kind = MeasureKind::KernelEntry;
    m.partner = std::make_shared<const Circuit>(std::move(partner));
    return m;
}

std::string MeasurementSpec::label() const {
    switch (kind) {
        case MeasureKind::ProbZero:
            return "prob_zero(" + std::to_string(qubit) + ")";
        case MeasureKind::Amp0n:
            return part == Part::Real ? "re_amp0n" : part == Part::Imag ? "im_amp0n" : "amp0n";
        case MeasureKind::PauliTransition:
            return "pauli(" + pauli + ")";
        case MeasureKind::KernelEntry:
            return "kernel";
    }
    return "?";
}

Circuit measured_circuit(const Circuit &c, const MeasurementSpec &spec) {
    if (spec.kind != MeasureKind::KernelEntry) return c;
    if (!spec.partner) throw std::invalid_argument("kernel entry needs a partner circuit");
    if (spec.partner->n_qubits() != c.n_qubits()) {
        throw std::invalid_argument("kernel entry circuits act on different qubit counts");
    }
    return c.then(spec.partner->adjoint());
}

Expr extract(const Circuit &c, const MeasurementSpec &spec) {
    if (spec.kind == MeasureKind::KernelEntry) {
        Circuit composite = measured_circuit(c, spec);
        SymState s = run_symbolic(composite);
        return Expr(abs2(s.amps[0]));
    }
    return extract(run_symbolic(c), spec);
}

Expr extract(const SymState &s, const MeasurementSpec &spec) {
    int n = s.n_qubits;
    switch (spec.kind) {
        case MeasureKind::ProbZero: {
            if (spec.qubit < 1 || spec.qubit > n) throw std::invalid_argument("measured qubit out of range");
            uint64_t mask = qubit_mask(n, spec.qubit);
            Poly total;
            for (uint64_t k = 0; k < s.amps.size(); ++k) {
                if (!(k & mask)) total += abs2(s.amps[k]);
            }
            return Expr(total);
        }
        case MeasureKind::Amp0n:
            return Expr(take_part(s.amps[0], spec.part));
        case MeasureKind::PauliTransition: {
            if (static_cast<int>(spec.pauli.size()) != n) {
                throw std::invalid_argument("Pauli string \"" + spec.pauli + "\" does not have length " +
                                            std::to_string(n));
            }
            uint64_t flip = 0;
            for (int q = 1; q <= n; ++q) {
                char p = spec.pauli[static_cast<size_t>(q - 1)];
                if (p == 'X' || p == 'Y') flip |= qubit_mask(n, q);
                if (p != 'I' && p != 'X' && p != 'Y' && p != 'Z') {
                    throw std::invalid_argument("malformed Pauli string \"" + spec.pauli + "\"");
                }
            }
            // P|y> = phase(y) |y ^ flip>, so <psi|P|psi> = sum_y conj(psi_{y^flip}) phase(y) psi_y.
            auto phase = [&](uint64_t y) {
                Coeff ph(1);
                for (int q = 1; q <= n; ++q) {
                    bool bit = y & qubit_mask(n, q);
                    char p = spec.pauli[static_cast<size_t>(q - 1)];
                    if (p == 'Z' && bit) ph = -ph;
                    if (p == 'Y') ph = ph * (bit ? -Coeff::i() : Coeff::i());
                }
                return ph;
            };
            Poly total;
            for (uint64_t y = 0; y < s.amps.size(); ++y) {
                uint64_t z = y ^ flip;
                if (flip != 0 && z < y) continue;
                if (s.amps[y].is_zero() || s.amps[z].is_zero()) continue;
                Poly t = (s.amps[z].conj() * s.amps[y]).scaled(phase(y));
                // The (z, y) term is the conjugate of the (y, z) term for Hermitian P.
                total += flip == 0 ? t : t.real_part().scaled(Coeff(2));
            }
            return Expr(total);
        }
        case MeasureKind::KernelEntry:
            throw std::invalid_argument("kernel entries are extracted from the circuit pair, not a state");
    }
    return {};
}

MeasurementSpec measurement_from_json(const nlohmann::json &j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "prob_zero") return MeasurementSpec::prob_zero(j.value("qubit", 1));
    if (kind == "amp0n") {
        std::string part = j.value("part", "complex");
        if (part == "real") return MeasurementSpec::amp0n(Part::Real);
        if (part == "imag") return MeasurementSpec::amp0n(Part::Imag);
        if (part == "complex") return MeasurementSpec::amp0n(Part::Complex);
        throw std::invalid_argument("unknown amplitude part \"" + part + "\"");
    }
    if (kind == "pauli") return MeasurementSpec::pauli_transition(j.at("pauli").get<std::string>());
    if (kind == "kernel") return MeasurementSpec::kernel_entry(circuit_from_json(j.at("partner")));
    throw std::invalid_argument("unknown measurement kind \"" + kind + "\"");
}

nlohmann::json measurement_to_json(const MeasurementSpec &m) {
    switch (m.kind) {
        case MeasureKind::ProbZero:
            return {{"kind", "prob_zero"}, {"qubit", m.qubit}};
        case MeasureKind::Amp0n:
            return {{"kind", "amp0n"},
                    {"part", m.part == Part::Real ? "real" : m.part == Part::Imag ? "imag" : "complex"}};
        case MeasureKind::PauliTransition:
            return {{"kind", "pauli"}, {"pauli", m.pauli}};
        case MeasureKind::KernelEntry:
            return {{"kind", "kernel"}, {"partner", circuit_to_json(*m.partner)}};
    }
    return {};
}

Bindings bind_parameters(const Circuit &c, std::span<const double> theta,
                         std::span<const std::pair<double, double>> separable) {
    if (theta.size() != c.params().size()) {
        throw std::invalid_argument("expected " + std::to_string(c.params().size()) + " angles, got " +
                                    std::to_string(theta.size()));
    }
    Bindings b;
    for (uint32_t k = 0; k < theta.size(); ++k) {
        b[param_cos(k)] = std::cos(theta[k] / 2);
        b[param_sin(k)] = std::sin(theta[k] / 2);
    }
    for (size_t q = 0; q < separable.size(); ++q) {
        b[Sym::a(static_cast<uint32_t>(q + 1))] = separable[q].first;
        b[Sym::b(static_cast<uint32_t>(q + 1))] = separable[q].second;
    }
    return b;
}

}  // namespace msq
