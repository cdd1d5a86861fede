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

#include "msq/catalog.hpp"

namespace msq {

namespace {

Expr a(uint32_t i) {
    return Expr::symbol(Sym::a(i));
}

Expr b(uint32_t i) {
    return Expr::symbol(Sym::b(i));
}

Expr half() {
    return Expr::constant(Coeff(Rational(1, 2)));
}

// Probability that a CNOT target reads 0, given separable control c and target t.
Expr cnot_rule(uint32_t c, uint32_t t) {
    return a(c).pow(2) * a(t).pow(2) + b(c).pow(2) * b(t).pow(2);
}

Circuit two_cnots(int c2, int t2) {
    Circuit c(3, InputKind::Separable);
    c.cnot(1, 2).cnot(c2, t2);
    return c;
}

CaseExpectation expect(size_t stage, int qubit, Expr e, MatchMode mode = MatchMode::Exact) {
    return {stage, MeasurementSpec::prob_zero(qubit), std::move(e), mode};
}

}  // namespace

Circuit prefix(const Circuit &c, size_t stage) {
    Circuit out(c.n_qubits(), c.input());
    if (c.input() == InputKind::Vector) out.set_input_vector(c.input_vector());
    for (const auto &name : c.params()) out.param(name);
    for (size_t k = 0; k < stage && k < c.gates().size(); ++k) {
        const Gate &g = c.gates()[k];
        out.add(g.kind, g.target, g.controls, g.param);
    }
    return out;
}

Circuit swap_cycle_block(int n_qubits, int times) {
    Circuit c(n_qubits, InputKind::Separable);
    for (int k = 0; k < times; ++k) c.cnot(1, 2).cnot(2, 1);
    return c;
}

std::vector<CatalogCase> case_catalog() {
    std::vector<CatalogCase> out;
    Expr p12 = cnot_rule(1, 2);

    out.push_back({"case1", "chain: CNOT(1->2), CNOT(2->3)", two_cnots(2, 3),
                   {expect(0, 1, a(1).pow(2)), expect(1, 1, a(1).pow(2)), expect(2, 1, a(1).pow(2)),
                    expect(0, 2, a(2).pow(2)), expect(1, 2, p12)}});

    // Second CNOT applies the same rule to the already transformed target.
    Expr p12_one = a(1).pow(2) * b(2).pow(2) + b(1).pow(2) * a(2).pow(2);
    Expr composed = a(3).pow(2) * p12 + b(3).pow(2) * p12_one;
    out.push_back({"case2", "common target: CNOT(1->2), CNOT(3->2)", two_cnots(3, 2),
                   {expect(1, 2, p12), expect(2, 2, composed, MatchMode::ModuloConstraints)}});

    out.push_back({"case3", "common control: CNOT(1->2), CNOT(1->3)", two_cnots(1, 3),
                   {expect(2, 1, a(1).pow(2)), expect(2, 2, p12), expect(2, 3, cnot_rule(1, 3))}});

    out.push_back({"case4", "CNOT(1->2), CNOT(3->1)", two_cnots(3, 1),
                   {expect(2, 1, cnot_rule(3, 1)), expect(2, 3, a(3).pow(2))}});

    out.push_back({"case5", "repeated: CNOT(1->2), CNOT(1->2)", two_cnots(1, 2),
                   {expect(1, 2, p12), expect(2, 2, a(2).pow(2))}});

    out.push_back({"case6", "cycle: CNOT(1->2), CNOT(2->1)", two_cnots(2, 1),
                   {expect(1, 2, p12), expect(2, 1, a(2).pow(2))}});

    Circuit bell(2, InputKind::Separable);
    bell.h(1).cnot(1, 2);
    out.push_back({"bell", "Bell preparation: H(1), CNOT(1->2)", bell,
                   {expect(1, 1, half() + a(1) * b(1)), expect(2, 1, half() + a(1) * b(1)),
                    expect(2, 2, half() + a(1) * b(1) * (a(2).pow(2) - b(2).pow(2)))}});

    Circuit unbell(2, InputKind::Separable);
    unbell.cnot(1, 2).h(1);
    out.push_back({"bell_reverse", "Bell disentangler: CNOT(1->2), H(1)", unbell,
                   {expect(2, 1, half() + Expr::constant(Coeff(2)) * a(1) * b(1) * a(2) * b(2)),
                    expect(2, 2, p12)}});
    return out;
}

}  // namespace msq
