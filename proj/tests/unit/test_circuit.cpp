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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "msq/catalog.hpp"
#include "msq/eval_plan.hpp"
#include "msq/oracle.hpp"
#include "msq/simplify.hpp"
#include "msq/symbolic.hpp"
#include "test_util.hpp"

using namespace msq;

namespace {

Circuit random_circuit(std::mt19937_64 &rng, int n, int n_gates, InputKind input) {
    Circuit c(n, input);
    std::uniform_int_distribution<int> q(1, n), pick(0, 14);
    int params = 0;
    for (int k = 0; k < n_gates; ++k) {
        int t = q(rng);
        int ctrl = t;
        while (n > 1 && ctrl == t) ctrl = q(rng);
        std::string p = "t" + std::to_string(params++ % 5);
        if (rng() % 4 == 0) p = "-" + p;
        switch (pick(rng)) {
            case 0: c.h(t); break;
            case 1: c.x(t); break;
            case 2: c.add(GateKind::Y, t); break;
            case 3: c.z(t); break;
            case 4: c.add(GateKind::S, t); break;
            case 5: c.add(GateKind::Sdg, t); break;
            case 6: c.rx(t, p); break;
            case 7: c.ry(t, p); break;
            case 8: c.rz(t, p); break;
            case 9: if (n > 1) c.cnot(ctrl, t); break;
            case 10: if (n > 1) c.cz(ctrl, t); break;
            case 11: if (n > 1) c.rot(GateKind::Ry, t, p, {ctrl}); break;
            case 12: if (n > 1) c.add(GateKind::H, t, {ctrl}); break;
            case 13: if (n > 1) c.add(GateKind::Y, t, {ctrl}); break;
            default:
                if (n > 2) {
                    int third = q(rng);
                    if (third != t && third != ctrl) c.add(GateKind::Z, t, {ctrl, third});
                }
        }
    }
    return c;
}

std::vector<double> random_angles(std::mt19937_64 &rng, size_t k) {
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    std::vector<double> t(k);
    for (auto &x : t) x = u(rng);
    return t;
}

std::vector<std::pair<double, double>> random_separable(std::mt19937_64 &rng, int n) {
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    std::vector<std::pair<double, double>> v;
    for (int q = 0; q < n; ++q) {
        double t = u(rng);
        v.emplace_back(std::cos(t), std::sin(t));
    }
    return v;
}

bool reduces_to(const Expr &e, const Expr &value) {
    return constraint_normal_form(e) == constraint_normal_form(value);
}

Expr num(int64_t n, int64_t d = 1) {
    return Expr::constant(Coeff(Rational(n, d)));
}

}  // namespace

TEST(run_symbolic, empty_circuit_on_zeros) {
    SymState s = run_symbolic(Circuit(3));
    ASSERT_EQ(s.amps.size(), 8u);
    EXPECT_EQ(Expr(s.amps[0]), num(1));
    for (size_t k = 1; k < 8; ++k) EXPECT_TRUE(s.amps[k].is_zero());
}

TEST(run_symbolic, hadamard_amplitudes) {
    Circuit c(1);
    c.h(1);
    SymState s = run_symbolic(c);
    EXPECT_EQ(Expr(s.amps[0]), Expr::constant(Coeff::inv_sqrt2()));
    EXPECT_EQ(Expr(s.amps[1]), Expr::constant(Coeff::inv_sqrt2()));
}

TEST(run_symbolic, cnot_flips_target_where_control_is_one) {
    Circuit c(2, InputKind::Separable);
    c.cnot(1, 2);
    SymState s = run_symbolic(c);
    EXPECT_EQ(Expr(s.amps[3]), Expr::symbol(Sym::b(1)) * Expr::symbol(Sym::a(2)));
    EXPECT_EQ(Expr(s.amps[2]), Expr::symbol(Sym::b(1)) * Expr::symbol(Sym::b(2)));
}

TEST(run_symbolic, qubit_limit) {
    EXPECT_THROW(run_symbolic(Circuit(13)), std::invalid_argument);
    EXPECT_NO_THROW(oracle_state(Circuit(13), {}));
}

TEST(circuit, validation) {
    Circuit c(2);
    EXPECT_THROW(c.cnot(1, 1), std::invalid_argument);
    EXPECT_THROW(c.h(3), std::invalid_argument);
    EXPECT_THROW(c.add(GateKind::Ry, 1), std::invalid_argument);
    EXPECT_THROW(Circuit(0), std::invalid_argument);
}

TEST(circuit_json, round_trip) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 20; ++k) {
        Circuit c = random_circuit(rng, 3, 12, InputKind::Separable);
        Circuit d = circuit_from_json(circuit_to_json(c));
        EXPECT_EQ(d.gates(), c.gates());
        EXPECT_EQ(d.params(), c.params());
        EXPECT_EQ(d.input(), c.input());
    }
}

TEST(circuit_json, parses_documented_format) {
    auto j = nlohmann::json::parse(R"({"qubits":4,"input":"zeros","gates":[
        {"g":"ry","t":2,"p":"theta_3"},{"g":"cnot","c":1,"t":2},{"g":"ccz","c":[1,2],"t":4},
        {"g":"rz","t":1,"p":"-theta_3"}]})");
    Circuit c = circuit_from_json(j);
    ASSERT_EQ(c.gates().size(), 4u);
    EXPECT_EQ(c.params().size(), 1u);
    EXPECT_EQ(c.gates()[2].controls, (std::vector<int>{1, 2}));
    EXPECT_TRUE(c.gates()[3].param->negated);
}

TEST(circuit_json, errors_name_the_gate) {
    auto bad = nlohmann::json::parse(R"({"qubits":2,"gates":[{"g":"h","t":1},{"g":"toffoli","t":2}]})");
    try {
        circuit_from_json(bad);
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("gate 1"), std::string::npos);
    }
    EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"({"qubits":2,"gates":[{"g":"cx","t":2}]})")),
                 std::invalid_argument);
}

TEST(measurement_json, round_trip) {
    Circuit partner(2);
    partner.ry(1, "u");
    for (const auto &m : {MeasurementSpec::prob_zero(2), MeasurementSpec::amp0n(Part::Imag),
                          MeasurementSpec::pauli_transition("XZ"), MeasurementSpec::kernel_entry(partner)}) {
        MeasurementSpec r = measurement_from_json(measurement_to_json(m));
        EXPECT_EQ(r.label(), m.label());
        EXPECT_EQ(measurement_to_json(r), measurement_to_json(m));
    }
}

TEST(extract, malformed_pauli) {
    EXPECT_THROW(extract(Circuit(2), MeasurementSpec::pauli_transition("XQ")), std::invalid_argument);
    EXPECT_THROW(extract(Circuit(2), MeasurementSpec::pauli_transition("XZZ")), std::invalid_argument);
}

TEST(catalog, closed_forms_after_simplification) {
    auto start = std::chrono::steady_clock::now();
    for (const auto &cs : case_catalog()) {
        for (const auto &ex : cs.expectations) {
            Expr raw = extract(prefix(cs.circuit, ex.stage), ex.spec);
            Expr simplified = simplify(raw).expr;
            if (ex.mode == MatchMode::Exact) {
                EXPECT_EQ(simplified, ex.expected) << cs.id << " stage " << ex.stage << " " << ex.spec.label();
            } else {
                EXPECT_TRUE(reduces_to(simplified, ex.expected)) << cs.id << " " << ex.spec.label();
            }
        }
    }
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 1.0);
}

TEST(catalog, expectations_hold_numerically) {
    std::mt19937_64 rng(22);
    for (const auto &cs : case_catalog()) {
        for (const auto &ex : cs.expectations) {
            Circuit c = prefix(cs.circuit, ex.stage);
            for (int k = 0; k < 20; ++k) {
                auto sep = random_separable(rng, c.n_qubits());
                double want = oracle_numeric(c, ex.spec, {}, separable_state(sep)).real();
                double got = eval_numeric(ex.expected, bind_parameters(c, {}, sep)).real();
                EXPECT_NEAR(got, want, 1e-12) << cs.id;
            }
        }
    }
}

TEST(catalog, case6_block_has_order_three) {
    SymState input = run_symbolic(swap_cycle_block(3, 0));
    EXPECT_NE(run_symbolic(swap_cycle_block(3, 1)).amps, input.amps);
    EXPECT_NE(run_symbolic(swap_cycle_block(3, 2)).amps, input.amps);
    EXPECT_EQ(run_symbolic(swap_cycle_block(3, 3)).amps, input.amps);
    Circuit basis(3);
    basis.x(1);
    for (int times : {3, 6}) {
        Circuit c = basis.then(swap_cycle_block(3, times));
        StateVector psi = oracle_state(c, {});
        EXPECT_NEAR(std::abs(psi[4]), 1.0, 1e-15);
    }
}

TEST(normalization, norms_reduce_to_one) {
    std::mt19937_64 rng(23);
    for (const auto &cs : case_catalog()) EXPECT_TRUE(reduces_to(norm_squared(run_symbolic(cs.circuit)), num(1)));
    for (int k = 0; k < 20; ++k) {
        Circuit c = random_circuit(rng, 3, 10, k % 2 ? InputKind::Separable : InputKind::Zeros);
        EXPECT_TRUE(reduces_to(norm_squared(run_symbolic(c)), num(1)));
        Expr p0 = extract(c, MeasurementSpec::prob_zero(2));
        Circuit flipped = c;
        flipped.x(2);
        EXPECT_TRUE(reduces_to(p0 + extract(flipped, MeasurementSpec::prob_zero(2)), num(1)));
    }
}

TEST(realness, pauli_expectations_have_zero_imaginary_part) {
    std::mt19937_64 rng(24);
    const char *paulis[] = {"XYZ", "YYI", "ZIZ", "IXY", "XXX"};
    for (int k = 0; k < 10; ++k) {
        Circuit c = random_circuit(rng, 3, 10, InputKind::Zeros);
        for (const char *p : paulis) {
            Expr e = extract(c, MeasurementSpec::pauli_transition(p));
            EXPECT_TRUE(reduces_to(Expr(e.poly().imag_part()), num(0)));
        }
    }
}

TEST(pauli_transition, equals_amplitude_of_conjugated_circuit) {
    std::mt19937_64 rng(25);
    for (int k = 0; k < 10; ++k) {
        Circuit u = random_circuit(rng, 3, 8, InputKind::Zeros);
        std::string p = "YXZ";
        Circuit pc(3);
        pc.add(GateKind::Y, 1).x(2).z(3);
        Circuit composite = u.then(pc).then(u.adjoint());
        EXPECT_EQ(extract(u, MeasurementSpec::pauli_transition(p)), extract(composite, MeasurementSpec::amp0n()));
    }
}

TEST(oracle, norm_preserved_after_every_gate) {
    std::mt19937_64 rng(26);
    Circuit c = random_circuit(rng, 4, 40, InputKind::Zeros);
    auto theta = random_angles(rng, c.params().size());
    for (size_t g = 0; g <= c.gates().size(); ++g) {
        StateVector psi = oracle_state(prefix(c, g), theta);
        double norm = 0;
        for (auto x : psi) norm += std::norm(x);
        EXPECT_NEAR(norm, 1.0, 1e-12);
    }
}

TEST(oracle, dimension_mismatch) {
    EXPECT_THROW(oracle_state(Circuit(2), {}, StateVector(3)), std::invalid_argument);
    Circuit c(1);
    c.ry(1, "t");
    EXPECT_THROW(oracle_state(c, {}), std::invalid_argument);
}

TEST(agreement, compiled_symbolic_matches_oracle) {
    std::mt19937_64 rng(27);
    for (int k = 0; k < 12; ++k) {
        InputKind in = k % 3 == 0 ? InputKind::Separable : InputKind::Zeros;
        Circuit c = random_circuit(rng, 3, 12, in);
        Circuit partner = random_circuit(rng, 3, 6, InputKind::Zeros);
        std::vector<MeasurementSpec> specs = {MeasurementSpec::prob_zero(1 + k % 3), MeasurementSpec::amp0n(),
                                              MeasurementSpec::pauli_transition("ZXY")};
        if (in == InputKind::Zeros) specs.push_back(MeasurementSpec::kernel_entry(partner));
        for (const auto &spec : specs) {
            Circuit m = measured_circuit(c, spec);
            Expr e = extract(c, spec);
            EvalPlan plan = compile(simplify(e).expr);
            EvalPlan raw = compile(e);
            for (int t = 0; t < 100; ++t) {
                auto theta = random_angles(rng, m.params().size());
                auto sep = random_separable(rng, 3);
                StateVector input = in == InputKind::Separable ? separable_state(sep) : StateVector{};
                auto want = oracle_numeric(c, spec, theta, input);
                Bindings b = bind_parameters(m, theta, sep);
                EXPECT_LT(std::abs(raw.run(b) - want), 1e-9) << spec.label();
                EXPECT_LT(std::abs(plan.run(b) - want), 1e-9) << spec.label();
            }
        }
    }
}

TEST(adjoint, circuit_then_adjoint_is_identity) {
    std::mt19937_64 rng(28);
    Circuit c = random_circuit(rng, 3, 10, InputKind::Zeros);
    EXPECT_TRUE(reduces_to(extract(c.then(c.adjoint()), MeasurementSpec::amp0n()), num(1)));
}
