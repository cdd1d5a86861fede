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

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <set>

#include "msq/oracle.hpp"
#include "msq/simplify.hpp"
#include "msq/symbolic.hpp"
#include "msq/vqa.hpp"
#include "test_util.hpp"

using namespace msq;

namespace {

std::vector<double> random_vec(std::mt19937_64 &rng, size_t k, double lo = -M_PI, double hi = M_PI) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(k);
    for (auto &x : v) x = u(rng);
    return v;
}

size_t distinct_symbol_pairs(const Circuit &c) {
    std::set<uint32_t> idx;
    for (const auto &g : c.gates()) {
        if (g.param) idx.insert(g.param->index);
    }
    return idx.size();
}

}  // namespace

TEST(ansatz, parameter_counts) {
    EXPECT_EQ(layers_for_params(AnsatzFamily::LinearEntangled, 4, 8), 2);
    Circuit portfolio = build_ansatz(AnsatzFamily::LinearEntangled, 4, 2);
    EXPECT_EQ(portfolio.params().size(), 8u);
    EXPECT_EQ(distinct_symbol_pairs(portfolio), 8u);
    Circuit chem = build_ansatz(AnsatzFamily::LinearEntangled, 4, layers_for_params(AnsatzFamily::LinearEntangled, 4, 16));
    EXPECT_EQ(distinct_symbol_pairs(chem), 16u);
    EXPECT_EQ(pauli_feature_map(4).params().size(), 8u);
    EXPECT_EQ(build_ansatz(AnsatzFamily::VqlsRyCz, 3, 3).params().size(), 9u);
    EXPECT_EQ(build_ansatz(AnsatzFamily::FullEntangled, 4, 2).params().size(), 8u);
    EXPECT_EQ(build_ansatz(AnsatzFamily::Qdrl, 2, 1).params().size(), 10u);
    EXPECT_EQ(layers_for_params(AnsatzFamily::LinearEntangled, 4, 7), -1);
}

TEST(ansatz, single_qubit_single_layer_is_one_ry) {
    Circuit c = build_ansatz(AnsatzFamily::LinearEntangled, 1, 1);
    ASSERT_EQ(c.gates().size(), 1u);
    EXPECT_EQ(c.gates()[0].kind, GateKind::Ry);
}

TEST(ansatz, families_parse_and_produce_normalized_states) {
    for (auto name : {"qdrl", "linear-entangled", "full-entangled", "vqls-ry-cz", "pauli-feature-map"}) {
        AnsatzFamily f = parse_family(name);
        EXPECT_EQ(family_name(f), name);
        Circuit c = build_ansatz(f, f == AnsatzFamily::Qdrl ? 2 : 3, 1);
        EXPECT_EQ(constraint_normal_form(norm_squared(run_symbolic(c))), Expr::constant(Coeff(1))) << name;
    }
    EXPECT_THROW(parse_family("ring"), std::invalid_argument);
    EXPECT_THROW(pauli_feature_map(1), std::invalid_argument);
}

TEST(hamiltonian, parse_and_format) {
    Hamiltonian h = parse_hamiltonian("0.45 III\n# comment\n\n0.55 IIZ\n");
    ASSERT_EQ(h.terms.size(), 2u);
    EXPECT_EQ(h.n_qubits, 3);
    EXPECT_EQ(h.terms[1].pauli, "IIZ");
    Hamiltonian back = parse_hamiltonian(format_hamiltonian(h));
    EXPECT_EQ(back.terms[0].coeff, 0.45);
    EXPECT_THROW(parse_hamiltonian("0.4 IXQ"), std::invalid_argument);
    EXPECT_THROW(parse_hamiltonian("x IX"), std::invalid_argument);
    EXPECT_THROW(parse_hamiltonian("1 IX\n1 Z"), std::invalid_argument);
    EXPECT_THROW(hamiltonian_expectation(Hamiltonian{1, {}}, Circuit(1)), std::invalid_argument);
}

TEST(hamiltonian, trivial_expectations) {
    auto z = hamiltonian_expectation(parse_hamiltonian("1 Z"), Circuit(1));
    EXPECT_EQ(z[0].second, Expr::constant(Coeff(1)));
    Circuit h(1);
    h.h(1);
    auto x = hamiltonian_expectation(parse_hamiltonian("1 X"), h);
    EXPECT_EQ(x[0].second, Expr::constant(Coeff(1)));
}

TEST(hamiltonian, matches_oracle_and_is_linear) {
    std::mt19937_64 rng(31);
    Circuit u = build_ansatz(AnsatzFamily::LinearEntangled, 4, 2);
    Hamiltonian h = parse_hamiltonian("0.3 IIZI\n-1.2 XXYY\n0.7 ZIIX\n");
    auto terms = hamiltonian_expectation(h, u);
    for (int t = 0; t < 100; ++t) {
        auto theta = random_vec(rng, u.params().size());
        Bindings b = bind_parameters(u, theta);
        double want = 0;
        for (const auto &term : h.terms) {
            want += term.coeff * oracle_numeric(u, MeasurementSpec::pauli_transition(term.pauli), theta).real();
        }
        EXPECT_NEAR(hamiltonian_value(terms, b), want, 1e-9);
        EXPECT_NEAR(eval_numeric(terms[0].second, b).real(),
                    oracle_numeric(u, MeasurementSpec::pauli_transition("IIZI"), theta).real(), 1e-9);
        auto scaled = terms;
        for (auto &[pt, e] : scaled) pt.coeff *= 2.5;
        EXPECT_NEAR(hamiltonian_value(scaled, b), 2.5 * hamiltonian_value(terms, b), 1e-9);
    }
}

TEST(kernel, identical_features_give_one) {
    std::mt19937_64 rng(32);
    auto x = random_vec(rng, 4, 0, 2 * M_PI);
    EXPECT_NEAR(kernel_entry(4, x, x).value, 1.0, 1e-12);
    std::vector<double> zero(4, 0.0);
    EXPECT_NEAR(kernel_entry(4, zero, zero).value, 1.0, 1e-12);
    EXPECT_THROW(kernel_entry(4, std::vector<double>(3), zero), std::invalid_argument);
}

TEST(kernel, symmetric_and_matches_oracle_overlap) {
    std::mt19937_64 rng(33);
    Circuit u = pauli_feature_map(4);
    for (int t = 0; t < 20; ++t) {
        auto xi = random_vec(rng, 4, 0, 2 * M_PI), xj = random_vec(rng, 4, 0, 2 * M_PI);
        double kij = kernel_entry(4, xi, xj).value;
        EXPECT_NEAR(kij, kernel_entry(4, xj, xi).value, 1e-12);
        StateVector a = oracle_state(u, feature_angles(4, xi)), b = oracle_state(u, feature_angles(4, xj));
        std::complex<double> overlap = 0;
        for (size_t k = 0; k < a.size(); ++k) overlap += std::conj(b[k]) * a[k];
        EXPECT_NEAR(kij, std::norm(overlap), 1e-9);
    }
}

TEST(kernel, merged_blocks_match_oracle_with_two_repetitions) {
    std::mt19937_64 rng(35);
    Circuit u = pauli_feature_map(2, 2);
    for (int t = 0; t < 5; ++t) {
        auto xi = random_vec(rng, 2, 0, 2 * M_PI), xj = random_vec(rng, 2, 0, 2 * M_PI);
        StateVector a = oracle_state(u, feature_angles(2, xi, 2)), b = oracle_state(u, feature_angles(2, xj, 2));
        std::complex<double> overlap = 0;
        for (size_t k = 0; k < a.size(); ++k) overlap += std::conj(b[k]) * a[k];
        KernelEntry e = kernel_entry(2, xi, xj, 2);
        EXPECT_NEAR(e.value, std::norm(overlap), 1e-9);
        EXPECT_NEAR(e.value, std::norm(oracle_numeric(e.composite, MeasurementSpec::amp0n(), e.angles)), 1e-9);
    }
}

TEST(kernel, gram_matrix_is_psd) {
    std::mt19937_64 rng(34);
    const int m = 8;
    std::vector<std::vector<double>> xs;
    for (int k = 0; k < m; ++k) xs.push_back(random_vec(rng, 4, 0, 2 * M_PI));
    Eigen::MatrixXd K(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) K(i, j) = kernel_entry(4, xs[i], xs[j]).value;
    }
    EXPECT_LT((K - K.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-9);
}
