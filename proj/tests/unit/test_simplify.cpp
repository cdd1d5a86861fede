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

#include <random>

#include "msq/simplify.hpp"
#include "test_util.hpp"

using namespace msq;
using msq::testing::constrained_bindings;
using msq::testing::rel_err;

namespace {

Expr sym(Sym s) {
    return Expr::symbol(s);
}

Expr num(int64_t n, int64_t d = 1) {
    return Expr::constant(Coeff(Rational(n, d)));
}

const Expr A1 = sym(Sym::a(1)), B1 = sym(Sym::b(1)), A2 = sym(Sym::a(2)), B2 = sym(Sym::b(2));
const Expr C0 = sym(Sym::c(0)), S0 = sym(Sym::s(0));

// Value-preserving random expression whose constrained structure gives the
// rewriter something to do: a random polynomial times random multiples of
// (first^2 + second^2) for a few pairs.
Expr padded_random_expr(std::mt19937_64 &rng) {
    Expr e = msq::testing::random_expr(rng, 5, 3, false);
    const auto &syms = msq::testing::small_alphabet();
    for (int k = 0; k < 2; ++k) {
        Sym f = syms[2 * (rng() % (syms.size() / 2))];
        Expr one = sym(f).pow(2) + sym(f.partner()).pow(2);
        e = e * one + msq::testing::random_expr(rng, 2, 2, false) * (one - num(1));
    }
    return e;
}

void expect_same_value(const Expr &a, const Expr &b, std::mt19937_64 &rng) {
    const auto &syms = msq::testing::small_alphabet();
    for (int k = 0; k < 100; ++k) {
        Bindings bind = constrained_bindings(rng, syms);
        ASSERT_LT(rel_err(eval_numeric(a, bind), eval_numeric(b, bind)), 1e-10);
    }
}

}  // namespace

TEST(eliminate_square, pythagorean_examples) {
    EXPECT_EQ(Expr(eliminate_square(S0.pow(2).poly(), Sym::s(0))), num(1) - C0.pow(2));
    EXPECT_EQ(Expr(eliminate_square(S0.pow(4).poly(), Sym::s(0))), num(1) - num(2) * C0.pow(2) + C0.pow(4));
    EXPECT_EQ(pythagorean_reduce(A1.pow(2) + B1.pow(2), ReduceDirection::EliminateB2), num(1));
    EXPECT_EQ(pythagorean_reduce(S0.pow(3) * B1.pow(2), ReduceDirection::EliminateS2),
              (S0 - S0 * C0.pow(2)) * B1.pow(2));
}

TEST(eliminate_square, chosen_direction_leaves_no_square) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Expr e = padded_random_expr(rng);
        Expr r = pythagorean_reduce(e, ReduceDirection::EliminateS2);
        for (const auto &t : r.poly().terms()) {
            for (size_t k = 0; k < t.mono.size(); ++k) {
                if (t.mono.sym(k).kind() == SymKind::S) EXPECT_LT(t.mono.exp(k), 2u);
            }
        }
        expect_same_value(e, r, rng);
    }
}

TEST(eliminate_square, rules_are_sound_on_random_exprs) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        Expr e = padded_random_expr(rng);
        for (auto d : {ReduceDirection::EliminateS2, ReduceDirection::EliminateB2, ReduceDirection::EliminateC2,
                       ReduceDirection::EliminateA2, ReduceDirection::BestOfBoth}) {
            expect_same_value(e, pythagorean_reduce(e, d), rng);
        }
        expect_same_value(e, Expr(contract_pairs(e.poly())), rng);
    }
}

TEST(contract_pairs, collapses_nested_pairs) {
    Expr e = A1.pow(2) * A2.pow(2) + A1.pow(2) * B2.pow(2) + B1.pow(2) * A2.pow(2) + B1.pow(2) * B2.pow(2);
    EXPECT_EQ(Expr(contract_pairs(e.poly())), num(1));
    Expr partial = num(3) * C0.pow(2) * A1 + num(3) * S0.pow(2) * A1 + C0.pow(2);
    EXPECT_EQ(Expr(contract_pairs(partial.poly())), num(3) * A1 + C0.pow(2));
}

TEST(constraint_normal_form, equal_modulo_constraints) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        Expr e = msq::testing::random_expr(rng, 5, 4);
        Expr m = msq::testing::random_expr(rng, 3, 2);
        Expr padded = e + m * (C0.pow(2) + S0.pow(2) - num(1)) + (A2.pow(2) + B2.pow(2) - num(1)) * m * m;
        EXPECT_EQ(constraint_normal_form(e), constraint_normal_form(padded));
    }
}

TEST(factor_group, common_monomial) {
    Expr f = factor_group(A1.pow(2) * A2.pow(2) + A1.pow(2) * B2.pow(2));
    EXPECT_EQ(f.str(), "a1^2*(a2^2 + b2^2)");
    EXPECT_EQ(leafcount(f), 11u);
}

TEST(factor_group, difference_of_squares) {
    Expr e = C0.pow(2) - S0.pow(2);
    Expr f = factor_group(e);
    EXPECT_EQ(f.str(), "(c0 - s0)*(c0 + s0)");
    EXPECT_EQ(f, e);
    EXPECT_LE(leafcount(f), leafcount(e));
}

TEST(factor_group, random_products_refactor_no_larger) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        Expr p = msq::testing::random_expr(rng, 3, 2) * msq::testing::random_expr(rng, 3, 2) *
                 msq::testing::random_expr(rng, 3, 2);
        Expr f = factor_group(p);
        EXPECT_EQ(f, p);
        EXPECT_EQ(expand(*f.rendered()), p.poly());
        EXPECT_LE(leafcount(f), leafcount(p));
    }
}

TEST(simplify, product_of_two_pairs_is_one) {
    Expr e = A1.pow(2) * A2.pow(2) + A1.pow(2) * B2.pow(2) + B1.pow(2) * A2.pow(2) + B1.pow(2) * B2.pow(2);
    EXPECT_TRUE(simplify(e).expr.same_form(num(1)));
}

TEST(simplify, cnot_target_rule_is_already_minimal) {
    Expr e = A1.pow(2) * A2.pow(2) + B1.pow(2) * B2.pow(2);
    SimplifyResult r = simplify(e);
    EXPECT_EQ(r.expr, e);
    EXPECT_EQ(leafcount(r.expr), leafcount(e));
}

TEST(simplify, entangled_hadamard_rule) {
    // P(qubit 2 = 0) after H on 1 and CNOT 1->2, expanded.
    Expr h0 = (A1 + B1) * num(1, 2), h1 = (A1 - B1) * num(1, 2);
    Expr e = num(2) * (h0.pow(2) * A2.pow(2) + h1.pow(2) * B2.pow(2));
    SimplifyResult r = simplify(e);
    Expr expected = num(1, 2) + A1 * B1 * (A2.pow(2) - B2.pow(2));
    EXPECT_EQ(r.expr, expected);
    EXPECT_LE(leafcount(r.expr), leafcount(Expr::from_form(factored_form(expected.poly()))));
}

TEST(simplify, intensity_zero_and_atoms_are_identity) {
    Expr e = A1.pow(2) + B1.pow(2);
    SimplifyConfig cfg;
    cfg.intensity = 0;
    EXPECT_TRUE(simplify(e, cfg).expr.same_form(e));
    EXPECT_TRUE(simplify(A1).expr.same_form(A1));
    EXPECT_TRUE(simplify(num(-3, 4)).expr.same_form(num(-3, 4)));
}

TEST(simplify, sound_monotone_and_idempotent) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        Expr e = padded_random_expr(rng);
        SimplifyConfig cfg;
        cfg.intensity = 8;
        SimplifyResult r = simplify(e, cfg);
        ASSERT_FALSE(r.budget_exceeded);
        expect_same_value(e, r.expr, rng);
        EXPECT_LE(leafcount(r.expr), leafcount(e));
        if (r.fixpoint) {
            SimplifyResult again = simplify(r.expr, cfg);
            EXPECT_TRUE(again.expr.same_form(r.expr)) << r.expr.str() << " vs " << again.expr.str();
        }
    }
}

TEST(simplify, leafcount_non_increasing_in_intensity) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        Expr e = padded_random_expr(rng);
        size_t prev = leafcount(e);
        for (int level = 0; level <= 5; ++level) {
            SimplifyConfig cfg;
            cfg.intensity = level;
            size_t lc = leafcount(simplify(e, cfg).expr);
            EXPECT_LE(lc, prev);
            prev = lc;
        }
    }
}

TEST(simplify, trace_records_each_accepted_rewrite) {
    Expr e = num(3) + A1.pow(2) * (C0.pow(2) + S0.pow(2)) + B1.pow(2);
    SimplifyConfig cfg;
    cfg.record_trace = true;
    SimplifyResult r = simplify(e, cfg);
    EXPECT_EQ(r.expr, num(4));
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace.front().leafcount_before, leafcount(e));
    EXPECT_EQ(r.trace.back().leafcount_after, leafcount(r.expr));
    for (const auto &t : r.trace) EXPECT_LT(t.leafcount_after, t.leafcount_before);
    auto j = trace_to_json(r);
    EXPECT_EQ(j["events"].size(), r.trace.size());
}

TEST(simplify, zero_budget_returns_flagged_best_so_far) {
    std::mt19937_64 rng(17);
    Expr e = padded_random_expr(rng);
    SimplifyConfig cfg;
    cfg.budget_seconds = 0.0;
    SimplifyResult r = simplify(e, cfg);
    EXPECT_TRUE(r.budget_exceeded);
    EXPECT_EQ(constraint_normal_form(r.expr), constraint_normal_form(e));
    EXPECT_LE(leafcount(r.expr), leafcount(e));
}

TEST(improvement_factor, ratios) {
    Expr e = A1.pow(2) + B1.pow(2);
    EXPECT_EQ(improvement_factor(e, e), Rational(1));
    Expr big = A1 * B1 * C0;  // 4 nodes
    EXPECT_EQ(improvement_factor(big, A1), Rational(4));
    EXPECT_NEAR(Rational(2273, 757).to_double(), 3.003, 5e-4);
}
