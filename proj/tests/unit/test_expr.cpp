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

#include <cmath>
#include <random>

#include "msq/eval_plan.hpp"
#include "msq/expr.hpp"
#include "msq/expr_json.hpp"
#include "test_util.hpp"

using namespace msq;
using msq::testing::random_bindings;
using msq::testing::random_expr;
using msq::testing::rel_err;

namespace {

Expr A(uint32_t i) { return Expr::symbol(Sym::a(i)); }
Expr B(uint32_t i) { return Expr::symbol(Sym::b(i)); }
Expr C(uint32_t k) { return Expr::symbol(Sym::c(k)); }
Expr S(uint32_t k) { return Expr::symbol(Sym::s(k)); }

// Independent reference: monomial-by-monomial summation in long double.
std::complex<long double> reference_eval(const Expr &e, const Bindings &b) {
    std::complex<long double> total = 0;
    for (const auto &t : e.poly().terms()) {
        std::complex<long double> v = t.coeff.to_complex_ld();
        for (size_t k = 0; k < t.mono.size(); ++k) {
            auto x = b.at(t.mono.sym(k));
            std::complex<long double> xl(x.real(), x.imag());
            for (uint32_t p = 0; p < t.mono.exp(k); ++p) v *= xl;
        }
        total += v;
    }
    return total;
}

}  // namespace

TEST(rational, normalizes_and_parses) {
    EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
    EXPECT_EQ(Rational::parse("-6/8").str(), "-3/4");
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
}

TEST(rational, overflow_is_reported) {
    Rational big(INT64_MAX);
    EXPECT_THROW(big * Rational(2), std::overflow_error);
    EXPECT_THROW(big + Rational(1), std::overflow_error);
}

TEST(coeff, sqrt2_squared_is_two) {
    EXPECT_EQ(Coeff(0, 0, 1, 0) * Coeff(0, 0, 1, 0), Coeff(2, 0, 0, 0));
    EXPECT_EQ(Coeff::i() * Coeff::i(), Coeff(-1));
    EXPECT_EQ(Coeff::inv_sqrt2() * Coeff::inv_sqrt2(), Coeff(Rational(1, 2)));
}

TEST(coeff, division_inverts_multiplication) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Coeff a = msq::testing::random_coeff(rng), b = msq::testing::random_coeff(rng);
        EXPECT_EQ((a * b) / b, a);
    }
    EXPECT_THROW(Coeff(1) / Coeff(), std::domain_error);
}

TEST(coeff, fraction_summed_denominator_times_is_exact) {
    for (int64_t den = 1; den <= 40; ++den) {
        for (int64_t num = -5; num <= 5; ++num) {
            Coeff part(Rational(num, den), Rational(num, den + 1), Rational(-num, den), 0);
            Coeff sum;
            for (int64_t k = 0; k < den; ++k) sum += part;
            EXPECT_EQ(sum[0], Rational(num));
            EXPECT_EQ(sum[2], Rational(-num));
        }
    }
}

TEST(sym, global_order) {
    EXPECT_LT(Sym::c(0), Sym::s(0));
    EXPECT_LT(Sym::s(0), Sym::c(1));
    EXPECT_LT(Sym::s(900), Sym::a(0));
    EXPECT_LT(Sym::a(0), Sym::b(0));
    EXPECT_LT(Sym::b(3), Sym::a(4));
    EXPECT_LT(Sym::b(100), Sym::x(0));
    EXPECT_EQ(Sym::c(5).partner(), Sym::s(5));
    EXPECT_EQ(Sym::b(2).partner(), Sym::a(2));
    EXPECT_EQ(Sym::a(3).name(), "a3");
}

TEST(expr_build, canonical_form_ignores_construction_order) {
    Expr x = A(1).pow(2) + B(1).pow(2);
    Expr y = B(1) * B(1) + A(1) * A(1);
    EXPECT_EQ(x, y);
    EXPECT_TRUE(x.same_form(y));
}

TEST(expr_build, difference_of_squares_expands) {
    Expr e = (C(0) + S(0)) * (C(0) - S(0));
    Expr expected = C(0).pow(2) - S(0).pow(2);
    EXPECT_EQ(e, expected);
    EXPECT_EQ(e.poly().size(), 2u);
}

TEST(expr_build, graded_lex_puts_constant_first) {
    Expr e = A(1).pow(2) + Expr::constant(Coeff(Rational(1, 2))) + A(1) * B(1) * B(2);
    const auto &t = e.poly().terms();
    ASSERT_EQ(t.size(), 3u);
    EXPECT_TRUE(t[0].mono.is_one());
    EXPECT_EQ(t[1].mono.degree(), 2u);
    EXPECT_EQ(t[2].mono.degree(), 3u);
}

TEST(expr_build, ring_axioms_on_random_exprs) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Expr a = random_expr(rng), b = random_expr(rng), c = random_expr(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a - a, Expr());
    }
}

TEST(leafcount, atoms_and_sums) {
    EXPECT_EQ(leafcount(A(1)), 1u);
    EXPECT_EQ(leafcount(A(1).pow(2) + B(1).pow(2)), 7u);
    // Negative constants render under a negation head.
    EXPECT_EQ(leafcount(Expr::constant(Coeff(-3))), 2u);
    EXPECT_EQ(leafcount(C(0).pow(2) - S(0).pow(2)), 8u);
    // 1/2 + a1*b1: sum, rational atom, product of two symbols.
    EXPECT_EQ(leafcount(Expr::constant(Coeff(Rational(1, 2))) + A(1) * B(1)), 5u);
}

TEST(leafcount, invariant_under_permuted_construction) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Expr e = random_expr(rng, 8);
        std::vector<Term> terms = e.poly().terms();
        std::shuffle(terms.begin(), terms.end(), rng);
        Expr rebuilt;
        for (const auto &t : terms) rebuilt = rebuilt + Expr(Poly::monomial(t.mono, t.coeff));
        EXPECT_EQ(leafcount(rebuilt), leafcount(e));
        EXPECT_TRUE(rebuilt.same_form(e));
    }
}

TEST(eval_numeric, examples) {
    Bindings b{{Sym::a(1), 0.6}, {Sym::b(1), 0.8}};
    EXPECT_NEAR(std::abs(eval_numeric(A(1).pow(2) + B(1).pow(2), b) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(eval_numeric(Expr::constant(Coeff::sqrt2()), {}).real(), 1.4142135623730951, 1e-15);
}

TEST(eval_numeric, unbound_symbol_is_named) {
    try {
        eval_numeric(A(1) + C(3), {{Sym::a(1), 1.0}});
        FAIL() << "expected an unbound-symbol error";
    } catch (const std::out_of_range &err) {
        EXPECT_NE(std::string(err.what()).find("c3"), std::string::npos);
    }
}

TEST(eval_numeric, degree6_matches_extended_precision_reference) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        Expr e = random_expr(rng, 12, 6);
        for (int point = 0; point < 20; ++point) {
            Bindings b = random_bindings(rng, msq::testing::small_alphabet());
            auto ref = reference_eval(e, b);
            std::complex<double> refd(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
            EXPECT_LE(rel_err(eval_numeric(e, b), refd), 1e-12);
        }
    }
}

TEST(compile, constant_is_single_op) {
    EvalPlan plan = compile(Expr::constant(Coeff(Rational(3, 4))));
    ASSERT_EQ(plan.ops().size(), 1u);
    EXPECT_EQ(plan.ops()[0].code, OpCode::Constant);
    EXPECT_DOUBLE_EQ(plan.run(Bindings{}).real(), 0.75);
}

TEST(compile, shared_factor_is_computed_once) {
    NodePtr sum = Node::add({Node::symbol(Sym::a(1)), Node::symbol(Sym::b(1))});
    Expr e = Expr::from_form(Node::mul({sum, Node::add({Node::symbol(Sym::a(1)), Node::symbol(Sym::b(1))})}));
    ASSERT_TRUE(e.has_overlay());
    EvalPlan plan = compile(e);
    size_t adds = 0, muls = 0;
    for (const auto &op : plan.ops()) {
        adds += op.code == OpCode::Add;
        muls += op.code == OpCode::Mul;
    }
    EXPECT_EQ(adds, 1u);
    EXPECT_EQ(muls, 1u);
    EXPECT_NEAR(plan.run(Bindings{{Sym::a(1), 0.25}, {Sym::b(1), 0.5}}).real(), 0.5625, 1e-15);
}

TEST(compile, plan_matches_eval_numeric) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        Expr e = random_expr(rng, 10, 5);
        EvalPlan plan = compile(e);
        EXPECT_LE(plan.arithmetic_op_count(), leafcount(e));
        EXPECT_EQ(compile(e).ops().size(), plan.ops().size());
        for (int point = 0; point < 5; ++point) {
            Bindings b = random_bindings(rng, msq::testing::small_alphabet());
            EXPECT_LE(rel_err(plan.run(b), eval_numeric(e, b)), 1e-12);
        }
    }
}

TEST(expr_json, round_trip_is_exact) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        Expr e = random_expr(rng, 8);
        std::string text = serialize_expr(e);
        Expr back = parse_expr(text);
        EXPECT_EQ(back, e);
        EXPECT_TRUE(back.same_form(e));
        EXPECT_EQ(serialize_expr(back), text);
    }
}

TEST(expr_json, overlay_survives_round_trip) {
    NodePtr f = Node::mul({Node::pow(Node::symbol(Sym::a(1)), 2),
                           Node::add({Node::pow(Node::symbol(Sym::a(2)), 2), Node::pow(Node::symbol(Sym::b(2)), 2)})});
    Expr e = Expr::from_form(f);
    Expr back = parse_expr(serialize_expr(e));
    EXPECT_TRUE(back.has_overlay());
    EXPECT_TRUE(back.same_form(e));
    EXPECT_EQ(back.str(), "a1^2*(a2^2 + b2^2)");
}

TEST(expr_json, malformed_input_is_rejected) {
    EXPECT_THROW(parse_expr("{\"op\":\"frob\",\"args\":[]}"), std::invalid_argument);
    EXPECT_THROW(parse_expr("{\"sym\":\"q\",\"idx\":1}"), std::invalid_argument);
    EXPECT_THROW(parse_expr("{\"coeff\":[\"1\"]}"), std::invalid_argument);
    EXPECT_THROW(parse_expr("{\"op\":"), std::invalid_argument);
}

TEST(infix, prints_sums_and_negations) {
    Expr e = Expr::constant(Coeff(Rational(1, 2))) + A(1) * B(1) * A(2).pow(2) - A(1) * B(1) * B(2).pow(2);
    EXPECT_EQ(e.str(), "1/2 + a1*b1*a2^2 - a1*b1*b2^2");
    EXPECT_EQ(Expr::constant(Coeff::inv_sqrt2()).str(), "1/2*sqrt2");
}
