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

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "msq/expr.hpp"
#include "msq/rational.hpp"

namespace msq {

/// Which square of a constrained pair (first^2 + second^2 = 1) to rewrite away.
enum class ReduceDirection {
    EliminateS2,  // S(k)^2 -> 1 - C(k)^2 for every trig pair
    EliminateB2,  // B(i)^2 -> 1 - A(i)^2 for every amplitude pair
    EliminateC2,  // C(k)^2 -> 1 - S(k)^2
    EliminateA2,  // A(i)^2 -> 1 - B(i)^2
    BestOfBoth,   // per pair, whichever direction (or none) renders smaller
};

/// Rewrites `target`^e (e >= 2) as target^(e mod 2) * (1 - partner^2)^(e div 2)
/// in every term. `target` must be a constrained symbol.
Poly eliminate_square(const Poly &p, Sym target);

/// Replaces every matching pair c*m*first^2 + c*m*second^2 by c*m, for all
/// constrained pairs, until no pair matches.
Poly contract_pairs(const Poly &p);

Expr pythagorean_reduce(const Expr &e, ReduceDirection direction);

/// Canonical representative modulo all constraints: eliminates S^2 and B^2.
/// Two Exprs agree on every constraint-respecting binding exactly when their
/// normal forms are equal.
Expr constraint_normal_form(const Expr &e);

/// Factored rendering of the canonical polynomial (common monomial and
/// coefficient content, two-term differences of squares, recursive grouping
/// by the most frequent symbol). Returns `e` unchanged when the factored
/// form would be larger.
Expr factor_group(const Expr &e);

/// Rendering minimizing node count among the forms factor_group explores.
NodePtr factored_form(const Poly &p);

struct SimplifyConfig {
    /// Number of full rewrite passes; 0 returns the input unchanged.
    int intensity = 3;
    double budget_seconds = 10.0;
    bool record_trace = false;
};

struct TraceEvent {
    int pass;
    std::string rule;  // "contract", "eliminate:s3", "eliminate:a1", ...
    size_t leafcount_before;
    size_t leafcount_after;
};

struct SimplifyResult {
    Expr expr;
    bool budget_exceeded = false;
    /// True when a pass made no change, so further intensity cannot help.
    bool fixpoint = false;
    int passes_run = 0;
    double seconds = 0.0;
    std::vector<TraceEvent> trace;
};

/// Greedy leafcount-guided rewriting. Every accepted rewrite strictly lowers
/// (leafcount, numeric atom count) of the factored rendering, so the result
/// never renders larger than the input.
SimplifyResult simplify(const Expr &e, const SimplifyConfig &cfg = {});

/// leafcount(before) / leafcount(after).
Rational improvement_factor(const Expr &before, const Expr &after);

nlohmann::json trace_to_json(const SimplifyResult &r);

}  // namespace msq
