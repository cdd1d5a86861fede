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

#include "msq/simplify.hpp"

#include <chrono>
#include <tuple>
#include <unordered_map>

namespace msq {

namespace {

using Clock = std::chrono::steady_clock;

// Binomial expansion of (1 - x^2)^q as (power of x^2, coefficient) pairs.
std::vector<std::pair<uint32_t, Coeff>> one_minus_square_pow(uint32_t q) {
    std::vector<std::pair<uint32_t, Coeff>> out;
    Rational binom(1);
    for (uint32_t j = 0; j <= q; ++j) {
        out.emplace_back(j, Coeff(j % 2 == 0 ? binom : -binom));
        binom = binom * Rational(q - j) / Rational(j + 1);
    }
    return out;
}

std::vector<Term> divided(const std::vector<Term> &terms, const Monomial &g, const Coeff &c) {
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const auto &t : terms) out.push_back({t.mono / g, t.coeff / c});
    return out;
}

// Common coefficient factor: a signed rational gcd, times i / sqrt2 / i*sqrt2
// when every coefficient lives in the same single component.
Coeff coefficient_content(const std::vector<Term> &terms) {
    int slot = -1;
    bool single_slot = true;
    bool all_negative = true;
    Rational g;
    for (const auto &t : terms) {
        if (t.coeff.component_count() != 1) {
            single_slot = false;
        } else {
            int k = 0;
            while (t.coeff[static_cast<size_t>(k)].is_zero()) ++k;
            if (slot == -1) slot = k;
            if (slot != k) single_slot = false;
            if (t.coeff[static_cast<size_t>(k)].sign() > 0) all_negative = false;
        }
        for (const auto &r : t.coeff.parts()) {
            if (!r.is_zero()) g = g.is_zero() ? r.abs() : Rational::content_gcd(g, r);
        }
    }
    if (!single_slot) {
        all_negative = false;
        slot = 0;
    }
    if (g.is_zero()) return Coeff(1);
    if (all_negative) g = -g;
    std::array<Rational, 4> p{};
    p[static_cast<size_t>(slot)] = g;
    return {p[0], p[1], p[2], p[3]};
}

bool all_even(const Monomial &m) {
    for (size_t k = 0; k < m.size(); ++k) {
        if (m.exp(k) % 2 != 0) return false;
    }
    return true;
}

Monomial monomial_sqrt(const Monomial &m) {
    Monomial r;
    for (size_t k = 0; k < m.size(); ++k) r = r * Monomial::of(m.sym(k), m.exp(k) / 2);
    return r;
}

NodePtr scaled_node(const Coeff &c, NodePtr inner) {
    if (c.is_one()) return inner;
    return Node::mul({Node::constant(c), std::move(inner)});
}

bool smaller(const NodePtr &a, const NodePtr &b) {
    return std::make_pair(a->size(), a->numeric_atoms()) < std::make_pair(b->size(), b->numeric_atoms());
}

NodePtr factor_terms(const std::vector<Term> &terms) {
    Poly flat_poly = Poly::from_terms(terms);
    NodePtr best = render_poly(flat_poly);
    if (terms.size() <= 1) return best;

    Monomial g = terms[0].mono;
    for (size_t k = 1; k < terms.size() && !g.is_one(); ++k) g = Monomial::gcd(g, terms[k].mono);
    Coeff c = coefficient_content(terms);
    if (!g.is_one() || !c.is_one()) {
        NodePtr inner = factor_terms(divided(terms, g, c));
        NodePtr cand = g.is_one() ? scaled_node(c, inner) : Node::mul({render_term(g, c), inner});
        if (smaller(cand, best)) best = cand;
        if (!g.is_one()) return best;
    }

    if (terms.size() == 2 && terms[0].coeff == -terms[1].coeff && all_even(terms[0].mono) &&
        all_even(terms[1].mono)) {
        NodePtr u = render_term(monomial_sqrt(terms[0].mono), Coeff(1));
        NodePtr v = render_term(monomial_sqrt(terms[1].mono), Coeff(1));
        NodePtr cand = scaled_node(terms[0].coeff, Node::mul({Node::add({u, Node::neg(v)}), Node::add({u, v})}));
        // Ties go to the factored form.
        return smaller(best, cand) ? best : cand;
    }

    std::unordered_map<uint32_t, size_t> counts;
    for (const auto &t : terms) {
        for (size_t k = 0; k < t.mono.size(); ++k) ++counts[t.mono.sym(k).id()];
    }
    uint32_t pick = 0;
    size_t pick_count = 1;
    for (const auto &[id, n] : counts) {
        if (n < terms.size() && (n > pick_count || (n == pick_count && n > 1 && id < pick))) {
            pick = id;
            pick_count = n;
        }
    }
    if (pick_count < 2) return best;

    Sym v = Sym::from_id(pick);
    std::vector<Term> with, without;
    for (const auto &t : terms) (t.mono.exponent_of(v) > 0 ? with : without).push_back(t);
    NodePtr a = factor_terms(with);
    NodePtr b = factor_terms(without);
    NodePtr cand = without[0].mono < with[0].mono ? Node::add({b, a}) : Node::add({a, b});
    return smaller(cand, best) ? cand : best;
}

struct Key {
    size_t leafcount;
    size_t numeric_atoms;
    friend auto operator<=>(const Key &, const Key &) = default;
};

Key key_of(const NodePtr &n) {
    return {n->size(), n->numeric_atoms()};
}

std::vector<Sym> constrained_firsts(const Poly &p) {
    std::vector<Sym> out;
    for (Sym s : p.symbols()) {
        if (!s.is_constrained()) continue;
        Sym first = s.is_first_of_pair() ? s : s.partner();
        if (out.empty() || out.back() != first) out.push_back(first);
    }
    return out;
}

Poly eliminate_all(const Poly &p, bool second, SymKind first_kind) {
    Poly r = p;
    for (Sym f : constrained_firsts(p)) {
        if (f.kind() != first_kind) continue;
        r = eliminate_square(r, second ? f.partner() : f);
    }
    return r;
}

}  // namespace

Poly eliminate_square(const Poly &p, Sym target) {
    if (!target.is_constrained()) throw std::invalid_argument("cannot eliminate unconstrained symbol " + target.name());
    Sym keep = target.partner();
    PolyAccumulator acc;
    acc.reserve(p.size() * 2);
    std::unordered_map<uint32_t, std::vector<std::pair<uint32_t, Coeff>>> expansions;
    for (const auto &t : p.terms()) {
        uint32_t e = t.mono.exponent_of(target);
        if (e < 2) {
            acc.add(t.mono, t.coeff);
            continue;
        }
        auto it = expansions.find(e / 2);
        if (it == expansions.end()) it = expansions.emplace(e / 2, one_minus_square_pow(e / 2)).first;
        Monomial base = t.mono.with_exponent(target, e % 2);
        uint32_t k0 = base.exponent_of(keep);
        for (const auto &[j, c] : it->second) acc.add(base.with_exponent(keep, k0 + 2 * j), t.coeff * c);
    }
    return std::move(acc).build();
}

Poly contract_pairs(const Poly &p) {
    Poly cur = p;
    for (bool changed = true; changed;) {
        changed = false;
        std::unordered_map<Monomial, Coeff, MonomialHash> live;
        live.reserve(cur.size());
        for (const auto &t : cur.terms()) live.emplace(t.mono, t.coeff);
        PolyAccumulator acc;
        for (const auto &t : cur.terms()) {
            if (!live.contains(t.mono)) continue;
            for (size_t k = 0; k < t.mono.size(); ++k) {
                Sym s = t.mono.sym(k);
                uint32_t e = t.mono.exp(k);
                if (!s.is_first_of_pair() || e < 2) continue;
                Monomial rest = t.mono.with_exponent(s, e - 2);
                Monomial other = rest.with_exponent(s.partner(), rest.exponent_of(s.partner()) + 2);
                auto it = live.find(other);
                if (it == live.end() || it->second != t.coeff) continue;
                live.erase(it);
                live.erase(t.mono);
                acc.add(rest, t.coeff);
                changed = true;
                break;
            }
        }
        if (!changed) break;
        for (auto &[m, c] : live) acc.add(m, c);
        cur = std::move(acc).build();
    }
    return cur;
}

NodePtr factored_form(const Poly &p) {
    return factor_terms(p.terms());
}

Expr factor_group(const Expr &e) {
    NodePtr f = factored_form(e.poly());
    if (f->size() > leafcount(e)) return e;
    return Expr::from_form(f);
}

Expr pythagorean_reduce(const Expr &e, ReduceDirection direction) {
    const Poly &p = e.poly();
    switch (direction) {
        case ReduceDirection::EliminateS2:
            return Expr(eliminate_all(p, true, SymKind::C));
        case ReduceDirection::EliminateB2:
            return Expr(eliminate_all(p, true, SymKind::A));
        case ReduceDirection::EliminateC2:
            return Expr(eliminate_all(p, false, SymKind::C));
        case ReduceDirection::EliminateA2:
            return Expr(eliminate_all(p, false, SymKind::A));
        case ReduceDirection::BestOfBoth:
            break;
    }
    Poly cur = p;
    for (Sym f : constrained_firsts(p)) {
        Poly best = cur;
        Key best_key = key_of(factored_form(cur));
        for (Sym target : {f.partner(), f}) {
            Poly cand = eliminate_square(cur, target);
            Key k = key_of(factored_form(cand));
            if (k < best_key) {
                best = std::move(cand);
                best_key = k;
            }
        }
        cur = std::move(best);
    }
    return factor_group(Expr(cur));
}

Expr constraint_normal_form(const Expr &e) {
    Poly r = e.poly();
    for (Sym f : constrained_firsts(r)) r = eliminate_square(r, f.partner());
    return Expr(r);
}

SimplifyResult simplify(const Expr &e, const SimplifyConfig &cfg) {
    auto start = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    SimplifyResult res;
    res.expr = e;
    if (cfg.intensity <= 0 || e.is_constant() || e.is_atom()) {
        res.fixpoint = true;
        return res;
    }

    Poly cur = e.poly();
    NodePtr cur_form = e.rendered();
    Key cur_key = key_of(cur_form);

    auto offer = [&](int pass, const std::string &rule, Poly cand) {
        NodePtr f = factored_form(cand);
        Key k = key_of(f);
        if (!(k < cur_key)) return false;
        if (cfg.record_trace) res.trace.push_back({pass, rule, cur_key.leafcount, k.leafcount});
        cur = std::move(cand);
        cur_form = std::move(f);
        cur_key = k;
        return true;
    };

    for (int pass = 1; pass <= cfg.intensity; ++pass) {
        res.passes_run = pass;
        bool changed = false;
        if (pass == 1) changed |= offer(pass, "factor", cur);
        changed |= offer(pass, "contract", contract_pairs(cur));
        for (Sym f : constrained_firsts(cur)) {
            if (elapsed() > cfg.budget_seconds) {
                res.budget_exceeded = true;
                break;
            }
            // The second square is tried first, so it wins ties.
            for (Sym target : {f.partner(), f}) {
                changed |= offer(pass, "eliminate:" + target.name(), contract_pairs(eliminate_square(cur, target)));
            }
        }
        if (res.budget_exceeded) break;
        if (!changed) {
            res.fixpoint = true;
            break;
        }
    }

    if (cur_form != e.rendered()) res.expr = Expr::from_form(cur_form);
    res.seconds = elapsed();
    return res;
}

Rational improvement_factor(const Expr &before, const Expr &after) {
    return Rational(static_cast<int64_t>(leafcount(before)), static_cast<int64_t>(leafcount(after)));
}

nlohmann::json trace_to_json(const SimplifyResult &r) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto &t : r.trace) {
        events.push_back({{"pass", t.pass},
                          {"rule", t.rule},
                          {"leafcount_before", t.leafcount_before},
                          {"leafcount_after", t.leafcount_after}});
    }
    return {{"passes_run", r.passes_run},
            {"fixpoint", r.fixpoint},
            {"budget_exceeded", r.budget_exceeded},
            {"seconds", r.seconds},
            {"leafcount", leafcount(r.expr)},
            {"events", events}};
}

}  // namespace msq
