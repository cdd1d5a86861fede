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

#include "msq/node.hpp"

#include <stdexcept>

namespace msq {

namespace {

NodePtr make(NodeKind kind, Sym sym, Coeff value, uint64_t exponent, std::vector<NodePtr> args) {
    return std::make_shared<const Node>(kind, sym, std::move(value), exponent, std::move(args));
}

const Sym kNoSym = Sym::c(0);

bool is_atom_value(const Coeff &c) {
    if (c.component_count() != 1) return false;
    if (!c[0].is_zero()) return c[0].sign() > 0;
    if (!c[1].is_zero()) return c[1].is_one();
    if (!c[2].is_zero()) return c[2].is_one();
    return false;
}

// Factors for one nonzero component q*unit, unit in {1, i, sqrt2, i*sqrt2}.
NodePtr render_component(size_t slot, const Rational &q, std::vector<NodePtr> tail) {
    std::vector<NodePtr> factors;
    Rational mag = q.abs();
    bool has_i = slot == 1 || slot == 3;
    bool has_r = slot == 2 || slot == 3;
    if (!mag.is_one() || (!has_i && !has_r && tail.empty())) factors.push_back(Node::number(Coeff(mag)));
    if (has_i) factors.push_back(Node::number(Coeff::i()));
    if (has_r) factors.push_back(Node::number(Coeff::sqrt2()));
    for (auto &t : tail) factors.push_back(std::move(t));
    NodePtr body = Node::mul(std::move(factors));
    return q.sign() < 0 ? Node::neg(body) : body;
}

std::string num_text(const Coeff &c) {
    if (c == Coeff::i()) return "I";
    if (c == Coeff::sqrt2()) return "sqrt2";
    return c[0].str();
}

std::string infix(const Node &n, bool wrap_sum, bool wrap_neg);

std::string infix_factor(const Node &n) {
    return infix(n, true, true);
}

std::string infix(const Node &n, bool wrap_sum, bool wrap_neg) {
    switch (n.kind()) {
        case NodeKind::Sym:
            return n.sym().name();
        case NodeKind::Num:
            return num_text(n.value());
        case NodeKind::Neg: {
            std::string s = "-" + infix(*n.args()[0], true, true);
            return wrap_neg ? "(" + s + ")" : s;
        }
        case NodeKind::Pow: {
            const Node &b = *n.args()[0];
            std::string base = infix(b, true, true);
            if (b.kind() == NodeKind::Mul || (b.kind() == NodeKind::Num && base.find('/') != std::string::npos)) {
                base = "(" + base + ")";
            }
            return base + "^" + std::to_string(n.exponent());
        }
        case NodeKind::Mul: {
            std::string s;
            for (size_t k = 0; k < n.args().size(); ++k) {
                if (k) s += "*";
                s += infix_factor(*n.args()[k]);
            }
            return s;
        }
        case NodeKind::Add: {
            std::string s;
            for (size_t k = 0; k < n.args().size(); ++k) {
                const Node &a = *n.args()[k];
                if (a.kind() == NodeKind::Neg) {
                    s += k ? " - " : "-";
                    s += infix(*a.args()[0], true, true);
                } else {
                    if (k) s += " + ";
                    s += infix(a, false, false);
                }
            }
            return wrap_sum ? "(" + s + ")" : s;
        }
    }
    return "?";
}

}  // namespace

Node::Node(NodeKind kind, Sym sym, Coeff value, uint64_t exponent, std::vector<NodePtr> args)
    : kind_(kind), sym_(sym), value_(std::move(value)), exponent_(exponent), args_(std::move(args)) {
    size_ = 1;
    numeric_atoms_ = kind_ == NodeKind::Num ? 1 : 0;
    if (kind_ == NodeKind::Pow) size_ += 1;
    for (const auto &a : args_) {
        size_ += a->size_;
        numeric_atoms_ += a->numeric_atoms_;
    }
}

NodePtr Node::add(std::vector<NodePtr> args) {
    std::vector<NodePtr> flat;
    flat.reserve(args.size());
    for (auto &a : args) {
        if (a->kind() == NodeKind::Add) {
            flat.insert(flat.end(), a->args().begin(), a->args().end());
        } else {
            flat.push_back(std::move(a));
        }
    }
    if (flat.empty()) return number(Coeff(0));
    if (flat.size() == 1) return flat[0];
    return make(NodeKind::Add, kNoSym, Coeff(), 0, std::move(flat));
}

NodePtr Node::mul(std::vector<NodePtr> args) {
    std::vector<NodePtr> flat;
    flat.reserve(args.size());
    bool negate = false;
    for (auto &a : args) {
        NodePtr x = a;
        while (x->kind() == NodeKind::Neg) {
            negate = !negate;
            x = x->args()[0];
        }
        if (x->kind() == NodeKind::Mul) {
            flat.insert(flat.end(), x->args().begin(), x->args().end());
        } else {
            flat.push_back(std::move(x));
        }
    }
    NodePtr body;
    if (flat.empty()) {
        body = number(Coeff(1));
    } else if (flat.size() == 1) {
        body = flat[0];
    } else {
        body = make(NodeKind::Mul, kNoSym, Coeff(), 0, std::move(flat));
    }
    return negate ? neg(body) : body;
}

NodePtr Node::pow(NodePtr base, uint64_t exponent) {
    if (exponent == 0) return number(Coeff(1));
    if (exponent == 1) return base;
    return make(NodeKind::Pow, kNoSym, Coeff(), exponent, {std::move(base)});
}

NodePtr Node::neg(NodePtr arg) {
    if (arg->kind() == NodeKind::Neg) return arg->args()[0];
    return make(NodeKind::Neg, kNoSym, Coeff(), 0, {std::move(arg)});
}

NodePtr Node::symbol(Sym s) {
    return make(NodeKind::Sym, s, Coeff(), 0, {});
}

NodePtr Node::number(const Coeff &atom) {
    if (!atom.is_zero() && !is_atom_value(atom)) {
        throw std::invalid_argument("not a numeric atom: " + atom.str());
    }
    return make(NodeKind::Num, kNoSym, atom, 0, {});
}

NodePtr Node::constant(const Coeff &c) {
    return render_term(Monomial(), c);
}

bool same_tree(const Node &a, const Node &b) {
    if (&a == &b) return true;
    if (a.kind() != b.kind() || a.size() != b.size() || a.args().size() != b.args().size()) return false;
    switch (a.kind()) {
        case NodeKind::Sym:
            return a.sym() == b.sym();
        case NodeKind::Num:
            return a.value() == b.value();
        case NodeKind::Pow:
            if (a.exponent() != b.exponent()) return false;
            break;
        default:
            break;
    }
    for (size_t k = 0; k < a.args().size(); ++k) {
        if (!same_tree(*a.args()[k], *b.args()[k])) return false;
    }
    return true;
}

NodePtr render_term(const Monomial &m, const Coeff &c) {
    std::vector<NodePtr> vars;
    vars.reserve(m.size());
    for (size_t k = 0; k < m.size(); ++k) {
        vars.push_back(Node::pow(Node::symbol(m.sym(k)), m.exp(k)));
    }
    if (c.is_zero()) return Node::number(Coeff(0));
    if (c.component_count() == 1) {
        for (size_t slot = 0; slot < 4; ++slot) {
            if (!c[slot].is_zero()) return render_component(slot, c[slot], std::move(vars));
        }
    }
    std::vector<NodePtr> parts;
    for (size_t slot = 0; slot < 4; ++slot) {
        if (!c[slot].is_zero()) parts.push_back(render_component(slot, c[slot], {}));
    }
    NodePtr coeff = Node::add(std::move(parts));
    if (vars.empty()) return coeff;
    vars.insert(vars.begin(), coeff);
    return Node::mul(std::move(vars));
}

NodePtr render_poly(const Poly &p) {
    if (p.is_zero()) return Node::number(Coeff(0));
    std::vector<NodePtr> terms;
    terms.reserve(p.size());
    for (const auto &t : p.terms()) terms.push_back(render_term(t.mono, t.coeff));
    return Node::add(std::move(terms));
}

Poly expand(const Node &n) {
    switch (n.kind()) {
        case NodeKind::Sym:
            return Poly::symbol(n.sym());
        case NodeKind::Num:
            return Poly::constant(n.value());
        case NodeKind::Neg:
            return -expand(*n.args()[0]);
        case NodeKind::Pow:
            return expand(*n.args()[0]).pow(n.exponent());
        case NodeKind::Add: {
            PolyAccumulator acc;
            for (const auto &a : n.args()) acc.add(expand(*a));
            return std::move(acc).build();
        }
        case NodeKind::Mul: {
            Poly r = Poly::constant(Coeff(1));
            for (const auto &a : n.args()) r = r * expand(*a);
            return r;
        }
    }
    return {};
}

std::string to_infix(const Node &n) {
    return infix(n, false, false);
}

}  // namespace msq
