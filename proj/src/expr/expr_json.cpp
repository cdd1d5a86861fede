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

#include "msq/expr_json.hpp"

#include <stdexcept>

namespace msq {

namespace {

using nlohmann::json;

json node_to_json(const Node &n) {
    switch (n.kind()) {
        case NodeKind::Sym:
            return {{"sym", std::string(1, n.sym().letter())}, {"idx", n.sym().index()}};
        case NodeKind::Num: {
            json parts = json::array();
            for (const auto &p : n.value().parts()) parts.push_back(p.str());
            return {{"coeff", parts}};
        }
        default:
            break;
    }
    json args = json::array();
    for (const auto &a : n.args()) args.push_back(node_to_json(*a));
    switch (n.kind()) {
        case NodeKind::Add:
            return {{"op", "add"}, {"args", args}};
        case NodeKind::Mul:
            return {{"op", "mul"}, {"args", args}};
        case NodeKind::Neg:
            return {{"op", "neg"}, {"args", args}};
        case NodeKind::Pow:
            return {{"op", "pow"}, {"args", args}, {"exp", n.exponent()}};
        default:
            break;
    }
    throw std::logic_error("unreachable node kind");
}

NodePtr node_from_json(const json &j) {
    if (!j.is_object()) throw std::invalid_argument("expression node must be an object");
    if (j.contains("sym")) {
        if (!j.contains("idx") || !j["idx"].is_number_unsigned()) {
            throw std::invalid_argument("symbol node needs a nonnegative integer 'idx'");
        }
        return Node::symbol(Sym(Sym::parse_kind(j["sym"].get<std::string>()), j["idx"].get<uint32_t>()));
    }
    if (j.contains("coeff")) {
        const json &c = j["coeff"];
        if (!c.is_array() || c.size() != 4) throw std::invalid_argument("'coeff' must hold four rationals");
        Rational p[4];
        for (size_t k = 0; k < 4; ++k) {
            if (c[k].is_string()) {
                p[k] = Rational::parse(c[k].get<std::string>());
            } else if (c[k].is_number_integer()) {
                p[k] = Rational(c[k].get<int64_t>());
            } else {
                throw std::invalid_argument("coefficient parts must be rational strings");
            }
        }
        Coeff v(p[0], p[1], p[2], p[3]);
        if (v.is_zero()) return Node::number(v);
        if (v.component_count() == 1 &&
            ((v[0].sign() > 0) || v == Coeff::i() || v == Coeff::sqrt2())) {
            return Node::number(v);
        }
        return Node::constant(v);
    }
    if (!j.contains("op") || !j.contains("args") || !j["args"].is_array()) {
        throw std::invalid_argument("operator node needs 'op' and 'args'");
    }
    std::string op = j["op"].get<std::string>();
    std::vector<NodePtr> args;
    for (const auto &a : j["args"]) args.push_back(node_from_json(a));
    if (op == "add") return Node::add(std::move(args));
    if (op == "mul") return Node::mul(std::move(args));
    if (op == "neg") {
        if (args.size() != 1) throw std::invalid_argument("'neg' takes one argument");
        return Node::neg(args[0]);
    }
    if (op == "pow") {
        if (args.size() != 1 || !j.contains("exp") || !j["exp"].is_number_unsigned()) {
            throw std::invalid_argument("'pow' takes one argument and a nonnegative integer 'exp'");
        }
        return Node::pow(args[0], j["exp"].get<uint64_t>());
    }
    throw std::invalid_argument("unknown operator '" + op + "'");
}

}  // namespace

json expr_to_json(const Expr &e) {
    return node_to_json(*e.rendered());
}

Expr expr_from_json(const json &j) {
    return Expr::from_form(node_from_json(j));
}

std::string serialize_expr(const Expr &e) {
    return expr_to_json(e).dump();
}

Expr parse_expr(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &err) {
        throw std::invalid_argument(std::string("expression JSON: ") + err.what());
    }
    return expr_from_json(j);
}

}  // namespace msq
