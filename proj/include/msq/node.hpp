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
#include <memory>
#include <string>
#include <vector>

#include "msq/coeff.hpp"
#include "msq/poly.hpp"
#include "msq/sym.hpp"

namespace msq {

class Node;
using NodePtr = std::shared_ptr<const Node>;

enum class NodeKind : uint8_t { Add, Mul, Pow, Neg, Sym, Num };

/// Immutable expression tree: the rendered form of an Expr.
///
/// Leaves are symbols and numeric atoms. A numeric atom is a positive
/// rational, the imaginary unit or sqrt2; other field elements appear as
/// subtrees built from those atoms, and negative values appear under a Neg
/// head. Pow carries its integer exponent, which counts as one leaf.
///
/// The factories normalize: nested Add/Mul are flattened, Neg is pulled out
/// of products, Pow with exponent 1 and single-argument Add/Mul collapse.
class Node {
   public:
    static NodePtr add(std::vector<NodePtr> args);
    static NodePtr mul(std::vector<NodePtr> args);
    static NodePtr pow(NodePtr base, uint64_t exponent);
    static NodePtr neg(NodePtr arg);
    static NodePtr symbol(Sym s);
    /// `atom` must be a positive rational, i or sqrt2.
    static NodePtr number(const Coeff &atom);
    /// Renders an arbitrary field element as a tree of atoms.
    static NodePtr constant(const Coeff &c);

    NodeKind kind() const { return kind_; }
    const std::vector<NodePtr> &args() const { return args_; }
    Sym sym() const { return sym_; }
    const Coeff &value() const { return value_; }
    uint64_t exponent() const { return exponent_; }
    /// Node count of this subtree, heads and atoms (including Pow exponents).
    size_t size() const { return size_; }
    /// Number of numeric atoms in this subtree (Pow exponents excluded).
    size_t numeric_atoms() const { return numeric_atoms_; }

    Node(NodeKind kind, Sym sym, Coeff value, uint64_t exponent, std::vector<NodePtr> args);

   private:
    NodeKind kind_;
    Sym sym_;
    Coeff value_;
    uint64_t exponent_ = 0;
    std::vector<NodePtr> args_;
    size_t size_ = 1;
    size_t numeric_atoms_ = 0;
};

bool same_tree(const Node &a, const Node &b);

/// Default rendering: sum of terms, each a product of an optional numeric
/// factor and symbol powers.
NodePtr render_poly(const Poly &p);
NodePtr render_term(const Monomial &m, const Coeff &c);

/// Multiplies the tree out into canonical form.
Poly expand(const Node &n);

/// Infix text, e.g. "1/2 + a1*b1*(a2^2 - b2^2)".
std::string to_infix(const Node &n);

}  // namespace msq
