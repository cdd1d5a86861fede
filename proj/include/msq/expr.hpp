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

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>

#include "msq/coeff.hpp"
#include "msq/node.hpp"
#include "msq/poly.hpp"
#include "msq/sym.hpp"

namespace msq {

/// Immutable symbolic expression.
///
/// The value is always a canonical Poly. An Expr may also carry a rendered
/// overlay (typically a factored form produced by the simplifier) whose
/// expansion equals the polynomial. Arithmetic returns canonical Exprs
/// without an overlay. Equality compares the canonical polynomials.
class Expr {
   public:
    Expr();
    Expr(Poly p);  // NOLINT(google-explicit-constructor)
    /// `form` must expand to `p`; with_form() checks this, this constructor does not.
    Expr(Poly p, NodePtr form);
    static Expr constant(const Coeff &c) { return Expr(Poly::constant(c)); }
    static Expr symbol(Sym s) { return Expr(Poly::symbol(s)); }
    /// Expr whose rendered form is `form`; the polynomial is its expansion.
    static Expr from_form(NodePtr form);

    const Poly &poly() const { return *poly_; }
    bool has_overlay() const { return form_ != nullptr; }
    /// The overlay when present, else the default rendering of poly().
    NodePtr rendered() const;
    Expr canonical() const { return Expr(*poly_); }

    bool is_constant() const { return poly_->is_constant(); }
    bool is_atom() const;

    Expr operator-() const;
    friend Expr operator+(const Expr &a, const Expr &b);
    friend Expr operator-(const Expr &a, const Expr &b);
    friend Expr operator*(const Expr &a, const Expr &b);
    Expr pow(uint64_t e) const;
    Expr conj() const { return Expr(poly_->conj()); }

    friend bool operator==(const Expr &a, const Expr &b) { return *a.poly_ == *b.poly_; }
    /// True when the rendered trees are identical, overlay included.
    bool same_form(const Expr &o) const;

    std::string str() const;

   private:
    std::shared_ptr<const Poly> poly_;
    NodePtr form_;
};

/// Node count of the rendered tree.
size_t leafcount(const Expr &e);

using Bindings = std::unordered_map<Sym, std::complex<double>>;

/// Term-by-term evaluation of the canonical polynomial.
/// Throws std::out_of_range naming the first unbound symbol.
std::complex<double> eval_numeric(const Expr &e, const Bindings &bindings);

}  // namespace msq
