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

#include "msq/expr.hpp"

#include <stdexcept>

namespace msq {

Expr::Expr() : poly_(std::make_shared<const Poly>()) {}

Expr::Expr(Poly p) : poly_(std::make_shared<const Poly>(std::move(p))) {}

Expr::Expr(Poly p, NodePtr form) : poly_(std::make_shared<const Poly>(std::move(p))), form_(std::move(form)) {}

Expr Expr::from_form(NodePtr form) {
    Poly p = expand(*form);
    NodePtr plain = render_poly(p);
    if (same_tree(*plain, *form)) return Expr(std::move(p));
    return Expr(std::move(p), std::move(form));
}

NodePtr Expr::rendered() const {
    return form_ ? form_ : render_poly(*poly_);
}

bool Expr::is_atom() const {
    if (poly_->size() > 1) return false;
    if (poly_->is_zero()) return true;
    const Term &t = poly_->terms()[0];
    if (t.mono.is_one()) return t.coeff.component_count() <= 1 && t.coeff[0].sign() >= 0;
    return t.coeff.is_one() && t.mono.size() == 1 && t.mono.exp(0) == 1;
}

Expr Expr::operator-() const {
    return Expr(-*poly_);
}

Expr operator+(const Expr &a, const Expr &b) {
    return Expr(*a.poly_ + *b.poly_);
}

Expr operator-(const Expr &a, const Expr &b) {
    return Expr(*a.poly_ - *b.poly_);
}

Expr operator*(const Expr &a, const Expr &b) {
    return Expr(*a.poly_ * *b.poly_);
}

Expr Expr::pow(uint64_t e) const {
    return Expr(poly_->pow(e));
}

bool Expr::same_form(const Expr &o) const {
    return same_tree(*rendered(), *o.rendered());
}

std::string Expr::str() const {
    return to_infix(*rendered());
}

size_t leafcount(const Expr &e) {
    return e.rendered()->size();
}

std::complex<double> eval_numeric(const Expr &e, const Bindings &bindings) {
    std::complex<double> total = 0.0;
    for (const auto &t : e.poly().terms()) {
        std::complex<double> v = t.coeff.to_complex();
        for (size_t k = 0; k < t.mono.size(); ++k) {
            Sym s = t.mono.sym(k);
            auto it = bindings.find(s);
            if (it == bindings.end()) {
                throw std::out_of_range("unbound symbol " + s.name());
            }
            std::complex<double> x = it->second;
            for (uint32_t p = 0; p < t.mono.exp(k); ++p) v *= x;
        }
        total += v;
    }
    return total;
}

}  // namespace msq
