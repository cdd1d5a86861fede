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

#include <ostream>
#include <random>
#include <vector>

#include "msq/expr.hpp"

namespace msq {

inline void PrintTo(const Expr &e, std::ostream *os) {
    *os << e.str();
}

}  // namespace msq

namespace msq::testing {

inline const std::vector<Sym> &small_alphabet() {
    static const std::vector<Sym> syms = {Sym::c(0), Sym::s(0), Sym::c(1), Sym::s(1),
                                          Sym::a(1), Sym::b(1), Sym::a(2), Sym::b(2)};
    return syms;
}

inline Coeff random_coeff(std::mt19937_64 &rng, bool complex_parts = true) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 4), slot(0, complex_parts ? 3 : 0);
    Rational parts[4];
    int n = complex_parts ? 1 + static_cast<int>(rng() % 2) : 1;
    for (int k = 0; k < n; ++k) {
        int v = 0;
        while (v == 0) v = num(rng);
        parts[slot(rng)] += Rational(v, den(rng));
    }
    Coeff c(parts[0], parts[1], parts[2], parts[3]);
    return c.is_zero() ? Coeff(1) : c;
}

/// Random polynomial with up to `max_terms` terms of total degree <= `max_degree`.
inline Expr random_expr(std::mt19937_64 &rng, size_t max_terms = 6, uint32_t max_degree = 4,
                        bool complex_parts = true) {
    const auto &syms = small_alphabet();
    std::uniform_int_distribution<size_t> nterms(1, max_terms);
    std::vector<Term> terms;
    size_t n = nterms(rng);
    for (size_t t = 0; t < n; ++t) {
        Monomial m;
        uint32_t deg = static_cast<uint32_t>(rng() % (max_degree + 1));
        for (uint32_t d = 0; d < deg; ++d) m = m * Monomial::of(syms[rng() % syms.size()]);
        terms.push_back({m, random_coeff(rng, complex_parts)});
    }
    return Expr(Poly::from_terms(std::move(terms)));
}

inline Bindings random_bindings(std::mt19937_64 &rng, const std::vector<Sym> &syms) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    Bindings b;
    for (Sym s : syms) b[s] = {u(rng), 0.0};
    return b;
}

/// Bindings respecting first^2 + second^2 = 1 for every constrained pair.
inline Bindings constrained_bindings(std::mt19937_64 &rng, const std::vector<Sym> &syms) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    Bindings b;
    for (Sym s : syms) {
        if (b.count(s)) continue;
        if (!s.is_constrained()) {
            b[s] = {angle(rng) - 3.14, 0.0};
            continue;
        }
        double t = angle(rng);
        Sym first = s.is_first_of_pair() ? s : s.partner();
        b[first] = {std::cos(t), 0.0};
        b[first.partner()] = {std::sin(t), 0.0};
    }
    return b;
}

inline double rel_err(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace msq::testing
