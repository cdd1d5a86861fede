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

#include <compare>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msq/coeff.hpp"
#include "msq/sym.hpp"

namespace msq {

/// Sparse power product of symbols, kept sorted by symbol id.
class Monomial {
   public:
    Monomial() = default;
    static Monomial of(Sym s, uint32_t exponent = 1);
    /// Builds from (symbol, exponent) pairs in any order; repeated symbols add up.
    static Monomial from_pairs(std::span<const std::pair<Sym, uint32_t>> pairs);
    /// Entries (symbol id << 32 | exponent), strictly increasing ids, nonzero exponents.
    static Monomial from_packed(std::vector<uint64_t> entries);
    std::span<const uint64_t> packed() const { return f_; }

    size_t size() const { return f_.size(); }
    Sym sym(size_t k) const { return Sym::from_id(static_cast<uint32_t>(f_[k] >> 32)); }
    uint32_t exp(size_t k) const { return static_cast<uint32_t>(f_[k]); }
    uint32_t exponent_of(Sym s) const;
    uint64_t degree() const { return degree_; }
    bool is_one() const { return f_.empty(); }

    Monomial operator*(const Monomial &o) const;
    bool divides(const Monomial &o) const;
    /// Exact quotient; requires divisor.divides(*this).
    Monomial operator/(const Monomial &divisor) const;
    Monomial with_exponent(Sym s, uint32_t exponent) const;
    static Monomial gcd(const Monomial &a, const Monomial &b);

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.f_ == b.f_; }
    /// Graded lexicographic order under the global symbol order.
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b);

    size_t hash() const;

   private:
    void push(uint32_t sym_id, uint32_t exponent);

    std::vector<uint64_t> f_;  // (symbol id << 32) | exponent
    uint64_t degree_ = 0;
};

struct MonomialHash {
    size_t operator()(const Monomial &m) const noexcept { return m.hash(); }
};

struct Term {
    Monomial mono;
    Coeff coeff;
    friend bool operator==(const Term &, const Term &) = default;
};

/// Canonical sparse multivariate polynomial with Coeff coefficients.
///
/// Terms are sorted ascending in graded lex order and never carry a zero
/// coefficient, so equal polynomials have equal term vectors.
class Poly {
   public:
    Poly() = default;
    static Poly constant(const Coeff &c);
    static Poly symbol(Sym s);
    static Poly monomial(Monomial m, const Coeff &c = Coeff(1));
    /// Combines like terms, drops zeros and sorts.
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term> &terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    /// Coefficient of the constant monomial (zero when absent).
    Coeff constant_term() const;
    Coeff coefficient_of(const Monomial &m) const;
    /// Sorted list of symbols that occur.
    std::vector<Sym> symbols() const;
    uint64_t degree() const { return terms_.empty() ? 0 : terms_.back().mono.degree(); }

    Poly operator-() const;
    friend Poly operator+(const Poly &a, const Poly &b);
    friend Poly operator-(const Poly &a, const Poly &b);
    friend Poly operator*(const Poly &a, const Poly &b);
    Poly &operator+=(const Poly &o) { return *this = *this + o; }
    Poly &operator-=(const Poly &o) { return *this = *this - o; }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }
    Poly scaled(const Coeff &c) const;
    Poly times_monomial(const Monomial &m) const;
    Poly pow(uint64_t e) const;

    /// Complex conjugate; symbols are real, so only coefficients change.
    Poly conj() const;
    Poly real_part() const;
    /// Imaginary part as a polynomial with real coefficients.
    Poly imag_part() const;

    friend bool operator==(const Poly &a, const Poly &b) = default;

   private:
    std::vector<Term> terms_;
};

/// Hash-based accumulator for building a Poly term by term.
class PolyAccumulator {
   public:
    void add(const Monomial &m, const Coeff &c);
    void add(Monomial &&m, const Coeff &c);
    void add(const Poly &p, const Coeff &scale = Coeff(1));
    void reserve(size_t n) { acc_.reserve(n); }
    Poly build() &&;

   private:
    std::unordered_map<Monomial, Coeff, MonomialHash> acc_;
};

}  // namespace msq
