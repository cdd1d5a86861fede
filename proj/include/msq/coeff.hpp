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

#include <array>
#include <complex>
#include <cstddef>
#include <string>

#include "msq/rational.hpp"

namespace msq {

/// Exact element of Q(i, sqrt2): p0 + p1*i + p2*sqrt2 + p3*i*sqrt2.
///
/// This field is closed under every gate matrix the symbolic simulator
/// accepts (H contributes sqrt2/2, S and the rotations contribute i).
class Coeff {
   public:
    Coeff() = default;
    Coeff(Rational real) : p_{real, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
    Coeff(int64_t real) : p_{Rational(real), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
    Coeff(Rational p0, Rational p1, Rational p2, Rational p3) : p_{p0, p1, p2, p3} {}

    static Coeff i() { return {0, 1, 0, 0}; }
    static Coeff sqrt2() { return {0, 0, 1, 0}; }
    /// sqrt2 / 2, the Hadamard normalization.
    static Coeff inv_sqrt2() { return {0, 0, Rational(1, 2), 0}; }

    const Rational &operator[](size_t k) const { return p_[k]; }
    const std::array<Rational, 4> &parts() const { return p_; }

    bool is_zero() const;
    bool is_one() const;
    /// Number of nonzero components.
    int component_count() const;
    /// True when only p0 is nonzero (or the value is zero).
    bool is_rational() const;

    Coeff conj() const { return {p_[0], -p_[1], p_[2], -p_[3]}; }
    Coeff real_part() const { return {p_[0], 0, p_[2], 0}; }
    /// Imaginary part as a real field element: p1 + p3*sqrt2.
    Coeff imag_part() const { return {p_[1], 0, p_[3], 0}; }

    std::complex<double> to_complex() const;
    std::complex<long double> to_complex_ld() const;
    std::string str() const;

    Coeff operator-() const { return {-p_[0], -p_[1], -p_[2], -p_[3]}; }
    friend Coeff operator+(const Coeff &a, const Coeff &b);
    friend Coeff operator-(const Coeff &a, const Coeff &b);
    friend Coeff operator*(const Coeff &a, const Coeff &b);
    /// Throws std::domain_error when the field norm of `b` is zero.
    friend Coeff operator/(const Coeff &a, const Coeff &b);
    Coeff &operator+=(const Coeff &o) { return *this = *this + o; }
    Coeff &operator-=(const Coeff &o) { return *this = *this - o; }
    Coeff &operator*=(const Coeff &o) { return *this = *this * o; }

    friend bool operator==(const Coeff &a, const Coeff &b) = default;
    /// Lexicographic over (p0, p1, p2, p3); used only for deterministic tie-breaks.
    friend std::strong_ordering operator<=>(const Coeff &a, const Coeff &b);

    size_t hash() const;

   private:
    std::array<Rational, 4> p_{};
};

}  // namespace msq
