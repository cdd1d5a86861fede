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

#include "msq/coeff.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace msq {

namespace {

// Q(i) pair (re, im).
struct Gauss {
    Rational re, im;
};

Gauss gmul(const Gauss &x, const Gauss &y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

Gauss gadd(const Gauss &x, const Gauss &y) {
    return {x.re + y.re, x.im + y.im};
}

}  // namespace

bool Coeff::is_zero() const {
    return p_[0].is_zero() && p_[1].is_zero() && p_[2].is_zero() && p_[3].is_zero();
}

bool Coeff::is_one() const {
    return p_[0].is_one() && p_[1].is_zero() && p_[2].is_zero() && p_[3].is_zero();
}

int Coeff::component_count() const {
    int n = 0;
    for (const auto &p : p_) n += !p.is_zero();
    return n;
}

bool Coeff::is_rational() const {
    return p_[1].is_zero() && p_[2].is_zero() && p_[3].is_zero();
}

std::complex<double> Coeff::to_complex() const {
    constexpr double r2 = std::numbers::sqrt2;
    return {p_[0].to_double() + r2 * p_[2].to_double(), p_[1].to_double() + r2 * p_[3].to_double()};
}

std::complex<long double> Coeff::to_complex_ld() const {
    const long double r2 = std::sqrt(2.0L);
    return {p_[0].to_long_double() + r2 * p_[2].to_long_double(),
            p_[1].to_long_double() + r2 * p_[3].to_long_double()};
}

std::string Coeff::str() const {
    return "(" + p_[0].str() + ", " + p_[1].str() + ", " + p_[2].str() + ", " + p_[3].str() + ")";
}

Coeff operator+(const Coeff &a, const Coeff &b) {
    if (a.is_rational() && b.is_rational()) return Coeff(a.p_[0] + b.p_[0]);
    return {a.p_[0] + b.p_[0], a.p_[1] + b.p_[1], a.p_[2] + b.p_[2], a.p_[3] + b.p_[3]};
}

Coeff operator-(const Coeff &a, const Coeff &b) {
    return {a.p_[0] - b.p_[0], a.p_[1] - b.p_[1], a.p_[2] - b.p_[2], a.p_[3] - b.p_[3]};
}

Coeff operator*(const Coeff &a, const Coeff &b) {
    if (a.is_rational() && b.is_rational()) {
        return Coeff(a.p_[0] * b.p_[0]);
    }
    // (u1 + v1 r)(u2 + v2 r) with r^2 = 2 and u, v in Q(i).
    Gauss u1{a.p_[0], a.p_[1]}, v1{a.p_[2], a.p_[3]};
    Gauss u2{b.p_[0], b.p_[1]}, v2{b.p_[2], b.p_[3]};
    Gauss vv = gmul(v1, v2);
    Gauss u = gadd(gmul(u1, u2), {vv.re * 2, vv.im * 2});
    Gauss v = gadd(gmul(u1, v2), gmul(v1, u2));
    return {u.re, u.im, v.re, v.im};
}

Coeff operator/(const Coeff &a, const Coeff &b) {
    // Multiply through by the sqrt2-conjugate, then by the complex conjugate.
    Coeff bbar{b.p_[0], b.p_[1], -b.p_[2], -b.p_[3]};
    Coeff num = a * bbar;
    Coeff den = b * bbar;  // lies in Q(i)
    Gauss d{den.p_[0], den.p_[1]};
    Rational norm = d.re * d.re + d.im * d.im;
    if (norm.is_zero()) {
        throw std::domain_error("division by zero in Q(i, sqrt2)");
    }
    Coeff dconj{d.re / norm, -d.im / norm, 0, 0};
    return num * dconj;
}

std::strong_ordering operator<=>(const Coeff &a, const Coeff &b) {
    for (size_t k = 0; k < 4; ++k) {
        if (auto c = a.p_[k] <=> b.p_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

size_t Coeff::hash() const {
    size_t h = 0;
    for (const auto &p : p_) {
        h ^= std::hash<int64_t>{}(p.num()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<int64_t>{}(p.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace msq
