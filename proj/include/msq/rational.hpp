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
#include <string>
#include <string_view>

namespace msq {

/// Exact rational with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Every operation that
/// would leave the 64-bit range throws std::overflow_error instead of
/// wrapping, so a successful result is always exact.
class Rational {
   public:
    constexpr Rational() = default;
    constexpr Rational(int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int64_t n, int64_t d);

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }
    std::string str() const;

    Rational operator-() const;
    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational inverse() const;

    friend Rational operator+(const Rational &a, const Rational &b);
    friend Rational operator-(const Rational &a, const Rational &b);
    friend Rational operator*(const Rational &a, const Rational &b);
    friend Rational operator/(const Rational &a, const Rational &b);
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }
    Rational &operator/=(const Rational &o) { return *this = *this / o; }

    friend bool operator==(const Rational &a, const Rational &b) = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

    /// gcd of numerators over lcm of denominators; always nonnegative.
    static Rational content_gcd(const Rational &a, const Rational &b);

    /// n / d reduced; throws std::overflow_error if the reduced value does not fit 64 bits.
    static Rational from_wide(__int128 n, __int128 d);

   private:

    int64_t num_ = 0;
    int64_t den_ = 1;
};

}  // namespace msq
