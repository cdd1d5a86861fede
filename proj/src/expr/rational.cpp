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

#include "msq/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace msq {

namespace {

__int128 wide_gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    if (a <= std::numeric_limits<uint64_t>::max() && b <= std::numeric_limits<uint64_t>::max()) {
        return std::gcd(static_cast<uint64_t>(a), static_cast<uint64_t>(b));
    }
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(__int128 v) {
    return v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max();
}

int64_t parse_int(std::string_view text) {
    int64_t v = 0;
    auto first = text.data();
    auto last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw std::invalid_argument("invalid rational literal '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
    *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
    if (d == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = d == 1 ? 1 : wide_gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
    if (!fits(n) || !fits(d)) {
        throw std::overflow_error("rational arithmetic overflowed 64 bits");
    }
    Rational r;
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    return from_wide(-static_cast<__int128>(num_), den_);
}

Rational Rational::inverse() const {
    return from_wide(den_, num_);
}

Rational operator+(const Rational &a, const Rational &b) {
    if (a.den_ == 1 && b.den_ == 1) {
        return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, 1);
    }
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational &a, const Rational &b) {
    return a + (-b);
}

Rational operator*(const Rational &a, const Rational &b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, 1);
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational &a, const Rational &b) {
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::content_gcd(const Rational &a, const Rational &b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    __int128 n = wide_gcd(a.num_, b.num_);
    __int128 g = wide_gcd(a.den_, b.den_);
    __int128 d = static_cast<__int128>(a.den_) / g * b.den_;
    return from_wide(n, d);
}

}  // namespace msq
