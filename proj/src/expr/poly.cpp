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

#include "msq/poly.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <limits>
#include <optional>
#include <stdexcept>

namespace msq {

namespace {

uint32_t id_of(uint64_t packed) {
    return static_cast<uint32_t>(packed >> 32);
}

uint32_t exp_of(uint64_t packed) {
    return static_cast<uint32_t>(packed);
}

uint64_t pack(uint32_t id, uint32_t e) {
    return (static_cast<uint64_t>(id) << 32) | e;
}

uint32_t add_exponents(uint32_t a, uint32_t b) {
    uint64_t s = static_cast<uint64_t>(a) + b;
    if (s > std::numeric_limits<uint32_t>::max()) {
        throw std::overflow_error("monomial exponent overflow");
    }
    return static_cast<uint32_t>(s);
}

// Monomials of a fixed symbol set packed into one 128-bit integer with a bit
// field per symbol wide enough that products never carry between fields.
class Packing {
   public:
    using Key = unsigned __int128;

    static std::optional<Packing> for_product(const std::vector<Term> &a, const std::vector<Term> &b) {
        std::vector<std::pair<uint32_t, uint64_t>> max_exp;  // id, max exp in a + max exp in b
        auto scan = [&](const std::vector<Term> &terms, std::vector<std::pair<uint32_t, uint32_t>> &out) {
            for (const auto &t : terms) {
                for (uint64_t f : t.mono.packed()) out.emplace_back(id_of(f), exp_of(f));
            }
            std::sort(out.begin(), out.end(), [](auto x, auto y) { return x.first < y.first || (x.first == y.first && x.second > y.second); });
            out.erase(std::unique(out.begin(), out.end(), [](auto x, auto y) { return x.first == y.first; }), out.end());
        };
        std::vector<std::pair<uint32_t, uint32_t>> ea, eb;
        scan(a, ea);
        scan(b, eb);
        size_t i = 0, j = 0;
        while (i < ea.size() || j < eb.size()) {
            if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
                max_exp.emplace_back(ea[i].first, ea[i].second);
                ++i;
            } else if (i == ea.size() || eb[j].first < ea[i].first) {
                max_exp.emplace_back(eb[j].first, eb[j].second);
                ++j;
            } else {
                max_exp.emplace_back(ea[i].first, uint64_t{ea[i].second} + eb[j].second);
                ++i;
                ++j;
            }
        }
        Packing p;
        unsigned total = 0;
        for (auto [id, e] : max_exp) {
            unsigned w = static_cast<unsigned>(std::bit_width(e));
            p.ids_.push_back(id);
            p.shift_.push_back(total);
            p.width_.push_back(w);
            total += w;
            if (total > 128) return std::nullopt;
        }
        return p;
    }

    Key encode(const Monomial &m) const {
        Key k = 0;
        size_t slot = 0;
        for (uint64_t f : m.packed()) {
            while (ids_[slot] != id_of(f)) ++slot;
            k |= static_cast<Key>(exp_of(f)) << shift_[slot];
        }
        return k;
    }

    Monomial decode(Key k) const {
        std::vector<uint64_t> f;
        for (size_t s = 0; s < ids_.size(); ++s) {
            auto e = static_cast<uint32_t>((k >> shift_[s]) & ((Key{1} << width_[s]) - 1));
            if (e) f.push_back(pack(ids_[s], e));
        }
        return Monomial::from_packed(std::move(f));
    }

   private:
    std::vector<uint32_t> ids_;
    std::vector<unsigned> shift_;
    std::vector<unsigned> width_;
};

// Open-addressing map from packed monomial to an accumulated value.
template <class V>
class KeyTable {
   public:
    using Key = Packing::Key;

    KeyTable() { rehash(1024); }

    /// Slot value for `k`, value-initialized when new.
    V &at(Key k) {
        if (2 * (size_ + 1) > keys_.size()) rehash(2 * keys_.size());
        size_t i = slot(k);
        if (!used_[i]) {
            used_[i] = 1;
            keys_[i] = k;
            vals_[i] = V{};
            ++size_;
        }
        return vals_[i];
    }

    template <class F>
    void for_each(F &&f) const {
        for (size_t i = 0; i < keys_.size(); ++i) {
            if (used_[i]) f(keys_[i], vals_[i]);
        }
    }

    size_t size() const { return size_; }

   private:
    size_t slot(Key k) const {
        uint64_t h = static_cast<uint64_t>(k) ^ (static_cast<uint64_t>(k >> 64) * 0x9e3779b97f4a7c15ULL);
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 32;
        size_t mask = keys_.size() - 1;
        size_t i = h & mask;
        while (used_[i] && keys_[i] != k) i = (i + 1) & mask;
        return i;
    }

    void rehash(size_t cap) {
        std::vector<Key> keys = std::move(keys_);
        std::vector<V> vals = std::move(vals_);
        std::vector<uint8_t> used = std::move(used_);
        keys_.assign(cap, 0);
        vals_.assign(cap, V{});
        used_.assign(cap, 0);
        size_ = 0;
        for (size_t i = 0; i < keys.size(); ++i) {
            if (!used[i]) continue;
            size_t s = slot(keys[i]);
            used_[s] = 1;
            keys_[s] = keys[i];
            vals_[s] = vals[i];
            ++size_;
        }
    }

    std::vector<Key> keys_;
    std::vector<V> vals_;
    std::vector<uint8_t> used_;
    size_t size_ = 0;
};

// Coefficients of a term list as integer numerators over one common denominator.
struct ScaledCoeffs {
    std::vector<std::array<int64_t, 4>> num;
    int64_t den = 1;
    bool real = true;
    bool small = true;  // every numerator below 2^29 in magnitude

    static std::optional<ScaledCoeffs> of(const std::vector<Term> &terms) {
        ScaledCoeffs s;
        __int128 den = 1;
        for (const auto &t : terms) {
            for (const auto &r : t.coeff.parts()) {
                if (r.den() == 1 || den % r.den() == 0) continue;
                den = den / std::gcd(static_cast<int64_t>(den), r.den()) * r.den();
                if (den > std::numeric_limits<int64_t>::max()) return std::nullopt;
            }
            if (!t.coeff.is_rational()) s.real = false;
        }
        s.den = static_cast<int64_t>(den);
        s.num.reserve(terms.size());
        for (const auto &t : terms) {
            std::array<int64_t, 4> v{};
            for (size_t k = 0; k < 4; ++k) {
                const Rational &r = t.coeff[k];
                __int128 x = static_cast<__int128>(r.num()) * (den / r.den());
                if (x > std::numeric_limits<int64_t>::max() || x < std::numeric_limits<int64_t>::min()) {
                    return std::nullopt;
                }
                v[k] = static_cast<int64_t>(x);
                if (x >= (1 << 29) || x <= -(1 << 29)) s.small = false;
            }
            s.num.push_back(v);
        }
        return s;
    }
};

using Wide4 = std::array<__int128, 4>;

// Unchecked variant for numerators below 2^29: every partial sum fits in
// int64, and 2^60 products of at most 2^62 each cannot overflow 128 bits.
inline void accumulate_small(Wide4 &acc, const std::array<int64_t, 4> &x, const std::array<int64_t, 4> &y,
                             bool real) {
    if (real) {
        acc[0] += x[0] * y[0];
        return;
    }
    acc[0] += x[0] * y[0] - x[1] * y[1] + 2 * (x[2] * y[2] - x[3] * y[3]);
    acc[1] += x[0] * y[1] + x[1] * y[0] + 2 * (x[2] * y[3] + x[3] * y[2]);
    acc[2] += x[0] * y[2] - x[1] * y[3] + x[2] * y[0] - x[3] * y[1];
    acc[3] += x[0] * y[3] + x[1] * y[2] + x[2] * y[1] + x[3] * y[0];
}

inline __int128 wmul(int64_t a, int64_t b) {
    return static_cast<__int128>(a) * b;
}

// acc += x * y in Q(i, sqrt2); false on 128-bit overflow.
inline bool accumulate_product(Wide4 &acc, const std::array<int64_t, 4> &x, const std::array<int64_t, 4> &y,
                               bool real) {
    if (real) return !__builtin_add_overflow(acc[0], wmul(x[0], y[0]), &acc[0]);
    __int128 r[4];
    bool bad = false;
    auto sum = [&](__int128 &out, std::initializer_list<__int128> parts) {
        out = 0;
        for (__int128 p : parts) bad |= __builtin_add_overflow(out, p, &out);
    };
    __int128 t;
    bad |= __builtin_mul_overflow(wmul(x[2], y[2]) - wmul(x[3], y[3]), 2, &t);
    sum(r[0], {wmul(x[0], y[0]), -wmul(x[1], y[1]), t});
    bad |= __builtin_mul_overflow(wmul(x[2], y[3]) + wmul(x[3], y[2]), 2, &t);
    sum(r[1], {wmul(x[0], y[1]), wmul(x[1], y[0]), t});
    sum(r[2], {wmul(x[0], y[2]), -wmul(x[1], y[3]), wmul(x[2], y[0]), -wmul(x[3], y[1])});
    sum(r[3], {wmul(x[0], y[3]), wmul(x[1], y[2]), wmul(x[2], y[1]), wmul(x[3], y[0])});
    for (int k = 0; k < 4; ++k) bad |= __builtin_add_overflow(acc[k], r[k], &acc[k]);
    return !bad;
}

}  // namespace

void Monomial::push(uint32_t sym_id, uint32_t exponent) {
    if (exponent == 0) return;
    f_.push_back(pack(sym_id, exponent));
    degree_ += exponent;
}

Monomial Monomial::from_packed(std::vector<uint64_t> entries) {
    Monomial m;
    for (uint64_t f : entries) m.degree_ += exp_of(f);
    m.f_ = std::move(entries);
    return m;
}

Monomial Monomial::of(Sym s, uint32_t exponent) {
    Monomial m;
    m.push(s.id(), exponent);
    return m;
}

Monomial Monomial::from_pairs(std::span<const std::pair<Sym, uint32_t>> pairs) {
    Monomial m;
    for (const auto &[s, e] : pairs) m = m * of(s, e);
    return m;
}

uint32_t Monomial::exponent_of(Sym s) const {
    auto it = std::lower_bound(f_.begin(), f_.end(), pack(s.id(), 0));
    if (it != f_.end() && id_of(*it) == s.id()) return exp_of(*it);
    return 0;
}

Monomial Monomial::operator*(const Monomial &o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
        uint32_t a = id_of(f_[i]), b = id_of(o.f_[j]);
        if (a < b) {
            r.f_.push_back(f_[i++]);
        } else if (b < a) {
            r.f_.push_back(o.f_[j++]);
        } else {
            r.f_.push_back(pack(a, add_exponents(exp_of(f_[i]), exp_of(o.f_[j]))));
            ++i;
            ++j;
        }
    }
    r.f_.insert(r.f_.end(), f_.begin() + static_cast<ptrdiff_t>(i), f_.end());
    r.f_.insert(r.f_.end(), o.f_.begin() + static_cast<ptrdiff_t>(j), o.f_.end());
    r.degree_ = degree_ + o.degree_;
    return r;
}

bool Monomial::divides(const Monomial &o) const {
    size_t j = 0;
    for (uint64_t f : f_) {
        while (j < o.f_.size() && id_of(o.f_[j]) < id_of(f)) ++j;
        if (j == o.f_.size() || id_of(o.f_[j]) != id_of(f) || exp_of(o.f_[j]) < exp_of(f)) return false;
    }
    return true;
}

Monomial Monomial::operator/(const Monomial &divisor) const {
    Monomial r;
    size_t j = 0;
    for (uint64_t f : f_) {
        uint32_t id = id_of(f);
        uint32_t e = exp_of(f);
        if (j < divisor.f_.size() && id_of(divisor.f_[j]) == id) {
            uint32_t d = exp_of(divisor.f_[j++]);
            if (d > e) throw std::invalid_argument("monomial division is not exact");
            e -= d;
        }
        r.push(id, e);
    }
    if (j != divisor.f_.size()) throw std::invalid_argument("monomial division is not exact");
    return r;
}

Monomial Monomial::with_exponent(Sym s, uint32_t exponent) const {
    Monomial r;
    bool placed = false;
    for (uint64_t f : f_) {
        if (!placed && id_of(f) >= s.id()) {
            r.push(s.id(), exponent);
            placed = true;
            if (id_of(f) == s.id()) continue;
        }
        r.push(id_of(f), exp_of(f));
    }
    if (!placed) r.push(s.id(), exponent);
    return r;
}

Monomial Monomial::gcd(const Monomial &a, const Monomial &b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.f_.size() && j < b.f_.size()) {
        uint32_t x = id_of(a.f_[i]), y = id_of(b.f_[j]);
        if (x < y) {
            ++i;
        } else if (y < x) {
            ++j;
        } else {
            r.push(x, std::min(exp_of(a.f_[i]), exp_of(b.f_[j])));
            ++i;
            ++j;
        }
    }
    return r;
}

std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    // Lex with the global symbol order as variable order: the largest symbol decides first.
    size_t i = a.f_.size(), j = b.f_.size();
    while (i > 0 && j > 0) {
        --i;
        --j;
        uint32_t x = id_of(a.f_[i]), y = id_of(b.f_[j]);
        if (x != y) return x <=> y;
        if (auto c = exp_of(a.f_[i]) <=> exp_of(b.f_[j]); c != 0) return c;
    }
    return a.f_.size() <=> b.f_.size();
}

size_t Monomial::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (uint64_t f : f_) {
        h ^= f;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return static_cast<size_t>(h);
}

Poly Poly::constant(const Coeff &c) {
    return monomial(Monomial(), c);
}

Poly Poly::symbol(Sym s) {
    return monomial(Monomial::of(s));
}

Poly Poly::monomial(Monomial m, const Coeff &c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &x, const Term &y) { return x.mono < y.mono; });
    Poly p;
    p.terms_.reserve(terms.size());
    for (auto &t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        } else if (!t.coeff.is_zero()) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Coeff Poly::constant_term() const {
    if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
    return Coeff();
}

Coeff Poly::coefficient_of(const Monomial &m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term &t, const Monomial &key) { return t.mono < key; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Coeff();
}

std::vector<Sym> Poly::symbols() const {
    std::vector<uint32_t> ids;
    for (const auto &t : terms_) {
        for (size_t k = 0; k < t.mono.size(); ++k) ids.push_back(t.mono.sym(k).id());
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Sym> out;
    out.reserve(ids.size());
    for (uint32_t id : ids) out.push_back(Sym::from_id(id));
    return out;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto &t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly operator+(const Poly &a, const Poly &b) {
    Poly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        auto c = a.terms_[i].mono <=> b.terms_[j].mono;
        if (c < 0) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (c > 0) {
            r.terms_.push_back(b.terms_[j++]);
        } else {
            Coeff s = a.terms_[i].coeff + b.terms_[j].coeff;
            if (!s.is_zero()) r.terms_.push_back({a.terms_[i].mono, s});
            ++i;
            ++j;
        }
    }
    r.terms_.insert(r.terms_.end(), a.terms_.begin() + static_cast<ptrdiff_t>(i), a.terms_.end());
    r.terms_.insert(r.terms_.end(), b.terms_.begin() + static_cast<ptrdiff_t>(j), b.terms_.end());
    return r;
}

Poly operator-(const Poly &a, const Poly &b) {
    return a + (-b);
}

Poly operator*(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1 && a.terms_[0].mono.is_one()) return b.scaled(a.terms_[0].coeff);
    if (b.size() == 1 && b.terms_[0].mono.is_one()) return a.scaled(b.terms_[0].coeff);
    if (a.size() == 1) return b.times_monomial(a.terms_[0].mono).scaled(a.terms_[0].coeff);
    if (b.size() == 1) return a.times_monomial(b.terms_[0].mono).scaled(b.terms_[0].coeff);
    auto packing = Packing::for_product(a.terms_, b.terms_);
    auto sa = ScaledCoeffs::of(a.terms_);
    auto sb = ScaledCoeffs::of(b.terms_);
    if (packing && sa && sb) {
        std::vector<Packing::Key> kb;
        kb.reserve(b.size());
        for (const auto &y : b.terms_) kb.push_back(packing->encode(y.mono));
        bool real = sa->real && sb->real;
        KeyTable<Wide4> table;
        bool ok = true;
        if (sa->small && sb->small && a.size() * b.size() < (size_t{1} << 60)) {
            for (size_t i = 0; i < a.size(); ++i) {
                Packing::Key ka = packing->encode(a.terms_[i].mono);
                for (size_t j = 0; j < kb.size(); ++j) {
                    accumulate_small(table.at(ka + kb[j]), sa->num[i], sb->num[j], real);
                }
            }
        }
        for (size_t i = 0; i < a.size() && ok && !(sa->small && sb->small); ++i) {
            Packing::Key ka = packing->encode(a.terms_[i].mono);
            for (size_t j = 0; j < kb.size(); ++j) {
                if (!accumulate_product(table.at(ka + kb[j]), sa->num[i], sb->num[j], real)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            __int128 den = static_cast<__int128>(sa->den) * sb->den;
            std::vector<Term> terms;
            terms.reserve(table.size());
            table.for_each([&](Packing::Key k, const Wide4 &v) {
                if (v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0) return;
                Coeff c(Rational::from_wide(v[0], den), Rational::from_wide(v[1], den),
                        Rational::from_wide(v[2], den), Rational::from_wide(v[3], den));
                terms.push_back({packing->decode(k), c});
            });
            std::sort(terms.begin(), terms.end(), [](const Term &x, const Term &y) { return x.mono < y.mono; });
            Poly r;
            r.terms_ = std::move(terms);
            return r;
        }
    }
    PolyAccumulator acc;
    acc.reserve(a.size() * b.size());
    for (const auto &x : a.terms_) {
        for (const auto &y : b.terms_) {
            acc.add(x.mono * y.mono, x.coeff * y.coeff);
        }
    }
    return std::move(acc).build();
}

Poly Poly::scaled(const Coeff &c) const {
    if (c.is_zero()) return {};
    if (c.is_one()) return *this;
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto &t : terms_) {
        Coeff v = t.coeff * c;
        if (!v.is_zero()) r.terms_.push_back({t.mono, v});
    }
    return r;
}

Poly Poly::times_monomial(const Monomial &m) const {
    // Multiplying every term by the same monomial preserves graded lex order.
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto &t : terms_) r.terms_.push_back({t.mono * m, t.coeff});
    return r;
}

Poly Poly::pow(uint64_t e) const {
    Poly result = Poly::constant(Coeff(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

Poly Poly::conj() const {
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto &t : terms_) r.terms_.push_back({t.mono, t.coeff.conj()});
    return r;
}

Poly Poly::real_part() const {
    Poly r;
    for (const auto &t : terms_) {
        Coeff c = t.coeff.real_part();
        if (!c.is_zero()) r.terms_.push_back({t.mono, c});
    }
    return r;
}

Poly Poly::imag_part() const {
    Poly r;
    for (const auto &t : terms_) {
        Coeff c = t.coeff.imag_part();
        if (!c.is_zero()) r.terms_.push_back({t.mono, c});
    }
    return r;
}

void PolyAccumulator::add(const Monomial &m, const Coeff &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc_.try_emplace(m, c);
    if (!inserted) it->second += c;
}

void PolyAccumulator::add(Monomial &&m, const Coeff &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc_.try_emplace(std::move(m), c);
    if (!inserted) it->second += c;
}

void PolyAccumulator::add(const Poly &p, const Coeff &scale) {
    for (const auto &t : p.terms()) add(t.mono, t.coeff * scale);
}

Poly PolyAccumulator::build() && {
    std::vector<Term> terms;
    terms.reserve(acc_.size());
    for (auto &[m, c] : acc_) {
        if (!c.is_zero()) terms.push_back({m, c});
    }
    acc_.clear();
    return Poly::from_terms(std::move(terms));
}

}  // namespace msq
