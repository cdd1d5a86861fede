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
#include <functional>
#include <string>
#include <string_view>

namespace msq {

/// C(k)/S(k): cos and sin of half the circuit parameter theta_k.
/// A(i)/B(i): real input amplitudes of qubit i in a separable input state.
/// X(d): a data feature.
enum class SymKind : uint8_t { C, S, A, B, X };

/// A symbol of the expression ring.
///
/// The (kind, index) pair is packed into a single id whose integer order is
/// the global symbol order C(0) < S(0) < C(1) < S(1) < ... < A(0) < B(0) < ...
/// < X(0) < ...; two Syms are the same symbol exactly when their ids match.
class Sym {
   public:
    static constexpr uint32_t kMaxIndex = (1u << 28) - 1;

    Sym(SymKind kind, uint32_t index);
    static Sym c(uint32_t k) { return {SymKind::C, k}; }
    static Sym s(uint32_t k) { return {SymKind::S, k}; }
    static Sym a(uint32_t i) { return {SymKind::A, i}; }
    static Sym b(uint32_t i) { return {SymKind::B, i}; }
    static Sym x(uint32_t d) { return {SymKind::X, d}; }
    static Sym from_id(uint32_t id);

    /// "c" | "s" | "a" | "b" | "x".
    static SymKind parse_kind(std::string_view letter);

    SymKind kind() const;
    uint32_t index() const { return (id_ >> 1) & kMaxIndex; }
    uint32_t id() const { return id_; }
    char letter() const;
    std::string name() const { return letter() + std::to_string(index()); }

    /// True for C/S and A/B, which satisfy first^2 + second^2 = 1.
    bool is_constrained() const { return kind() != SymKind::X; }
    /// The other member of the constrained pair (C <-> S, A <-> B).
    Sym partner() const { return from_id(id_ ^ 1u); }
    /// True for C and A, the member kept when eliminating the second square.
    bool is_first_of_pair() const { return is_constrained() && (id_ & 1u) == 0; }

    friend bool operator==(const Sym &, const Sym &) = default;
    friend auto operator<=>(const Sym &, const Sym &) = default;

   private:
    explicit Sym(uint32_t id) : id_(id) {}
    uint32_t id_;
};

}  // namespace msq

template <>
struct std::hash<msq::Sym> {
    size_t operator()(const msq::Sym &s) const noexcept { return std::hash<uint32_t>{}(s.id()); }
};
