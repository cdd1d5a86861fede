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

#include "msq/sym.hpp"

#include <stdexcept>

namespace msq {

namespace {

constexpr uint32_t group_of(SymKind k) {
    switch (k) {
        case SymKind::C:
        case SymKind::S:
            return 0;
        case SymKind::A:
        case SymKind::B:
            return 1;
        case SymKind::X:
            return 2;
    }
    return 3;
}

}  // namespace

Sym::Sym(SymKind kind, uint32_t index) {
    if (index > kMaxIndex) {
        throw std::out_of_range("symbol index " + std::to_string(index) + " too large");
    }
    uint32_t sub = (kind == SymKind::S || kind == SymKind::B) ? 1 : 0;
    id_ = (group_of(kind) << 29) | (index << 1) | sub;
}

Sym Sym::from_id(uint32_t id) {
    if ((id >> 29) > 2 || ((id >> 29) == 2 && (id & 1u))) {
        throw std::invalid_argument("invalid symbol id");
    }
    return Sym(id);
}

SymKind Sym::parse_kind(std::string_view letter) {
    if (letter == "c") return SymKind::C;
    if (letter == "s") return SymKind::S;
    if (letter == "a") return SymKind::A;
    if (letter == "b") return SymKind::B;
    if (letter == "x") return SymKind::X;
    throw std::invalid_argument("unknown symbol kind '" + std::string(letter) + "'");
}

SymKind Sym::kind() const {
    uint32_t group = id_ >> 29;
    bool second = id_ & 1u;
    if (group == 0) return second ? SymKind::S : SymKind::C;
    if (group == 1) return second ? SymKind::B : SymKind::A;
    return SymKind::X;
}

char Sym::letter() const {
    switch (kind()) {
        case SymKind::C:
            return 'c';
        case SymKind::S:
            return 's';
        case SymKind::A:
            return 'a';
        case SymKind::B:
            return 'b';
        case SymKind::X:
            return 'x';
    }
    return '?';
}

}  // namespace msq
