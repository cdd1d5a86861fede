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

#include "msq/eval_plan.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace msq {

namespace {

struct OpKey {
    OpCode code;
    uint32_t a, b;
    uint64_t exponent;
    friend bool operator==(const OpKey &, const OpKey &) = default;
};

struct OpKeyHash {
    size_t operator()(const OpKey &k) const noexcept {
        uint64_t h = static_cast<uint64_t>(k.code) * 0x9e3779b97f4a7c15ULL;
        h ^= (static_cast<uint64_t>(k.a) << 32 | k.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= k.exponent + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

struct CoeffHash {
    size_t operator()(const Coeff &c) const noexcept { return c.hash(); }
};

class Compiler {
   public:
    std::unordered_map<OpKey, uint32_t, OpKeyHash> ops;
    std::unordered_map<uint32_t, uint32_t> input_regs;    // sym id -> register
    std::unordered_map<Coeff, uint32_t, CoeffHash> consts;  // value -> register
    std::vector<PlanOp> &out;
    std::vector<Sym> &inputs;
    std::vector<std::complex<double>> &constants;

    uint32_t emit(OpCode code, uint32_t a, uint32_t b, uint64_t exponent) {
        OpKey key{code, a, b, exponent};
        if (code == OpCode::Add || code == OpCode::Mul) {
            if (key.a > key.b) std::swap(key.a, key.b);
        }
        auto it = ops.find(key);
        if (it != ops.end()) return it->second;
        auto dst = static_cast<uint32_t>(out.size());
        out.push_back({code, dst, key.a, key.b, exponent});
        ops.emplace(key, dst);
        return dst;
    }

    uint32_t load(Sym s) {
        auto it = input_regs.find(s.id());
        if (it != input_regs.end()) return it->second;
        auto slot = static_cast<uint32_t>(inputs.size());
        inputs.push_back(s);
        uint32_t r = emit(OpCode::LoadInput, slot, 0, 0);
        input_regs.emplace(s.id(), r);
        return r;
    }

    uint32_t constant(const Coeff &c) {
        auto it = consts.find(c);
        if (it != consts.end()) return it->second;
        auto idx = static_cast<uint32_t>(constants.size());
        constants.push_back(c.to_complex());
        uint32_t r = emit(OpCode::Constant, idx, 0, 0);
        consts.emplace(c, r);
        return r;
    }

    uint32_t visit(const Node &n) {
        switch (n.kind()) {
            case NodeKind::Sym:
                return load(n.sym());
            case NodeKind::Num:
                return constant(n.value());
            default:
                break;
        }
        std::vector<uint32_t> regs;
        regs.reserve(n.args().size());
        for (const auto &a : n.args()) regs.push_back(visit(*a));
        if (n.kind() == NodeKind::Add || n.kind() == NodeKind::Mul) std::sort(regs.begin(), regs.end());
        uint32_t r = 0;
        switch (n.kind()) {
            case NodeKind::Neg:
                r = emit(OpCode::Neg, regs[0], 0, 0);
                break;
            case NodeKind::Pow:
                r = emit(OpCode::Pow, regs[0], 0, n.exponent());
                break;
            case NodeKind::Add:
            case NodeKind::Mul: {
                OpCode code = n.kind() == NodeKind::Add ? OpCode::Add : OpCode::Mul;
                r = regs[0];
                for (size_t k = 1; k < regs.size(); ++k) r = emit(code, r, regs[k], 0);
                break;
            }
            default:
                break;
        }
        return r;
    }
};

std::complex<double> ipow(std::complex<double> x, uint64_t e) {
    std::complex<double> r = 1.0;
    while (e) {
        if (e & 1) r *= x;
        e >>= 1;
        if (e) x *= x;
    }
    return r;
}

}  // namespace

size_t EvalPlan::arithmetic_op_count() const {
    return static_cast<size_t>(std::count_if(ops_.begin(), ops_.end(), [](const PlanOp &op) {
        return op.code != OpCode::LoadInput && op.code != OpCode::Constant;
    }));
}

std::complex<double> EvalPlan::run(std::span<const std::complex<double>> input_values,
                                   std::span<std::complex<double>> scratch) const {
    std::complex<double> *reg = scratch.data();
    for (const PlanOp &op : ops_) {
        switch (op.code) {
            case OpCode::LoadInput:
                reg[op.dst] = input_values[op.a];
                break;
            case OpCode::Constant:
                reg[op.dst] = constants_[op.a];
                break;
            case OpCode::Add:
                reg[op.dst] = reg[op.a] + reg[op.b];
                break;
            case OpCode::Mul:
                reg[op.dst] = reg[op.a] * reg[op.b];
                break;
            case OpCode::Neg:
                reg[op.dst] = -reg[op.a];
                break;
            case OpCode::Pow:
                reg[op.dst] = ipow(reg[op.a], op.exponent);
                break;
        }
    }
    return reg[output_];
}

std::complex<double> EvalPlan::run(const Bindings &bindings) const {
    std::vector<std::complex<double>> values;
    values.reserve(inputs_.size());
    for (Sym s : inputs_) {
        auto it = bindings.find(s);
        if (it == bindings.end()) throw std::out_of_range("unbound symbol " + s.name());
        values.push_back(it->second);
    }
    std::vector<std::complex<double>> scratch(register_count());
    return run(values, scratch);
}

EvalPlan compile(const Expr &e) {
    EvalPlan plan;
    Compiler c{{}, {}, {}, plan.ops_, plan.inputs_, plan.constants_};
    NodePtr root = e.rendered();
    plan.output_ = c.visit(*root);
    return plan;
}

}  // namespace msq
