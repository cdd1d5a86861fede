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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "msq/expr.hpp"

namespace msq {

enum class OpCode : uint8_t { LoadInput, Constant, Add, Mul, Neg, Pow };

struct PlanOp {
    OpCode code;
    uint32_t dst;
    uint32_t a;  // first operand register, input slot or constant index
    uint32_t b;  // second operand register
    uint64_t exponent;
};

/// Straight-line program over complex registers.
///
/// Every register is written exactly once. Commutative operands are sorted
/// and n-ary sums/products are folded left, so structurally equal
/// subexpressions (and shared prefixes of products) are computed once.
/// Execution only reads the plan; scratch registers belong to the caller,
/// so one plan can run on many threads at the same time.
class EvalPlan {
   public:
    const std::vector<PlanOp> &ops() const { return ops_; }
    const std::vector<Sym> &inputs() const { return inputs_; }
    const std::vector<std::complex<double>> &constants() const { return constants_; }
    uint32_t output() const { return output_; }
    size_t register_count() const { return ops_.size(); }
    /// Add, Mul, Neg and Pow operations.
    size_t arithmetic_op_count() const;

    /// `input_values[k]` is the value of inputs()[k]; `scratch` needs
    /// register_count() entries.
    std::complex<double> run(std::span<const std::complex<double>> input_values,
                             std::span<std::complex<double>> scratch) const;
    /// Convenience overload; throws std::out_of_range on an unbound input.
    std::complex<double> run(const Bindings &bindings) const;

   private:
    friend EvalPlan compile(const Expr &e);

    std::vector<PlanOp> ops_;
    std::vector<Sym> inputs_;
    std::vector<std::complex<double>> constants_;
    uint32_t output_ = 0;
};

EvalPlan compile(const Expr &e);

}  // namespace msq
