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

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace msq {

enum class OptimizerKind { NelderMead, TrustRegion };

OptimizerKind parse_optimizer(std::string_view name);
std::string_view optimizer_name(OptimizerKind k);

struct OptimizeOptions {
    OptimizerKind kind = OptimizerKind::NelderMead;
    int max_iters = 300;
    double step = 0.5;     // initial simplex edge / trust radius
    double x_tol = 1e-10;  // simplex size or trust radius at which to stop
    double f_tol = 1e-14;  // Nelder-Mead: spread of simplex values at which to stop
    double f_target = 0;   // stop once a value <= f_target is seen
    /// Nelder-Mead: rebuild the simplex around the best vertex, with edge
    /// twice its current size, once it has shrunk below this fraction of its
    /// size when last built. 0 disables.
    double restart_shrink = 0;
    double max_radius = 3.14159265358979323846;  // trust region only
};

struct OptimizeResult {
    std::vector<double> x;
    double f = 0;
    int iters = 0;
    int evals = 0;
    int improvements = 0;  // iterations that lowered the best value
};

using Objective = std::function<double(std::span<const double>)>;
/// Called after the start point (iter 0) and after every iteration with the
/// best value so far and the evaluation count.
using IterationCallback = std::function<void(int iter, double best, int evals)>;

/// Derivative-free local minimization, fully deterministic.
///
/// NelderMead: simplex x0, x0 + step e_k, dimension-adaptive coefficients,
/// greedy expansion and optional rebuilds (see restart_shrink); a rebuild
/// counts as one iteration. Every decision is a comparison of objective
/// values, so two objectives that agree to rounding follow the same path
/// unless a comparison is a near tie.
///
/// TrustRegion: 2m+1 interpolation points and a quadratic model updated by
/// the least Frobenius-norm change of its Hessian; each iteration evaluates
/// f exactly once, at the trust-region step or at a point improving the
/// interpolation geometry.
OptimizeResult minimize(const Objective &f, std::vector<double> x0, const OptimizeOptions &opt = {},
                        const IterationCallback &on_iter = {});

}  // namespace msq
