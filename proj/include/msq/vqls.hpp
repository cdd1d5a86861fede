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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msq/circuit.hpp"
#include "msq/eval_plan.hpp"
#include "msq/expr.hpp"
#include "msq/optimize.hpp"
#include "msq/simplify.hpp"
#include "msq/vqa.hpp"

namespace msq {

struct VqlsTerm {
    double c;
    std::string pauli;  // system qubit 1 first
};

/// A = sum_l c_l A_l, |b> = U_b |0^n>, trial state V(theta) |0^n>.
struct VqlsProblem {
    int n = 0;
    std::vector<VqlsTerm> a;
    std::string b_name = "hadamard";  // "hadamard", "zeros" or "circuit"
    Circuit ub{1};
    AnsatzFamily family = AnsatzFamily::VqlsRyCz;
    int layers = 3;
    Circuit v{1};

    size_t param_count() const { return v.params().size(); }
};

/// Checks terms, builds U_b and V, and for n <= 10 rejects a singular A.
VqlsProblem make_problem(int n, std::vector<VqlsTerm> a, const std::string &b = "hadamard",
                         AnsatzFamily family = AnsatzFamily::VqlsRyCz, int layers = 3);
/// {"n":3, "A":[{"c":0.45,"p":"III"},...], "b":"hadamard" | "zeros" | circuit,
///  "ansatz":{"family":"vqls-ry-cz","layers":3}}
VqlsProblem problem_from_json(const nlohmann::json &j);
nlohmann::json problem_to_json(const VqlsProblem &p);
/// n = 3, A = 0.45 III + 0.55 IIZ, uniform b, 9-parameter ansatz.
VqlsProblem reference_problem();
std::string describe_decomposition(const VqlsProblem &p);

enum class HadamardKind { HTest, SpecialHTest };

/// Ancilla-controlled circuit on n + 1 qubits (ancilla = qubit 1) whose
/// ProbZero(1) is (1 + x) / 2.
///   h_test(l, m):     x = Re or Im <psi| A_m A_l |psi>, |psi> = V|0>
///   specialh_test(l): x = Re or Im <b| A_l V |0>
struct HadamardTest {
    HadamardKind kind;
    int l;
    int m;  // -1 for specialh_test
    bool imag;
    Circuit circuit;

    std::string label() const;
};

HadamardTest build_h_test(const VqlsProblem &p, int l, int m, bool imag = false);
HadamardTest build_specialh_test(const VqlsProblem &p, int l, bool imag = false);

enum class Backend { S0, S1, Oracle };
Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend b);

struct PreparedTest {
    HadamardTest test;
    Expr raw;
    Expr simplified;
    EvalPlan raw_plan;
    EvalPlan simplified_plan;
    // Per plan input: theta index and whether the input is the sine.
    std::vector<std::pair<uint32_t, bool>> raw_inputs;
    std::vector<std::pair<uint32_t, bool>> simplified_inputs;
    std::vector<uint32_t> oracle_params;  // circuit parameter -> theta index
    double simplify_seconds = 0;
    bool budget_exceeded = false;
};

/// Expressions, plans and timings for every Hadamard test the cost needs:
/// h_test(l, m) real part for l < m and specialh_test(l) real and imaginary
/// parts. Extraction and simplification run on the work pool.
struct VqlsSetup {
    VqlsProblem problem;
    std::vector<PreparedTest> tests;
    double extract_seconds = 0;
    double simplify_seconds = 0;
    double compile_seconds = 0;
};

VqlsSetup prepare(const VqlsProblem &p, const SimplifyConfig &cfg = {});

/// Re/Im parts decoded from every prepared test, in setup order.
std::vector<double> hadamard_values(const VqlsSetup &s, Backend backend, std::span<const double> theta);

/// C = 1 - |<b|Psi>|^2 / <Psi|Psi>, |Psi> = A V(theta)|0>.
/// Throws std::domain_error when <Psi|Psi> < 1e-14.
double cost(const VqlsSetup &s, Backend backend, std::span<const double> theta);

/// Dense 2^n x 2^n A, row-major.
std::vector<std::complex<double>> dense_matrix(const VqlsProblem &p);
/// |<x|V(theta)0>|^2 for the normalized classical solution x of A x = b.
double solution_fidelity(const VqlsProblem &p, std::span<const double> theta);

struct IterationRecord {
    int iter;        // 0 is the start point
    int evals;       // cost evaluations so far
    double cost;     // best cost so far
    double seconds;  // since the loop started
};

struct RunRecord {
    Backend backend;
    OptimizerKind optimizer;
    uint64_t seed;
    std::vector<double> theta0;
    std::vector<IterationRecord> iterations;
    std::vector<double> theta;
    double final_cost = 0;
    int improvement_steps = 0;
    double loop_seconds = 0;
    double fidelity = 0;
};

/// Seeded uniform start in [0, 2 pi)^m, then derivative-free minimization
/// with initial step 0.5 rad.
RunRecord optimize(const VqlsSetup &s, Backend backend, uint64_t seed, int max_iters,
                   OptimizerKind optimizer = OptimizerKind::NelderMead);

std::vector<double> initial_theta(size_t m, uint64_t seed);

nlohmann::json run_record_to_json(const RunRecord &r);
/// "iter,cost" lines.
std::string convergence_csv(const RunRecord &r);

struct TestSize {
    std::string label;
    size_t leaf_before;
    size_t leaf_after;
    size_t bytes_before;
    size_t bytes_after;
    double simplify_seconds;
    bool budget_exceeded;
};

struct BackendSummary {
    Backend backend;
    double mean_loop_seconds;
    double median_loop_seconds;
    int converged;  // final cost < 1e-3
    std::vector<RunRecord> runs;
};

struct CompareReport {
    std::vector<uint64_t> seeds;
    int iters;
    int repeats;
    std::vector<BackendSummary> backends;
    std::vector<TestSize> sizes;
    double extract_seconds;
    double simplify_seconds;
    /// Seeds whose S0 and S1 costs differ by more than 1e-6 at some iteration.
    std::vector<uint64_t> diverging_seeds;
    bool has_speedup;
    double speedup_mean;    // mean S0 / mean S1
    double speedup_median;  // median S0 / median S1
};

/// Runs every seed on every backend. Loop times are the median over
/// `repeats` identical runs, interleaved across backends. A backend may be
/// listed twice to time it against itself.
CompareReport compare_backends(const VqlsSetup &s, const std::vector<Backend> &backends,
                               const std::vector<uint64_t> &seeds, int iters, int repeats = 5,
                               OptimizerKind optimizer = OptimizerKind::NelderMead);

std::vector<TestSize> test_sizes(const VqlsSetup &s);
nlohmann::json compare_report_to_json(const CompareReport &r);

}  // namespace msq
