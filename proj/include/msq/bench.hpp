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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msq/simplify.hpp"
#include "msq/vqa.hpp"
#include "msq/vqls.hpp"

namespace msq {

struct BenchItem {
    std::string id;
    std::string spec;
    size_t leaf_before = 0;
    size_t leaf_after = 0;
    Rational improvement;  // leaf_before / leaf_after, exact
    double simplify_seconds = 0;  // median over repeats
    bool budget_exceeded = false;
    size_t bytes_before = 0;
    size_t bytes_after = 0;
    std::string simplified;
};

struct BenchFailure {
    std::string id;
    std::string expected;
    std::string actual;
};

/// One row of the side-by-side table: the published value next to what
/// this run measured. Never asserted.
struct PublishedValue {
    std::string quantity;
    std::string published;
    std::string measured;
};

struct BenchReport {
    std::string suite;
    uint64_t seed = 1;
    std::string timestamp;
    std::string host;
    std::vector<BenchItem> items;
    std::vector<BenchFailure> failures;
    std::vector<PublishedValue> published;
    nlohmann::json extra = nlohmann::json::object();
};

struct BenchOptions {
    SimplifyConfig simplify;
    uint64_t seed = 1;
    int repeats = 5;
    // vqls suite; the reference instance when no problem is given
    std::optional<VqlsProblem> problem;
    int iters = 300;
    int seeds = 30;
    std::vector<Backend> backends{Backend::S0, Backend::S1};
    OptimizerKind optimizer = OptimizerKind::NelderMead;
    // vqe suite
    int vqe_params = 8;
    std::optional<Hamiltonian> hamiltonian;
};

const std::vector<std::string> &suite_names();

/// Throws std::invalid_argument for an unknown suite.
BenchReport run_suite(std::string_view suite, const BenchOptions &opt);

/// Four-asset portfolio Ising Hamiltonian: Z_i and Z_i Z_j terms.
Hamiltonian portfolio_hamiltonian();

/// Simplifies `raw` `repeats` times and reports sizes and the median time.
BenchItem measure_item(std::string id, std::string spec, const Expr &raw, const SimplifyConfig &cfg, int repeats);

nlohmann::json report_to_json(const BenchReport &r);
/// One line per item.
std::string report_csv(const BenchReport &r);
/// Aligned text tables: items, then the published values.
std::string report_text(const BenchReport &r);

}  // namespace msq
