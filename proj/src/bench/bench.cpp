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

#include "msq/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "msq/catalog.hpp"
#include "msq/expr_json.hpp"
#include "msq/parallel.hpp"
#include "msq/symbolic.hpp"

namespace msq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string host_tag() {
    char buf[256] = {};
    if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
    return buf;
}

std::string fixed(double v, int digits = 1) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
}

std::string ratio_text(const BenchItem &it) { return fixed(it.improvement.to_double(), 2) + "x"; }

struct Job {
    std::string id;
    std::string spec;
    Circuit circuit;
    MeasurementSpec measure;
};

std::vector<BenchItem> run_jobs(const std::vector<Job> &jobs, const BenchOptions &opt) {
    std::vector<BenchItem> items(jobs.size());
    parallel_for(jobs.size(), [&](size_t k) {
        Expr raw = extract(jobs[k].circuit, jobs[k].measure);
        items[k] = measure_item(jobs[k].id, jobs[k].spec, raw, opt.simplify, opt.repeats);
    });
    return items;
}

bool matches(const Expr &actual, const CaseExpectation &ex) {
    if (ex.mode == MatchMode::Exact) return actual == ex.expected;
    return constraint_normal_form(actual) == constraint_normal_form(ex.expected);
}

BenchReport rules_suite(const BenchOptions &opt) {
    BenchReport r;
    auto t0 = Clock::now();
    std::vector<Job> jobs;
    std::vector<const CaseExpectation *> expected;
    auto cases = case_catalog();
    for (const auto &cs : cases) {
        for (const auto &ex : cs.expectations) {
            jobs.push_back({cs.id + "/stage" + std::to_string(ex.stage), ex.spec.label(), prefix(cs.circuit, ex.stage),
                            ex.spec});
            expected.push_back(&ex);
        }
    }
    std::vector<Expr> actual(jobs.size());
    r.items.resize(jobs.size());
    parallel_for(jobs.size(), [&](size_t k) {
        Expr raw = extract(jobs[k].circuit, jobs[k].measure);
        r.items[k] = measure_item(jobs[k].id, jobs[k].spec, raw, opt.simplify, opt.repeats);
        actual[k] = simplify(raw, opt.simplify).expr;
    });
    for (size_t k = 0; k < jobs.size(); ++k) {
        if (!matches(actual[k], *expected[k])) {
            r.failures.push_back({jobs[k].id + " " + jobs[k].spec, expected[k]->expected.str(), actual[k].str()});
        }
    }
    SymState input = run_symbolic(swap_cycle_block(3, 0));
    bool order_three = run_symbolic(swap_cycle_block(3, 3)).amps == input.amps &&
                       run_symbolic(swap_cycle_block(3, 1)).amps != input.amps &&
                       run_symbolic(swap_cycle_block(3, 2)).amps != input.amps;
    if (!order_three) r.failures.push_back({"case6/block^3", "identity permutation", "not the identity"});
    r.extra["cases"] = cases.size();
    r.extra["checks"] = jobs.size() + 1;
    r.extra["seconds"] = seconds_since(t0);
    return r;
}

BenchReport qdrl_suite(const BenchOptions &opt) {
    BenchReport r;
    Circuit c = build_ansatz(AnsatzFamily::Qdrl, 2, 1);
    MeasurementSpec spec = MeasurementSpec::prob_zero(1);
    std::vector<Job> jobs{{"qdrl-2q", spec.label(), c, spec}};
    for (auto f : {AnsatzFamily::LinearEntangled, AnsatzFamily::FullEntangled, AnsatzFamily::VqlsRyCz}) {
        jobs.push_back({std::string(family_name(f)) + "-3q", spec.label(), build_ansatz(f, 3, 2), spec});
    }
    r.items = run_jobs(jobs, opt);
    Expr raw = extract(c, spec);
    nlohmann::json sweep = nlohmann::json::array();
    for (int intensity = 0; intensity <= 5; ++intensity) {
        SimplifyConfig cfg = opt.simplify;
        cfg.intensity = intensity;
        sweep.push_back({{"intensity", intensity}, {"leafcount", leafcount(simplify(raw, cfg).expr)}});
    }
    r.extra["intensity_sweep"] = sweep;
    const auto &q = r.items[0];
    double mean = 0;
    for (const auto &it : r.items) mean += it.improvement.to_double();
    mean /= static_cast<double>(r.items.size());
    r.published = {{"QDRL ProbZero(1) leafcount", "2273 -> 757", std::to_string(q.leaf_before) + " -> " +
                                                                   std::to_string(q.leaf_after)},
               {"QDRL improvement factor", "3.0x", ratio_text(q)},
               {"mean improvement over circuits", "about 3x", fixed(mean, 2) + "x"}};
    return r;
}

BenchReport vqe_suite(const BenchOptions &opt) {
    BenchReport r;
    Hamiltonian h = opt.hamiltonian ? *opt.hamiltonian : portfolio_hamiltonian();
    int layers = layers_for_params(AnsatzFamily::LinearEntangled, h.n_qubits, opt.vqe_params);
    if (layers < 1) {
        throw std::invalid_argument("no linear-entangled layer count gives " + std::to_string(opt.vqe_params) +
                                    " parameters on " + std::to_string(h.n_qubits) + " qubits");
    }
    Circuit u = build_ansatz(AnsatzFamily::LinearEntangled, h.n_qubits, layers);
    std::vector<Job> jobs;
    for (const auto &t : h.terms) {
        if (t.pauli.find_first_not_of('I') == std::string::npos) continue;
        auto spec = MeasurementSpec::pauli_transition(t.pauli);
        jobs.push_back({t.pauli, spec.label(), u, spec});
    }
    r.items = run_jobs(jobs, opt);
    double lo = 0, hi = 0;
    for (const auto &it : r.items) {
        double v = it.improvement.to_double();
        lo = lo == 0 ? v : std::min(lo, v);
        hi = std::max(hi, v);
    }
    r.extra["qubits"] = h.n_qubits;
    r.extra["params"] = u.params().size();
    r.extra["hamiltonian"] = format_hamiltonian(h);
    r.published = {{"per-term improvement, 4 qubits / 8 params", "1000x - 10000x", fixed(lo, 1) + "x - " + fixed(hi, 1) + "x"}};
    return r;
}

BenchReport kernel_suite(const BenchOptions &opt) {
    BenchReport r;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    std::vector<double> xi(4), xj(4);
    for (auto &v : xi) v = u(rng);
    for (auto &v : xj) v = u(rng);
    KernelEntry e = kernel_entry(4, xi, xj);
    r.items.push_back(measure_item("pauli-feature-map-4q", "kernel", e.expr, opt.simplify, opt.repeats));
    r.extra["value"] = e.value;
    r.extra["params"] = pauli_feature_map(4).params().size();
    r.published = {{"kernel entry improvement, 4 qubits / 8 params", "35x", ratio_text(r.items[0])}};
    return r;
}

BenchReport vqls_suite(const BenchOptions &opt) {
    BenchReport r;
    VqlsProblem p = opt.problem ? *opt.problem : reference_problem();
    VqlsSetup s = prepare(p, opt.simplify);
    for (const auto &t : s.tests) {
        r.items.push_back(measure_item(t.test.label(), "prob_zero(1)", t.raw, opt.simplify, opt.repeats));
    }
    std::vector<uint64_t> seeds;
    for (int k = 0; k < opt.seeds; ++k) seeds.push_back(opt.seed + static_cast<uint64_t>(k));
    CompareReport cmp = compare_backends(s, opt.backends, seeds, opt.iters, opt.repeats, opt.optimizer);
    r.extra = compare_report_to_json(cmp);
    r.extra.erase("sizes");
    r.extra["problem"] = problem_to_json(p);
    r.extra["optimizer"] = std::string(optimizer_name(opt.optimizer));
    const BenchItem *h = nullptr, *sh = nullptr;
    for (const auto &it : r.items) {
        if (!h && it.id.rfind("h_test", 0) == 0 && it.id.ends_with(".re")) h = &it;
        if (!sh && it.id.rfind("specialh_test", 0) == 0 && it.id.ends_with(".re")) sh = &it;
    }
    auto bytes_ratio = [](const BenchItem *it) {
        return fixed(static_cast<double>(it->bytes_before) / static_cast<double>(it->bytes_after), 1) + "x";
    };
    if (h) {
        r.published.push_back({"h_test leafcount reduction", "28.2x", ratio_text(*h)});
        r.published.push_back({"h_test file size reduction", "85.7x", bytes_ratio(h)});
    }
    if (sh) {
        r.published.push_back({"specialh_test leafcount reduction", "48.9x", ratio_text(*sh)});
        r.published.push_back({"specialh_test file size reduction", "63.6x", bytes_ratio(sh)});
    }
    if (cmp.has_speedup) {
        r.published.push_back({"S0/S1 loop time (mean)", "56x", fixed(cmp.speedup_mean, 1) + "x"});
        r.published.push_back({"S0/S1 loop time (median)", "56x", fixed(cmp.speedup_median, 1) + "x"});
        r.published.push_back({"seeds whose S0/S1 curves differ", "2 of 30",
                           std::to_string(cmp.diverging_seeds.size()) + " of " + std::to_string(seeds.size())});
    }
    for (const auto &b : cmp.backends) {
        r.published.push_back({"converged seeds, " + std::string(backend_name(b.backend)), "all of 30",
                           std::to_string(b.converged) + " of " + std::to_string(seeds.size())});
    }
    return r;
}

}  // namespace

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = {"rules", "qdrl", "vqls", "vqe", "kernel"};
    return names;
}

Hamiltonian portfolio_hamiltonian() {
    return parse_hamiltonian(
        "0.35 ZIII\n0.20 IZII\n-0.15 IIZI\n0.40 IIIZ\n"
        "0.12 ZZII\n0.08 ZIZI\n-0.05 ZIIZ\n0.10 IZZI\n0.06 IZIZ\n-0.09 IIZZ\n");
}

BenchItem measure_item(std::string id, std::string spec, const Expr &raw, const SimplifyConfig &cfg, int repeats) {
    BenchItem it;
    it.id = std::move(id);
    it.spec = std::move(spec);
    std::vector<double> times;
    SimplifyResult res;
    for (int k = 0; k < std::max(1, repeats); ++k) {
        res = simplify(raw, cfg);
        times.push_back(res.seconds);
    }
    it.leaf_before = leafcount(raw);
    it.leaf_after = leafcount(res.expr);
    it.improvement = improvement_factor(raw, res.expr);
    it.simplify_seconds = median(times);
    it.budget_exceeded = res.budget_exceeded;
    it.bytes_before = serialize_expr(raw).size();
    it.bytes_after = serialize_expr(res.expr).size();
    it.simplified = res.expr.str();
    return it;
}

BenchReport run_suite(std::string_view suite, const BenchOptions &opt) {
    BenchReport r;
    if (suite == "rules") {
        r = rules_suite(opt);
    } else if (suite == "qdrl") {
        r = qdrl_suite(opt);
    } else if (suite == "vqe") {
        r = vqe_suite(opt);
    } else if (suite == "kernel") {
        r = kernel_suite(opt);
    } else if (suite == "vqls") {
        r = vqls_suite(opt);
    } else {
        throw std::invalid_argument("unknown suite \"" + std::string(suite) + "\" (rules, qdrl, vqls, vqe, kernel)");
    }
    r.suite = std::string(suite);
    r.seed = opt.seed;
    r.timestamp = utc_timestamp();
    r.host = host_tag();
    return r;
}

nlohmann::json report_to_json(const BenchReport &r) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto &it : r.items) {
        items.push_back({{"id", it.id},
                         {"spec", it.spec},
                         {"leafcount_before", it.leaf_before},
                         {"leafcount_after", it.leaf_after},
                         {"improvement", it.improvement.str()},
                         {"improvement_value", it.improvement.to_double()},
                         {"simplify_seconds", it.simplify_seconds},
                         {"budget_exceeded", it.budget_exceeded},
                         {"bytes_before", it.bytes_before},
                         {"bytes_after", it.bytes_after},
                         {"simplified", it.simplified}});
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto &f : r.failures) failures.push_back({{"id", f.id}, {"expected", f.expected}, {"actual", f.actual}});
    nlohmann::json published_rows = nlohmann::json::array();
    for (const auto &p : r.published) published_rows.push_back({{"quantity", p.quantity}, {"published", p.published}, {"measured", p.measured}});
    return {{"suite", r.suite},
            {"environment", {{"seed", r.seed}, {"timestamp", r.timestamp}, {"host", r.host}}},
            {"items", items},
            {"failures", failures},
            {"published", published_rows},
            {"details", r.extra}};
}

std::string report_csv(const BenchReport &r) {
    std::ostringstream out;
    out << "id,spec,leafcount_before,leafcount_after,improvement,simplify_seconds,budget_exceeded,bytes_before,"
           "bytes_after\n";
    for (const auto &it : r.items) {
        out << it.id << ',' << it.spec << ',' << it.leaf_before << ',' << it.leaf_after << ','
            << it.improvement.to_double() << ',' << it.simplify_seconds << ',' << (it.budget_exceeded ? 1 : 0) << ','
            << it.bytes_before << ',' << it.bytes_after << '\n';
    }
    return out.str();
}

std::string report_text(const BenchReport &r) {
    std::ostringstream out;
    out << "suite " << r.suite << " (seed " << r.seed << ")\n";
    out << std::left << std::setw(24) << "item" << std::setw(18) << "measure" << std::right << std::setw(10) << "before" << std::setw(10) << "after"
        << std::setw(12) << "factor" << std::setw(12) << "seconds" << "\n";
    for (const auto &it : r.items) {
        out << std::left << std::setw(24) << it.id << std::setw(18) << it.spec << std::right << std::setw(10) << it.leaf_before << std::setw(10)
            << it.leaf_after << std::setw(12) << ratio_text(it) << std::setw(12) << fixed(it.simplify_seconds, 4)
            << (it.budget_exceeded ? "  budget exceeded" : "") << "\n";
    }
    if (!r.published.empty()) {
        out << "\n" << std::left << std::setw(50) << "quantity" << std::setw(16) << "published" << "measured\n";
        for (const auto &p : r.published) out << std::setw(50) << p.quantity << std::setw(16) << p.published << p.measured << "\n";
    }
    for (const auto &f : r.failures) {
        out << "\nMISMATCH " << f.id << "\n  expected: " << f.expected << "\n  actual:   " << f.actual << "\n";
    }
    return out.str();
}

}  // namespace msq
