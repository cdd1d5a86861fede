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

#include "msq/vqls.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "msq/expr_json.hpp"
#include "msq/oracle.hpp"
#include "msq/parallel.hpp"
#include "msq/symbolic.hpp"

namespace msq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void add_controlled_pauli(Circuit &c, const std::string &pauli, int offset, int control) {
    for (size_t q = 0; q < pauli.size(); ++q) {
        int target = static_cast<int>(q) + 1 + offset;
        switch (pauli[q]) {
            case 'X':
                c.add(GateKind::X, target, {control});
                break;
            case 'Y':
                c.add(GateKind::Y, target, {control});
                break;
            case 'Z':
                c.add(GateKind::Z, target, {control});
                break;
            default:
                break;
        }
    }
}

Circuit uniform_b(int n) {
    Circuit c(n);
    for (int q = 1; q <= n; ++q) c.h(q);
    return c;
}

std::vector<std::pair<uint32_t, bool>> plan_inputs(const EvalPlan &plan, const std::vector<uint32_t> &params) {
    std::vector<std::pair<uint32_t, bool>> out;
    out.reserve(plan.inputs().size());
    for (Sym s : plan.inputs()) {
        if (s.kind() != SymKind::C && s.kind() != SymKind::S) {
            throw std::logic_error("Hadamard-test expression has non-parameter symbol " + s.name());
        }
        out.emplace_back(params.at(s.index()), s.kind() == SymKind::S);
    }
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Eigen::MatrixXcd dense_a(const VqlsProblem &p) {
    auto flat = dense_matrix(p);
    const Eigen::Index dim = Eigen::Index{1} << p.n;
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = flat[static_cast<size_t>(r * dim + c)];
    }
    return a;
}

}  // namespace

VqlsProblem make_problem(int n, std::vector<VqlsTerm> a, const std::string &b, AnsatzFamily family, int layers) {
    if (n < 1 || n + 1 > Circuit::kMaxSymbolicQubits) {
        throw std::invalid_argument("VQLS system size must be 1.." + std::to_string(Circuit::kMaxSymbolicQubits - 1) +
                                    " qubits");
    }
    if (a.empty()) throw std::invalid_argument("A needs at least one term");
    for (size_t k = 0; k < a.size(); ++k) {
        const auto &t = a[k];
        std::string where = "A term " + std::to_string(k) + ": ";
        if (!std::isfinite(t.c)) throw std::invalid_argument(where + "coefficient is not finite");
        if (static_cast<int>(t.pauli.size()) != n) {
            throw std::invalid_argument(where + "Pauli string \"" + t.pauli + "\" needs " + std::to_string(n) +
                                        " letters");
        }
        if (t.pauli.find_first_not_of("IXYZ") != std::string::npos) {
            throw std::invalid_argument(where + "bad Pauli string \"" + t.pauli + "\"");
        }
    }
    VqlsProblem p;
    p.n = n;
    p.a = std::move(a);
    p.b_name = b;
    if (b == "hadamard") {
        p.ub = uniform_b(n);
    } else if (b == "zeros") {
        p.ub = Circuit(n);
    } else {
        throw std::invalid_argument("unknown b preparation \"" + b + "\"");
    }
    p.family = family;
    p.layers = layers;
    p.v = build_ansatz(family, n, layers, "t");
    if (n <= 10) {
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(dense_a(p));
        lu.setThreshold(1e-12);
        if (!lu.isInvertible()) throw std::invalid_argument("A = " + describe_decomposition(p) + " is singular");
    }
    return p;
}

VqlsProblem problem_from_json(const nlohmann::json &j) {
    if (!j.is_object()) throw std::invalid_argument("problem must be a JSON object");
    if (!j.contains("n") || !j.at("n").is_number_integer()) throw std::invalid_argument("problem needs integer \"n\"");
    if (!j.contains("A") || !j.at("A").is_array()) throw std::invalid_argument("problem needs an \"A\" array");
    std::vector<VqlsTerm> terms;
    for (const auto &t : j.at("A")) {
        if (!t.is_object() || !t.contains("c") || !t.contains("p") || !t.at("c").is_number() || !t.at("p").is_string()) {
            throw std::invalid_argument("A terms look like {\"c\":0.5,\"p\":\"IZ\"}");
        }
        terms.push_back({t.at("c").get<double>(), t.at("p").get<std::string>()});
    }
    std::string family = "vqls-ry-cz";
    int layers = 3;
    if (j.contains("ansatz")) {
        const auto &an = j.at("ansatz");
        if (!an.is_object()) throw std::invalid_argument("\"ansatz\" must be an object");
        if (an.contains("family")) family = an.at("family").get<std::string>();
        if (an.contains("layers")) layers = an.at("layers").get<int>();
    }
    int n = j.at("n").get<int>();
    const nlohmann::json b = j.value("b", nlohmann::json("hadamard"));
    if (b.is_string()) return make_problem(n, std::move(terms), b.get<std::string>(), parse_family(family), layers);
    VqlsProblem p = make_problem(n, std::move(terms), "zeros", parse_family(family), layers);
    Circuit ub = circuit_from_json(b);
    if (ub.n_qubits() != n) throw std::invalid_argument("b circuit must act on n qubits");
    if (!ub.params().empty()) throw std::invalid_argument("b circuit must not have parameters");
    if (ub.input() != InputKind::Zeros) throw std::invalid_argument("b circuit must start from |0...0>");
    p.ub = ub;
    p.b_name = "circuit";
    return p;
}

nlohmann::json problem_to_json(const VqlsProblem &p) {
    nlohmann::json j;
    j["n"] = p.n;
    j["A"] = nlohmann::json::array();
    for (const auto &t : p.a) j["A"].push_back({{"c", t.c}, {"p", t.pauli}});
    if (p.b_name == "circuit") {
        j["b"] = circuit_to_json(p.ub);
    } else {
        j["b"] = p.b_name;
    }
    j["ansatz"] = {{"family", std::string(family_name(p.family))}, {"layers", p.layers}};
    return j;
}

VqlsProblem reference_problem() { return make_problem(3, {{0.45, "III"}, {0.55, "IIZ"}}); }

std::string describe_decomposition(const VqlsProblem &p) {
    std::ostringstream out;
    for (size_t k = 0; k < p.a.size(); ++k) {
        if (k) out << " + ";
        out << p.a[k].c << '*' << p.a[k].pauli;
    }
    return out.str();
}

std::string HadamardTest::label() const {
    std::string s = kind == HadamardKind::HTest ? "h_test(" + std::to_string(l) + "," + std::to_string(m) + ")"
                                                : "specialh_test(" + std::to_string(l) + ")";
    return s + (imag ? ".im" : ".re");
}

HadamardTest build_h_test(const VqlsProblem &p, int l, int m, bool imag) {
    const int nl = static_cast<int>(p.a.size());
    if (l < 0 || l >= nl || m < 0 || m >= nl) throw std::out_of_range("h_test term index out of range");
    Circuit c(p.n + 1);
    c.h(1);
    if (imag) c.add(GateKind::Sdg, 1);
    c = c.then(p.v.embedded(p.n + 1, 1));
    add_controlled_pauli(c, p.a[static_cast<size_t>(l)].pauli, 1, 1);
    add_controlled_pauli(c, p.a[static_cast<size_t>(m)].pauli, 1, 1);
    c.h(1);
    return {HadamardKind::HTest, l, m, imag, std::move(c)};
}

HadamardTest build_specialh_test(const VqlsProblem &p, int l, bool imag) {
    if (l < 0 || l >= static_cast<int>(p.a.size())) throw std::out_of_range("specialh_test term index out of range");
    Circuit c(p.n + 1);
    c.h(1);
    if (imag) c.add(GateKind::Sdg, 1);
    c = c.then(p.v.embedded(p.n + 1, 1, {1}));
    add_controlled_pauli(c, p.a[static_cast<size_t>(l)].pauli, 1, 1);
    c = c.then(p.ub.adjoint().embedded(p.n + 1, 1, {1}));
    c.h(1);
    return {HadamardKind::SpecialHTest, l, -1, imag, std::move(c)};
}

Backend parse_backend(std::string_view name) {
    if (name == "s0") return Backend::S0;
    if (name == "s1") return Backend::S1;
    if (name == "oracle") return Backend::Oracle;
    throw std::invalid_argument("unknown backend \"" + std::string(name) + "\" (s0, s1, oracle)");
}

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::S0:
            return "s0";
        case Backend::S1:
            return "s1";
        case Backend::Oracle:
            return "oracle";
    }
    return "?";
}

VqlsSetup prepare(const VqlsProblem &p, const SimplifyConfig &cfg) {
    VqlsSetup s;
    s.problem = p;
    const int nl = static_cast<int>(p.a.size());
    for (int l = 0; l < nl; ++l) {
        for (int m = l + 1; m < nl; ++m) s.tests.push_back({build_h_test(p, l, m), {}, {}, {}, {}, {}, {}, {}});
    }
    for (int l = 0; l < nl; ++l) {
        s.tests.push_back({build_specialh_test(p, l, false), {}, {}, {}, {}, {}, {}, {}});
        s.tests.push_back({build_specialh_test(p, l, true), {}, {}, {}, {}, {}, {}, {}});
    }
    for (auto &t : s.tests) {
        for (const auto &name : t.test.circuit.params()) {
            auto k = p.v.find_param(name);
            if (!k) throw std::logic_error("Hadamard test parameter " + name + " is not an ansatz parameter");
            t.oracle_params.push_back(*k);
        }
    }
    auto t0 = Clock::now();
    parallel_for(s.tests.size(), [&](size_t k) {
        s.tests[k].raw = extract(s.tests[k].test.circuit, MeasurementSpec::prob_zero(1));
    });
    s.extract_seconds = seconds_since(t0);
    t0 = Clock::now();
    parallel_for(s.tests.size(), [&](size_t k) {
        SimplifyResult r = simplify(s.tests[k].raw, cfg);
        s.tests[k].simplified = r.expr;
        s.tests[k].simplify_seconds = r.seconds;
        s.tests[k].budget_exceeded = r.budget_exceeded;
    });
    s.simplify_seconds = seconds_since(t0);
    t0 = Clock::now();
    for (auto &t : s.tests) {
        t.raw_plan = compile(t.raw.canonical());
        t.simplified_plan = compile(t.simplified);
        t.raw_inputs = plan_inputs(t.raw_plan, t.oracle_params);
        t.simplified_inputs = plan_inputs(t.simplified_plan, t.oracle_params);
    }
    s.compile_seconds = seconds_since(t0);
    return s;
}

std::vector<double> hadamard_values(const VqlsSetup &s, Backend backend, std::span<const double> theta) {
    if (theta.size() != s.problem.param_count()) {
        throw std::invalid_argument("expected " + std::to_string(s.problem.param_count()) + " angles, got " +
                                    std::to_string(theta.size()));
    }
    std::vector<double> out;
    out.reserve(s.tests.size());
    if (backend == Backend::Oracle) {
        std::vector<double> local;
        for (const auto &t : s.tests) {
            local.clear();
            for (uint32_t k : t.oracle_params) local.push_back(theta[k]);
            double p0 = oracle_numeric(t.test.circuit, MeasurementSpec::prob_zero(1), local).real();
            out.push_back(2 * p0 - 1);
        }
        return out;
    }
    thread_local std::vector<std::complex<double>> half, inputs, scratch;
    half.resize(2 * theta.size());
    for (size_t k = 0; k < theta.size(); ++k) {
        half[2 * k] = std::cos(theta[k] / 2);
        half[2 * k + 1] = std::sin(theta[k] / 2);
    }
    for (const auto &t : s.tests) {
        const EvalPlan &plan = backend == Backend::S0 ? t.raw_plan : t.simplified_plan;
        const auto &map = backend == Backend::S0 ? t.raw_inputs : t.simplified_inputs;
        inputs.resize(map.size());
        for (size_t k = 0; k < map.size(); ++k) inputs[k] = half[2 * map[k].first + (map[k].second ? 1 : 0)];
        if (scratch.size() < plan.register_count()) scratch.resize(plan.register_count());
        out.push_back(2 * plan.run(inputs, scratch).real() - 1);
    }
    return out;
}

double cost(const VqlsSetup &s, Backend backend, std::span<const double> theta) {
    const auto &a = s.problem.a;
    const size_t nl = a.size();
    std::vector<double> x = hadamard_values(s, backend, theta);
    size_t k = 0;
    double norm = 0;
    for (size_t l = 0; l < nl; ++l) norm += a[l].c * a[l].c;
    for (size_t l = 0; l < nl; ++l) {
        for (size_t m = l + 1; m < nl; ++m) norm += 2 * a[l].c * a[m].c * x[k++];
    }
    std::complex<double> overlap = 0;
    for (size_t l = 0; l < nl; ++l) {
        overlap += a[l].c * std::complex<double>(x[k], x[k + 1]);
        k += 2;
    }
    if (norm < 1e-14) {
        throw std::domain_error("degenerate operator: <Psi|Psi> = " + std::to_string(norm) + " for A = " +
                                describe_decomposition(s.problem));
    }
    return std::max(0.0, 1 - std::norm(overlap) / norm);
}

std::vector<std::complex<double>> dense_matrix(const VqlsProblem &p) {
    const size_t dim = size_t{1} << p.n;
    std::vector<std::complex<double>> m(dim * dim);
    const std::complex<double> i(0, 1);
    for (const auto &t : p.a) {
        size_t flip = 0;
        for (int q = 0; q < p.n; ++q) {
            char ch = t.pauli[static_cast<size_t>(q)];
            if (ch == 'X' || ch == 'Y') flip |= size_t{1} << (p.n - 1 - q);
        }
        for (size_t y = 0; y < dim; ++y) {
            std::complex<double> phase = t.c;
            for (int q = 0; q < p.n; ++q) {
                bool bit = (y >> (p.n - 1 - q)) & 1;
                char ch = t.pauli[static_cast<size_t>(q)];
                if (ch == 'Z' && bit) phase = -phase;
                if (ch == 'Y') phase *= bit ? -i : i;
            }
            m[(y ^ flip) * dim + y] += phase;
        }
    }
    return m;
}

double solution_fidelity(const VqlsProblem &p, std::span<const double> theta) {
    StateVector b = oracle_state(p.ub, {});
    StateVector psi = oracle_state(p.v, theta);
    Eigen::VectorXcd bv = Eigen::Map<Eigen::VectorXcd>(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXcd x = dense_a(p).fullPivLu().solve(bv);
    x.normalize();
    std::complex<double> ov = 0;
    for (size_t k = 0; k < psi.size(); ++k) ov += std::conj(x[static_cast<Eigen::Index>(k)]) * psi[k];
    return std::norm(ov);
}

std::vector<double> initial_theta(size_t m, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    std::vector<double> t(m);
    for (auto &v : t) v = u(rng);
    return t;
}

RunRecord optimize(const VqlsSetup &s, Backend backend, uint64_t seed, int max_iters, OptimizerKind optimizer) {
    if (max_iters < 1) throw std::invalid_argument("iterations must be at least 1");
    RunRecord r;
    r.backend = backend;
    r.optimizer = optimizer;
    r.seed = seed;
    r.theta0 = initial_theta(s.problem.param_count(), seed);
    r.iterations.reserve(static_cast<size_t>(max_iters) + 1);
    auto t0 = Clock::now();
    Objective f = [&](std::span<const double> theta) { return cost(s, backend, theta); };
    IterationCallback cb = [&](int iter, double best, int evals) {
        r.iterations.push_back({iter, evals, best, seconds_since(t0)});
    };
    OptimizeOptions opt;
    opt.kind = optimizer;
    opt.max_iters = max_iters;
    opt.f_target = 1e-14;
    OptimizeResult res = minimize(f, r.theta0, opt, cb);
    r.loop_seconds = seconds_since(t0);
    r.theta = res.x;
    r.final_cost = res.f;
    r.improvement_steps = res.improvements;
    r.fidelity = solution_fidelity(s.problem, r.theta);
    return r;
}

nlohmann::json run_record_to_json(const RunRecord &r) {
    nlohmann::json it = {{"iter", nlohmann::json::array()},
                         {"evals", nlohmann::json::array()},
                         {"cost", nlohmann::json::array()},
                         {"seconds", nlohmann::json::array()}};
    for (const auto &x : r.iterations) {
        it["iter"].push_back(x.iter);
        it["evals"].push_back(x.evals);
        it["cost"].push_back(x.cost);
        it["seconds"].push_back(x.seconds);
    }
    return {{"backend", std::string(backend_name(r.backend))},
            {"optimizer", std::string(optimizer_name(r.optimizer))},
            {"seed", r.seed},
            {"theta0", r.theta0},
            {"theta", r.theta},
            {"final_cost", r.final_cost},
            {"improvement_steps", r.improvement_steps},
            {"loop_seconds", r.loop_seconds},
            {"fidelity", r.fidelity},
            {"iterations", it}};
}

std::string convergence_csv(const RunRecord &r) {
    std::ostringstream out;
    out.precision(17);
    out << "iter,cost\n";
    for (const auto &x : r.iterations) out << x.iter << ',' << x.cost << '\n';
    return out.str();
}

std::vector<TestSize> test_sizes(const VqlsSetup &s) {
    std::vector<TestSize> out;
    for (const auto &t : s.tests) {
        out.push_back({t.test.label(), leafcount(t.raw), leafcount(t.simplified), serialize_expr(t.raw).size(),
                       serialize_expr(t.simplified).size(), t.simplify_seconds, t.budget_exceeded});
    }
    return out;
}

CompareReport compare_backends(const VqlsSetup &s, const std::vector<Backend> &backends,
                               const std::vector<uint64_t> &seeds, int iters, int repeats,
                               OptimizerKind optimizer) {
    if (seeds.empty()) throw std::invalid_argument("compare_backends needs at least one seed");
    if (backends.empty()) throw std::invalid_argument("compare_backends needs at least one backend");
    repeats = std::max(1, repeats);
    CompareReport rep{seeds, iters, repeats, {}, test_sizes(s), s.extract_seconds, s.simplify_seconds, {}, false, 0, 0};
    // Repeats and backends are interleaved per seed so slow drift of the
    // host affects every backend alike.
    const size_t nb = backends.size();
    std::vector<BackendSummary> sums;
    std::vector<std::vector<double>> times(nb);
    for (Backend b : backends) sums.push_back({b, 0, 0, 0, {}});
    for (uint64_t seed : seeds) {
        std::vector<std::vector<double>> t(nb);
        std::vector<RunRecord> first(nb);
        for (int k = 0; k < repeats; ++k) {
            for (size_t i = 0; i < nb; ++i) {
                RunRecord run = optimize(s, backends[i], seed, iters, optimizer);
                t[i].push_back(run.loop_seconds);
                if (k == 0) first[i] = std::move(run);
            }
        }
        for (size_t i = 0; i < nb; ++i) {
            first[i].loop_seconds = median(t[i]);
            times[i].push_back(first[i].loop_seconds);
            if (first[i].final_cost < 1e-3) ++sums[i].converged;
            sums[i].runs.push_back(std::move(first[i]));
        }
    }
    for (size_t i = 0; i < nb; ++i) {
        sums[i].mean_loop_seconds =
            std::accumulate(times[i].begin(), times[i].end(), 0.0) / static_cast<double>(times[i].size());
        sums[i].median_loop_seconds = median(times[i]);
        rep.backends.push_back(std::move(sums[i]));
    }
    const BackendSummary *s0 = nullptr, *s1 = nullptr;
    for (const auto &b : rep.backends) {
        if (b.backend == Backend::S0) s0 = &b;
        if (b.backend == Backend::S1) s1 = &b;
    }
    if (s0 && s1) {
        rep.has_speedup = true;
        rep.speedup_mean = s0->mean_loop_seconds / s1->mean_loop_seconds;
        rep.speedup_median = s0->median_loop_seconds / s1->median_loop_seconds;
        for (size_t k = 0; k < seeds.size(); ++k) {
            const auto &a = s0->runs[k].iterations, &b = s1->runs[k].iterations;
            bool same = a.size() == b.size();
            for (size_t i = 0; same && i < a.size(); ++i) same = std::abs(a[i].cost - b[i].cost) <= 1e-6;
            if (!same) rep.diverging_seeds.push_back(seeds[k]);
        }
    }
    return rep;
}

nlohmann::json compare_report_to_json(const CompareReport &r) {
    nlohmann::json j;
    j["seeds"] = r.seeds;
    j["iters"] = r.iters;
    j["repeats"] = r.repeats;
    j["extract_seconds"] = r.extract_seconds;
    j["simplify_seconds"] = r.simplify_seconds;
    j["sizes"] = nlohmann::json::array();
    for (const auto &t : r.sizes) {
        j["sizes"].push_back({{"test", t.label},
                              {"leafcount_before", t.leaf_before},
                              {"leafcount_after", t.leaf_after},
                              {"improvement", static_cast<double>(t.leaf_before) / static_cast<double>(t.leaf_after)},
                              {"bytes_before", t.bytes_before},
                              {"bytes_after", t.bytes_after},
                              {"simplify_seconds", t.simplify_seconds},
                              {"budget_exceeded", t.budget_exceeded}});
    }
    j["backends"] = nlohmann::json::array();
    for (const auto &b : r.backends) {
        nlohmann::json runs = nlohmann::json::array();
        for (const auto &run : b.runs) runs.push_back(run_record_to_json(run));
        j["backends"].push_back({{"backend", std::string(backend_name(b.backend))},
                                 {"mean_loop_seconds", b.mean_loop_seconds},
                                 {"median_loop_seconds", b.median_loop_seconds},
                                 {"converged", b.converged},
                                 {"runs", runs}});
    }
    if (r.has_speedup) {
        j["speedup"] = {{"mean", r.speedup_mean}, {"median", r.speedup_median}};
        j["diverging_seeds"] = r.diverging_seeds;
    }
    return j;
}

}  // namespace msq
