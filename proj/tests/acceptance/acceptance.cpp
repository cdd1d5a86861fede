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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "msq/bench.hpp"
#include "msq/catalog.hpp"
#include "msq/eval_plan.hpp"
#include "msq/oracle.hpp"
#include "msq/simplify.hpp"
#include "msq/symbolic.hpp"
#include "msq/vqa.hpp"
#include "msq/vqls.hpp"

using namespace msq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

Expr a(uint32_t i) { return Expr::symbol(Sym::a(i)); }
Expr b(uint32_t i) { return Expr::symbol(Sym::b(i)); }
Expr num(int64_t p, int64_t q = 1) { return Expr::constant(Coeff(Rational(p, q))); }

Circuit separable(int n) { return Circuit(n, InputKind::Separable); }

std::vector<std::pair<double, double>> random_separable(std::mt19937_64 &rng, int n) {
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    std::vector<std::pair<double, double>> out;
    for (int q = 0; q < n; ++q) {
        double t = u(rng);
        out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
}

Outcome rule_regression() {
    auto t0 = Clock::now();
    struct Check {
        std::string name;
        Circuit circuit;
        int qubit;
        Expr expected;
    };
    std::vector<Check> checks;
    {
        Circuit c = separable(3);
        c.cnot(1, 2);
        checks.push_back({"case1 target rule", c, 2, a(1).pow(2) * a(2).pow(2) + b(1).pow(2) * b(2).pow(2)});
    }
    {
        Circuit c = separable(3);
        c.cnot(1, 2).cnot(2, 1);
        checks.push_back({"case6 Q1", c, 1, a(2).pow(2)});
    }
    {
        Circuit c = separable(2);
        c.h(1);
        checks.push_back({"H rule", c, 1, num(1, 2) + a(1) * b(1)});
    }
    {
        Circuit c = separable(2);
        c.h(1).cnot(1, 2);
        checks.push_back({"Bell rule", c, 2, num(1, 2) + a(1) * b(1) * (a(2).pow(2) - b(2).pow(2))});
    }
    std::vector<std::string> bad;
    for (const auto &ch : checks) {
        Expr got = simplify(extract(ch.circuit, MeasurementSpec::prob_zero(ch.qubit))).expr;
        if (!(got == ch.expected)) bad.push_back(ch.name + ": got " + got.str());
    }
    size_t catalog_checks = 0;
    for (const auto &cs : case_catalog()) {
        for (const auto &ex : cs.expectations) {
            ++catalog_checks;
            Expr got = simplify(extract(prefix(cs.circuit, ex.stage), ex.spec)).expr;
            bool ok = ex.mode == MatchMode::Exact ? got == ex.expected
                                                  : constraint_normal_form(got) == constraint_normal_form(ex.expected);
            if (!ok) bad.push_back(cs.id + " " + ex.spec.label() + ": got " + got.str());
        }
    }
    SymState start = run_symbolic(swap_cycle_block(3, 0));
    if (!(run_symbolic(swap_cycle_block(3, 3)).amps == start.amps)) bad.push_back("case6 block^3 is not the identity");
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << checks.size() + catalog_checks + 1 << " checks in " << secs << " s";
    for (const auto &m : bad) d << "; " << m;
    return {bad.empty() && secs < 1.0, d.str()};
}

struct CorpusPair {
    std::string name;
    Circuit circuit;
    MeasurementSpec spec;
};

std::vector<CorpusPair> corpus() {
    using MS = MeasurementSpec;
    std::vector<CorpusPair> out;
    auto add = [&](const std::string &name, const Circuit &c, const MS &s) { out.push_back({name, c, s}); };
    Circuit qdrl = build_ansatz(AnsatzFamily::Qdrl, 2, 1);
    add("qdrl", qdrl, MS::prob_zero(1));
    add("qdrl", qdrl, MS::prob_zero(2));
    add("qdrl", qdrl, MS::amp0n(Part::Real));
    add("qdrl", qdrl, MS::pauli_transition("ZZ"));
    Circuit lin = build_ansatz(AnsatzFamily::LinearEntangled, 3, 2);
    add("linear", lin, MS::prob_zero(1));
    add("linear", lin, MS::amp0n(Part::Imag));
    add("linear", lin, MS::pauli_transition("XZY"));
    Circuit full = build_ansatz(AnsatzFamily::FullEntangled, 3, 2);
    add("full", full, MS::prob_zero(3));
    add("full", full, MS::pauli_transition("ZZZ"));
    add("full", full, MS::amp0n(Part::Real));
    Circuit ryz = build_ansatz(AnsatzFamily::VqlsRyCz, 3, 3);
    add("vqls-ry-cz", ryz, MS::prob_zero(2));
    add("vqls-ry-cz", ryz, MS::pauli_transition("XXI"));
    add("vqls-ry-cz", ryz, MS::amp0n(Part::Complex));
    Circuit pfm = pauli_feature_map(3);
    add("feature-map", pfm, MS::prob_zero(1));
    add("feature-map", pfm, MS::pauli_transition("ZIZ"));
    add("feature-map", pfm, MS::amp0n(Part::Real));
    add("kernel", pauli_feature_map(2, 1, "x"), MS::kernel_entry(pauli_feature_map(2, 1, "y")));
    for (const auto &cs : case_catalog()) {
        if (cs.id == "bell" || cs.id == "case2") add(cs.id, cs.circuit, MS::prob_zero(2));
    }
    auto p = make_problem(2, {{0.6, "II"}, {0.4, "XZ"}}, "hadamard", AnsatzFamily::VqlsRyCz, 2);
    add("h_test", build_h_test(p, 0, 1).circuit, MS::prob_zero(1));
    add("specialh_test", build_specialh_test(p, 1, true).circuit, MS::prob_zero(1));
    return out;
}

Outcome equivalence() {
    auto t0 = Clock::now();
    auto pairs = corpus();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    double worst = 0;
    std::string worst_name;
    for (const auto &cp : pairs) {
        Circuit measured = measured_circuit(cp.circuit, cp.spec);
        EvalPlan plan = compile(simplify(extract(cp.circuit, cp.spec)).expr);
        for (int k = 0; k < 100; ++k) {
            std::vector<double> theta(measured.params().size());
            for (auto &t : theta) t = u(rng);
            std::vector<std::pair<double, double>> sep;
            StateVector input;
            if (cp.circuit.input() == InputKind::Separable) {
                sep = random_separable(rng, cp.circuit.n_qubits());
                input = separable_state(sep);
            }
            std::complex<double> want = oracle_numeric(cp.circuit, cp.spec, theta, input);
            std::complex<double> got = plan.run(bind_parameters(measured, theta, sep));
            double err = std::abs(got - want);
            if (err > worst) {
                worst = err;
                worst_name = cp.name + " " + cp.spec.label();
            }
        }
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << pairs.size() << " circuit/spec pairs x 100 points, max error " << worst;
    if (!worst_name.empty()) d << " (" << worst_name << ")";
    d << ", " << secs << " s";
    return {pairs.size() >= 20 && worst <= 1e-9 && secs < 60, d.str()};
}

Outcome normalization() {
    size_t norms = 0, imags = 0;
    std::vector<std::string> bad;
    for (const auto &cp : corpus()) {
        if (cp.spec.kind == MeasureKind::KernelEntry) continue;
        ++norms;
        if (!(constraint_normal_form(norm_squared(run_symbolic(cp.circuit))) == num(1))) {
            bad.push_back("norm of " + cp.name);
        }
    }
    std::vector<std::pair<Circuit, std::vector<std::string>>> vqe = {
        {build_ansatz(AnsatzFamily::Qdrl, 2, 1), {"ZZ", "XY", "YI"}},
        {build_ansatz(AnsatzFamily::LinearEntangled, 4, 2), {"ZIII", "XXYY", "IZZI", "YXXY"}},
        {build_ansatz(AnsatzFamily::FullEntangled, 3, 1), {"XYZ", "ZZI"}},
        {build_ansatz(AnsatzFamily::VqlsRyCz, 3, 2), {"YYI", "IXZ"}},
        {pauli_feature_map(3), {"XIX", "ZYZ"}},
    };
    for (const auto &[c, paulis] : vqe) {
        for (const auto &p : paulis) {
            ++imags;
            Expr e = extract(c, MeasurementSpec::pauli_transition(p));
            if (!(constraint_normal_form(e - e.conj()) == num(0))) bad.push_back("imaginary part of " + p);
        }
    }
    std::ostringstream d;
    d << norms << " norms, " << imags << " Pauli imaginary parts";
    for (const auto &m : bad) d << "; " << m;
    return {bad.empty(), d.str()};
}

Eigen::VectorXcd dense_solution(const VqlsProblem &p) {
    const Eigen::Index dim = Eigen::Index{1} << p.n;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : p.a) {
        // Only I and Z terms in the reference instance: A is diagonal.
        for (Eigen::Index y = 0; y < dim; ++y) {
            double sign = 1;
            for (int q = 0; q < p.n; ++q) {
                if (t.pauli[static_cast<size_t>(q)] == 'Z' && ((y >> (p.n - 1 - q)) & 1)) sign = -sign;
            }
            a(y, y) += t.c * sign;
        }
    }
    Eigen::VectorXcd b = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    Eigen::VectorXcd x = a.fullPivLu().solve(b);
    return x.normalized();
}

struct VqlsOutcomes {
    Outcome convergence;
    Outcome agreement;
    Outcome sizes;
    Outcome speedup;
};

VqlsOutcomes vqls_criteria() {
    auto t0 = Clock::now();
    VqlsProblem p = reference_problem();
    VqlsSetup s = prepare(p);
    std::vector<uint64_t> seeds;
    for (uint64_t k = 1; k <= 30; ++k) seeds.push_back(k);
    CompareReport rep = compare_backends(s, {Backend::S0, Backend::S1, Backend::Oracle}, seeds, 300, 1);
    Eigen::VectorXcd x = dense_solution(p);

    std::ostringstream c4;
    int min_ok = 30;
    for (const auto &bs : rep.backends) {
        int ok = 0;
        for (const auto &run : bs.runs) {
            StateVector psi = oracle_state(p.v, run.theta);
            std::complex<double> ov = 0;
            for (size_t k = 0; k < psi.size(); ++k) ov += std::conj(x[static_cast<Eigen::Index>(k)]) * psi[k];
            if (run.final_cost < 1e-3 && std::norm(ov) > 0.99) ++ok;
        }
        min_ok = std::min(min_ok, ok);
        c4 << backend_name(bs.backend) << " " << ok << "/30, ";
    }
    double secs = seconds_since(t0);
    c4 << secs << " s";

    std::ostringstream c5;
    int agree = 30 - static_cast<int>(rep.diverging_seeds.size());
    c5 << agree << "/30 seeds agree to 1e-6";

    std::ostringstream c6;
    Circuit qdrl = build_ansatz(AnsatzFamily::Qdrl, 2, 1);
    Expr qraw = extract(qdrl, MeasurementSpec::prob_zero(1));
    Expr qsimp = simplify(qraw).expr;
    double qf = static_cast<double>(leafcount(qraw)) / static_cast<double>(leafcount(qsimp));
    bool sizes_ok = qf >= 3;
    c6 << "qdrl " << leafcount(qraw) << "->" << leafcount(qsimp) << " (" << qf << "x)";
    for (const auto &t : s.tests) {
        double f = static_cast<double>(leafcount(t.raw)) / static_cast<double>(leafcount(t.simplified));
        sizes_ok = sizes_ok && f >= 5;
        c6 << ", " << t.test.label() << " " << f << "x";
    }

    CompareReport timed = compare_backends(s, {Backend::S0, Backend::S1}, seeds, 200, 5);
    std::ostringstream c7;
    double s0 = 0, s1 = 0;
    for (const auto &bs : timed.backends) (bs.backend == Backend::S0 ? s0 : s1) = bs.median_loop_seconds;
    c7 << "median loop S0 " << s0 * 1e3 << " ms, S1 " << s1 * 1e3 << " ms, ratio " << s0 / s1;

    return {{min_ok >= 25 && secs < 600, c4.str()},
            {agree >= 25, c5.str()},
            {sizes_ok, c6.str()},
            {s1 * 5 <= s0, c7.str()}};
}

Outcome reported_values() {
    BenchOptions opt;
    opt.repeats = 1;
    opt.seeds = 1;
    opt.iters = 20;
    std::vector<std::string> missing;
    size_t rows = 0;
    for (const char *suite : {"qdrl", "vqe", "kernel", "vqls"}) {
        BenchReport r = run_suite(suite, opt);
        rows += r.published.size();
        if (r.published.empty()) missing.push_back(suite);
        for (const auto &row : r.published) {
            if (row.measured.empty() || row.published.empty()) missing.push_back(row.quantity);
        }
        if (std::string(suite) == "vqls") {
            bool has_bytes = false;
            for (const auto &row : r.published) has_bytes = has_bytes || row.quantity.find("file size") != std::string::npos;
            for (const auto &it : r.items) has_bytes = has_bytes && it.bytes_before > 0 && it.bytes_after > 0;
            if (!has_bytes) missing.push_back("file sizes");
        }
    }
    std::ostringstream d;
    d << rows << " side-by-side rows";
    for (const auto &m : missing) d << "; missing " << m;
    return {missing.empty(), d.str()};
}

void report(int n, const char *name, const Outcome &o, int &failures) {
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

}  // namespace

int main() {
    int failures = 0;
    report(1, "rule regression", rule_regression(), failures);
    report(2, "symbolic/numeric equivalence", equivalence(), failures);
    report(3, "normalization and realness", normalization(), failures);
    VqlsOutcomes v = vqls_criteria();
    report(4, "VQLS convergence", v.convergence, failures);
    report(5, "backend agreement", v.agreement, failures);
    report(6, "expression-size reduction", v.sizes, failures);
    report(7, "runtime speedup", v.speedup, failures);
    report(8, "published values reported", reported_values(), failures);
    return failures == 0 ? 0 : 1;
}
