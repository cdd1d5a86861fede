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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "msq/bench.hpp"
#include "msq/expr_json.hpp"
#include "msq/symbolic.hpp"

using namespace msq;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAssertion = 2, kIo = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json read_json(const std::string &path) {
    std::string text = read_file(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_file(const fs::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

/// "prob_zero:2", "amp0n:real", "pauli:IZZI", or a JSON object.
MeasurementSpec parse_measure(const std::string &text) {
    if (!text.empty() && text[0] == '{') return measurement_from_json(nlohmann::json::parse(text));
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "prob_zero") return MeasurementSpec::prob_zero(arg.empty() ? 1 : std::stoi(arg));
    if (kind == "pauli") return MeasurementSpec::pauli_transition(arg);
    if (kind == "amp0n") {
        nlohmann::json j = {{"kind", "amp0n"}, {"part", arg.empty() ? "complex" : arg}};
        return measurement_from_json(j);
    }
    throw std::invalid_argument("bad measurement \"" + text + "\" (prob_zero:Q, amp0n:PART, pauli:STRING)");
}

std::vector<Backend> parse_backends(const std::string &text) {
    std::vector<Backend> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(parse_backend(item));
    }
    if (out.empty()) throw std::invalid_argument("no backends given");
    return out;
}

struct Common {
    int intensity = 3;
    uint64_t seed = 1;
    int iters = 300;
    std::string backends = "s0,s1";
    std::string out;
    double budget = 10.0;
};

SimplifyConfig simplify_config(const Common &c) {
    SimplifyConfig cfg;
    cfg.intensity = c.intensity;
    cfg.budget_seconds = c.budget;
    return cfg;
}

int cmd_simplify(const Common &c, const std::string &circuit_path, const std::string &measure, bool sweep) {
    Circuit circuit = circuit_from_json(read_json(circuit_path));
    MeasurementSpec spec = parse_measure(measure);
    Expr raw = extract(circuit, spec);
    SimplifyConfig cfg = simplify_config(c);
    SimplifyResult res = simplify(raw, cfg);
    if (!c.out.empty()) {
        write_file(c.out + ".before.json", expr_to_json(raw).dump() + "\n");
        write_file(c.out + ".after.json", expr_to_json(res.expr).dump() + "\n");
    }
    Rational f = improvement_factor(raw, res.expr);
    std::cout << spec.label() << ": leafcount " << leafcount(raw) << " -> " << leafcount(res.expr) << " (improvement "
              << f.str() << " = " << f.to_double() << ")" << (res.budget_exceeded ? " budget exceeded" : "") << "\n";
    std::cout << res.expr.str() << "\n";
    if (sweep) {
        std::cout << "intensity,leafcount\n";
        for (int k = 0; k <= 5; ++k) {
            cfg.intensity = k;
            std::cout << k << ',' << leafcount(simplify(raw, cfg).expr) << "\n";
        }
    }
    return kOk;
}

BenchOptions bench_options(const Common &c, int seeds, int repeats, const std::string &optimizer) {
    BenchOptions o;
    o.simplify = simplify_config(c);
    o.seed = c.seed;
    o.iters = c.iters;
    o.seeds = seeds;
    o.repeats = repeats;
    o.backends = parse_backends(c.backends);
    o.optimizer = parse_optimizer(optimizer);
    return o;
}

int cmd_bench(const Common &c, const std::vector<std::string> &suites, const BenchOptions &opt) {
    int code = kOk;
    nlohmann::json all = nlohmann::json::array();
    std::string csv;
    for (const auto &name : suites) {
        BenchReport r = run_suite(name, opt);
        std::cout << report_text(r) << "\n";
        if (!r.failures.empty()) code = kAssertion;
        all.push_back(report_to_json(r));
        std::string part = report_csv(r);
        if (!csv.empty()) part = part.substr(part.find('\n') + 1);
        csv += part;
    }
    if (!c.out.empty()) {
        write_file(c.out + ".json", (suites.size() == 1 ? all[0] : all).dump(2) + "\n");
        write_file(c.out + ".csv", csv);
    }
    return code;
}

int cmd_vqls(const Common &c, const std::string &problem_path, const BenchOptions &opt) {
    VqlsProblem p = problem_path.empty() ? reference_problem() : problem_from_json(read_json(problem_path));
    std::cout << "A = " << describe_decomposition(p) << ", b = " << p.b_name << ", " << p.param_count()
              << " parameters\n";
    VqlsSetup s = prepare(p, opt.simplify);
    std::vector<uint64_t> seeds;
    for (int k = 0; k < opt.seeds; ++k) seeds.push_back(opt.seed + static_cast<uint64_t>(k));
    CompareReport rep = compare_backends(s, opt.backends, seeds, opt.iters, opt.repeats, opt.optimizer);
    nlohmann::json j = compare_report_to_json(rep);
    j["problem"] = problem_to_json(p);
    j["optimizer"] = std::string(optimizer_name(opt.optimizer));
    for (const auto &t : rep.sizes) {
        std::cout << t.label << ": leafcount " << t.leaf_before << " -> " << t.leaf_after << "\n";
    }
    for (const auto &b : rep.backends) {
        std::cout << backend_name(b.backend) << ": converged " << b.converged << "/" << seeds.size()
                  << ", median loop " << b.median_loop_seconds * 1e3 << " ms\n";
    }
    if (rep.has_speedup) {
        std::cout << "speedup S0/S1: mean " << rep.speedup_mean << ", median " << rep.speedup_median
                  << "; diverging seeds " << rep.diverging_seeds.size() << "\n";
    }
    if (!c.out.empty()) {
        fs::path dir(c.out);
        write_file(dir / "report.json", j.dump(2) + "\n");
        for (const auto &b : rep.backends) {
            for (const auto &run : b.runs) {
                write_file(dir / ("seed" + std::to_string(run.seed) + "_" + std::string(backend_name(b.backend)) + ".csv"),
                           convergence_csv(run));
            }
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Measurement simplification for variational quantum circuits"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--intensity", c.intensity, "Simplification passes")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", c.seed, "First seed");
        sub->add_option("--iters", c.iters, "Optimizer iterations")->check(CLI::PositiveNumber);
        sub->add_option("--backends", c.backends, "Comma list of s0, s1, oracle");
        sub->add_option("--out", c.out, "Output path");
        sub->add_option("--budget", c.budget, "Simplification budget in seconds")->check(CLI::PositiveNumber);
    };

    auto *simp = app.add_subcommand("simplify", "Extract and simplify one measurement of a circuit");
    std::string circuit_path, measure = "prob_zero:1";
    bool sweep = false;
    simp->add_option("circuit", circuit_path, "Circuit JSON file")->required();
    simp->add_option("--measure", measure, "prob_zero:Q, amp0n:PART, pauli:STRING or a JSON spec");
    simp->add_flag("--sweep", sweep, "Also print leafcount for intensities 0..5");
    add_common(simp);

    int seeds = 30, repeats = 5;
    std::string optimizer = "nelder-mead";
    auto add_run = [&](CLI::App *sub) {
        sub->add_option("--seeds", seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
        sub->add_option("--repeats", repeats, "Timing repeats; the median is reported")->check(CLI::PositiveNumber);
        sub->add_option("--optimizer", optimizer, "nelder-mead or trust-region");
    };

    auto *bench = app.add_subcommand("bench", "Run benchmark suites");
    std::vector<std::string> suites;
    bench->add_option("suites", suites, "rules, qdrl, vqls, vqe, kernel");
    std::string hamiltonian_path;
    bench->add_option("--hamiltonian", hamiltonian_path, "Hamiltonian file for the vqe suite");
    int vqe_params = 8;
    bench->add_option("--params", vqe_params, "Ansatz parameters for the vqe suite")->check(CLI::PositiveNumber);
    add_common(bench);
    add_run(bench);

    auto *vqls = app.add_subcommand("vqls", "Run VQLS on every backend and compare");
    std::string problem_path;
    vqls->add_option("problem", problem_path, "Problem JSON file (default: the reference instance)");
    add_common(vqls);
    add_run(vqls);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (simp->parsed()) return cmd_simplify(c, circuit_path, measure, sweep);
        BenchOptions opt = bench_options(c, seeds, repeats, optimizer);
        if (bench->parsed()) {
            if (suites.empty()) {
                std::cerr << "error: no suite given (rules, qdrl, vqls, vqe, kernel)\n";
                return kUsage;
            }
            for (const auto &s : suites) {
                if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
                    std::cerr << "error: unknown suite \"" << s << "\"\n";
                    return kUsage;
                }
            }
            opt.vqe_params = vqe_params;
            if (!hamiltonian_path.empty()) opt.hamiltonian = parse_hamiltonian(read_file(hamiltonian_path));
            return cmd_bench(c, suites, opt);
        }
        return cmd_vqls(c, problem_path, opt);
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAssertion;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAssertion;
    }
}
