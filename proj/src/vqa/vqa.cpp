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

#include "msq/vqa.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "msq/parallel.hpp"
#include "msq/symbolic.hpp"

namespace msq {

namespace {

std::vector<std::pair<int, int>> ring_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int q = 1; q < n; ++q) pairs.emplace_back(q, q + 1);
    if (n >= 3) pairs.emplace_back(n, 1);
    return pairs;
}

void add_diagonal_block(Circuit &c, int n, const std::string &prefix, int &k) {
    for (int q = 1; q <= n; ++q) c.rz(q, prefix + std::to_string(k++));
    for (auto [a, b] : ring_pairs(n)) {
        c.cnot(a, b);
        c.rz(b, prefix + std::to_string(k++));
        c.cnot(a, b);
    }
}

int params_per_layer(AnsatzFamily f, int n) {
    switch (f) {
        case AnsatzFamily::Qdrl:
            return 3 * n;
        case AnsatzFamily::PauliFeatureMap:
            return n + static_cast<int>(ring_pairs(n).size());
        default:
            return n;
    }
}

}  // namespace

AnsatzFamily parse_family(std::string_view name) {
    if (name == "qdrl") return AnsatzFamily::Qdrl;
    if (name == "linear" || name == "linear-entangled") return AnsatzFamily::LinearEntangled;
    if (name == "full" || name == "full-entangled") return AnsatzFamily::FullEntangled;
    if (name == "vqls-ry-cz") return AnsatzFamily::VqlsRyCz;
    if (name == "pauli-feature-map") return AnsatzFamily::PauliFeatureMap;
    throw std::invalid_argument("unknown ansatz family \"" + std::string(name) + "\"");
}

std::string_view family_name(AnsatzFamily f) {
    switch (f) {
        case AnsatzFamily::Qdrl:
            return "qdrl";
        case AnsatzFamily::LinearEntangled:
            return "linear-entangled";
        case AnsatzFamily::FullEntangled:
            return "full-entangled";
        case AnsatzFamily::VqlsRyCz:
            return "vqls-ry-cz";
        case AnsatzFamily::PauliFeatureMap:
            return "pauli-feature-map";
    }
    return "?";
}

Circuit build_ansatz(AnsatzFamily family, int n, int layers, const std::string &prefix) {
    if (layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
    if (family == AnsatzFamily::PauliFeatureMap) return pauli_feature_map(n, layers, prefix);
    Circuit c(n);
    int k = 0;
    auto next = [&] { return prefix + std::to_string(k++); };
    auto ry_layer = [&] {
        for (int q = 1; q <= n; ++q) c.ry(q, next());
    };
    switch (family) {
        case AnsatzFamily::Qdrl:
            for (int q = 1; q <= n; ++q) c.rx(q, "in_x" + std::to_string(q));
            for (int q = 1; q <= n; ++q) c.rz(q, "in_z" + std::to_string(q));
            for (int l = 0; l < layers; ++l) {
                if (n > 1) {
                    for (auto [a, b] : ring_pairs(n)) c.cnot(a, b);
                }
                for (int q = 1; q <= n; ++q) {
                    c.rz(q, next());
                    c.ry(q, next());
                    c.rz(q, next());
                }
            }
            break;
        case AnsatzFamily::LinearEntangled:
            for (int l = 0; l < layers; ++l) {
                ry_layer();
                for (int q = 1; q < n; ++q) c.cnot(q, q + 1);
            }
            break;
        case AnsatzFamily::FullEntangled:
            for (int l = 0; l < layers; ++l) {
                ry_layer();
                for (int a = 1; a <= n; ++a) {
                    for (int b = a + 1; b <= n; ++b) c.cnot(a, b);
                }
            }
            break;
        case AnsatzFamily::VqlsRyCz:
            ry_layer();
            for (int l = 1; l < layers; ++l) {
                for (int q = 1; q < n; ++q) c.cz(q, q + 1);
                ry_layer();
            }
            break;
        default:
            break;
    }
    return c;
}

int layers_for_params(AnsatzFamily family, int n, int params) {
    int per = params_per_layer(family, n);
    if (family == AnsatzFamily::Qdrl) params -= 2 * n;
    if (params <= 0 || params % per != 0) return -1;
    return params / per;
}

Circuit pauli_feature_map(int n, int reps, const std::string &prefix) {
    if (n < 2) throw std::invalid_argument("Pauli feature map needs at least 2 qubits");
    Circuit c(n);
    int k = 0;
    for (int r = 0; r < reps; ++r) {
        for (int q = 1; q <= n; ++q) c.h(q);
        add_diagonal_block(c, n, prefix, k);
    }
    return c;
}

std::vector<double> feature_angles(int n, std::span<const double> x, int reps) {
    if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("feature vector has " + std::to_string(x.size()) + " entries, map expects " +
                                    std::to_string(n));
    }
    std::vector<double> angles;
    for (int r = 0; r < reps; ++r) {
        for (int q = 0; q < n; ++q) angles.push_back(2 * x[static_cast<size_t>(q)]);
        for (auto [a, b] : ring_pairs(n)) {
            angles.push_back(2 * (M_PI - x[static_cast<size_t>(a - 1)]) * (M_PI - x[static_cast<size_t>(b - 1)]));
        }
    }
    return angles;
}

KernelEntry kernel_entry(int n, std::span<const double> xi, std::span<const double> xj, int reps) {
    if (reps < 1) throw std::invalid_argument("feature map needs at least one repetition");
    auto ai = feature_angles(n, xi, reps);
    auto aj = feature_angles(n, xj, reps);
    const size_t per = ai.size() / static_cast<size_t>(reps);
    const size_t last = per * static_cast<size_t>(reps - 1);
    // Everything between two H layers is diagonal, so the last block of
    // U(x_i) and the first block of U(x_j)^dag merge into one block whose
    // angles are the differences.
    KernelEntry k{{}, Circuit(n), {}, 0.0};
    Circuit &c = k.composite;
    if (reps > 1) c = pauli_feature_map(n, reps - 1, "xi");
    for (int q = 1; q <= n; ++q) c.h(q);
    int d = 0;
    add_diagonal_block(c, n, "d", d);
    for (int q = 1; q <= n; ++q) c.h(q);
    if (reps > 1) c = c.then(pauli_feature_map(n, reps - 1, "xj").adjoint());
    k.angles.reserve(c.params().size());
    for (const auto &name : c.params()) {
        size_t idx = std::stoul(name.substr(name[0] == 'd' ? 1 : 2));
        if (name[0] == 'd') {
            k.angles.push_back(ai[last + idx] - aj[last + idx]);
        } else {
            k.angles.push_back(name[1] == 'i' ? ai[idx] : aj[idx]);
        }
    }
    k.expr = extract(c, MeasurementSpec::amp0n(Part::Complex));
    k.expr = k.expr * k.expr.conj();
    k.value = eval_numeric(k.expr, bind_parameters(c, k.angles)).real();
    return k;
}

Hamiltonian parse_hamiltonian(std::string_view text) {
    Hamiltonian h;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string coeff_text, pauli, extra;
        if (!(ls >> coeff_text)) continue;
        auto fail = [&](const std::string &why) {
            throw std::invalid_argument("hamiltonian line " + std::to_string(lineno) + ": " + why);
        };
        if (!(ls >> pauli) || (ls >> extra)) fail("expected \"coeff PAULISTRING\"");
        double c = 0;
        try {
            size_t used = 0;
            c = std::stod(coeff_text, &used);
            if (used != coeff_text.size()) fail("bad coefficient \"" + coeff_text + "\"");
        } catch (const std::logic_error &) {
            fail("bad coefficient \"" + coeff_text + "\"");
        }
        if (!std::isfinite(c)) fail("coefficient is not finite");
        if (pauli.find_first_not_of("IXYZ") != std::string::npos) fail("bad Pauli string \"" + pauli + "\"");
        if (h.n_qubits == 0) h.n_qubits = static_cast<int>(pauli.size());
        if (static_cast<int>(pauli.size()) != h.n_qubits) fail("Pauli string length differs from earlier terms");
        h.terms.push_back({c, pauli});
    }
    return h;
}

std::string format_hamiltonian(const Hamiltonian &h) {
    std::ostringstream out;
    out.precision(17);
    for (const auto &t : h.terms) out << t.coeff << ' ' << t.pauli << '\n';
    return out.str();
}

std::vector<std::pair<PauliTerm, Expr>> hamiltonian_expectation(const Hamiltonian &h, const Circuit &u) {
    if (h.terms.empty()) throw std::invalid_argument("empty Hamiltonian");
    if (h.n_qubits != u.n_qubits()) throw std::invalid_argument("Hamiltonian and circuit qubit counts differ");
    SymState s = run_symbolic(u);
    std::vector<std::pair<PauliTerm, Expr>> out(h.terms.size());
    parallel_for(h.terms.size(), [&](size_t k) {
        out[k] = {h.terms[k], extract(s, MeasurementSpec::pauli_transition(h.terms[k].pauli))};
    });
    return out;
}

double hamiltonian_value(const std::vector<std::pair<PauliTerm, Expr>> &terms, const Bindings &b) {
    double total = 0;
    for (const auto &[t, e] : terms) total += t.coeff * eval_numeric(e, b).real();
    return total;
}

}  // namespace msq
