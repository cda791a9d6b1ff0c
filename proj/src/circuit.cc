// Copyright 2026 The revmix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revmix/circuit.h"

#include "revmix/errors.h"

namespace revmix {

void Placement::validate(int n) const {
    if (!(1 <= site[0] && site[0] < site[1] && site[1] < site[2] && site[2] <= n)) {
        throw PlacementError("site " + to_string() + " is not ascending within [1, " + std::to_string(n) + "]");
    }
}

std::string Placement::to_string() const {
    return "{" + std::to_string(site[0]) + "," + std::to_string(site[1]) + "," + std::to_string(site[2]) + "}";
}

BitString apply_gate(const Gate3 &g, const Placement &s, const BitString &x) {
    s.validate(x.size());
    return BitString(x.size(), apply_gate_word(g, s, x.size(), x.word()));
}

std::string to_string(Architecture arch) {
    switch (arch) {
        case Architecture::generic:
            return "generic";
        case Architecture::nearest_neighbor:
            return "nn";
        case Architecture::brickwork:
            return "brickwork";
    }
    return "?";
}

Architecture parse_architecture(const std::string &text) {
    if (text == "generic") {
        return Architecture::generic;
    }
    if (text == "nn") {
        return Architecture::nearest_neighbor;
    }
    if (text == "brickwork") {
        return Architecture::brickwork;
    }
    throw ParseError("unknown architecture '" + text + "'", 0, "arch");
}

std::vector<Placement> brickwork_sites(int n, int parity) {
    if (n < 3) {
        throw ArchitectureError("brickwork needs n >= 3");
    }
    if (parity != 0 && parity != 1) {
        throw ArchitectureError("brickwork parity must be 0 or 1");
    }
    std::vector<Placement> out;
    for (int a = 1 + parity; a + 2 <= n; a += 3) {
        out.push_back(Placement::nn(a));
    }
    return out;
}

bool is_circuit_gate(const Gate3 &g) {
    return g.is_even() || classify_des2(g).has_value();
}

Circuit::Circuit(int n, Architecture arch) : n_(n), arch_(arch) {
    if (n < 3 || n > 64) {
        throw ArchitectureError("circuits need 3 <= n <= 64, got " + std::to_string(n));
    }
}

void Circuit::check_gate(const Gate3 &g, const Placement &s) const {
    s.validate(n_);
    if (arch_ != Architecture::generic && !s.is_nearest_neighbor()) {
        throw PlacementError("site " + s.to_string() + " is not nearest-neighbor");
    }
    if (!is_circuit_gate(g)) {
        throw ParityError("gate " + g.to_string() + " is odd and not of DES[2] form");
    }
}

void Circuit::add_gate(const Gate3 &g, const Placement &s) {
    if (arch_ == Architecture::brickwork) {
        throw ArchitectureError("brickwork circuits are built from layers");
    }
    check_gate(g, s);
    gates_.push_back(PlacedGate{g, s});
}

void Circuit::add_layer(const BrickLayer &layer) {
    if (arch_ != Architecture::brickwork) {
        throw ArchitectureError("layers are only allowed in brickwork circuits");
    }
    auto sites = brickwork_sites(n_, layer.parity);
    if (sites.size() != layer.gates.size()) {
        throw ArchitectureError("layer of parity " + std::to_string(layer.parity) + " needs " +
                                std::to_string(sites.size()) + " gates, got " + std::to_string(layer.gates.size()));
    }
    for (size_t j = 0; j < sites.size(); j++) {
        if (!(layer.gates[j].site == sites[j])) {
            throw PlacementError("layer gate " + std::to_string(j + 1) + " must sit at " + sites[j].to_string());
        }
        check_gate(layer.gates[j].gate, layer.gates[j].site);
    }
    layers_.push_back(layer);
    gates_.insert(gates_.end(), layer.gates.begin(), layer.gates.end());
}

uint64_t Circuit::evaluate_word(uint64_t x) const {
    for (const auto &pg : gates_) {
        x = apply_gate_word(pg.gate, pg.site, n_, x);
    }
    return x;
}

uint64_t Circuit::invert_word(uint64_t y) const {
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        y = apply_gate_word(it->gate.inverse(), it->site, n_, y);
    }
    return y;
}

BitString Circuit::evaluate(const BitString &x) const {
    if (x.size() != n_) {
        throw DimensionError("input has " + std::to_string(x.size()) + " wires, circuit has " + std::to_string(n_));
    }
    return BitString(n_, evaluate_word(x.word()));
}

BitString Circuit::invert(const BitString &y) const {
    if (y.size() != n_) {
        throw DimensionError("input has " + std::to_string(y.size()) + " wires, circuit has " + std::to_string(n_));
    }
    return BitString(n_, invert_word(y.word()));
}

BrickLayer sample_layer_brickwork(int n, GateDist dist, Rng &rng) {
    if (n < 3) {
        throw ArchitectureError("brickwork needs n >= 3");
    }
    BrickLayer layer;
    layer.parity = int(rng.uniform(2));
    for (const auto &s : brickwork_sites(n, layer.parity)) {
        layer.gates.push_back(PlacedGate{sample_gate(dist, rng), s});
    }
    return layer;
}

Circuit sample_circuit(Architecture arch, GateDist dist, int n, int t, Rng &rng) {
    if (t < 0) {
        throw ArchitectureError("step count must be nonnegative");
    }
    Circuit c(n, arch);
    if (arch == Architecture::brickwork) {
        for (int i = 0; i < t; i++) {
            c.add_layer(sample_layer_brickwork(n, dist, rng));
        }
        return c;
    }
    std::vector<Placement> sites;
    if (arch == Architecture::generic) {
        for (int a = 1; a <= n; a++) {
            for (int b = a + 1; b <= n; b++) {
                for (int d = b + 1; d <= n; d++) {
                    sites.push_back(Placement{{a, b, d}});
                }
            }
        }
    } else {
        for (int a = 1; a + 2 <= n; a++) {
            sites.push_back(Placement::nn(a));
        }
    }
    for (int i = 0; i < t; i++) {
        const Placement &s = sites[rng.uniform(sites.size())];
        c.add_gate(sample_gate(dist, rng), s);
    }
    return c;
}

}  // namespace revmix
