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

#ifndef REVMIX_CIRCUIT_H
#define REVMIX_CIRCUIT_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "revmix/bits.h"
#include "revmix/gate.h"
#include "revmix/rng.h"

namespace revmix {

/// Three strictly ascending 1-based wire indices.
struct Placement {
    std::array<int, 3> site;

    /// Throws PlacementError unless 1 <= s1 < s2 < s3 <= n.
    void validate(int n) const;
    bool is_nearest_neighbor() const {
        return site[1] == site[0] + 1 && site[2] == site[0] + 2;
    }
    static Placement nn(int anchor) {
        return Placement{{anchor, anchor + 1, anchor + 2}};
    }
    std::string to_string() const;
    bool operator==(const Placement &other) const = default;
};

/// Applies g at site s to an n-bit word (wire 1 is the top bit). No range checks.
inline uint64_t apply_gate_word(const Gate3 &g, const Placement &s, int n, uint64_t x) {
    int sh0 = n - s.site[0], sh1 = n - s.site[1], sh2 = n - s.site[2];
    uint8_t v = uint8_t((((x >> sh0) & 1) << 2) | (((x >> sh1) & 1) << 1) | ((x >> sh2) & 1));
    uint8_t w = g(v);
    uint64_t cleared = x & ~((uint64_t{1} << sh0) | (uint64_t{1} << sh1) | (uint64_t{1} << sh2));
    return cleared | (uint64_t((w >> 2) & 1) << sh0) | (uint64_t((w >> 1) & 1) << sh1) | (uint64_t(w & 1) << sh2);
}

BitString apply_gate(const Gate3 &g, const Placement &s, const BitString &x);

enum class Architecture { generic, nearest_neighbor, brickwork };

std::string to_string(Architecture arch);
Architecture parse_architecture(const std::string &text);

struct PlacedGate {
    Gate3 gate;
    Placement site;
    bool operator==(const PlacedGate &other) const = default;
};

struct BrickLayer {
    int parity;
    std::vector<PlacedGate> gates;
    bool operator==(const BrickLayer &other) const = default;
};

/// Sites of a brickwork layer: {3j-2, 3j-1, 3j} for parity 0, shifted by one for parity 1.
std::vector<Placement> brickwork_sites(int n, int parity);

/// True for gates allowed in circuits: even permutations and DES[2] gates.
/// On three wires an odd-weight DES[2] gate such as Toffoli is an odd
/// permutation; embedded in four or more wires every 3-bit gate is even.
bool is_circuit_gate(const Gate3 &g);

class Circuit {
   public:
    Circuit(int n, Architecture arch);

    int n() const {
        return n_;
    }
    Architecture arch() const {
        return arch_;
    }
    /// All gates in application order. For brickwork, the concatenation of the layers.
    const std::vector<PlacedGate> &gates() const {
        return gates_;
    }
    const std::vector<BrickLayer> &layers() const {
        return layers_;
    }

    /// Appends a gate. Not allowed for brickwork circuits.
    void add_gate(const Gate3 &g, const Placement &s);
    /// Appends a layer. Only for brickwork circuits; sites must match the parity.
    void add_layer(const BrickLayer &layer);

    uint64_t evaluate_word(uint64_t x) const;
    uint64_t invert_word(uint64_t y) const;
    BitString evaluate(const BitString &x) const;
    BitString invert(const BitString &y) const;

    bool operator==(const Circuit &other) const = default;

   private:
    void check_gate(const Gate3 &g, const Placement &s) const;

    int n_;
    Architecture arch_;
    std::vector<PlacedGate> gates_;
    std::vector<BrickLayer> layers_;
};

/// A brickwork layer with a uniformly random parity.
BrickLayer sample_layer_brickwork(int n, GateDist dist, Rng &rng);

/// t gates (or t layers for brickwork) drawn independently.
Circuit sample_circuit(Architecture arch, GateDist dist, int n, int t, Rng &rng);

}  // namespace revmix

#endif
