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

#ifndef REVMIX_GATE_H
#define REVMIX_GATE_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revmix/rng.h"

namespace revmix {

using Perm8 = std::array<uint8_t, 8>;

/// Sign of a permutation of {0..7}: true when even.
bool is_even_perm(const Perm8 &p);

/// Lehmer rank in [0, 40320) and its inverse.
uint32_t perm_rank(const Perm8 &p);
Perm8 perm_unrank(uint32_t rank);

/// A reversible gate on three wires: a permutation of the local values 0..7.
/// The local value of bits (x1, x2, x3) is 4*x1 + 2*x2 + x3.
class Gate3 {
   public:
    /// Identity gate.
    Gate3();
    /// Throws std::invalid_argument if `perm` is not a bijection on 0..7.
    explicit Gate3(const Perm8 &perm);

    static Gate3 identity() {
        return Gate3();
    }
    /// Gate exchanging local bit positions p and q (1-based, p != q).
    static Gate3 swap_positions(int p, int q);

    uint8_t operator()(uint8_t v) const {
        return perm_[v];
    }
    const Perm8 &perm() const {
        return perm_;
    }
    bool is_even() const {
        return even_;
    }
    bool is_identity() const;
    uint32_t rank() const {
        return perm_rank(perm_);
    }

    Gate3 inverse() const;
    /// The gate applying *this first and `next` second.
    Gate3 then(const Gate3 &next) const;

    std::string to_string() const;

    bool operator==(const Gate3 &other) const {
        return perm_ == other.perm_;
    }

   private:
    Perm8 perm_;
    bool even_;
};

/// A DES[2] gate: flips local position `target` (1..3) by f applied to the other
/// two local bits, read in ascending position order as a 2-bit value. Bit x of
/// `f` is f(x); AND is 0b1000.
struct Des2Form {
    int target;
    uint8_t f;

    Gate3 gate() const;
    bool operator==(const Des2Form &other) const = default;
};

/// A witness that g has DES[2] form, with the least target among witnesses.
std::optional<Des2Form> classify_des2(const Gate3 &g);

/// The 48 (target, f) pairs in order target-major, f-minor.
const std::vector<Des2Form> &des2_pairs();
/// The gates of des2_pairs(), in the same order.
const std::vector<Gate3> &des2_pair_gates();

enum class GateDist { alternating, des2 };

std::string to_string(GateDist dist);
GateDist parse_gate_dist(const std::string &text);

/// Uniform over the 20160 even permutations.
Gate3 sample_gate_alternating(Rng &rng);
/// Uniform over the 48 (target, f) pairs; the identity has weight 3/48.
Gate3 sample_gate_des2(Rng &rng);
Gate3 sample_gate(GateDist dist, Rng &rng);

}  // namespace revmix

#endif
