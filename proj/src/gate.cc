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

#include "revmix/gate.h"

#include <algorithm>
#include <stdexcept>

#include "revmix/errors.h"

namespace revmix {

namespace {

constexpr uint32_t kFactorial[9] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

// Bit of local position p (1-based, 1 is most significant) in local value v.
int local_bit(uint8_t v, int p) {
    return (v >> (3 - p)) & 1;
}

}  // namespace

bool is_even_perm(const Perm8 &p) {
    int inversions = 0;
    for (int i = 0; i < 8; i++) {
        for (int j = i + 1; j < 8; j++) {
            inversions += p[i] > p[j];
        }
    }
    return inversions % 2 == 0;
}

uint32_t perm_rank(const Perm8 &p) {
    uint32_t rank = 0;
    for (int i = 0; i < 8; i++) {
        uint32_t smaller = 0;
        for (int j = i + 1; j < 8; j++) {
            smaller += p[j] < p[i];
        }
        rank += smaller * kFactorial[7 - i];
    }
    return rank;
}

Perm8 perm_unrank(uint32_t rank) {
    if (rank >= 40320) {
        throw std::out_of_range("permutation rank out of range");
    }
    std::vector<uint8_t> pool = {0, 1, 2, 3, 4, 5, 6, 7};
    Perm8 p{};
    for (int i = 0; i < 8; i++) {
        uint32_t f = kFactorial[7 - i];
        uint32_t idx = rank / f;
        rank %= f;
        p[i] = pool[idx];
        pool.erase(pool.begin() + idx);
    }
    return p;
}

Gate3::Gate3() : perm_{0, 1, 2, 3, 4, 5, 6, 7}, even_(true) {
}

Gate3::Gate3(const Perm8 &perm) : perm_(perm) {
    uint8_t seen = 0;
    for (uint8_t v : perm) {
        if (v > 7 || (seen >> v) & 1) {
            throw std::invalid_argument("gate table is not a bijection on 0..7");
        }
        seen |= uint8_t(1u << v);
    }
    even_ = is_even_perm(perm);
}

Gate3 Gate3::swap_positions(int p, int q) {
    if (p < 1 || p > 3 || q < 1 || q > 3 || p == q) {
        throw std::invalid_argument("swap positions must be two distinct values in 1..3");
    }
    Perm8 t{};
    for (uint8_t v = 0; v < 8; v++) {
        int bp = local_bit(v, p);
        int bq = local_bit(v, q);
        uint8_t w = v & uint8_t(~((1u << (3 - p)) | (1u << (3 - q))));
        w |= uint8_t(bq << (3 - p)) | uint8_t(bp << (3 - q));
        t[v] = w;
    }
    return Gate3(t);
}

bool Gate3::is_identity() const {
    return *this == Gate3();
}

Gate3 Gate3::inverse() const {
    Perm8 inv{};
    for (uint8_t v = 0; v < 8; v++) {
        inv[perm_[v]] = v;
    }
    return Gate3(inv);
}

Gate3 Gate3::then(const Gate3 &next) const {
    Perm8 out{};
    for (uint8_t v = 0; v < 8; v++) {
        out[v] = next.perm_[perm_[v]];
    }
    return Gate3(out);
}

std::string Gate3::to_string() const {
    std::string s = "[";
    for (int v = 0; v < 8; v++) {
        if (v) {
            s += ",";
        }
        s += std::to_string(perm_[v]);
    }
    return s + "]";
}

Gate3 Des2Form::gate() const {
    if (target < 1 || target > 3 || f > 15) {
        throw std::invalid_argument("DES[2] form needs target in 1..3 and a 4-bit truth table");
    }
    Perm8 t{};
    for (uint8_t v = 0; v < 8; v++) {
        int x = 0;
        for (int p = 1; p <= 3; p++) {
            if (p != target) {
                x = (x << 1) | local_bit(v, p);
            }
        }
        t[v] = uint8_t(v ^ (((f >> x) & 1) << (3 - target)));
    }
    return Gate3(t);
}

std::optional<Des2Form> classify_des2(const Gate3 &g) {
    for (int target = 1; target <= 3; target++) {
        uint8_t flip = uint8_t(1u << (3 - target));
        bool ok = true;
        uint8_t f = 0;
        for (uint8_t v = 0; v < 8 && ok; v++) {
            uint8_t diff = g(v) ^ v;
            if (diff != 0 && diff != flip) {
                ok = false;
                break;
            }
            int x = 0;
            for (int p = 1; p <= 3; p++) {
                if (p != target) {
                    x = (x << 1) | local_bit(v, p);
                }
            }
            if (diff) {
                f |= uint8_t(1u << x);
            }
        }
        if (ok) {
            return Des2Form{target, f};
        }
    }
    return std::nullopt;
}

const std::vector<Des2Form> &des2_pairs() {
    static const std::vector<Des2Form> pairs = [] {
        std::vector<Des2Form> out;
        for (int t = 1; t <= 3; t++) {
            for (int f = 0; f < 16; f++) {
                out.push_back(Des2Form{t, uint8_t(f)});
            }
        }
        return out;
    }();
    return pairs;
}

const std::vector<Gate3> &des2_pair_gates() {
    static const std::vector<Gate3> gates = [] {
        std::vector<Gate3> out;
        for (const auto &p : des2_pairs()) {
            out.push_back(p.gate());
        }
        return out;
    }();
    return gates;
}

std::string to_string(GateDist dist) {
    return dist == GateDist::alternating ? "alt" : "des2";
}

GateDist parse_gate_dist(const std::string &text) {
    if (text == "alt" || text == "alternating") {
        return GateDist::alternating;
    }
    if (text == "des2") {
        return GateDist::des2;
    }
    throw ParseError("unknown gate distribution '" + text + "'", 0, "dist");
}

Gate3 sample_gate_alternating(Rng &rng) {
    Perm8 p{0, 1, 2, 3, 4, 5, 6, 7};
    for (int i = 7; i > 0; i--) {
        std::swap(p[i], p[rng.uniform(i + 1)]);
    }
    if (!is_even_perm(p)) {
        std::swap(p[6], p[7]);
    }
    return Gate3(p);
}

Gate3 sample_gate_des2(Rng &rng) {
    return des2_pair_gates()[rng.uniform(48)];
}

Gate3 sample_gate(GateDist dist, Rng &rng) {
    return dist == GateDist::alternating ? sample_gate_alternating(rng) : sample_gate_des2(rng);
}

}  // namespace revmix
