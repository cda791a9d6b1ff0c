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

// Brute-force oracles shared by the tests and the acceptance binary. They
// enumerate group elements and gates directly and share no code with the
// operator engine.

#ifndef REVMIX_TESTS_ORACLES_H
#define REVMIX_TESTS_ORACLES_H

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "revmix/dense.h"
#include "revmix/feistel.h"

namespace revmix::oracle {

using Table = std::array<uint8_t, 8>;

/// All 20160 even permutations of 0..7, by sign of the inversion count.
inline const std::vector<Table> &alternating8() {
    static const std::vector<Table> all = [] {
        std::vector<Table> out;
        Table p;
        std::iota(p.begin(), p.end(), 0);
        do {
            int inv = 0;
            for (int i = 0; i < 8; i++) {
                for (int j = i + 1; j < 8; j++) {
                    inv += p[i] > p[j];
                }
            }
            if (inv % 2 == 0) {
                out.push_back(p);
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return all;
}

/// The 48 DES[2] tables in (target, f) order, from bit arithmetic.
inline std::vector<Table> des2_tables() {
    std::vector<Table> out;
    for (int target = 1; target <= 3; target++) {
        for (int f = 0; f < 16; f++) {
            Table p{};
            for (int v = 0; v < 8; v++) {
                int b[3] = {(v >> 2) & 1, (v >> 1) & 1, v & 1};
                int o[2], j = 0;
                for (int i = 0; i < 3; i++) {
                    if (i != target - 1) {
                        o[j++] = b[i];
                    }
                }
                b[target - 1] ^= (f >> (2 * o[0] + o[1])) & 1;
                p[v] = uint8_t(4 * b[0] + 2 * b[1] + b[2]);
            }
            out.push_back(p);
        }
    }
    return out;
}

/// Bit of wire a (1-based, wire 1 most significant) in an n-bit row.
inline int wire_bit(uint64_t row, int n, int a) {
    return int((row >> (n - a)) & 1);
}

/// Applies a table at site {s0, s1, s2} to one n-bit row.
inline uint64_t apply_row(const Table &t, const std::array<int, 3> &s, int n, uint64_t row) {
    int v = 4 * wire_bit(row, n, s[0]) + 2 * wire_bit(row, n, s[1]) + wire_bit(row, n, s[2]);
    int w = t[v];
    for (int i = 0; i < 3; i++) {
        uint64_t bit = uint64_t{1} << (n - s[i]);
        row = (row & ~bit) | (((w >> (2 - i)) & 1) ? bit : 0);
    }
    return row;
}

/// Transition matrix of "draw a table uniformly from `tables`, apply it at
/// `site` to every row". States are k rows of n bits, row 1 most significant.
inline DenseMatrix site_matrix(const std::vector<Table> &tables, const std::array<int, 3> &site, int n, int k) {
    const uint64_t dim = uint64_t{1} << (n * k);
    const uint64_t mask = (uint64_t{1} << n) - 1;
    DenseMatrix m(dim);
    const double w = 1.0 / double(tables.size());
    for (uint64_t x = 0; x < dim; x++) {
        for (const Table &t : tables) {
            uint64_t y = 0;
            for (int i = 0; i < k; i++) {
                uint64_t row = (x >> ((k - 1 - i) * n)) & mask;
                y = (y << n) | apply_row(t, site, n, row);
            }
            m(x, y) += w;
        }
    }
    return m;
}

/// Resample the given wires of every row independently and uniformly.
inline DenseMatrix resample_matrix(const std::vector<int> &wires, int n, int k) {
    const uint64_t dim = uint64_t{1} << (n * k);
    uint64_t free_mask = 0;
    for (int i = 0; i < k; i++) {
        for (int a : wires) {
            free_mask |= uint64_t{1} << ((k - 1 - i) * n + (n - a));
        }
    }
    const double p = 1.0 / double(uint64_t{1} << (wires.size() * k));
    DenseMatrix m(dim);
    for (uint64_t x = 0; x < dim; x++) {
        for (uint64_t y = 0; y < dim; y++) {
            if ((x & ~free_mask) == (y & ~free_mask)) {
                m(x, y) = p;
            }
        }
    }
    return m;
}

/// Number of even permutations of 0..7 sending xs[i] to ys[i] for all i.
inline uint64_t count_extensions(const std::vector<int> &xs, const std::vector<int> &ys) {
    uint64_t c = 0;
    for (const Table &p : alternating8()) {
        bool ok = true;
        for (size_t i = 0; i < xs.size() && ok; i++) {
            ok = p[xs[i]] == ys[i];
        }
        c += ok;
    }
    return c;
}

/// Exact phase-1 collision probability at (n, s) = (2, 2) for the given rows,
/// over all 256 * 256 choices of the two functions {0,1}^2 -> {0,1}^2.
inline double phase1_failure_two_two_two(const std::vector<BlockState> &rows) {
    auto f = [](int table, uint64_t x) { return uint64_t((table >> (2 * x)) & 3); };
    uint64_t failures = 0;
    for (int f12 = 0; f12 < 256; f12++) {
        for (int f21 = 0; f21 < 256; f21++) {
            std::vector<uint64_t> cells;
            for (const auto &r : rows) {
                uint64_t x1 = r.blocks[0], x2 = r.blocks[1];
                x2 ^= f(f12, x1);
                x1 ^= f(f21, x2);
                cells.push_back(x1);
                cells.push_back(x2);
            }
            std::sort(cells.begin(), cells.end());
            failures += std::adjacent_find(cells.begin(), cells.end()) != cells.end();
        }
    }
    return double(failures) / 65536.0;
}

}  // namespace revmix::oracle

#endif
