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

#ifndef REVMIX_FEISTEL_H
#define REVMIX_FEISTEL_H

#include <cstdint>
#include <string>
#include <vector>

#include "revmix/rng.h"

namespace revmix {

/// s blocks of n bits. blocks[0] is block 1. As an N = n*s bit word, block 1
/// is the most significant.
struct BlockState {
    int n = 0;
    std::vector<uint64_t> blocks;

    BlockState() = default;
    BlockState(int n, std::vector<uint64_t> blocks);

    static BlockState from_word(int n, int s, uint64_t word);
    uint64_t to_word() const;
    int s() const {
        return int(blocks.size());
    }
    bool operator==(const BlockState &o) const {
        return n == o.n && blocks == o.blocks;
    }
};

/// Random function {0,1}^n -> {0,1}^n whose output is a pure hash of
/// (seed, x). Repeated queries agree, and queries may run in any order or
/// concurrently.
class LazyRandomFunction {
   public:
    LazyRandomFunction(int n, uint64_t seed);

    uint64_t query(uint64_t x) const {
        return mix64(seed_ ^ mix64(x + 0x632BE59BD9B4E019ULL)) & mask_;
    }
    uint64_t seed() const {
        return seed_;
    }

   private:
    uint64_t seed_;
    uint64_t mask_;
};

LazyRandomFunction lazy_rf(int n, uint64_t seed);

/// One block function: an explicit table, a lazy random function, or the
/// keyed toy family (four rounds of xor key, odd multiply, rotate). The toy
/// family is scaffolding for tests and is not a cryptographic primitive.
class BlockFunction {
   public:
    enum class Kind { table, lazy, toy };

    BlockFunction() = default;
    static BlockFunction zero(int n);
    static BlockFunction table(int n, std::vector<uint64_t> values);
    static BlockFunction lazy(int n, uint64_t seed);
    static BlockFunction toy(int n, uint64_t key);

    uint64_t operator()(uint64_t x) const;
    Kind kind() const {
        return kind_;
    }
    int n() const {
        return n_;
    }
    bool valid() const {
        return n_ > 0;
    }

   private:
    Kind kind_ = Kind::table;
    int n_ = 0;
    uint64_t mask_ = 0;
    uint64_t seed_ = 0;
    std::vector<uint64_t> table_;
    uint64_t round_keys_[4] = {0, 0, 0, 0};
};

/// x_b ^= f(x_a), with 1-based block indices. Involution for fixed (a, b, f).
void ctr_apply(int a, int b, const BlockFunction &f, BlockState &x);
BlockState ctr_applied(int a, int b, const BlockFunction &f, BlockState x);

/// Functions for the two-phase network over s blocks. Phase 1 has one
/// function per ordered pair (a, b), a != b. Phase 2 has a pair (f1, f2) per
/// odd a < s.
class FunctionBank {
   public:
    FunctionBank(int n, int s);

    static FunctionBank zeros(int n, int s);
    static FunctionBank lazy(int n, int s, uint64_t seed);
    static FunctionBank toy(int n, int s, uint64_t key);

    int n() const {
        return n_;
    }
    int s() const {
        return s_;
    }

    BlockFunction &phase1(int a, int b);
    const BlockFunction &phase1(int a, int b) const;
    BlockFunction &phase2(int a, int which);
    const BlockFunction &phase2(int a, int which) const;

    /// Throws IncompleteMapError if any slot is unset or has the wrong width.
    void check_complete() const;

   private:
    size_t phase1_index(int a, int b) const;
    size_t phase2_index(int a, int which) const;

    int n_;
    int s_;
    std::vector<BlockFunction> phase1_;
    std::vector<BlockFunction> phase2_;
};

/// Ordered list of Ctr applications making up the network.
struct CtrStep {
    int a;
    int b;
    int phase;
    int which;  // phase 2 only: 1 or 2
};
std::vector<CtrStep> pn_schedule(int s);

/// s(s-1) + 2*floor(s/2).
int pn_gate_count(int s);

void pn_phase1(const FunctionBank &bank, BlockState &x);
BlockState pn_apply(const FunctionBank &bank, BlockState x);
BlockState pn_invert(const FunctionBank &bank, BlockState y);

enum class TruthTableFormat { hex, binary };

/// One "x y" line per input in ascending x over all 2^(n*s) inputs.
std::string pn_truth_table(const FunctionBank &bank, TruthTableFormat format);

/// q distinct rows of {0,1}^(n*s) drawn from seed.
std::vector<BlockState> sample_distinct_rows(int n, int s, int q, uint64_t seed);

/// Bank used by trial i of an experiment seeded with seed.
FunctionBank trial_bank(int n, int s, uint64_t seed, uint64_t trial);

/// True if two phase-1 cells (i, a) != (j, b) hold equal blocks.
bool phase1_has_collision(const FunctionBank &bank, const std::vector<BlockState> &rows);

struct CollisionStats {
    int n = 0;
    int s = 0;
    int q = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double frequency = 0.0;
    double bound = 0.0;
    double three_sigma = 0.0;
    std::vector<BlockState> rows;
};

/// q^2 s^2 / 2^(n-1).
double collision_bound(int n, int s, int q);

CollisionStats phase1_collision_experiment(int n, int s, int q, uint64_t trials, uint64_t seed);

struct UniformityStats {
    int n = 0;
    int s = 0;
    int q = 0;
    uint64_t trials = 0;
    /// Per cell (i, a), row-major over rows then blocks.
    std::vector<double> chi_square;
    std::vector<double> p_value;
    /// Smallest p-value times the number of cells, capped at 1.
    double min_p_bonferroni = 1.0;
    /// Collision rate of each unordered cell pair and its uniform-model ceiling.
    double max_pair_collision = 0.0;
    double pair_collision_ceiling = 0.0;
    bool uniform = false;
};

/// Applies both phases with fresh lazy functions per trial. alpha is the
/// family-wise significance level of the chi-square tests.
UniformityStats uniformity_experiment(int n, int s, int q, uint64_t trials, uint64_t seed, double alpha = 1e-3);

}  // namespace revmix

#endif
