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

#include "revmix/feistel.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "revmix/errors.h"
#include "revmix/parallel.h"

namespace revmix {

namespace {

uint64_t mask_of(int n) {
    return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

void check_block_width(int n) {
    if (n < 1 || n > 32) {
        throw DimensionError("block width n=" + std::to_string(n) + " outside [1, 32]");
    }
}

void check_blocks(int n, int s) {
    check_block_width(n);
    if (s < 1 || n * s > 64) {
        throw DimensionError("need s >= 1 and n*s <= 64, got n=" + std::to_string(n) + " s=" + std::to_string(s));
    }
}

}  // namespace

BlockState::BlockState(int n, std::vector<uint64_t> b) : n(n), blocks(std::move(b)) {
    check_blocks(n, int(blocks.size()));
    for (uint64_t v : blocks) {
        if (v & ~mask_of(n)) {
            throw DimensionError("block value wider than n=" + std::to_string(n) + " bits");
        }
    }
}

BlockState BlockState::from_word(int n, int s, uint64_t word) {
    check_blocks(n, s);
    std::vector<uint64_t> b(s);
    for (int a = s - 1; a >= 0; a--) {
        b[a] = word & mask_of(n);
        word = n >= 64 ? 0 : word >> n;
    }
    return BlockState(n, std::move(b));
}

uint64_t BlockState::to_word() const {
    uint64_t w = 0;
    for (uint64_t v : blocks) {
        w = (n >= 64 ? 0 : w << n) | v;
    }
    return w;
}

LazyRandomFunction::LazyRandomFunction(int n, uint64_t seed) : seed_(seed), mask_(mask_of(n)) {
    check_block_width(n);
}

LazyRandomFunction lazy_rf(int n, uint64_t seed) {
    return LazyRandomFunction(n, seed);
}

BlockFunction BlockFunction::zero(int n) {
    check_block_width(n);
    BlockFunction f;
    f.kind_ = Kind::toy;
    f.n_ = n;
    f.mask_ = 0;  // every output masked to 0
    return f;
}

BlockFunction BlockFunction::table(int n, std::vector<uint64_t> values) {
    check_block_width(n);
    if (n > 24) {
        throw DimensionError("explicit tables need n <= 24");
    }
    if (values.size() != (size_t{1} << n)) {
        throw DimensionError("table has " + std::to_string(values.size()) + " entries, expected 2^" +
                             std::to_string(n));
    }
    BlockFunction f;
    f.kind_ = Kind::table;
    f.n_ = n;
    f.mask_ = mask_of(n);
    for (uint64_t v : values) {
        if (v & ~f.mask_) {
            throw DimensionError("table value wider than n bits");
        }
    }
    f.table_ = std::move(values);
    return f;
}

BlockFunction BlockFunction::lazy(int n, uint64_t seed) {
    check_block_width(n);
    BlockFunction f;
    f.kind_ = Kind::lazy;
    f.n_ = n;
    f.mask_ = mask_of(n);
    f.seed_ = seed;
    return f;
}

BlockFunction BlockFunction::toy(int n, uint64_t key) {
    check_block_width(n);
    BlockFunction f;
    f.kind_ = Kind::toy;
    f.n_ = n;
    f.mask_ = mask_of(n);
    for (int r = 0; r < 4; r++) {
        f.round_keys_[r] = derive_seed(key, uint64_t(r)) & f.mask_;
    }
    return f;
}

uint64_t BlockFunction::operator()(uint64_t x) const {
    switch (kind_) {
        case Kind::table:
            return table_[x];
        case Kind::lazy:
            return mix64(seed_ ^ mix64(x + 0x632BE59BD9B4E019ULL)) & mask_;
        case Kind::toy: {
            static constexpr int kRot[4] = {1, 3, 5, 7};
            for (int r = 0; r < 4; r++) {
                x = ((x ^ round_keys_[r]) * 0x9E3779B97F4A7C15ULL) & mask_;
                int k = kRot[r] % n_;
                if (k != 0) {
                    x = ((x << k) | (x >> (n_ - k))) & mask_;
                }
            }
            return x & mask_;
        }
    }
    return 0;
}

void ctr_apply(int a, int b, const BlockFunction &f, BlockState &x) {
    const int s = x.s();
    if (a < 1 || a > s || b < 1 || b > s || a == b) {
        throw DimensionError("Ctr needs distinct blocks in [1, " + std::to_string(s) + "], got (" +
                             std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    x.blocks[b - 1] ^= f(x.blocks[a - 1]);
}

BlockState ctr_applied(int a, int b, const BlockFunction &f, BlockState x) {
    ctr_apply(a, b, f, x);
    return x;
}

FunctionBank::FunctionBank(int n, int s) : n_(n), s_(s) {
    check_blocks(n, s);
    phase1_.resize(size_t(s) * size_t(s));
    phase2_.resize(size_t(s) * 2);
}

FunctionBank FunctionBank::zeros(int n, int s) {
    FunctionBank bank(n, s);
    for (auto &f : bank.phase1_) {
        f = BlockFunction::zero(n);
    }
    for (auto &f : bank.phase2_) {
        f = BlockFunction::zero(n);
    }
    return bank;
}

FunctionBank FunctionBank::lazy(int n, int s, uint64_t seed) {
    FunctionBank bank(n, s);
    for (size_t i = 0; i < bank.phase1_.size(); i++) {
        bank.phase1_[i] = BlockFunction::lazy(n, derive_seed(seed, i));
    }
    for (size_t i = 0; i < bank.phase2_.size(); i++) {
        bank.phase2_[i] = BlockFunction::lazy(n, derive_seed(seed, bank.phase1_.size() + i));
    }
    return bank;
}

FunctionBank FunctionBank::toy(int n, int s, uint64_t key) {
    FunctionBank bank(n, s);
    for (size_t i = 0; i < bank.phase1_.size(); i++) {
        bank.phase1_[i] = BlockFunction::toy(n, derive_seed(key, i));
    }
    for (size_t i = 0; i < bank.phase2_.size(); i++) {
        bank.phase2_[i] = BlockFunction::toy(n, derive_seed(key, bank.phase1_.size() + i));
    }
    return bank;
}

size_t FunctionBank::phase1_index(int a, int b) const {
    if (a < 1 || a > s_ || b < 1 || b > s_ || a == b) {
        throw DimensionError("no phase-1 function for (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    return size_t(a - 1) * size_t(s_) + size_t(b - 1);
}

size_t FunctionBank::phase2_index(int a, int which) const {
    if (a < 1 || a >= s_ || a % 2 == 0 || (which != 1 && which != 2)) {
        throw DimensionError("no phase-2 function " + std::to_string(which) + " for a=" + std::to_string(a));
    }
    return size_t(a - 1) * 2 + size_t(which - 1);
}

BlockFunction &FunctionBank::phase1(int a, int b) {
    return phase1_[phase1_index(a, b)];
}
const BlockFunction &FunctionBank::phase1(int a, int b) const {
    return phase1_[phase1_index(a, b)];
}
BlockFunction &FunctionBank::phase2(int a, int which) {
    return phase2_[phase2_index(a, which)];
}
const BlockFunction &FunctionBank::phase2(int a, int which) const {
    return phase2_[phase2_index(a, which)];
}

void FunctionBank::check_complete() const {
    for (const CtrStep &st : pn_schedule(s_)) {
        const BlockFunction &f = st.phase == 1 ? phase1(st.a, st.b) : phase2(std::min(st.a, st.b), st.which);
        if (!f.valid() || f.n() != n_) {
            throw IncompleteMapError("bank is missing the function for Ctr(" + std::to_string(st.a) + ", " +
                                     std::to_string(st.b) + ") in phase " + std::to_string(st.phase));
        }
    }
}

std::vector<CtrStep> pn_schedule(int s) {
    std::vector<CtrStep> out;
    for (int a = 1; a <= s; a++) {
        for (int b = 1; b <= s; b++) {
            if (a != b) {
                out.push_back(CtrStep{a, b, 1, 0});
            }
        }
    }
    // An odd s leaves block s without a partner.
    for (int a = 1; a + 1 <= s; a += 2) {
        out.push_back(CtrStep{a, a + 1, 2, 1});
        out.push_back(CtrStep{a + 1, a, 2, 2});
    }
    return out;
}

int pn_gate_count(int s) {
    return s * (s - 1) + 2 * (s / 2);
}

namespace {

const BlockFunction &step_function(const FunctionBank &bank, const CtrStep &st) {
    return st.phase == 1 ? bank.phase1(st.a, st.b) : bank.phase2(std::min(st.a, st.b), st.which);
}

void check_state(const FunctionBank &bank, const BlockState &x) {
    if (x.n != bank.n() || x.s() != bank.s()) {
        throw DimensionError("state shape does not match the bank");
    }
}

}  // namespace

void pn_phase1(const FunctionBank &bank, BlockState &x) {
    check_state(bank, x);
    const int s = bank.s();
    for (int a = 1; a <= s; a++) {
        const uint64_t control = x.blocks[a - 1];
        for (int b = 1; b <= s; b++) {
            if (a != b) {
                x.blocks[b - 1] ^= bank.phase1(a, b)(control);
            }
        }
    }
}

BlockState pn_apply(const FunctionBank &bank, BlockState x) {
    bank.check_complete();
    check_state(bank, x);
    for (const CtrStep &st : pn_schedule(bank.s())) {
        ctr_apply(st.a, st.b, step_function(bank, st), x);
    }
    return x;
}

BlockState pn_invert(const FunctionBank &bank, BlockState y) {
    bank.check_complete();
    check_state(bank, y);
    auto sched = pn_schedule(bank.s());
    for (auto it = sched.rbegin(); it != sched.rend(); ++it) {
        ctr_apply(it->a, it->b, step_function(bank, *it), y);
    }
    return y;
}

std::string pn_truth_table(const FunctionBank &bank, TruthTableFormat format) {
    const int N = bank.n() * bank.s();
    if (N > 24) {
        throw SizeCapError("truth table export needs n*s <= 24, got " + std::to_string(N));
    }
    std::ostringstream out;
    const int hex_width = (N + 3) / 4;
    auto emit = [&](uint64_t v) {
        if (format == TruthTableFormat::hex) {
            out << std::hex << std::setw(hex_width) << std::setfill('0') << v << std::dec;
        } else {
            for (int i = N - 1; i >= 0; i--) {
                out << char('0' + ((v >> i) & 1));
            }
        }
    };
    for (uint64_t x = 0; x < (uint64_t{1} << N); x++) {
        emit(x);
        out << ' ';
        emit(pn_apply(bank, BlockState::from_word(bank.n(), bank.s(), x)).to_word());
        out << '\n';
    }
    return out.str();
}

std::vector<BlockState> sample_distinct_rows(int n, int s, int q, uint64_t seed) {
    check_blocks(n, s);
    const int N = n * s;
    if (q < 1 || (N < 63 && uint64_t(q) > (uint64_t{1} << N))) {
        throw DimensionError("cannot draw " + std::to_string(q) + " distinct rows from {0,1}^" + std::to_string(N));
    }
    Rng rng(derive_seed(seed, 0x726F7773ULL));
    std::unordered_set<uint64_t> seen;
    std::vector<BlockState> rows;
    const uint64_t mask = mask_of(N);
    while (int(rows.size()) < q) {
        uint64_t w = rng.next() & mask;
        if (seen.insert(w).second) {
            rows.push_back(BlockState::from_word(n, s, w));
        }
    }
    return rows;
}

FunctionBank trial_bank(int n, int s, uint64_t seed, uint64_t trial) {
    return FunctionBank::lazy(n, s, derive_seed(seed, trial));
}

bool phase1_has_collision(const FunctionBank &bank, const std::vector<BlockState> &rows) {
    std::vector<uint64_t> cells;
    cells.reserve(rows.size() * size_t(bank.s()));
    for (BlockState x : rows) {
        pn_phase1(bank, x);
        cells.insert(cells.end(), x.blocks.begin(), x.blocks.end());
    }
    std::sort(cells.begin(), cells.end());
    return std::adjacent_find(cells.begin(), cells.end()) != cells.end();
}

double collision_bound(int n, int s, int q) {
    return double(q) * q * s * s * std::ldexp(1.0, 1 - n);
}

namespace {

double three_sigma(double p, uint64_t trials) {
    return 3.0 * std::sqrt(p * (1.0 - p) / double(trials));
}

void check_trials(uint64_t trials) {
    if (trials < 1) {
        throw DimensionError("need at least one trial");
    }
}

}  // namespace

CollisionStats phase1_collision_experiment(int n, int s, int q, uint64_t trials, uint64_t seed) {
    check_trials(trials);
    CollisionStats st;
    st.n = n;
    st.s = s;
    st.q = q;
    st.trials = trials;
    st.rows = sample_distinct_rows(n, s, q, seed);
    std::vector<uint8_t> failed(trials, 0);
    parallel_for(trials, [&](uint64_t begin, uint64_t end) {
        for (uint64_t i = begin; i < end; i++) {
            failed[i] = phase1_has_collision(trial_bank(n, s, seed, i), st.rows);
        }
    });
    for (uint8_t f : failed) {
        st.failures += f;
    }
    st.frequency = double(st.failures) / double(trials);
    st.bound = collision_bound(n, s, q);
    st.three_sigma = three_sigma(st.frequency, trials);
    return st;
}

UniformityStats uniformity_experiment(int n, int s, int q, uint64_t trials, uint64_t seed, double alpha) {
    check_trials(trials);
    if (n > 16) {
        throw SizeCapError("uniformity histograms need n <= 16");
    }
    UniformityStats st;
    st.n = n;
    st.s = s;
    st.q = q;
    st.trials = trials;
    const auto rows = sample_distinct_rows(n, s, q, seed);
    const size_t cells = size_t(q) * size_t(s);
    const size_t bins = size_t{1} << n;
    const size_t pairs = cells * (cells - 1) / 2;

    // Each chunk fills its own counters; integer sums are order independent.
    std::mutex merge;
    std::vector<uint64_t> hist(cells * bins, 0);
    std::vector<uint64_t> pair_hits(pairs, 0);
    parallel_for(trials, [&](uint64_t begin, uint64_t end) {
        std::vector<uint64_t> h(cells * bins, 0);
        std::vector<uint64_t> ph(pairs, 0);
        std::vector<uint64_t> out(cells);
        for (uint64_t t = begin; t < end; t++) {
            FunctionBank bank = trial_bank(n, s, seed, t);
            for (int i = 0; i < q; i++) {
                BlockState y = pn_apply(bank, rows[i]);
                for (int a = 0; a < s; a++) {
                    out[size_t(i) * s + a] = y.blocks[a];
                }
            }
            size_t p = 0;
            for (size_t c = 0; c < cells; c++) {
                h[c * bins + out[c]]++;
                for (size_t d = c + 1; d < cells; d++, p++) {
                    ph[p] += out[c] == out[d];
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge);
        for (size_t i = 0; i < h.size(); i++) {
            hist[i] += h[i];
        }
        for (size_t i = 0; i < ph.size(); i++) {
            pair_hits[i] += ph[i];
        }
    });

    const double expected = double(trials) / double(bins);
    boost::math::chi_squared dist(double(bins - 1));
    double min_p = 1.0;
    for (size_t c = 0; c < cells; c++) {
        double chi = 0.0;
        for (size_t v = 0; v < bins; v++) {
            double d = double(hist[c * bins + v]) - expected;
            chi += d * d / expected;
        }
        double p = boost::math::cdf(boost::math::complement(dist, chi));
        st.chi_square.push_back(chi);
        st.p_value.push_back(p);
        min_p = std::min(min_p, p);
    }
    st.min_p_bonferroni = std::min(1.0, min_p * double(cells));
    const double p0 = std::ldexp(1.0, -n);
    st.pair_collision_ceiling = p0 + three_sigma(p0, trials);
    for (uint64_t hits : pair_hits) {
        st.max_pair_collision = std::max(st.max_pair_collision, double(hits) / double(trials));
    }
    st.uniform = st.min_p_bonferroni > alpha && st.max_pair_collision <= st.pair_collision_ceiling;
    return st;
}

}  // namespace revmix
