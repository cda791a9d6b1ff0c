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

#include "revmix/tuple_state.h"

#include <atomic>
#include <cmath>

#include "revmix/errors.h"

namespace revmix {

namespace {
std::atomic<uint64_t> g_state_cap{uint64_t{1} << 16};
std::atomic<uint64_t> g_dense_cap{uint64_t{1} << 10};
}  // namespace

void TupleShape::validate() const {
    if (n < 1 || k < 1 || n * k > 62) {
        throw DimensionError("invalid tuple shape n=" + std::to_string(n) + ", k=" + std::to_string(k));
    }
}

uint64_t state_cap() {
    return g_state_cap.load();
}
void set_state_cap(uint64_t cap) {
    g_state_cap.store(cap);
}
uint64_t dense_cap() {
    return g_dense_cap.load();
}
void set_dense_cap(uint64_t cap) {
    g_dense_cap.store(cap);
}

void check_cap(const TupleShape &shape, uint64_t cap, const std::string &what) {
    shape.validate();
    if (shape.dim() > cap) {
        throw SizeCapError(what + ": 2^" + std::to_string(shape.n * shape.k) + " states exceed the cap of " +
                           std::to_string(cap));
    }
}

TupleState::TupleState(int n, std::vector<uint64_t> rows) : n_(n), rows_(std::move(rows)) {
    TupleShape{n_, int(rows_.size())}.validate();
    for (uint64_t r : rows_) {
        if (r & ~low_mask(n_)) {
            throw DimensionError("row value wider than n=" + std::to_string(n_));
        }
    }
}

TupleState TupleState::from_index(const TupleShape &shape, uint64_t index) {
    shape.validate();
    if (index >= shape.dim()) {
        throw DimensionError("state index out of range");
    }
    std::vector<uint64_t> rows(shape.k);
    for (int i = 1; i <= shape.k; i++) {
        rows[i - 1] = tuple_row(index, shape.n, shape.k, i);
    }
    return TupleState(shape.n, rows);
}

TupleState TupleState::from_strings(const std::vector<std::string> &rows) {
    if (rows.empty()) {
        throw DimensionError("a tuple needs at least one row");
    }
    std::vector<uint64_t> words;
    int n = int(rows[0].size());
    for (const auto &r : rows) {
        BitString b = BitString::from_string(r);
        if (b.size() != n) {
            throw DimensionError("rows of different widths");
        }
        words.push_back(b.word());
    }
    return TupleState(n, words);
}

uint64_t TupleState::index() const {
    uint64_t x = 0;
    for (uint64_t r : rows_) {
        x = (x << n_) | r;
    }
    return x;
}

FunctionVector::FunctionVector(const TupleShape &s, double fill) : shape(s) {
    check_cap(s, state_cap(), "function vector");
    values.assign(s.dim(), fill);
}

FunctionVector FunctionVector::basis(const TupleShape &s, uint64_t index) {
    FunctionVector f(s);
    f.values.at(index) = 1.0;
    return f;
}

void check_same_shape(const TupleShape &a, const TupleShape &b) {
    if (!(a == b)) {
        throw DimensionError("shape mismatch: (n,k)=(" + std::to_string(a.n) + "," + std::to_string(a.k) + ") vs (" +
                             std::to_string(b.n) + "," + std::to_string(b.k) + ")");
    }
}

double inner(const FunctionVector &f, const FunctionVector &g) {
    check_same_shape(f.shape, g.shape);
    double s = 0;
    for (uint64_t i = 0; i < f.size(); i++) {
        s += f[i] * g[i];
    }
    return s / double(f.size());
}

double norm(const FunctionVector &f) {
    return std::sqrt(inner(f, f));
}

double max_abs_diff(const FunctionVector &f, const FunctionVector &g) {
    check_same_shape(f.shape, g.shape);
    double m = 0;
    for (uint64_t i = 0; i < f.size(); i++) {
        m = std::max(m, std::abs(f[i] - g[i]));
    }
    return m;
}

std::vector<int> FourierIndex::support_union() const {
    uint64_t mask = 0;
    for (const auto &s : sets) {
        for (int a : s) {
            mask |= uint64_t{1} << a;
        }
    }
    std::vector<int> out;
    for (int a = 0; a < 64; a++) {
        if ((mask >> a) & 1) {
            out.push_back(a);
        }
    }
    return out;
}

std::string FourierIndex::to_string() const {
    std::string s = "chi(";
    for (size_t i = 0; i < sets.size(); i++) {
        if (i) {
            s += ";";
        }
        s += "{";
        for (size_t j = 0; j < sets[i].size(); j++) {
            if (j) {
                s += ",";
            }
            s += std::to_string(sets[i][j]);
        }
        s += "}";
    }
    return s + ")";
}

FunctionVector chi_vector(const FourierIndex &idx, int n, int k) {
    TupleShape shape{n, k};
    if (int(idx.sets.size()) != k) {
        throw DimensionError("Fourier index has " + std::to_string(idx.sets.size()) + " sets, expected k=" +
                             std::to_string(k));
    }
    // Mask over the full nk-bit index selecting the character's coordinates.
    uint64_t mask = 0;
    for (int i = 1; i <= k; i++) {
        for (int a : idx.sets[i - 1]) {
            if (a < 1 || a > n) {
                throw PlacementError("Fourier set element " + std::to_string(a) + " outside [1, n]");
            }
            mask |= uint64_t{1} << ((k - i) * n + (n - a));
        }
    }
    FunctionVector f(shape);
    for (uint64_t x = 0; x < f.size(); x++) {
        f[x] = (__builtin_popcountll(x & mask) & 1) ? -1.0 : 1.0;
    }
    return f;
}

std::vector<FourierIndex> all_fourier_indices(int n, int k) {
    TupleShape{n, k}.validate();
    std::vector<FourierIndex> out;
    uint64_t total = uint64_t{1} << (n * k);
    for (uint64_t code = 0; code < total; code++) {
        FourierIndex idx;
        for (int i = 1; i <= k; i++) {
            uint64_t m = tuple_row(code, n, k, i);
            std::vector<int> s;
            for (int a = 1; a <= n; a++) {
                if ((m >> (n - a)) & 1) {
                    s.push_back(a);
                }
            }
            idx.sets.push_back(s);
        }
        out.push_back(idx);
    }
    return out;
}

}  // namespace revmix
