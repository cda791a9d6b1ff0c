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

#ifndef REVMIX_TUPLE_STATE_H
#define REVMIX_TUPLE_STATE_H

#include <cstdint>
#include <string>
#include <vector>

#include "revmix/bits.h"

namespace revmix {

/// Shape of the k-tuple state space {0,1}^{n x k}.
struct TupleShape {
    int n;
    int k;

    /// Throws DimensionError unless n, k >= 1 and nk <= 62.
    void validate() const;
    uint64_t dim() const {
        return uint64_t{1} << (n * k);
    }
    bool operator==(const TupleShape &other) const = default;
};

/// Largest state space (2^{nk}) that matrix-free operators will allocate. Default 2^16.
uint64_t state_cap();
void set_state_cap(uint64_t cap);
/// Largest dimension for dense matrices and eigensolves. Default 2^10.
uint64_t dense_cap();
void set_dense_cap(uint64_t cap);

/// Throws SizeCapError if the shape exceeds the given cap.
void check_cap(const TupleShape &shape, uint64_t cap, const std::string &what);

/// Row i (1-based) of the state with index x: rows are concatenated, row 1 most significant.
inline uint64_t tuple_row(uint64_t x, int n, int k, int i) {
    return (x >> ((k - i) * n)) & low_mask(n);
}

/// k rows of n bits each.
class TupleState {
   public:
    TupleState(int n, std::vector<uint64_t> rows);
    static TupleState from_index(const TupleShape &shape, uint64_t index);
    static TupleState from_strings(const std::vector<std::string> &rows);

    int n() const {
        return n_;
    }
    int k() const {
        return int(rows_.size());
    }
    TupleShape shape() const {
        return TupleShape{n_, k()};
    }
    uint64_t row(int i) const {
        return rows_.at(i - 1);
    }
    BitString row_bits(int i) const {
        return BitString(n_, row(i));
    }
    uint64_t index() const;

    bool operator==(const TupleState &other) const = default;

   private:
    int n_;
    std::vector<uint64_t> rows_;
};

/// A real function on the state space, indexed by TupleState::index.
struct FunctionVector {
    TupleShape shape;
    std::vector<double> values;

    explicit FunctionVector(const TupleShape &s, double fill = 0.0);
    static FunctionVector basis(const TupleShape &s, uint64_t index);

    double &operator[](uint64_t i) {
        return values[i];
    }
    double operator[](uint64_t i) const {
        return values[i];
    }
    uint64_t size() const {
        return values.size();
    }
};

void check_same_shape(const TupleShape &a, const TupleShape &b);

/// <f, g> = mean of f*g over all states.
double inner(const FunctionVector &f, const FunctionVector &g);
double norm(const FunctionVector &f);
double max_abs_diff(const FunctionVector &f, const FunctionVector &g);

/// A Fourier index: one subset of [n] per row.
struct FourierIndex {
    std::vector<std::vector<int>> sets;

    /// Union of all sets, ascending.
    std::vector<int> support_union() const;
    std::string to_string() const;
};

/// chi(X) = prod over rows i, wires a in S_i of (-1)^{X^i_a}.
FunctionVector chi_vector(const FourierIndex &idx, int n, int k);

/// All (2^n)^k Fourier indices in order; sets encoded by wire masks.
std::vector<FourierIndex> all_fourier_indices(int n, int k);

}  // namespace revmix

#endif
