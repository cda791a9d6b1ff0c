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

#ifndef REVMIX_WALK_OPERATOR_H
#define REVMIX_WALK_OPERATOR_H

#include <cstdint>
#include <memory>
#include <vector>

#include "revmix/dense.h"
#include "revmix/operator_spec.h"
#include "revmix/tuple_state.h"

namespace revmix {

/// An exact probability num/den.
struct Rational {
    uint64_t num;
    uint64_t den;
    bool operator==(const Rational &other) const {
        return (unsigned __int128)num * other.den == (unsigned __int128)other.num * den;
    }
    double value() const {
        return double(num) / double(den);
    }
};

/// prod_{i<d} 1/(M-i): the chance that a uniform permutation of M points sends
/// d given distinct points to d given distinct points.
double falling_inverse(uint64_t M, int d);

/// A compiled OperatorSpec: a weighted mixture of products of commuting factors
/// acting on disjoint column sets. Immutable after construction.
class WalkOperator {
   public:
    /// Throws DegenerateRegimeError when an alternating factor on s wires sees k > 2^s - 2.
    explicit WalkOperator(const OperatorSpec &spec);
    ~WalkOperator();
    WalkOperator(const WalkOperator &) = delete;
    WalkOperator &operator=(const WalkOperator &) = delete;

    const OperatorSpec &spec() const {
        return spec_;
    }

    /// (R f)(X) = E_{Y ~ D_X} f(Y). Each output entry is a fixed-order reduction,
    /// so results do not depend on the worker count.
    FunctionVector apply(const FunctionVector &f) const;

    double transition_probability(const TupleState &x, const TupleState &y) const;
    double transition_probability(uint64_t x, uint64_t y) const;

    /// Exact probability; only for single-term families (r_site, r_full, q_site, q_full).
    Rational transition_probability_exact(const TupleState &x, const TupleState &y) const;

    struct Factor;
    struct Term;

   private:
    OperatorSpec spec_;
    std::vector<Term> terms_;
};

FunctionVector operator_apply(const OperatorSpec &spec, const FunctionVector &f);
double transition_probability(const OperatorSpec &spec, const TupleState &x, const TupleState &y);

/// Dense transition matrix, entry (X, Y) = P(X -> Y). Throws SizeCapError above dense_cap().
DenseMatrix materialize(const OperatorSpec &spec);

}  // namespace revmix

#endif
