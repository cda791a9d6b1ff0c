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

#ifndef REVMIX_REGIONS_H
#define REVMIX_REGIONS_H

#include <functional>
#include <string>
#include <vector>

#include "revmix/operator_spec.h"
#include "revmix/tuple_state.h"

namespace revmix {

enum class RegionScheme { hamming, suffix };

/// Parts of the two partitions. Hamming: eq0, eq1, ge2 by minimal pairwise
/// distance. Suffix (window [n-ell-1, n-1]): eq0, coll (distinct rows with
/// equal window slices), safe (all window slices distinct).
enum class RegionPart { eq0, eq1, ge2, coll, safe };

struct RegionLabel {
    RegionScheme scheme;
    RegionPart part;
    bool operator==(const RegionLabel &other) const = default;
};

std::string to_string(RegionPart part);

/// Minimal Hamming distance between distinct row positions; n+1 when k = 1.
int min_pairwise_distance(const TupleState &x);

/// Throws PlacementError unless 1 <= ell <= n-2.
void check_suffix_window(int n, int ell);

/// `ell` is ignored for the Hamming scheme.
RegionLabel classify_region(const TupleState &x, RegionScheme scheme, int ell = 0);

/// For X in the distance-1 part: the wires a with Delta(X^i, X^j) = {a} for some
/// pair. Empty outside that part.
std::vector<int> single_difference_wires(const TupleState &x);

/// The tilde class of a distance-1 state: {a} if exactly one wire appears as a
/// single difference, otherwise the lexicographically least pair of such wires.
/// Empty outside the distance-1 part.
std::vector<int> tilde_class(const TupleState &x);

/// 0/1 vector of a predicate on states.
FunctionVector indicator(const TupleShape &shape, const std::function<bool(const TupleState &)> &pred);
FunctionVector region_indicator(const TupleShape &shape, const RegionLabel &target, int ell = 0);

/// P(one step from X lands in target), summed exactly over all Y.
double region_escape_probability(const OperatorSpec &spec, const TupleState &x, const RegionLabel &target, int ell = 0);

/// One check of a region bound: the worst exact probability against the bound.
struct RegionCheck {
    std::string name;
    double observed;
    double bound;
    bool exact_zero;  // true when the check is a zero law (observed must be exactly 0)
    bool pass;
    /// False for intermediate inequalities that are reported but not required to hold.
    bool asserted = true;
};

/// Exact escape-probability checks at (m, k) with window ell for the distance
/// partition and the suffix partition. Requires k >= 2, ell in [1, m-2].
std::vector<RegionCheck> region_bound_checks(int m, int k, int ell);

}  // namespace revmix

#endif
