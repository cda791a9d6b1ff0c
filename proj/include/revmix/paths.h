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

#ifndef REVMIX_PATHS_H
#define REVMIX_PATHS_H

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "revmix/circuit.h"
#include "revmix/dense.h"
#include "revmix/gate.h"

namespace revmix {

/// One generator g^{site} of the action on {0,1}^n.
struct GeneratorEdge {
    Gate3 gate;
    Placement site;
    bool operator==(const GeneratorEdge &other) const = default;
};

/// Words are stored in application order: word[0] acts first.
using Word = std::vector<GeneratorEdge>;

uint64_t apply_word(const Word &w, int n, uint64_t x);

/// Adjacent wire swap (w, w+1) as a 3-bit gate: anchor w with local positions
/// (1,2) when w <= n-2, else anchor w-1 with local positions (2,3).
GeneratorEdge wire_swap(int n, int w);

/// Adjacent swaps routing wires a, b, c of `site` to d, d+1, d+2. Right-moving
/// wires go first in the order c, b, a, then left-moving wires in the order
/// a, b, c, so tracked wires never cross. Length <= 3n.
Word sort_word(int n, const Placement &site, int d);

/// Sort, then g at anchor d, then the reversed Sort. d defaults to site[0].
Word general_to_nn_path(int n, const Gate3 &g, const Placement &site, int d = 0);

/// g at anchor a rewritten over anchors not divisible by 3. For a divisible by 3
/// the word uses anchors a-1 and a+1 only; throws BoundaryError when either is
/// outside [1, n-2].
Word nn_to_mod3_path(int n, const Gate3 &g, int a);

/// Breadth-first word table over the 45 non-identity DES[2] gates. The gates
/// generate all of S_8 (odd-weight control functions give odd gates), so the
/// table covers 40320 elements; lookups are restricted to even gates.
class Des2WordTable {
   public:
    static Des2WordTable build();
    /// Text format: header line, 45 generator lines, one line per element
    /// ("perm length letters..."), and a trailing FNV-1a checksum line.
    std::string serialize() const;
    static Des2WordTable parse(const std::string &text);
    void save(const std::string &path) const;
    static Des2WordTable load(const std::string &path);

    const std::vector<Gate3> &generators() const {
        return generators_;
    }
    /// Generator indices in application order. Throws ParityError for odd g.
    std::vector<int> word_indices(const Gate3 &g) const;
    std::vector<Gate3> word(const Gate3 &g) const;

    uint32_t reached() const;
    uint32_t reached_even() const;
    int diameter() const;

    bool operator==(const Des2WordTable &other) const = default;

   private:
    std::vector<Gate3> generators_;
    std::vector<std::vector<uint8_t>> words_;  // by Lehmer rank; empty for the identity
    std::vector<uint8_t> reached_;
};

/// Table built once per process.
const Des2WordTable &des2_table();

/// des2_table().word(g) placed at `site`.
Word des2_word(const Gate3 &g, const Placement &site);

/// A map from domain generators to words over codomain generators. Each route
/// is a finitely supported distribution over words (a single word with weight
/// 1 for deterministic rules).
struct PathMap {
    std::vector<GeneratorEdge> domain;
    std::vector<GeneratorEdge> codomain;
    std::vector<std::vector<std::pair<double, Word>>> routes;

    static PathMap deterministic(std::vector<GeneratorEdge> domain, std::vector<GeneratorEdge> codomain,
                                 const std::function<Word(const GeneratorEdge &)> &rule);
};

struct CongestionReport {
    double B;
    size_t argmax;  // index into codomain
    std::vector<double> loads;
};

/// load(t) = (|S~| / |S|) * sum over s of E[N(t, Gamma(s)) * |Gamma(s)|]; B = max load.
/// Throws IncompleteMapError for missing routes or letters outside the codomain.
CongestionReport congestion(const PathMap &pm);

/// First domain generator whose words do not act like it on all of {0,1}^n, or -1.
long long first_path_mismatch(const PathMap &pm, int n);

/// Even gates on every 3-subset of [n] (lexicographic sites, gates by rank).
std::vector<GeneratorEdge> general_generators(int n);
/// Even gates on {a, a+1, a+2} for each anchor.
std::vector<GeneratorEdge> nn_generators(int n, const std::vector<int> &anchors);

/// (1/|S|) sum over generators of their permutation matrices on k-tuples.
DenseMatrix schreier_walk_matrix(const std::vector<GeneratorEdge> &gens, int n, int k);

struct ComparisonReport {
    double lambda2_domain;    // lambda_2 of I - P for the domain generators
    double lambda2_codomain;  // lambda_2 of I - P for the codomain generators
    double B;
    bool division_reading;  // lambda2_codomain >= lambda2_domain / B
    bool printed_reading;   // lambda2_domain >= B * lambda2_codomain
};

/// Exact eigenvalues of both Schreier walks on k-tuples plus the congestion.
ComparisonReport comparison_check(int n, int k, const PathMap &pm, double tolerance = 1e-10);

}  // namespace revmix

#endif
