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

#include "revmix/paths.h"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "revmix/errors.h"
#include "revmix/parallel.h"
#include "revmix/spectral.h"
#include "revmix/tuple_state.h"

namespace revmix {

uint64_t apply_word(const Word &w, int n, uint64_t x) {
    for (const auto &e : w) {
        x = apply_gate_word(e.gate, e.site, n, x);
    }
    return x;
}

GeneratorEdge wire_swap(int n, int w) {
    if (n < 3 || w < 1 || w > n - 1) {
        throw PlacementError("no adjacent swap of wires " + std::to_string(w) + "," + std::to_string(w + 1) +
                             " at n=" + std::to_string(n));
    }
    if (w <= n - 2) {
        return GeneratorEdge{Gate3::swap_positions(1, 2), Placement::nn(w)};
    }
    return GeneratorEdge{Gate3::swap_positions(2, 3), Placement::nn(w - 1)};
}

Word sort_word(int n, const Placement &site, int d) {
    site.validate(n);
    if (d < 1 || d > n - 2) {
        throw PlacementError("target anchor " + std::to_string(d) + " outside [1, " + std::to_string(n - 2) + "]");
    }
    std::array<int, 3> pos = site.site;
    const std::array<int, 3> target = {d, d + 1, d + 2};
    Word w;
    for (int j = 2; j >= 0; j--) {
        while (pos[j] < target[j]) {
            w.push_back(wire_swap(n, pos[j]));
            pos[j]++;
        }
    }
    for (int j = 0; j < 3; j++) {
        while (pos[j] > target[j]) {
            w.push_back(wire_swap(n, pos[j] - 1));
            pos[j]--;
        }
    }
    return w;
}

Word general_to_nn_path(int n, const Gate3 &g, const Placement &site, int d) {
    site.validate(n);
    if (d == 0) {
        d = site.site[0];
    }
    Word sort = sort_word(n, site, d);
    Word w = sort;
    w.push_back(GeneratorEdge{g, Placement::nn(d)});
    w.insert(w.end(), sort.rbegin(), sort.rend());
    return w;
}

Word nn_to_mod3_path(int n, const Gate3 &g, int a) {
    if (a < 1 || a > n - 2) {
        throw PlacementError("anchor " + std::to_string(a) + " outside [1, " + std::to_string(n - 2) + "]");
    }
    if (a % 3 != 0) {
        return Word{GeneratorEdge{g, Placement::nn(a)}};
    }
    if (a - 1 < 1 || a + 1 > n - 2) {
        throw BoundaryError("anchor " + std::to_string(a) + " needs anchors " + std::to_string(a - 1) + " and " +
                            std::to_string(a + 1) + " inside [1, " + std::to_string(n - 2) + "]");
    }
    // Shift wires a, a+1, a+2 onto a-1, a, a+1.
    Word sort = {
        GeneratorEdge{Gate3::swap_positions(1, 2), Placement::nn(a - 1)},
        GeneratorEdge{Gate3::swap_positions(2, 3), Placement::nn(a - 1)},
        GeneratorEdge{Gate3::swap_positions(1, 2), Placement::nn(a + 1)},
    };
    Word w = sort;
    w.push_back(GeneratorEdge{g, Placement::nn(a - 1)});
    w.insert(w.end(), sort.rbegin(), sort.rend());
    return w;
}

PathMap PathMap::deterministic(std::vector<GeneratorEdge> domain, std::vector<GeneratorEdge> codomain,
                               const std::function<Word(const GeneratorEdge &)> &rule) {
    PathMap pm{std::move(domain), std::move(codomain), {}};
    pm.routes.reserve(pm.domain.size());
    for (const auto &s : pm.domain) {
        pm.routes.push_back({{1.0, rule(s)}});
    }
    return pm;
}

namespace {

uint64_t edge_key(const GeneratorEdge &e) {
    const auto &s = e.site.site;
    return (uint64_t(e.gate.rank()) << 24) | (uint64_t(s[0]) << 16) | (uint64_t(s[1]) << 8) | uint64_t(s[2]);
}

}  // namespace

CongestionReport congestion(const PathMap &pm) {
    if (pm.domain.empty() || pm.codomain.empty()) {
        throw IncompleteMapError("generator sets must be nonempty");
    }
    if (pm.routes.size() != pm.domain.size()) {
        throw IncompleteMapError("path map covers " + std::to_string(pm.routes.size()) + " of " +
                                 std::to_string(pm.domain.size()) + " generators");
    }
    std::unordered_map<uint64_t, size_t> index;
    for (size_t j = 0; j < pm.codomain.size(); j++) {
        index.emplace(edge_key(pm.codomain[j]), j);
    }
    std::vector<double> loads(pm.codomain.size(), 0.0);
    std::vector<uint32_t> hits;
    for (size_t i = 0; i < pm.domain.size(); i++) {
        if (pm.routes[i].empty()) {
            throw IncompleteMapError("no route for generator " + std::to_string(i));
        }
        for (const auto &[p, word] : pm.routes[i]) {
            hits.clear();
            for (const auto &letter : word) {
                auto it = index.find(edge_key(letter));
                if (it == index.end()) {
                    throw IncompleteMapError("route " + std::to_string(i) + " uses " + letter.gate.to_string() + " at " +
                                             letter.site.to_string() + ", which is not a codomain generator");
                }
                hits.push_back(uint32_t(it->second));
            }
            // Each occurrence contributes p * |word|, so N(t, word) copies add up.
            for (uint32_t j : hits) {
                loads[j] += p * double(word.size());
            }
        }
    }
    const double scale = double(pm.codomain.size()) / double(pm.domain.size());
    CongestionReport r{0.0, 0, std::move(loads)};
    for (size_t j = 0; j < r.loads.size(); j++) {
        r.loads[j] *= scale;
        if (r.loads[j] > r.B) {
            r.B = r.loads[j];
            r.argmax = j;
        }
    }
    return r;
}

long long first_path_mismatch(const PathMap &pm, int n) {
    const uint64_t points = uint64_t{1} << n;
    for (size_t i = 0; i < pm.domain.size(); i++) {
        const auto &s = pm.domain[i];
        for (const auto &[p, word] : pm.routes.at(i)) {
            for (uint64_t x = 0; x < points; x++) {
                if (apply_word(word, n, x) != apply_gate_word(s.gate, s.site, n, x)) {
                    return (long long)i;
                }
            }
        }
    }
    return -1;
}

namespace {

const std::vector<Gate3> &even_gates() {
    static const std::vector<Gate3> gates = [] {
        std::vector<Gate3> out;
        for (uint32_t r = 0; r < 40320; r++) {
            Perm8 p = perm_unrank(r);
            if (is_even_perm(p)) {
                out.emplace_back(p);
            }
        }
        return out;
    }();
    return gates;
}

}  // namespace

std::vector<GeneratorEdge> general_generators(int n) {
    std::vector<GeneratorEdge> out;
    for (int a = 1; a <= n; a++) {
        for (int b = a + 1; b <= n; b++) {
            for (int c = b + 1; c <= n; c++) {
                for (const Gate3 &g : even_gates()) {
                    out.push_back(GeneratorEdge{g, Placement{{a, b, c}}});
                }
            }
        }
    }
    return out;
}

std::vector<GeneratorEdge> nn_generators(int n, const std::vector<int> &anchors) {
    std::vector<GeneratorEdge> out;
    for (int a : anchors) {
        if (a < 1 || a > n - 2) {
            throw PlacementError("anchor " + std::to_string(a) + " outside [1, " + std::to_string(n - 2) + "]");
        }
        for (const Gate3 &g : even_gates()) {
            out.push_back(GeneratorEdge{g, Placement::nn(a)});
        }
    }
    return out;
}

DenseMatrix schreier_walk_matrix(const std::vector<GeneratorEdge> &gens, int n, int k) {
    const TupleShape shape{n, k};
    check_cap(shape, dense_cap(), "Schreier walk matrix");
    if (gens.empty()) {
        throw IncompleteMapError("empty generator set");
    }
    const uint64_t N = shape.dim();
    // Integer counts first so the matrix is exact up to one final division.
    std::vector<uint32_t> counts(N * N, 0);
    parallel_for(N, [&](uint64_t begin, uint64_t end) {
        for (uint64_t x = begin; x < end; x++) {
            for (const auto &e : gens) {
                uint64_t y = 0;
                for (int i = 1; i <= k; i++) {
                    y = (y << n) | apply_gate_word(e.gate, e.site, n, tuple_row(x, n, k, i));
                }
                counts[x * N + y]++;
            }
        }
    });
    DenseMatrix m(N);
    const double size = double(gens.size());
    for (uint64_t x = 0; x < N; x++) {
        for (uint64_t y = 0; y < N; y++) {
            m(x, y) = counts[x * N + y] / size;
        }
    }
    return m;
}

ComparisonReport comparison_check(int n, int k, const PathMap &pm, double tolerance) {
    CongestionReport c = congestion(pm);
    const uint64_t N = TupleShape{n, k}.dim();
    DenseMatrix id = DenseMatrix::identity(N);
    auto l_dom = lambda2_dense(id - schreier_walk_matrix(pm.domain, n, k));
    auto l_cod = lambda2_dense(id - schreier_walk_matrix(pm.codomain, n, k));
    if (l_dom.degenerate || l_cod.degenerate) {
        throw ConvergenceError("a Schreier Laplacian has a single distinct eigenvalue");
    }
    ComparisonReport r;
    r.lambda2_domain = l_dom.value;
    r.lambda2_codomain = l_cod.value;
    r.B = c.B;
    r.division_reading = r.lambda2_codomain >= r.lambda2_domain / r.B - tolerance;
    r.printed_reading = r.lambda2_domain >= r.B * r.lambda2_codomain - tolerance;
    return r;
}

}  // namespace revmix
