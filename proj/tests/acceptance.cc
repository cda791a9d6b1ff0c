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

// Acceptance gate: one PASS/FAIL line per criterion at pinned tolerances.
// Criterion 11 reruns criteria 1-10 with four workers and compares every
// recorded value bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.h"
#include "revmix/errors.h"
#include "revmix/feistel.h"
#include "revmix/parallel.h"
#include "revmix/paths.h"
#include "revmix/regions.h"
#include "revmix/spectral.h"
#include "revmix/walk_operator.h"

using namespace revmix;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<double> values;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (pass) {
                detail = what;
            }
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

Outcome operator_axioms() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (auto [n, k] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 2}}) {
        std::vector<OperatorSpec> specs = {
            OperatorSpec::r_site(n, k, {1, 2, 3}), OperatorSpec::r_subset(n, k, n - 1), OperatorSpec::r_nn(n, k),
            OperatorSpec::r_brickwork(n, k),       OperatorSpec::r_full(n, k),          OperatorSpec::q_loo(n, k),
            OperatorSpec::q_full(n, k),
        };
        for (const auto &spec : specs) {
            AxiomReport rep = verify_operator_axioms(spec, 1e-12, 1e-10);
            for (const auto &c : rep.checks) {
                o.values.push_back(c.deviation);
                if (c.name == "idempotence" && spec.family == OperatorFamily::r_site) {
                    o.require(c.checked, rep.spec + " idempotence not checked");
                }
                o.require(c.pass, rep.spec + " " + c.name + " deviation " + fmt("%.3g", c.deviation));
            }
        }
        // PSD of R_subset - R_full.
        auto diff = materialize(OperatorSpec::r_subset(n, k, n - 1)) - materialize(OperatorSpec::r_full(n, k));
        double min_eig = dense_sym_eigs(diff).front();
        o.values.push_back(min_eig);
        o.require(min_eig >= -1e-10, "R_subset - R_full min eigenvalue " + fmt("%.3g", min_eig));
    }
    double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime " + fmt("%.1f s", secs));
    if (o.pass) {
        o.detail = "7 specs x 3 shapes, runtime " + fmt("%.2f s", secs);
    }
    return o;
}

Outcome fourier_structure() {
    Outcome o;
    double worst = 0.0, worst_norm = 0.0;
    for (auto [m, k] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 2}}) {
        FourierReport r = fourier_eigencheck(m, k);
        worst = std::max(worst, r.max_deviation);
        o.values.push_back(r.max_deviation);
        o.require(r.max_deviation <= 1e-12, "eigencheck deviation " + fmt("%.3g", r.max_deviation));
        auto e = OperatorExpr::leaf(OperatorSpec::q_loo(m, k)) - OperatorExpr::leaf(OperatorSpec::q_full(m, k));
        double v = op_norm(e, NormMethod::dense).value;
        o.values.push_back(v);
        worst_norm = std::max(worst_norm, std::abs(v - 1.0 / m));
        o.require(std::abs(v - 1.0 / m) <= 1e-10, "norm " + fmt("%.15g", v));
    }
    if (o.pass) {
        o.detail = "max deviation " + fmt("%.2g", worst) + ", max |norm - 1/m| " + fmt("%.2g", worst_norm);
    }
    return o;
}

Outcome telescoping() {
    Outcome o;
    double worst = 0.0;
    for (auto spec : {OperatorSpec::r_subset(3, 2, 3), OperatorSpec::r_nn(3, 2)}) {
        for (int t = 1; t <= 5; t++) {
            DesignEpsilon d = design_epsilon(spec, t);
            o.values.push_back(d.direct);
            o.values.push_back(d.telescoped);
            worst = std::max(worst, std::abs(d.direct - d.telescoped));
            o.require(std::abs(d.direct - d.telescoped) <= 1e-10, spec.to_string() + " t=" + std::to_string(t));
        }
    }
    if (o.pass) {
        o.detail = "generic and nn, t=1..5, max gap " + fmt("%.2g", worst);
    }
    return o;
}

Outcome transition_law() {
    Outcome o;
    const auto &group = oracle::alternating8();
    uint64_t tuples_checked = 0, pairs_checked = 0;
    for (int d = 1; d <= 4; d++) {
        uint64_t falling = 1;
        for (int i = 0; i < d; i++) {
            falling *= uint64_t(8 - i);
        }
        // All injective d-tuples of local values, encoded base 8.
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        std::function<void()> gen = [&] {
            if (int(cur.size()) == d) {
                tuples.push_back(cur);
                return;
            }
            for (int v = 0; v < 8; v++) {
                if (std::find(cur.begin(), cur.end(), v) == cur.end()) {
                    cur.push_back(v);
                    gen();
                    cur.pop_back();
                }
            }
        };
        gen();
        auto code = [](const std::vector<int> &t) {
            uint32_t c = 0;
            for (int v : t) {
                c = c * 8 + uint32_t(v);
            }
            return c;
        };
        WalkOperator op(OperatorSpec::r_site(3, d, {1, 2, 3}));
        std::vector<uint32_t> counts(1u << (3 * d));
        for (size_t xi = 0; xi < tuples.size(); xi++) {
            const auto &x = tuples[xi];
            std::fill(counts.begin(), counts.end(), 0);
            for (const auto &p : group) {
                uint32_t c = 0;
                for (int v : x) {
                    c = c * 8 + p[v];
                }
                counts[c]++;
            }
            std::vector<uint64_t> xrows(x.begin(), x.end());
            TupleState xs(3, xrows);
            for (const auto &y : tuples) {
                Rational enumerated{counts[code(y)], 20160};
                o.require(enumerated == (Rational{1, falling}),
                          "enumeration differs from closed form at d=" + std::to_string(d));
                // Library exact law on a sample of starts for d = 4, all starts otherwise.
                if (d < 4 || xi % 40 == 0) {
                    TupleState ys(3, std::vector<uint64_t>(y.begin(), y.end()));
                    o.require(op.transition_probability_exact(xs, ys) == enumerated,
                              "library law differs from enumeration at d=" + std::to_string(d));
                    pairs_checked++;
                }
            }
            tuples_checked++;
        }
        o.values.push_back(double(falling));
    }
    if (o.pass) {
        o.detail = std::to_string(tuples_checked) + " starting tuples enumerated over 20160 elements, " +
                   std::to_string(pairs_checked) + " library pairs compared as rationals";
    }
    return o;
}

Outcome solver_cross_check() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto e = OperatorExpr::leaf(OperatorSpec::r_nn(4, 2)) - OperatorExpr::leaf(OperatorSpec::r_full(4, 2));
    SpectralReport dense = op_norm(e, NormMethod::dense);
    SpectralReport power = op_norm(e, NormMethod::power);
    double secs = seconds_since(t0);
    o.values = {dense.value, power.value, double(power.iterations)};
    o.require(power.converged, "power iteration did not converge");
    o.require(std::abs(dense.value - power.value) <= 1e-8,
              "dense " + fmt("%.15g", dense.value) + " power " + fmt("%.15g", power.value));
    o.require(secs < 30.0, "runtime " + fmt("%.1f s", secs));
    if (o.pass) {
        o.detail = "dense " + fmt("%.12f", dense.value) + " power " + fmt("%.12f", power.value) + " diff " +
                   fmt("%.2g", std::abs(dense.value - power.value)) + ", " + fmt("%.2f s", secs);
    }
    return o;
}

Outcome region_bounds() {
    Outcome o;
    auto checks = region_bound_checks(6, 2, 3);
    std::string worst, reported;
    double worst_ratio = -1.0;
    for (const auto &c : checks) {
        o.values.push_back(c.observed);
        if (!c.asserted) {
            reported += (reported.empty() ? "" : "; ") + c.name + (c.pass ? " holds" : " fails") + " (" + fmt("%.4f", c.observed) + " vs " +
                        fmt("%.4f", c.bound) + ")";
            continue;
        }
        if (c.exact_zero) {
            o.require(c.observed == 0.0, c.name + " observed " + fmt("%.3g", c.observed));
        } else {
            o.require(c.observed <= c.bound, c.name + " observed " + fmt("%.6g", c.observed) + " bound " +
                                                 fmt("%.6g", c.bound));
            if (c.observed / c.bound > worst_ratio) {
                worst_ratio = c.observed / c.bound;
                worst = c.name;
            }
        }
    }
    if (o.pass) {
        o.detail = std::to_string(checks.size()) + " exact checks, tightest " + worst + " at " +
                   fmt("%.3f", worst_ratio) + " of its bound; reported only: " + reported;
    }
    return o;
}

bool word_composes(const Word &w, const Gate3 &g, const Placement &s, int n) {
    for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
        if (apply_word(w, n, x) != oracle::apply_row(g.perm(), s.site, n, x)) {
            return false;
        }
    }
    return true;
}

Outcome paths_and_congestion() {
    Outcome o;
    const auto &group = oracle::alternating8();
    uint64_t words = 0;
    for (int n = 3; n <= 5; n++) {
        std::vector<Placement> sites;
        for (int a = 1; a <= n; a++) {
            for (int b = a + 1; b <= n; b++) {
                for (int c = b + 1; c <= n; c++) {
                    sites.push_back(Placement{{a, b, c}});
                }
            }
        }
        for (const auto &s : sites) {
            for (int d = 1; d <= n - 2; d++) {
                Word sw = sort_word(n, s, d);
                for (int j = 0; j < 3; j++) {
                    o.require(apply_word(sw, n, uint64_t{1} << (n - s.site[j])) == uint64_t{1} << (n - d - j),
                              "sort_word misroutes " + s.to_string());
                }
                words++;
            }
            for (const auto &p : group) {
                Gate3 g(p);
                o.require(word_composes(general_to_nn_path(n, g, s), g, s, n),
                          "general_to_nn_path at " + s.to_string());
                o.require(word_composes(des2_word(g, s), g, s, n), "des2_word at " + s.to_string());
                words += 2;
            }
        }
        for (int a = 1; a <= n - 2; a++) {
            if (a % 3 == 0 && a + 1 > n - 2) {
                continue;  // no anchors on both sides: BoundaryError by design
            }
            for (const auto &p : group) {
                Gate3 g(p);
                o.require(word_composes(nn_to_mod3_path(n, g, a), g, Placement::nn(a), n),
                          "nn_to_mod3_path at anchor " + std::to_string(a));
                words++;
            }
        }
    }
    const Des2WordTable &t = des2_table();
    o.require(t.reached_even() == 20160, "BFS reached " + std::to_string(t.reached_even()) + " even elements");
    std::vector<int> anchors = {1, 2};
    PathMap pm = PathMap::deterministic(general_generators(4), nn_generators(4, anchors), [](const GeneratorEdge &e) {
        return general_to_nn_path(4, e.gate, e.site);
    });
    CongestionReport c = congestion(pm);
    o.values = {double(t.reached_even()), c.B};
    o.require(c.B <= 100000.0 * 64, "B above ceiling");
    o.require(c.B == 161280.5, "B regression constant changed: " + fmt("%.17g", c.B));
    if (o.pass) {
        o.detail = std::to_string(words) + " words exhaustive at n<=5, BFS 20160/20160 even, B(n=4) = " +
                   fmt("%.1f", c.B) + " <= 6400000";
    }
    return o;
}

Outcome comparison() {
    Outcome o;
    std::vector<int> anchors = {1, 2};
    PathMap pm = PathMap::deterministic(general_generators(4), nn_generators(4, anchors), [](const GeneratorEdge &e) {
        return general_to_nn_path(4, e.gate, e.site);
    });
    ComparisonReport r = comparison_check(4, 2, pm);
    o.values = {r.lambda2_domain, r.lambda2_codomain, r.B};
    o.require(r.division_reading, "lambda2(NN) < lambda2(general)/B");
    if (o.pass) {
        o.detail = "lambda2 general " + fmt("%.12f", r.lambda2_domain) + ", NN " + fmt("%.12f", r.lambda2_codomain) +
                   ", B " + fmt("%.1f", r.B) + "; printed form lambda2(general) >= B*lambda2(NN) " +
                   (r.printed_reading ? "holds" : "does not hold");
    }
    return o;
}

Outcome feistel() {
    Outcome o;
    CollisionStats big = phase1_collision_experiment(16, 3, 8, 10000, 20260101);
    o.values = {big.frequency, big.bound, big.three_sigma};
    o.require(big.bound == 0.017578125, "bound formula");
    o.require(big.frequency <= big.bound + big.three_sigma, "frequency " + fmt("%.6f", big.frequency));
    CollisionStats small = phase1_collision_experiment(2, 2, 2, 10000, 20260102);
    double exact = oracle::phase1_failure_two_two_two(small.rows);
    double sigma3 = 3.0 * std::sqrt(exact * (1 - exact) / 10000.0);
    o.values.push_back(small.frequency);
    o.values.push_back(exact);
    o.require(std::abs(small.frequency - exact) <= sigma3,
              "(2,2,2) MC " + fmt("%.5f", small.frequency) + " exact " + fmt("%.5f", exact));
    FunctionBank bank = FunctionBank::lazy(8, 4, 20260103);
    Rng rng(20260104);
    int bad = 0;
    for (int i = 0; i < 10000; i++) {
        BlockState x = BlockState::from_word(8, 4, rng.next() & 0xFFFFFFFFULL);
        bad += !(pn_invert(bank, pn_apply(bank, x)) == x);
    }
    o.values.push_back(bad);
    o.require(bad == 0, std::to_string(bad) + " inputs not restored");
    if (o.pass) {
        o.detail = "(16,3,8) freq " + fmt("%.5f", big.frequency) + " <= " + fmt("%.9f", big.bound) + " + " +
                   fmt("%.5f", big.three_sigma) + "; (2,2,2) MC " + fmt("%.4f", small.frequency) + " vs exact " +
                   fmt("%.4f", exact) + "; 10^4 inversions exact";
    }
    return o;
}

Outcome kwise() {
    Outcome o;
    double tv0 = kwise_tv(OperatorSpec::r_nn(3, 2), 0);
    double tvfull = kwise_tv(OperatorSpec::r_full(3, 2), 1);
    o.values = {tv0, tvfull};
    o.require(tv0 == 55.0 / 56.0, "kwise_tv(identity) = " + fmt("%.17g", tv0));
    o.require(std::abs(tvfull) <= 1e-12, "kwise_tv(R_full, 1) = " + fmt("%.3g", tvfull));
    double prev = tv0;
    for (int t = 1; t <= 6; t++) {
        double v = kwise_tv(OperatorSpec::r_nn(3, 2), t);
        o.values.push_back(v);
        o.require(v <= prev + 1e-12, "increase at t=" + std::to_string(t));
        prev = v;
    }
    if (o.pass) {
        o.detail = "tv(t=0) = 55/56 bit-exact, tv(R_full,1) = " + fmt("%.2g", tvfull) + ", R_nn t=6 " +
                   fmt("%.6f", prev);
    }
    return o;
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "operator axioms", operator_axioms},
        {2, "Fourier eigenstructure", fourier_structure},
        {3, "telescoping identity", telescoping},
        {4, "transition-law oracle", transition_law},
        {5, "solver cross-check", solver_cross_check},
        {6, "region and escape bounds", region_bounds},
        {7, "path correctness and congestion", paths_and_congestion},
        {8, "comparison sanity", comparison},
        {9, "Feistel collision and inversion", feistel},
        {10, "k-wise TV", kwise},
    };
    int failures = 0;
    std::vector<std::vector<double>> first;
    set_worker_count(1);
    for (const auto &c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        first.push_back(o.values);
        failures += !o.pass;
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }

    // Rerun everything with four workers and compare every value bit for bit.
    set_worker_count(4);
    bool same = true;
    std::string where;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception &e) {
            same = false;
            where = std::string("exception: ") + e.what();
            break;
        }
        if (o.values.size() != first[i].size() ||
            std::memcmp(o.values.data(), first[i].data(), o.values.size() * sizeof(double)) != 0) {
            same = false;
            where = "criterion " + std::to_string(criteria[i].id) + " values differ";
            break;
        }
    }
    set_worker_count(1);
    failures += !same;
    std::printf("%s criterion 11 (reproducibility): %s\n", same ? "PASS" : "FAIL",
                same ? "criteria 1-10 rerun with 4 workers give bit-identical values" : where.c_str());
    return failures == 0 ? 0 : 1;
}
