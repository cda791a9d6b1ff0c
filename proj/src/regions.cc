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

#include "revmix/regions.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "revmix/errors.h"
#include "revmix/walk_operator.h"

namespace revmix {

std::string to_string(RegionPart part) {
    switch (part) {
        case RegionPart::eq0:
            return "B=0";
        case RegionPart::eq1:
            return "B=1";
        case RegionPart::ge2:
            return "B>=2";
        case RegionPart::coll:
            return "Bcoll";
        case RegionPart::safe:
            return "Bsafe";
    }
    return "?";
}

int min_pairwise_distance(const TupleState &x) {
    int best = x.n() + 1;
    for (int i = 1; i <= x.k(); i++) {
        for (int j = i + 1; j <= x.k(); j++) {
            best = std::min(best, __builtin_popcountll(x.row(i) ^ x.row(j)));
        }
    }
    return best;
}

void check_suffix_window(int n, int ell) {
    if (ell < 1 || ell > n - 2) {
        throw PlacementError("suffix window needs 1 <= ell <= n-2, got ell=" + std::to_string(ell) + " at n=" +
                             std::to_string(n));
    }
}

namespace {

uint64_t window_mask(int n, int ell) {
    uint64_t m = 0;
    for (int a = n - ell - 1; a <= n - 1; a++) {
        m |= uint64_t{1} << (n - a);
    }
    return m;
}

}  // namespace

RegionLabel classify_region(const TupleState &x, RegionScheme scheme, int ell) {
    int d = min_pairwise_distance(x);
    if (scheme == RegionScheme::hamming) {
        RegionPart p = d == 0 ? RegionPart::eq0 : d == 1 ? RegionPart::eq1 : RegionPart::ge2;
        return RegionLabel{scheme, p};
    }
    check_suffix_window(x.n(), ell);
    if (d == 0) {
        return RegionLabel{scheme, RegionPart::eq0};
    }
    uint64_t w = window_mask(x.n(), ell);
    for (int i = 1; i <= x.k(); i++) {
        for (int j = i + 1; j <= x.k(); j++) {
            if (((x.row(i) ^ x.row(j)) & w) == 0) {
                return RegionLabel{scheme, RegionPart::coll};
            }
        }
    }
    return RegionLabel{scheme, RegionPart::safe};
}

std::vector<int> single_difference_wires(const TupleState &x) {
    if (min_pairwise_distance(x) != 1) {
        return {};
    }
    uint64_t wires = 0;
    for (int i = 1; i <= x.k(); i++) {
        for (int j = i + 1; j <= x.k(); j++) {
            uint64_t diff = x.row(i) ^ x.row(j);
            if (__builtin_popcountll(diff) == 1) {
                wires |= diff;
            }
        }
    }
    std::vector<int> out;
    for (int a = 1; a <= x.n(); a++) {
        if ((wires >> (x.n() - a)) & 1) {
            out.push_back(a);
        }
    }
    return out;
}

std::vector<int> tilde_class(const TupleState &x) {
    auto a = single_difference_wires(x);
    if (a.size() <= 1) {
        return a;
    }
    return {a[0], a[1]};
}

FunctionVector indicator(const TupleShape &shape, const std::function<bool(const TupleState &)> &pred) {
    FunctionVector f(shape);
    for (uint64_t x = 0; x < f.size(); x++) {
        f[x] = pred(TupleState::from_index(shape, x)) ? 1.0 : 0.0;
    }
    return f;
}

FunctionVector region_indicator(const TupleShape &shape, const RegionLabel &target, int ell) {
    return indicator(shape, [&](const TupleState &s) { return classify_region(s, target.scheme, ell) == target; });
}

double region_escape_probability(const OperatorSpec &spec, const TupleState &x, const RegionLabel &target, int ell) {
    check_same_shape(spec.shape(), x.shape());
    check_cap(spec.shape(), state_cap(), "escape probability");
    WalkOperator op(spec);
    double p = 0;
    for (uint64_t y = 0; y < spec.shape().dim(); y++) {
        TupleState ys = TupleState::from_index(spec.shape(), y);
        if (classify_region(ys, target.scheme, ell) == target) {
            p += op.transition_probability(x.index(), y);
        }
    }
    return p;
}

std::vector<RegionCheck> region_bound_checks(int m, int k, int ell) {
    if (k < 2) {
        throw UsageError("region checks need k >= 2");
    }
    check_suffix_window(m, ell);
    const TupleShape shape{m, k};
    check_cap(shape, state_cap(), "region checks");
    const uint64_t N = shape.dim();
    const double md = m, kd = k;

    std::vector<TupleState> states;
    std::vector<RegionPart> ham(N), suf(N);
    std::vector<std::vector<int>> cls(N);
    for (uint64_t x = 0; x < N; x++) {
        states.push_back(TupleState::from_index(shape, x));
        ham[x] = classify_region(states[x], RegionScheme::hamming).part;
        suf[x] = classify_region(states[x], RegionScheme::suffix, ell).part;
        cls[x] = tilde_class(states[x]);
    }
    auto ind = [&](auto pred) {
        FunctionVector f(shape);
        for (uint64_t x = 0; x < N; x++) {
            f[x] = pred(x) ? 1.0 : 0.0;
        }
        return f;
    };

    WalkOperator r_loo(OperatorSpec::r_subset(m, k, m - 1));
    WalkOperator r_all(OperatorSpec::r_full(m, k));
    std::vector<RegionCheck> out;

    // Zero law: states with distinct rows never reach equal rows, and back.
    {
        auto eq0 = ind([&](uint64_t x) { return ham[x] == RegionPart::eq0; });
        auto not_eq0 = ind([&](uint64_t x) { return ham[x] != RegionPart::eq0; });
        double worst = 0;
        for (const WalkOperator *op : {&r_loo, &r_all}) {
            auto into = op->apply(eq0);
            auto out_of = op->apply(not_eq0);
            for (uint64_t x = 0; x < N; x++) {
                worst = std::max(worst, ham[x] == RegionPart::eq0 ? out_of[x] : into[x]);
            }
        }
        out.push_back(RegionCheck{"zero law B=0 (R[m-1], R[m])", worst, 0.0, true, worst == 0.0});
    }

    // Tilde classes of the distance-1 part.
    std::map<std::vector<int>, FunctionVector> class_profile;
    for (uint64_t x = 0; x < N; x++) {
        if (!cls[x].empty() && !class_profile.count(cls[x])) {
            const auto c = cls[x];
            class_profile.emplace(c, r_loo.apply(ind([&](uint64_t y) { return cls[y] == c; })));
        }
    }
    std::map<std::vector<int>, FunctionVector> class_profile_full;
    for (const auto &[c, _] : class_profile) {
        const auto cc = c;
        class_profile_full.emplace(c, r_all.apply(ind([&](uint64_t y) { return cls[y] == cc; })));
    }
    {
        double stay1 = 0, stay2 = 0, cross_loo = 0, cross_full = 0;
        for (uint64_t x = 0; x < N; x++) {
            if (cls[x].empty()) {
                continue;
            }
            double &stay = cls[x].size() == 1 ? stay1 : stay2;
            stay = std::max(stay, class_profile.at(cls[x])[x]);
            for (const auto &[c, prof] : class_profile) {
                if (c != cls[x]) {
                    cross_loo = std::max(cross_loo, prof[x]);
                    cross_full = std::max(cross_full, class_profile_full.at(c)[x]);
                }
            }
        }
        double b49 = 1 / md + md * kd * kd / double(uint64_t{1} << (m - 1));
        out.push_back(RegionCheck{"stay in tilde class {a} under R[m-1]", stay1, b49, false, stay1 <= b49});
        out.push_back(RegionCheck{"stay in tilde class {a,b} under R[m-1]", stay2, b49, false, stay2 <= b49});
        double b50 = md * kd * kd / double(uint64_t{1} << (m - 1));
        out.push_back(RegionCheck{"tilde class S to T under R[m-1]", cross_loo, b50, false, cross_loo <= b50});
        double b50f = kd * kd / double(uint64_t{1} << m);
        out.push_back(RegionCheck{"tilde class S to T under R[m]", cross_full, b50f, false, cross_full <= b50f});
    }

    // Distance >= 2 into distance 1.
    {
        auto eq1 = ind([&](uint64_t x) { return ham[x] == RegionPart::eq1; });
        auto p_loo = r_loo.apply(eq1);
        auto p_all = r_all.apply(eq1);
        double w_loo = 0, w_all = 0, w_sum = 0;
        for (uint64_t x = 0; x < N; x++) {
            if (ham[x] == RegionPart::ge2) {
                w_loo = std::max(w_loo, p_loo[x]);
                w_all = std::max(w_all, p_all[x]);
                w_sum = std::max(w_sum, p_loo[x] + p_all[x]);
            }
        }
        double b_loo = kd * kd * md / double(uint64_t{1} << (m - 1));
        double b_all = kd * kd / double(uint64_t{1} << m);
        double b52 = kd * kd * md / double(uint64_t{1} << (m - 2));
        out.push_back(RegionCheck{"B>=2 to B=1 under R[m-1]", w_loo, b_loo, false, w_loo <= b_loo});
        // The printed per-step bound k^2/2^m drops a factor m: for k = 2 the exact
        // value is m/(2^m - 1). It is reported next to the union bound that holds.
        out.push_back(RegionCheck{"B>=2 to B=1 under R[m], printed step bound", w_all, b_all, false, w_all <= b_all,
                                  false});
        double b_union = kd * (kd - 1) / 2 * md / (std::ldexp(1.0, m) - 1);
        out.push_back(RegionCheck{"B>=2 to B=1 under R[m], union bound", w_all, b_union, false,
                                  w_all <= b_union * (1 + 1e-12)});
        out.push_back(RegionCheck{"B>=2 to B=1, R[m-1] plus R[m]", w_sum, b52, false, w_sum <= b52});
    }

    // Suffix partition: zero law for the three operators, then the two-step bound.
    {
        std::vector<int> window_up;
        for (int a = m - ell - 1; a <= m; a++) {
            window_up.push_back(a);
        }
        WalkOperator r_win(OperatorSpec::r_site(m, k, window_up));
        auto eq0 = ind([&](uint64_t x) { return suf[x] == RegionPart::eq0; });
        double worst = 0;
        for (const WalkOperator *op : {&r_win, &r_loo, &r_all}) {
            auto into = op->apply(eq0);
            for (uint64_t x = 0; x < N; x++) {
                if (suf[x] != RegionPart::eq0) {
                    worst = std::max(worst, into[x]);
                }
            }
        }
        out.push_back(RegionCheck{"zero law B=0 (suffix operators)", worst, 0.0, true, worst == 0.0});

        auto coll = ind([&](uint64_t x) { return suf[x] == RegionPart::coll; });
        // I and J contain the window and cover [m]; the two outside wires are split freely.
        std::vector<int> outside;
        for (int a = 1; a <= m; a++) {
            if (a < m - ell - 1 || a > m - 1) {
                outside.push_back(a);
            }
        }
        double two_step = 0;
        const int q = int(outside.size());
        for (uint64_t assign = 0; assign < (uint64_t{1} << (2 * q)); assign++) {
            std::vector<int> I, J;
            bool covered = true;
            for (int j = 0; j < q; j++) {
                bool in_i = (assign >> (2 * j)) & 1, in_j = (assign >> (2 * j + 1)) & 1;
                covered = covered && (in_i || in_j);
            }
            if (!covered) {
                continue;
            }
            for (int a = 1; a <= m; a++) {
                bool inside = a >= m - ell - 1 && a <= m - 1;
                auto pos = std::find(outside.begin(), outside.end(), a) - outside.begin();
                if (inside || ((assign >> (2 * pos)) & 1)) {
                    I.push_back(a);
                }
                if (inside || ((assign >> (2 * pos + 1)) & 1)) {
                    J.push_back(a);
                }
            }
            WalkOperator ri(OperatorSpec::r_site(m, k, I));
            WalkOperator rj(OperatorSpec::r_site(m, k, J));
            auto p = ri.apply(rj.apply(coll));
            for (uint64_t x = 0; x < N; x++) {
                if (suf[x] != RegionPart::eq0) {
                    two_step = std::max(two_step, p[x]);
                }
            }
        }
        double b62 = kd * kd * std::ldexp(1.0, 2 - ell);
        out.push_back(RegionCheck{"two steps R[I] R[J] into Bcoll", two_step, b62, false, two_step <= b62});
    }
    return out;
}

}  // namespace revmix
