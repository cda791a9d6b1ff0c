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

#include "revmix/walk_operator.h"

#include <algorithm>

#include "revmix/circuit.h"
#include "revmix/errors.h"
#include "revmix/parallel.h"

namespace revmix {

enum class FactorKind { alternating, des2, replacement };

struct WalkOperator::Factor {
    FactorKind kind;
    int n;
    int k;
    std::vector<int> wires;
    uint64_t row_mask = 0;    // wires within one row
    uint64_t index_mask = 0;  // wires within every row of the full index
    Placement site{};         // des2 only

    Factor(FactorKind kind, int n, int k, std::vector<int> wires_in) : kind(kind), n(n), k(k), wires(std::move(wires_in)) {
        for (int a : wires) {
            row_mask |= uint64_t{1} << (n - a);
        }
        for (int i = 1; i <= k; i++) {
            index_mask |= row_mask << ((k - i) * n);
        }
        if (kind == FactorKind::des2) {
            site = Placement{{wires[0], wires[1], wires[2]}};
        }
    }

    uint64_t points() const {
        return uint64_t{1} << wires.size();
    }

    // Wire values of `row` at `wires`, first wire most significant.
    uint64_t pattern(uint64_t row) const {
        uint64_t p = 0;
        for (int a : wires) {
            p = (p << 1) | ((row >> (n - a)) & 1);
        }
        return p;
    }

    uint64_t deposit(uint64_t label) const {
        uint64_t r = 0;
        int s = int(wires.size());
        for (int j = 0; j < s; j++) {
            if ((label >> (s - 1 - j)) & 1) {
                r |= uint64_t{1} << (n - wires[j]);
            }
        }
        return r;
    }

    // Canonical orbit representative of x: S-patterns relabeled 0, 1, 2, ... in
    // order of first appearance. Also returns the number of distinct patterns.
    uint64_t canonical(uint64_t x, int &distinct) const {
        uint64_t seen[64];
        distinct = 0;
        uint64_t out = 0;
        for (int i = 1; i <= k; i++) {
            uint64_t row = tuple_row(x, n, k, i);
            uint64_t p = pattern(row);
            int label = 0;
            while (label < distinct && seen[label] != p) {
                label++;
            }
            if (label == distinct) {
                seen[distinct++] = p;
            }
            out = (out << n) | (row & ~row_mask) | deposit(uint64_t(label));
        }
        return out;
    }

    void apply(const std::vector<double> &in, std::vector<double> &out) const {
        const uint64_t N = in.size();
        if (kind == FactorKind::des2) {
            const auto &gates = des2_pair_gates();
            parallel_for(N, [&](uint64_t begin, uint64_t end) {
                for (uint64_t x = begin; x < end; x++) {
                    double s = 0;
                    for (const Gate3 &g : gates) {
                        uint64_t y = 0;
                        for (int i = 1; i <= k; i++) {
                            y = (y << n) | apply_gate_word(g, site, n, tuple_row(x, n, k, i));
                        }
                        s += in[y];
                    }
                    out[x] = s / 48.0;
                }
            });
            return;
        }
        std::vector<uint64_t> canon(N);
        std::vector<uint8_t> distinct(N);
        parallel_for(N, [&](uint64_t begin, uint64_t end) {
            for (uint64_t x = begin; x < end; x++) {
                if (kind == FactorKind::replacement) {
                    canon[x] = x & ~index_mask;
                } else {
                    int d;
                    canon[x] = canonical(x, d);
                    distinct[x] = uint8_t(d);
                }
            }
        });
        // Orbit sums, accumulated in ascending state order.
        std::vector<double> acc(N, 0.0);
        for (uint64_t x = 0; x < N; x++) {
            acc[canon[x]] += in[x];
        }
        const double repl_size = double(uint64_t{1} << (wires.size() * k));
        std::vector<double> orbit(k + 1, 1.0);
        for (int d = 1; d <= k; d++) {
            orbit[d] = orbit[d - 1] * double(points() - (d - 1));
        }
        parallel_for(N, [&](uint64_t begin, uint64_t end) {
            for (uint64_t x = begin; x < end; x++) {
                double size = kind == FactorKind::replacement ? repl_size : orbit[distinct[x]];
                out[x] = acc[canon[x]] / size;
            }
        });
    }

    // Probability on this factor's columns only; off-support agreement is checked by the caller.
    double local_probability(const uint64_t *xr, const uint64_t *yr) const {
        switch (kind) {
            case FactorKind::replacement:
                return 1.0 / double(uint64_t{1} << (wires.size() * k));
            case FactorKind::alternating: {
                int d = 0;
                if (!pattern_map_ok(xr, yr, d)) {
                    return 0.0;
                }
                return falling_inverse(points(), d);
            }
            case FactorKind::des2:
                return double(des2_count(xr, yr)) / 48.0;
        }
        return 0.0;
    }

    bool pattern_map_ok(const uint64_t *xr, const uint64_t *yr, int &d) const {
        uint64_t p[64], q[64];
        for (int i = 0; i < k; i++) {
            p[i] = pattern(xr[i]);
            q[i] = pattern(yr[i]);
        }
        d = 0;
        for (int i = 0; i < k; i++) {
            bool first = true;
            for (int j = 0; j < i; j++) {
                if ((p[i] == p[j]) != (q[i] == q[j])) {
                    return false;
                }
                if (p[i] == p[j]) {
                    first = false;
                }
            }
            d += first;
        }
        return true;
    }

    int des2_count(const uint64_t *xr, const uint64_t *yr) const {
        int count = 0;
        for (const Gate3 &g : des2_pair_gates()) {
            bool ok = true;
            for (int i = 0; i < k && ok; i++) {
                ok = ((apply_gate_word(g, site, n, xr[i]) ^ yr[i]) & row_mask) == 0;
            }
            count += ok;
        }
        return count;
    }
};

struct WalkOperator::Term {
    std::vector<Factor> factors;
    uint64_t support = 0;  // union of factor row masks
};

double falling_inverse(uint64_t M, int d) {
    double p = 1.0;
    for (int i = 0; i < d; i++) {
        p /= double(M - uint64_t(i));
    }
    return p;
}

namespace {

std::vector<std::vector<int>> subsets(int n, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto &self, int start) -> void {
        if (int(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (int a = start; a <= n; a++) {
            cur.push_back(a);
            self(self, a + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<int> range_wires(int lo, int hi) {
    std::vector<int> out;
    for (int a = lo; a <= hi; a++) {
        out.push_back(a);
    }
    return out;
}

}  // namespace

WalkOperator::WalkOperator(const OperatorSpec &spec) : spec_(spec) {
    spec_.validate();
    const int n = spec.n, k = spec.k;
    const FactorKind site_kind = spec.dist == GateDist::des2 ? FactorKind::des2 : FactorKind::alternating;
    auto add_term = [&](std::vector<Factor> factors) {
        Term t;
        t.factors = std::move(factors);
        for (const auto &f : t.factors) {
            if (f.kind == FactorKind::alternating && uint64_t(k) + 2 > f.points()) {
                throw DegenerateRegimeError("k=" + std::to_string(k) + " exceeds 2^" + std::to_string(f.wires.size()) +
                                            " - 2 for " + spec_.to_string());
            }
            t.support |= f.row_mask;
        }
        terms_.push_back(std::move(t));
    };
    switch (spec.family) {
        case OperatorFamily::r_site:
            add_term({Factor(site_kind, n, k, spec.sites)});
            break;
        case OperatorFamily::r_subset:
            for (auto &s : subsets(n, spec.m)) {
                add_term({Factor(site_kind, n, k, s)});
            }
            break;
        case OperatorFamily::r_nn:
            for (int a : spec.anchors) {
                add_term({Factor(site_kind, n, k, {a, a + 1, a + 2})});
            }
            break;
        case OperatorFamily::r_brickwork:
            for (int p = 0; p < 2; p++) {
                std::vector<Factor> fs;
                for (const auto &s : brickwork_sites(n, p)) {
                    fs.emplace_back(site_kind, n, k, std::vector<int>(s.site.begin(), s.site.end()));
                }
                add_term(std::move(fs));
            }
            break;
        case OperatorFamily::r_full:
            add_term({Factor(FactorKind::alternating, n, k, range_wires(1, n))});
            break;
        case OperatorFamily::q_site:
            add_term({Factor(FactorKind::replacement, n, k, spec.sites)});
            break;
        case OperatorFamily::q_loo:
            for (int a = 1; a <= n; a++) {
                std::vector<int> w;
                for (int b = 1; b <= n; b++) {
                    if (b != a) {
                        w.push_back(b);
                    }
                }
                add_term({Factor(FactorKind::replacement, n, k, w)});
            }
            break;
        case OperatorFamily::q_full:
            add_term({Factor(FactorKind::replacement, n, k, range_wires(1, n))});
            break;
    }
}

WalkOperator::~WalkOperator() = default;

FunctionVector WalkOperator::apply(const FunctionVector &f) const {
    check_same_shape(spec_.shape(), f.shape);
    check_cap(f.shape, state_cap(), "operator apply");
    const uint64_t N = f.size();
    FunctionVector out(f.shape);
    std::vector<double> cur, next(N);
    for (const Term &t : terms_) {
        cur = f.values;
        for (const Factor &fac : t.factors) {
            fac.apply(cur, next);
            std::swap(cur, next);
        }
        parallel_for(N, [&](uint64_t begin, uint64_t end) {
            for (uint64_t x = begin; x < end; x++) {
                out.values[x] += cur[x];
            }
        });
    }
    const double T = double(terms_.size());
    if (terms_.size() > 1) {
        for (double &v : out.values) {
            v /= T;
        }
    }
    return out;
}

double WalkOperator::transition_probability(uint64_t x, uint64_t y) const {
    const int n = spec_.n, k = spec_.k;
    uint64_t xr[64], yr[64];
    for (int i = 1; i <= k; i++) {
        xr[i - 1] = tuple_row(x, n, k, i);
        yr[i - 1] = tuple_row(y, n, k, i);
    }
    double total = 0;
    for (const Term &t : terms_) {
        bool agree = true;
        for (int i = 0; i < k && agree; i++) {
            agree = ((xr[i] ^ yr[i]) & ~t.support) == 0;
        }
        if (!agree) {
            continue;
        }
        double p = 1.0;
        for (const Factor &fac : t.factors) {
            p *= fac.local_probability(xr, yr);
            if (p == 0.0) {
                break;
            }
        }
        total += p;
    }
    return total / double(terms_.size());
}

double WalkOperator::transition_probability(const TupleState &x, const TupleState &y) const {
    check_same_shape(spec_.shape(), x.shape());
    check_same_shape(spec_.shape(), y.shape());
    return transition_probability(x.index(), y.index());
}

Rational WalkOperator::transition_probability_exact(const TupleState &x, const TupleState &y) const {
    check_same_shape(spec_.shape(), x.shape());
    check_same_shape(spec_.shape(), y.shape());
    if (terms_.size() != 1 || terms_[0].factors.size() != 1) {
        throw UsageError("exact transition probabilities need a single-factor family, got " + spec_.to_string());
    }
    const Term &t = terms_[0];
    const Factor &fac = t.factors[0];
    const int k = spec_.k;
    uint64_t xr[64], yr[64];
    for (int i = 1; i <= k; i++) {
        xr[i - 1] = x.row(i);
        yr[i - 1] = y.row(i);
        if ((xr[i - 1] ^ yr[i - 1]) & ~t.support) {
            return Rational{0, 1};
        }
    }
    switch (fac.kind) {
        case FactorKind::replacement:
            return Rational{1, uint64_t{1} << (fac.wires.size() * k)};
        case FactorKind::des2:
            return Rational{uint64_t(fac.des2_count(xr, yr)), 48};
        case FactorKind::alternating: {
            int d = 0;
            if (!fac.pattern_map_ok(xr, yr, d)) {
                return Rational{0, 1};
            }
            uint64_t den = 1;
            for (int i = 0; i < d; i++) {
                den *= fac.points() - uint64_t(i);
            }
            return Rational{1, den};
        }
    }
    return Rational{0, 1};
}

FunctionVector operator_apply(const OperatorSpec &spec, const FunctionVector &f) {
    return WalkOperator(spec).apply(f);
}

double transition_probability(const OperatorSpec &spec, const TupleState &x, const TupleState &y) {
    return WalkOperator(spec).transition_probability(x, y);
}

DenseMatrix materialize(const OperatorSpec &spec) {
    check_cap(spec.shape(), dense_cap(), "materialize " + spec.to_string());
    WalkOperator op(spec);
    const uint64_t N = spec.shape().dim();
    DenseMatrix m(N);
    parallel_for(N, [&](uint64_t begin, uint64_t end) {
        for (uint64_t x = begin; x < end; x++) {
            for (uint64_t y = 0; y < N; y++) {
                m(x, y) = op.transition_probability(x, y);
            }
        }
    });
    return m;
}

}  // namespace revmix
