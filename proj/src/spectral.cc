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

#include "revmix/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "revmix/errors.h"
#include "revmix/rng.h"
#include "revmix/walk_operator.h"

namespace revmix {

std::string to_string(NormMethod method) {
    return method == NormMethod::dense ? "dense" : "power";
}

double dense_op_norm(const DenseMatrix &m) {
    if (m.dim() == 0) {
        return 0.0;
    }
    if (m.asymmetry() <= 1e-12) {
        auto eig = dense_sym_eigs(m);
        return std::max(std::abs(eig.front()), std::abs(eig.back()));
    }
    auto eig = dense_sym_eigs(m.transpose() * m);
    return std::sqrt(std::max(0.0, eig.back()));
}

namespace {

double euclid(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); i++) {
        s += a[i] * b[i];
    }
    return s;
}

SpectralReport power_norm(const OperatorExpr &e, const PowerOptions &options) {
    const OperatorExpr b = e.adjoint() * e;
    const TupleShape shape = e.shape();
    SpectralReport report{NormMethod::power, 0.0, 0, std::numeric_limits<double>::infinity(), options.tolerance, false};
    for (int attempt = 0; attempt <= options.max_restarts; attempt++) {
        Rng rng(derive_seed(options.seed, uint64_t(attempt)));
        FunctionVector v(shape);
        for (auto &x : v.values) {
            x = 2 * rng.uniform_real() - 1;
        }
        double nv = euclid(v.values);
        for (auto &x : v.values) {
            x /= nv;
        }
        double lambda = 0;
        bool zero = false;
        for (int it = 1; it <= options.max_iterations; it++) {
            FunctionVector w = b.apply(v);
            double next = dot(v.values, w.values);
            double nw = euclid(w.values);
            report.iterations++;
            if (nw == 0.0) {
                zero = true;
                break;
            }
            double change = std::abs(next - lambda) / std::max(std::abs(next), 1e-300);
            lambda = next;
            for (size_t i = 0; i < w.values.size(); i++) {
                v.values[i] = w.values[i] / nw;
            }
            if (it > 1 && change <= options.tolerance) {
                report.value = std::sqrt(std::max(0.0, lambda));
                report.residual = change;
                report.converged = true;
                return report;
            }
            report.residual = change;
        }
        if (zero && attempt == options.max_restarts) {
            // B annihilated every start vector: the operator is zero.
            report.value = 0.0;
            report.residual = 0.0;
            report.converged = true;
            return report;
        }
        report.value = std::sqrt(std::max(0.0, lambda));
    }
    return report;
}

}  // namespace

SpectralReport op_norm(const OperatorExpr &e, NormMethod method, const PowerOptions &options) {
    if (method == NormMethod::power) {
        check_cap(e.shape(), state_cap(), "power iteration");
        return power_norm(e, options);
    }
    double v = dense_op_norm(materialize(e));
    return SpectralReport{NormMethod::dense, v, 0, 0.0, 1e-13, true};
}

SpectralReport spectral_gap(const OperatorSpec &spec, NormMethod method, const PowerOptions &options) {
    auto e = OperatorExpr::leaf(spec) - OperatorExpr::leaf(OperatorSpec::r_full(spec.n, spec.k));
    SpectralReport r = op_norm(e, method, options);
    r.value = 1.0 - r.value;
    return r;
}

Lambda2Report lambda2_dense(const DenseMatrix &laplacian, double merge_tolerance) {
    auto eig = dense_sym_eigs(laplacian);
    Lambda2Report r{true, std::numeric_limits<double>::quiet_NaN(), {}};
    for (double v : eig) {
        if (r.distinct.empty() || v - r.distinct.back() > merge_tolerance) {
            r.distinct.push_back(v);
        }
    }
    if (r.distinct.size() >= 2) {
        r.degenerate = false;
        r.value = r.distinct[1];
    }
    return r;
}

Lambda2Report lambda2(const OperatorExpr &laplacian, double merge_tolerance) {
    return lambda2_dense(materialize(laplacian), merge_tolerance);
}

PsdReport psd_dominates(const OperatorExpr &a, const OperatorExpr &b, double c, double tolerance) {
    auto eig = dense_sym_eigs(materialize(a - b.scaled(c)));
    return PsdReport{eig.front() >= -tolerance, eig.front()};
}

double quadratic_form(const FunctionVector &f, const OperatorExpr &e, const FunctionVector &g) {
    check_same_shape(f.shape, e.shape());
    return inner(f, e.apply(g));
}

DesignEpsilon design_epsilon(const OperatorSpec &spec, int t) {
    if (t < 0) {
        throw UsageError("step count must be nonnegative");
    }
    DenseMatrix m = materialize(spec);
    DenseMatrix full = materialize(OperatorSpec::r_full(spec.n, spec.k));
    double direct = dense_op_norm(m.power(t) - full);
    double one = dense_op_norm(m - full);
    return DesignEpsilon{direct, std::pow(one, t)};
}

double kwise_tv(const OperatorSpec &spec, int t) {
    if (t < 0) {
        throw UsageError("step count must be nonnegative");
    }
    const TupleShape shape = spec.shape();
    check_cap(shape, state_cap(), "kwise_tv");
    const uint64_t points = uint64_t{1} << shape.n;
    if (uint64_t(shape.k) > points) {
        throw UsageError("no distinct k-tuples exist");
    }
    double distinct_count = 1;
    for (int i = 0; i < shape.k; i++) {
        distinct_count *= double(points - uint64_t(i));
    }
    const double u = 1.0 / distinct_count;
    auto rows_distinct = [&](uint64_t x) {
        for (int i = 1; i <= shape.k; i++) {
            for (int j = i + 1; j <= shape.k; j++) {
                if (tuple_row(x, shape.n, shape.k, i) == tuple_row(x, shape.n, shape.k, j)) {
                    return false;
                }
            }
        }
        return true;
    };
    std::vector<uint8_t> distinct(shape.dim());
    for (uint64_t x = 0; x < shape.dim(); x++) {
        distinct[x] = rows_distinct(x);
    }
    std::unique_ptr<WalkOperator> op;
    if (t > 0) {
        op = std::make_unique<WalkOperator>(spec);
    }
    double worst = 0;
    for (uint64_t x = 0; x < shape.dim(); x++) {
        if (!distinct[x]) {
            continue;
        }
        // Walk operators are symmetric, so row x of P^t is P^t e_x.
        FunctionVector p = FunctionVector::basis(shape, x);
        for (int s = 0; s < t; s++) {
            p = op->apply(p);
        }
        double tv = 0;
        for (uint64_t y = 0; y < shape.dim(); y++) {
            double q = distinct[y] ? u : 0.0;
            if (p[y] > q) {
                tv += p[y] - q;
            }
        }
        worst = std::max(worst, tv);
    }
    return worst;
}

bool AxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck &c) { return !c.checked || c.pass; });
}

AxiomReport verify_operator_axioms(const OperatorSpec &spec, double tolerance, double psd_tolerance) {
    AxiomReport report{spec.to_string(), {}};
    DenseMatrix m = materialize(spec);
    const uint64_t N = m.dim();
    auto add = [&](const std::string &name, double dev, double tol) {
        report.checks.push_back(AxiomCheck{name, true, dev, tol, dev <= tol});
    };
    auto skip = [&](const std::string &name) { report.checks.push_back(AxiomCheck{name, false, 0.0, 0.0, true}); };

    add("symmetry", m.asymmetry(), tolerance);
    double neg = 0, row_dev = 0, col_dev = 0;
    for (uint64_t x = 0; x < N; x++) {
        double rs = 0, cs = 0;
        for (uint64_t y = 0; y < N; y++) {
            neg = std::max(neg, -m(x, y));
            rs += m(x, y);
            cs += m(y, x);
        }
        row_dev = std::max(row_dev, std::abs(rs - 1));
        col_dev = std::max(col_dev, std::abs(cs - 1));
    }
    add("nonnegative", neg, tolerance);
    add("row sums", row_dev, tolerance);
    add("column sums", col_dev, tolerance);
    {
        FunctionVector one(spec.shape(), 1.0);
        add("fixed vector 1", max_abs_diff(WalkOperator(spec).apply(one), one), tolerance);
    }
    if (spec.is_projector_family()) {
        add("idempotence", (m * m).max_abs_diff(m), tolerance);
    } else {
        skip("idempotence");
    }
    if (spec.dist == GateDist::des2) {
        skip("psd over full");
    } else {
        OperatorSpec full = spec.is_q_family() ? OperatorSpec::q_full(spec.n, spec.k)
                                               : OperatorSpec::r_full(spec.n, spec.k);
        auto eig = dense_sym_eigs(m - materialize(full));
        report.checks.push_back(
            AxiomCheck{"psd over full", true, std::max(0.0, -eig.front()), psd_tolerance, eig.front() >= -psd_tolerance});
    }
    return report;
}

FourierReport fourier_eigencheck(int m, int k) {
    const TupleShape shape{m, k};
    check_cap(shape, state_cap(), "fourier_eigencheck");
    WalkOperator loo(OperatorSpec::q_loo(m, k));
    WalkOperator full(OperatorSpec::q_full(m, k));
    FourierReport r{m, k, 0, 0, 0.0};
    for (const auto &idx : all_fourier_indices(m, k)) {
        FunctionVector chi = chi_vector(idx, m, k);
        FunctionVector a = loo.apply(chi);
        FunctionVector b = full.apply(chi);
        bool singleton = idx.support_union().size() == 1;
        double eig = singleton ? 1.0 / m : 0.0;
        for (uint64_t x = 0; x < chi.size(); x++) {
            r.max_deviation = std::max(r.max_deviation, std::abs(a[x] - b[x] - eig * chi[x]));
        }
        r.characters++;
        r.singleton_characters += singleton;
    }
    return r;
}

}  // namespace revmix
