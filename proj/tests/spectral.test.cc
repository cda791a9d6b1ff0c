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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "revmix/errors.h"
#include "revmix/spectral.h"
#include "revmix/walk_operator.h"

namespace revmix {
namespace {

OperatorExpr leaf(const OperatorSpec &s) {
    return OperatorExpr::leaf(s);
}

// Oracle: the largest |eigenvalue| of a symmetric matrix, independent of Jacobi
// and power iteration. Repeated squaring of M^2 approaches a multiple of the
// projector P onto its top eigenspace; then lambda^2 = tr(P M^2) / tr(P).
double norm_by_squaring(const DenseMatrix &m) {
    const DenseMatrix m2 = m * m;
    DenseMatrix a = m2;
    for (int i = 0; i < 10; i++) {
        double fro = 0.0;
        for (double v : a.data()) {
            fro += v * v;
        }
        if (fro == 0.0) {
            return 0.0;
        }
        a = a.scaled(1.0 / std::sqrt(fro));
        a = a * a;
    }
    DenseMatrix am = a * m2;
    double num = 0.0, den = 0.0;
    for (uint64_t i = 0; i < m.dim(); i++) {
        num += am(i, i);
        den += a(i, i);
    }
    return std::sqrt(num / den);
}

TEST(Jacobi, IdentityAndKnownMatrix) {
    auto eig = dense_sym_eigs(DenseMatrix::identity(8));
    ASSERT_EQ(eig.size(), 8u);
    for (double v : eig) {
        EXPECT_NEAR(v, 1.0, 1e-15);
    }
    DenseMatrix m(2);
    m(0, 0) = 2;
    m(0, 1) = m(1, 0) = 1;
    m(1, 1) = 2;
    auto e2 = dense_sym_eigs(m);
    EXPECT_NEAR(e2[0], 1.0, 1e-14);
    EXPECT_NEAR(e2[1], 3.0, 1e-14);
    DenseMatrix bad(2);
    bad(0, 1) = 1.0;
    EXPECT_THROW(dense_sym_eigs(bad), DimensionError);
}

TEST(Jacobi, FullProjectorSpectrum) {
    auto eig = dense_sym_eigs(materialize(OperatorSpec::r_full(3, 2)));
    int ones = 0;
    for (double v : eig) {
        EXPECT_TRUE(std::abs(v) < 1e-12 || std::abs(v - 1.0) < 1e-12) << v;
        ones += std::abs(v - 1.0) < 1e-12;
    }
    // Orbits on pairs: equal and distinct.
    EXPECT_EQ(ones, 2);
}

TEST(Jacobi, LaplacianSpectrumIsShifted) {
    auto spec = OperatorSpec::r_site(3, 1, {1, 2, 3});
    auto r = dense_sym_eigs(materialize(spec));
    auto l = dense_sym_eigs(materialize(OperatorExpr::laplacian(leaf(spec))));
    ASSERT_EQ(r.size(), l.size());
    for (size_t i = 0; i < r.size(); i++) {
        EXPECT_NEAR(l[i], 1.0 - r[r.size() - 1 - i], 1e-12);
    }
}

TEST(OpNorm, LeaveOneOutMinusFull) {
    for (int k = 1; k <= 2; k++) {
        auto e = leaf(OperatorSpec::q_loo(3, k)) - leaf(OperatorSpec::q_full(3, k));
        EXPECT_NEAR(op_norm(e, NormMethod::dense).value, 1.0 / 3.0, 1e-10);
        EXPECT_NEAR(op_norm(e, NormMethod::power).value, 1.0 / 3.0, 1e-8);
    }
    auto zero = leaf(OperatorSpec::r_full(3, 2)) - leaf(OperatorSpec::r_full(3, 2));
    EXPECT_NEAR(op_norm(zero, NormMethod::dense).value, 0.0, 1e-15);
}

TEST(OpNorm, PowerMatchesDenseAndSquaringOracle) {
    auto e = leaf(OperatorSpec::r_nn(4, 2)) - leaf(OperatorSpec::r_full(4, 2));
    SpectralReport dense = op_norm(e, NormMethod::dense);
    SpectralReport power = op_norm(e, NormMethod::power);
    EXPECT_TRUE(power.converged);
    EXPECT_LE(power.residual, power.tolerance);
    EXPECT_NEAR(dense.value, power.value, 1e-8);
    DenseMatrix m = materialize(OperatorSpec::r_nn(4, 2)) - materialize(OperatorSpec::r_full(4, 2));
    EXPECT_NEAR(dense.value, norm_by_squaring(m), 1e-9);
    // op_norm(e)^2 = op_norm(e*e) for self-adjoint e.
    EXPECT_NEAR(dense.value * dense.value, op_norm(e * e, NormMethod::dense).value, 1e-8);
}

TEST(Gap, SingleRowSiteIsFull) {
    EXPECT_NEAR(spectral_gap(OperatorSpec::r_site(3, 1, {1, 2, 3}), NormMethod::dense).value, 1.0, 1e-12);
}

TEST(Gap, NearestNeighborRegression) {
    double gap = spectral_gap(OperatorSpec::r_nn(4, 2), NormMethod::dense).value;
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, 1.0);
    // The default anchors are 1 and 2; naming them explicitly gives the same operator.
    double rev = spectral_gap(OperatorSpec::r_nn(4, 2, {1, 2}), NormMethod::dense).value;
    EXPECT_NEAR(gap, rev, 1e-10);
    DenseMatrix m = materialize(OperatorSpec::r_nn(4, 2)) - materialize(OperatorSpec::r_full(4, 2));
    EXPECT_NEAR(gap, 1.0 - norm_by_squaring(m), 1e-9);
}

TEST(Gap, ReversalSymmetryOfSites) {
    // Site {1,2,4} reversed on 4 wires is {1,3,4}.
    double a = spectral_gap(OperatorSpec::r_site(4, 2, {1, 2, 4}), NormMethod::dense).value;
    double b = spectral_gap(OperatorSpec::r_site(4, 2, {1, 3, 4}), NormMethod::dense).value;
    EXPECT_NEAR(a, b, 1e-10);
}

TEST(Lambda2, FullAndIdentityAndNearestNeighbor) {
    auto lf = lambda2(OperatorExpr::laplacian(leaf(OperatorSpec::r_full(3, 2))));
    ASSERT_FALSE(lf.degenerate);
    EXPECT_NEAR(lf.value, 1.0, 1e-12);
    auto li = lambda2(OperatorExpr::laplacian(OperatorExpr::identity(TupleShape{3, 2})));
    EXPECT_TRUE(li.degenerate);
    auto ln = lambda2(OperatorExpr::laplacian(leaf(OperatorSpec::r_nn(4, 2))));
    auto r = dense_sym_eigs(materialize(OperatorSpec::r_nn(4, 2)));
    double second = 0.0;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
        if (*it < r.back() - 1e-9) {
            second = *it;
            break;
        }
    }
    EXPECT_NEAR(ln.value, 1.0 - second, 1e-10);
}

TEST(Psd, OrderChecks) {
    auto l = OperatorExpr::laplacian(leaf(OperatorSpec::r_nn(4, 2)));
    auto lfull = OperatorExpr::laplacian(leaf(OperatorSpec::r_full(4, 2)));
    EXPECT_TRUE(psd_dominates(l, l, 1.0).holds);
    EXPECT_FALSE(psd_dominates(l, l, 1.0 + 1e-3).holds);
    double lam = lambda2(l).value;
    EXPECT_TRUE(psd_dominates(l, lfull, lam - 1e-9).holds);
    EXPECT_FALSE(psd_dominates(l, lfull, lam + 1e-6).holds);
}

TEST(QuadraticForm, BasicIdentities) {
    const TupleShape shape{3, 2};
    FunctionVector one(shape, 1.0);
    for (auto spec : {OperatorSpec::r_nn(3, 2), OperatorSpec::r_full(3, 2), OperatorSpec::q_loo(3, 2)}) {
        EXPECT_NEAR(quadratic_form(one, leaf(spec), one), 1.0, 1e-12);
    }
    auto diff = leaf(OperatorSpec::q_loo(3, 2)) - leaf(OperatorSpec::q_full(3, 2));
    FunctionVector chi = chi_vector(FourierIndex{{{2}, {2}}}, 3, 2);
    EXPECT_NEAR(quadratic_form(chi, diff, chi), 1.0 / 3.0, 1e-12);
    auto lap = OperatorExpr::laplacian(leaf(OperatorSpec::r_site(3, 2, {1, 2, 3})));
    Rng rng(5);
    for (int i = 0; i < 100; i++) {
        FunctionVector f(shape);
        for (auto &v : f.values) {
            v = rng.uniform_real() * 2 - 1;
        }
        EXPECT_GE(quadratic_form(f, lap, f), -1e-12);
    }
    EXPECT_THROW(quadratic_form(FunctionVector(TupleShape{3, 1}), lap, one), DimensionError);
}

TEST(Design, TelescopingAndMonotone) {
    for (auto spec : {OperatorSpec::r_subset(3, 2, 3), OperatorSpec::r_nn(3, 2)}) {
        double prev = 2.0;
        for (int t = 1; t <= 5; t++) {
            DesignEpsilon d = design_epsilon(spec, t);
            EXPECT_NEAR(d.direct, d.telescoped, 1e-10);
            EXPECT_LE(d.direct, prev + 1e-12);
            prev = d.direct;
        }
    }
    auto nn4 = OperatorSpec::r_nn(4, 2);
    EXPECT_NEAR(design_epsilon(nn4, 0).direct, 1.0, 1e-12);
    // Submultiplicative on the complement.
    EXPECT_LE(design_epsilon(nn4, 5).direct, design_epsilon(nn4, 2).direct * design_epsilon(nn4, 3).direct + 1e-10);
}

TEST(KwiseTv, ExactValuesAndNormConversion) {
    EXPECT_NEAR(kwise_tv(OperatorSpec::r_nn(3, 2), 0), 55.0 / 56.0, 1e-15);
    EXPECT_NEAR(kwise_tv(OperatorSpec::r_full(3, 2), 1), 0.0, 1e-12);
    auto nn = OperatorSpec::r_nn(4, 2);
    double prev = 1.0;
    for (int t = 0; t <= 6; t++) {
        double tv = kwise_tv(nn, t);
        EXPECT_LE(tv, prev + 1e-12);
        prev = tv;
    }
    auto spec = OperatorSpec::r_subset(3, 2, 3);
    for (int t = 1; t <= 5; t++) {
        EXPECT_LE(kwise_tv(spec, t), 0.5 * std::pow(2.0, 3.0) * design_epsilon(spec, t).direct + 1e-12);
    }
}

TEST(Axioms, ReportsPassAndSkips) {
    auto site = verify_operator_axioms(OperatorSpec::r_site(4, 2, {1, 2, 3}));
    EXPECT_TRUE(site.all_pass());
    auto qfull = verify_operator_axioms(OperatorSpec::q_full(3, 2));
    EXPECT_TRUE(qfull.all_pass());
    auto des = verify_operator_axioms(OperatorSpec::r_brickwork(4, 2, GateDist::des2));
    EXPECT_TRUE(des.all_pass());
    for (const auto &c : des.checks) {
        if (c.name == "idempotence") {
            EXPECT_FALSE(c.checked);
        }
    }
}

TEST(Fourier, EigencheckAndCharacters) {
    for (auto [m, k] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 2}}) {
        FourierReport r = fourier_eigencheck(m, k);
        EXPECT_LE(r.max_deviation, 1e-12);
        EXPECT_EQ(r.characters, uint64_t{1} << (m * k));
        // Singleton unions: m choices of wire, each row's set is empty or {a}, not all empty.
        EXPECT_EQ(r.singleton_characters, uint64_t(m) * ((uint64_t{1} << k) - 1));
    }
    auto diff = leaf(OperatorSpec::q_loo(3, 2)) - leaf(OperatorSpec::q_full(3, 2));
    auto c11 = chi_vector(FourierIndex{{{1}, {1}}}, 3, 2);
    auto out = diff.apply(c11);
    for (uint64_t i = 0; i < out.size(); i++) {
        EXPECT_NEAR(out[i], c11[i] / 3.0, 1e-12);
    }
    auto c12 = chi_vector(FourierIndex{{{1}, {2}}}, 3, 2);
    for (double v : diff.apply(c12).values) {
        EXPECT_NEAR(v, 0.0, 1e-12);
    }
    for (double v : diff.apply(FunctionVector(TupleShape{3, 2}, 1.0)).values) {
        EXPECT_NEAR(v, 0.0, 1e-12);
    }
}

TEST(Contraction, ProductBoundAtSmallM) {
    for (int m = 4; m <= 5; m++) {
        auto r_small = leaf(OperatorSpec::r_subset(m, 2, m - 1));
        auto r_big = leaf(OperatorSpec::r_full(m, 2));
        auto d = r_small - r_big;
        double lhs = op_norm(r_small * d, NormMethod::dense).value;
        EXPECT_LE(lhs, op_norm(d, NormMethod::dense).value + 1e-10);
    }
}

TEST(Expr, ParserBuildsSameOperator) {
    auto parsed = parse_operator_expr("R[nn] - R[full]", 4, 2);
    auto built = leaf(OperatorSpec::r_nn(4, 2)) - leaf(OperatorSpec::r_full(4, 2));
    EXPECT_LE(materialize(parsed).max_abs_diff(materialize(built)), 1e-15);
    auto lap = parse_operator_expr("L(R[m=3])^2 + 0.5*I", 3, 1);
    EXPECT_EQ(lap.shape(), (TupleShape{3, 1}));
    EXPECT_THROW(parse_operator_expr("R[nn] +", 4, 2), ParseError);
}

}  // namespace
}  // namespace revmix
