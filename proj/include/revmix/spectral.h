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

#ifndef REVMIX_SPECTRAL_H
#define REVMIX_SPECTRAL_H

#include <cstdint>
#include <string>
#include <vector>

#include "revmix/dense.h"
#include "revmix/operator_expr.h"
#include "revmix/operator_spec.h"

namespace revmix {

enum class NormMethod { dense, power };

std::string to_string(NormMethod method);

struct PowerOptions {
    double tolerance = 1e-10;
    int max_iterations = 100000;
    int max_restarts = 3;
    uint64_t seed = 1;
};

struct SpectralReport {
    NormMethod method;
    double value;
    int iterations;
    double residual;
    double tolerance;
    bool converged;
};

/// Operator norm of a matrix: max |eigenvalue| if symmetric, else sqrt(lambda_max(M^T M)).
double dense_op_norm(const DenseMatrix &m);

/// ||e||_op. The power method iterates on adjoint(e) * e from a random unit vector
/// and reports the square root of the converged Rayleigh quotient; `residual` is
/// ||Bv - lambda v|| / lambda for the final iterate.
SpectralReport op_norm(const OperatorExpr &e, NormMethod method, const PowerOptions &options = {});

/// 1 - ||spec - R_full||_op.
SpectralReport spectral_gap(const OperatorSpec &spec, NormMethod method, const PowerOptions &options = {});

struct Lambda2Report {
    bool degenerate;  // a single distinct eigenvalue
    double value;     // second-smallest distinct eigenvalue (NaN when degenerate)
    std::vector<double> distinct;
};

/// Eigenvalues within `merge_tolerance` of each other count as one.
Lambda2Report lambda2(const OperatorExpr &laplacian, double merge_tolerance = 1e-9);
Lambda2Report lambda2_dense(const DenseMatrix &laplacian, double merge_tolerance = 1e-9);

struct PsdReport {
    bool holds;
    double min_eigenvalue;
};

/// Whether A - c B is PSD: min eigenvalue >= -tolerance.
PsdReport psd_dominates(const OperatorExpr &a, const OperatorExpr &b, double c, double tolerance = 1e-10);

/// <f, e g> under the mean inner product.
double quadratic_form(const FunctionVector &f, const OperatorExpr &e, const FunctionVector &g);

struct DesignEpsilon {
    double direct;      // ||spec^t - R_full||
    double telescoped;  // ||spec - R_full||^t
};

/// Dense.
DesignEpsilon design_epsilon(const OperatorSpec &spec, int t);

/// Max over distinct starting tuples of the total variation distance between
/// the t-step distribution and uniform over distinct tuples. Matrix-free.
double kwise_tv(const OperatorSpec &spec, int t);

struct AxiomCheck {
    std::string name;
    bool checked;
    double deviation;
    double tolerance;
    bool pass;
};

struct AxiomReport {
    std::string spec;
    std::vector<AxiomCheck> checks;
    bool all_pass() const;
};

/// Symmetry, nonnegativity, row and column sums, fixed vector 1 (matrix-free),
/// idempotence for projector families, and PSD of spec - R_full (Q_full for Q
/// families). Dense.
AxiomReport verify_operator_axioms(const OperatorSpec &spec, double tolerance = 1e-12, double psd_tolerance = 1e-10);

struct FourierReport {
    int m;
    int k;
    uint64_t characters;
    uint64_t singleton_characters;
    double max_deviation;
};

/// Applies Q_loo - Q_full to every character and compares with (1/m) chi for a
/// singleton union and 0 otherwise.
FourierReport fourier_eigencheck(int m, int k);

}  // namespace revmix

#endif
