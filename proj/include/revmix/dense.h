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

#ifndef REVMIX_DENSE_H
#define REVMIX_DENSE_H

#include <cstdint>
#include <vector>

namespace revmix {

/// Square row-major matrix of doubles.
class DenseMatrix {
   public:
    DenseMatrix() = default;
    explicit DenseMatrix(uint64_t dim, double fill = 0.0);
    static DenseMatrix identity(uint64_t dim);

    uint64_t dim() const {
        return dim_;
    }
    double &operator()(uint64_t r, uint64_t c) {
        return data_[r * dim_ + c];
    }
    double operator()(uint64_t r, uint64_t c) const {
        return data_[r * dim_ + c];
    }
    const std::vector<double> &data() const {
        return data_;
    }

    DenseMatrix transpose() const;
    DenseMatrix operator*(const DenseMatrix &other) const;
    DenseMatrix operator+(const DenseMatrix &other) const;
    DenseMatrix operator-(const DenseMatrix &other) const;
    DenseMatrix scaled(double c) const;
    DenseMatrix power(int t) const;
    std::vector<double> multiply(const std::vector<double> &v) const;

    /// max |A(r,c) - A(c,r)|.
    double asymmetry() const;
    double max_abs_diff(const DenseMatrix &other) const;

   private:
    uint64_t dim_ = 0;
    std::vector<double> data_;
};

struct JacobiOptions {
    double off_diagonal_threshold = 1e-13;
    double symmetry_tolerance = 1e-12;
    int max_sweeps = 100;
};

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
/// Throws DimensionError for an asymmetric input and ConvergenceError if the
/// off-diagonal mass does not drop below the threshold.
std::vector<double> dense_sym_eigs(const DenseMatrix &m, const JacobiOptions &options = {});

}  // namespace revmix

#endif
