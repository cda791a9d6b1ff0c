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

#include "revmix/dense.h"

#include <algorithm>
#include <cmath>

#include "revmix/errors.h"
#include "revmix/parallel.h"

namespace revmix {

DenseMatrix::DenseMatrix(uint64_t dim, double fill) : dim_(dim), data_(dim * dim, fill) {
}

DenseMatrix DenseMatrix::identity(uint64_t dim) {
    DenseMatrix m(dim);
    for (uint64_t i = 0; i < dim; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(dim_);
    for (uint64_t r = 0; r < dim_; r++) {
        for (uint64_t c = 0; c < dim_; c++) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix &other) const {
    if (other.dim_ != dim_) {
        throw DimensionError("matrix dimension mismatch");
    }
    DenseMatrix out(dim_);
    parallel_for(dim_, [&](uint64_t begin, uint64_t end) {
        for (uint64_t r = begin; r < end; r++) {
            double *row = &out.data_[r * dim_];
            for (uint64_t j = 0; j < dim_; j++) {
                double a = (*this)(r, j);
                if (a == 0.0) {
                    continue;
                }
                const double *src = &other.data_[j * dim_];
                for (uint64_t c = 0; c < dim_; c++) {
                    row[c] += a * src[c];
                }
            }
        }
    });
    return out;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix &other) const {
    if (other.dim_ != dim_) {
        throw DimensionError("matrix dimension mismatch");
    }
    DenseMatrix out(*this);
    for (size_t i = 0; i < data_.size(); i++) {
        out.data_[i] += other.data_[i];
    }
    return out;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix &other) const {
    return *this + other.scaled(-1.0);
}

DenseMatrix DenseMatrix::scaled(double c) const {
    DenseMatrix out(*this);
    for (double &v : out.data_) {
        v *= c;
    }
    return out;
}

DenseMatrix DenseMatrix::power(int t) const {
    if (t < 0) {
        throw std::invalid_argument("negative matrix power");
    }
    DenseMatrix out = identity(dim_);
    for (int i = 0; i < t; i++) {
        out = out * *this;
    }
    return out;
}

std::vector<double> DenseMatrix::multiply(const std::vector<double> &v) const {
    if (v.size() != dim_) {
        throw DimensionError("vector length mismatch");
    }
    std::vector<double> out(dim_, 0.0);
    for (uint64_t r = 0; r < dim_; r++) {
        double s = 0;
        for (uint64_t c = 0; c < dim_; c++) {
            s += (*this)(r, c) * v[c];
        }
        out[r] = s;
    }
    return out;
}

double DenseMatrix::asymmetry() const {
    double m = 0;
    for (uint64_t r = 0; r < dim_; r++) {
        for (uint64_t c = r + 1; c < dim_; c++) {
            m = std::max(m, std::abs((*this)(r, c) - (*this)(c, r)));
        }
    }
    return m;
}

double DenseMatrix::max_abs_diff(const DenseMatrix &other) const {
    if (other.dim_ != dim_) {
        throw DimensionError("matrix dimension mismatch");
    }
    double m = 0;
    for (size_t i = 0; i < data_.size(); i++) {
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    }
    return m;
}

std::vector<double> dense_sym_eigs(const DenseMatrix &m, const JacobiOptions &options) {
    if (m.asymmetry() > options.symmetry_tolerance) {
        throw DimensionError("eigensolver input is not symmetric (asymmetry " + std::to_string(m.asymmetry()) + ")");
    }
    const uint64_t n = m.dim();
    // Work on the symmetrized copy so rounding asymmetry cannot accumulate.
    std::vector<double> a(n * n);
    for (uint64_t r = 0; r < n; r++) {
        for (uint64_t c = 0; c < n; c++) {
            a[r * n + c] = 0.5 * (m(r, c) + m(c, r));
        }
    }
    auto at = [&](uint64_t r, uint64_t c) -> double & { return a[r * n + c]; };

    bool converged = n <= 1;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; sweep++) {
        double off = 0;
        for (uint64_t p = 0; p < n; p++) {
            for (uint64_t q = p + 1; q < n; q++) {
                off = std::max(off, std::abs(at(p, q)));
            }
        }
        if (off <= options.off_diagonal_threshold) {
            converged = true;
            break;
        }
        for (uint64_t p = 0; p + 1 < n; p++) {
            for (uint64_t q = p + 1; q < n; q++) {
                double apq = at(p, q);
                if (std::abs(apq) <= options.off_diagonal_threshold * 1e-3) {
                    continue;
                }
                double app = at(p, p), aqq = at(q, q);
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (uint64_t r = 0; r < n; r++) {
                    double arp = at(r, p), arq = at(r, q);
                    at(r, p) = c * arp - s * arq;
                    at(r, q) = s * arp + c * arq;
                }
                for (uint64_t r = 0; r < n; r++) {
                    double apr = at(p, r), aqr = at(q, r);
                    at(p, r) = c * apr - s * aqr;
                    at(q, r) = s * apr + c * aqr;
                }
                at(p, q) = 0;
                at(q, p) = 0;
            }
        }
    }
    if (!converged) {
        double off = 0;
        for (uint64_t p = 0; p < n; p++) {
            for (uint64_t q = p + 1; q < n; q++) {
                off = std::max(off, std::abs(at(p, q)));
            }
        }
        if (off > options.off_diagonal_threshold) {
            throw ConvergenceError("Jacobi sweeps exhausted with off-diagonal " + std::to_string(off));
        }
    }
    std::vector<double> eig(n);
    for (uint64_t i = 0; i < n; i++) {
        eig[i] = at(i, i);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace revmix
