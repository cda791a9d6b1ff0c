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

#ifndef REVMIX_OPERATOR_EXPR_H
#define REVMIX_OPERATOR_EXPR_H

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revmix/dense.h"
#include "revmix/operator_spec.h"
#include "revmix/tuple_state.h"

namespace revmix {

class WalkOperator;

/// Linear combinations, products and powers of walk operators on one (n, k) shape.
/// Products apply right to left: (A * B) f = A (B f).
class OperatorExpr {
   public:
    static OperatorExpr leaf(const OperatorSpec &spec);
    static OperatorExpr identity(const TupleShape &shape);
    static OperatorExpr scalar(const TupleShape &shape, double c);
    /// The Laplacian I - e.
    static OperatorExpr laplacian(const OperatorExpr &e);

    OperatorExpr operator+(const OperatorExpr &other) const;
    OperatorExpr operator-(const OperatorExpr &other) const;
    OperatorExpr operator*(const OperatorExpr &other) const;
    OperatorExpr scaled(double c) const;
    OperatorExpr power(int t) const;

    /// Leaves are self-adjoint, so the adjoint reverses products.
    OperatorExpr adjoint() const;

    const TupleShape &shape() const;
    FunctionVector apply(const FunctionVector &f) const;
    std::string to_string() const;

    struct Node;

   private:
    explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {
    }
    std::shared_ptr<const Node> node_;
};

/// Dense matrix with column y equal to apply(e_y). Throws SizeCapError above dense_cap().
DenseMatrix materialize(const OperatorExpr &e);

/// Grammar:
///   expr    := ['-'] term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := primary ('^' integer)?
///   primary := R[...] | Q[...] | I | L(expr) | (expr) | number
OperatorExpr parse_operator_expr(std::string_view text, int n, int k);

}  // namespace revmix

#endif
