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

#include "revmix/operator_expr.h"

#include <cctype>
#include <sstream>

#include "revmix/errors.h"
#include "revmix/parallel.h"
#include "revmix/walk_operator.h"

namespace revmix {

struct OperatorExpr::Node {
    enum class Kind { leaf, identity, sum, product, power } kind;
    TupleShape shape;
    std::shared_ptr<const WalkOperator> op;                // leaf
    std::vector<std::pair<double, OperatorExpr>> terms;  // sum: coefficient, expression
    std::vector<OperatorExpr> factors;                   // product, applied last to first
    int exponent = 0;                                    // power: factors[0]^exponent
};

namespace {

using Node = OperatorExpr::Node;

void check_shapes(const TupleShape &a, const TupleShape &b) {
    check_same_shape(a, b);
}

std::string format_coef(double c) {
    std::ostringstream s;
    s.precision(17);
    s << c;
    return s.str();
}

}  // namespace

OperatorExpr OperatorExpr::leaf(const OperatorSpec &spec) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::leaf;
    n->shape = spec.shape();
    n->op = std::make_shared<const WalkOperator>(spec);
    return OperatorExpr(n);
}

OperatorExpr OperatorExpr::identity(const TupleShape &shape) {
    shape.validate();
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::identity;
    n->shape = shape;
    return OperatorExpr(n);
}

OperatorExpr OperatorExpr::scalar(const TupleShape &shape, double c) {
    return identity(shape).scaled(c);
}

OperatorExpr OperatorExpr::laplacian(const OperatorExpr &e) {
    return identity(e.shape()) - e;
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr &other) const {
    check_shapes(shape(), other.shape());
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::sum;
    n->shape = shape();
    n->terms = {{1.0, *this}, {1.0, other}};
    return OperatorExpr(n);
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr &other) const {
    check_shapes(shape(), other.shape());
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::sum;
    n->shape = shape();
    n->terms = {{1.0, *this}, {-1.0, other}};
    return OperatorExpr(n);
}

OperatorExpr OperatorExpr::operator*(const OperatorExpr &other) const {
    check_shapes(shape(), other.shape());
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::product;
    n->shape = shape();
    n->factors = {*this, other};
    return OperatorExpr(n);
}

OperatorExpr OperatorExpr::scaled(double c) const {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::sum;
    n->shape = shape();
    n->terms = {{c, *this}};
    return OperatorExpr(n);
}

OperatorExpr OperatorExpr::power(int t) const {
    if (t < 0) {
        throw UsageError("negative operator power");
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::power;
    n->shape = shape();
    n->factors = {*this};
    n->exponent = t;
    return OperatorExpr(n);
}

OperatorExpr OperatorExpr::adjoint() const {
    switch (node_->kind) {
        case Node::Kind::leaf:
        case Node::Kind::identity:
            return *this;
        case Node::Kind::sum: {
            auto n = std::make_shared<Node>(*node_);
            for (auto &t : n->terms) {
                t.second = t.second.adjoint();
            }
            return OperatorExpr(n);
        }
        case Node::Kind::product: {
            auto n = std::make_shared<Node>(*node_);
            n->factors.assign(node_->factors.rbegin(), node_->factors.rend());
            for (auto &f : n->factors) {
                f = f.adjoint();
            }
            return OperatorExpr(n);
        }
        case Node::Kind::power: {
            auto n = std::make_shared<Node>(*node_);
            n->factors[0] = n->factors[0].adjoint();
            return OperatorExpr(n);
        }
    }
    return *this;
}

const TupleShape &OperatorExpr::shape() const {
    return node_->shape;
}

FunctionVector OperatorExpr::apply(const FunctionVector &f) const {
    check_same_shape(shape(), f.shape);
    switch (node_->kind) {
        case Node::Kind::leaf:
            return node_->op->apply(f);
        case Node::Kind::identity:
            return f;
        case Node::Kind::sum: {
            FunctionVector out(shape());
            for (const auto &[c, e] : node_->terms) {
                FunctionVector g = e.apply(f);
                parallel_for(out.size(), [&](uint64_t b, uint64_t end) {
                    for (uint64_t x = b; x < end; x++) {
                        out[x] += c * g[x];
                    }
                });
            }
            return out;
        }
        case Node::Kind::product: {
            FunctionVector g = f;
            for (auto it = node_->factors.rbegin(); it != node_->factors.rend(); ++it) {
                g = it->apply(g);
            }
            return g;
        }
        case Node::Kind::power: {
            FunctionVector g = f;
            for (int i = 0; i < node_->exponent; i++) {
                g = node_->factors[0].apply(g);
            }
            return g;
        }
    }
    return f;
}

std::string OperatorExpr::to_string() const {
    switch (node_->kind) {
        case Node::Kind::leaf:
            return node_->op->spec().to_string();
        case Node::Kind::identity:
            return "I";
        case Node::Kind::sum: {
            std::string s = "(";
            for (size_t i = 0; i < node_->terms.size(); i++) {
                const auto &[c, e] = node_->terms[i];
                if (c == 1.0) {
                    s += i ? " + " : "";
                } else if (c == -1.0) {
                    s += i ? " - " : "-";
                } else {
                    s += (i ? " + " : "") + format_coef(c) + "*";
                }
                s += e.to_string();
            }
            return s + ")";
        }
        case Node::Kind::product: {
            std::string s;
            for (size_t i = 0; i < node_->factors.size(); i++) {
                s += (i ? " * " : "") + node_->factors[i].to_string();
            }
            return s;
        }
        case Node::Kind::power:
            return "(" + node_->factors[0].to_string() + ")^" + std::to_string(node_->exponent);
    }
    return "?";
}

DenseMatrix materialize(const OperatorExpr &e) {
    check_cap(e.shape(), dense_cap(), "materialize " + e.to_string());
    const uint64_t N = e.shape().dim();
    DenseMatrix m(N);
    for (uint64_t y = 0; y < N; y++) {
        FunctionVector col = e.apply(FunctionVector::basis(e.shape(), y));
        for (uint64_t x = 0; x < N; x++) {
            m(x, y) = col[x];
        }
    }
    return m;
}

namespace {

class ExprParser {
   public:
    ExprParser(std::string_view text, int n, int k) : text_(text), shape_{n, k} {
        shape_.validate();
    }

    OperatorExpr parse_all() {
        OperatorExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return e;
    }

   private:
    [[noreturn]] void fail(const std::string &msg) {
        throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " of '" + std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) {
            pos_++;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            pos_++;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    OperatorExpr parse_expr() {
        bool negate = accept('-');
        OperatorExpr e = parse_term();
        if (negate) {
            e = e.scaled(-1.0);
        }
        while (true) {
            if (accept('+')) {
                e = e + parse_term();
            } else if (accept('-')) {
                e = e - parse_term();
            } else {
                return e;
            }
        }
    }

    OperatorExpr parse_term() {
        OperatorExpr e = parse_factor();
        while (accept('*')) {
            e = e * parse_factor();
        }
        return e;
    }

    OperatorExpr parse_factor() {
        OperatorExpr e = parse_primary();
        if (accept('^')) {
            skip_ws();
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
                pos_++;
            }
            if (start == pos_) {
                fail("expected an exponent");
            }
            e = e.power(std::stoi(std::string(text_.substr(start, pos_ - start))));
        }
        return e;
    }

    OperatorExpr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of expression");
        }
        char c = text_[pos_];
        if ((c == 'R' || c == 'Q') && pos_ + 1 < text_.size() && text_[pos_ + 1] == '[') {
            size_t close = text_.find(']', pos_);
            if (close == std::string_view::npos) {
                fail("unterminated operator");
            }
            auto spec = parse_operator_spec(text_.substr(pos_, close - pos_ + 1), shape_.n, shape_.k);
            pos_ = close + 1;
            return OperatorExpr::leaf(spec);
        }
        if (c == 'L' && next_nonspace_is('(')) {
            pos_++;
            expect('(');
            OperatorExpr e = parse_expr();
            expect(')');
            return OperatorExpr::laplacian(e);
        }
        if (c == 'I') {
            pos_++;
            return OperatorExpr::identity(shape_);
        }
        if (accept('(')) {
            OperatorExpr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit((unsigned char)c) || c == '.') {
            size_t used = 0;
            double v;
            try {
                v = std::stod(std::string(text_.substr(pos_)), &used);
            } catch (const std::logic_error &) {
                fail("bad number");
            }
            pos_ += used;
            return OperatorExpr::scalar(shape_, v);
        }
        fail("unexpected character");
    }

    bool next_nonspace_is(char c) const {
        size_t p = pos_ + 1;
        while (p < text_.size() && std::isspace((unsigned char)text_[p])) {
            p++;
        }
        return p < text_.size() && text_[p] == c;
    }

    std::string_view text_;
    TupleShape shape_;
    size_t pos_ = 0;
};

}  // namespace

OperatorExpr parse_operator_expr(std::string_view text, int n, int k) {
    return ExprParser(text, n, k).parse_all();
}

}  // namespace revmix
