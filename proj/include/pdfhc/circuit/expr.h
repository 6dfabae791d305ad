// Copyright 2026 The pdfhc Authors.
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

#ifndef PDFHC_CIRCUIT_EXPR_H_
#define PDFHC_CIRCUIT_EXPR_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "pdfhc/circuit/circuit.h"

namespace pdfhc {

// Immutable Boolean expression tree. Subtrees are shared, so copies are cheap.
class BooleanExpr {
 public:
  enum class Kind { kVar, kConst, kNot, kAnd, kOr };

  static BooleanExpr Var(std::string name);
  static BooleanExpr Const(bool value);
  static BooleanExpr Not(BooleanExpr operand);
  static BooleanExpr And(BooleanExpr lhs, BooleanExpr rhs);
  static BooleanExpr Or(BooleanExpr lhs, BooleanExpr rhs);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  bool value() const { return node_->value; }
  // Not: lhs() is the operand.
  const BooleanExpr& lhs() const { return *node_->lhs; }
  const BooleanExpr& rhs() const { return *node_->rhs; }

  bool Evaluate(const std::map<std::string, bool, std::less<>>& assignment) const;
  std::string ToString() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    bool value = false;
    std::shared_ptr<const BooleanExpr> lhs;
    std::shared_ptr<const BooleanExpr> rhs;
  };
  explicit BooleanExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar, loosest first: or := and ('|' and)*, and := unary ('&' unary)*,
// unary := ('!' | '~') unary | '(' or ')' | '0' | '1' | identifier.
// Throws std::invalid_argument with the offending column.
BooleanExpr ParseExpr(std::string_view text);

// Compiles to Fredkin gates: NOT as F(x, 0, 1), AND as F(x, y, 0), OR by
// De Morgan. Input slots follow `var_order`; the single output is labelled
// "out". Throws CircuitError naming any variable missing from `var_order`.
Circuit Compile(const BooleanExpr& expr, std::span<const std::string> var_order,
                std::string name = "expr");

}  // namespace pdfhc

#endif  // PDFHC_CIRCUIT_EXPR_H_
