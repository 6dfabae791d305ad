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

#include "pdfhc/circuit/expr.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "pdfhc/circuit/builder.h"

namespace pdfhc {

BooleanExpr BooleanExpr::Var(std::string name) {
  return BooleanExpr(std::make_shared<const Node>(Node{Kind::kVar, std::move(name), false, nullptr, nullptr}));
}

BooleanExpr BooleanExpr::Const(bool value) {
  return BooleanExpr(std::make_shared<const Node>(Node{Kind::kConst, {}, value, nullptr, nullptr}));
}

BooleanExpr BooleanExpr::Not(BooleanExpr operand) {
  return BooleanExpr(std::make_shared<const Node>(
      Node{Kind::kNot, {}, false, std::make_shared<const BooleanExpr>(std::move(operand)), nullptr}));
}

BooleanExpr BooleanExpr::And(BooleanExpr lhs, BooleanExpr rhs) {
  return BooleanExpr(std::make_shared<const Node>(
      Node{Kind::kAnd, {}, false, std::make_shared<const BooleanExpr>(std::move(lhs)),
           std::make_shared<const BooleanExpr>(std::move(rhs))}));
}

BooleanExpr BooleanExpr::Or(BooleanExpr lhs, BooleanExpr rhs) {
  return BooleanExpr(std::make_shared<const Node>(
      Node{Kind::kOr, {}, false, std::make_shared<const BooleanExpr>(std::move(lhs)),
           std::make_shared<const BooleanExpr>(std::move(rhs))}));
}

bool BooleanExpr::Evaluate(const std::map<std::string, bool, std::less<>>& assignment) const {
  switch (kind()) {
    case Kind::kVar: {
      const auto it = assignment.find(name());
      if (it == assignment.end()) throw std::invalid_argument("unbound variable '" + name() + "'");
      return it->second;
    }
    case Kind::kConst:
      return value();
    case Kind::kNot:
      return !lhs().Evaluate(assignment);
    case Kind::kAnd:
      return lhs().Evaluate(assignment) && rhs().Evaluate(assignment);
    case Kind::kOr:
      return lhs().Evaluate(assignment) || rhs().Evaluate(assignment);
  }
  return false;
}

std::string BooleanExpr::ToString() const {
  switch (kind()) {
    case Kind::kVar:
      return name();
    case Kind::kConst:
      return value() ? "1" : "0";
    case Kind::kNot:
      return "!" + lhs().ToString();
    case Kind::kAnd:
      return "(" + lhs().ToString() + " & " + rhs().ToString() + ")";
    case Kind::kOr:
      return "(" + lhs().ToString() + " | " + rhs().ToString() + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BooleanExpr ParseAll() {
    BooleanExpr e = ParseOr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void Fail(const std::string& msg) const {
    throw std::invalid_argument("expression parse error at column " + std::to_string(pos_ + 1) +
                                ": " + msg);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool Accept(char ch) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  BooleanExpr ParseOr() {
    BooleanExpr e = ParseAnd();
    while (Accept('|')) e = BooleanExpr::Or(e, ParseAnd());
    return e;
  }

  BooleanExpr ParseAnd() {
    BooleanExpr e = ParseUnary();
    while (Accept('&')) e = BooleanExpr::And(e, ParseUnary());
    return e;
  }

  BooleanExpr ParseUnary() {
    if (Accept('!') || Accept('~')) return BooleanExpr::Not(ParseUnary());
    if (Accept('(')) {
      BooleanExpr e = ParseOr();
      if (!Accept(')')) Fail("expected ')'");
      return e;
    }
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of expression");
    const char ch = text_[pos_];
    if (ch == '0' || ch == '1') {
      ++pos_;
      return BooleanExpr::Const(ch == '1');
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return BooleanExpr::Var(std::string(text_.substr(start, pos_ - start)));
    }
    Fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void CountUses(const BooleanExpr& e, std::unordered_map<std::string, int>& uses) {
  switch (e.kind()) {
    case BooleanExpr::Kind::kVar:
      ++uses[e.name()];
      break;
    case BooleanExpr::Kind::kConst:
      break;
    case BooleanExpr::Kind::kNot:
      CountUses(e.lhs(), uses);
      break;
    case BooleanExpr::Kind::kAnd:
    case BooleanExpr::Kind::kOr:
      CountUses(e.lhs(), uses);
      CountUses(e.rhs(), uses);
      break;
  }
}

// Input wires may be referenced several times in the tree, so a variable's
// wire may only be overwritten by its last pending reference. Intermediate
// results have exactly one consumer.
class Compiler {
 public:
  Compiler(CircuitBuilder& builder, std::unordered_map<std::string, WireIndex> vars,
           std::unordered_map<std::string, int> uses)
      : b_(builder), vars_(std::move(vars)), uses_(std::move(uses)) {}

  struct Value {
    WireIndex wire;
    const std::string* var = nullptr;  // set when the value is an input wire
  };

  Value Emit(const BooleanExpr& e) {
    switch (e.kind()) {
      case BooleanExpr::Kind::kVar:
        return {vars_.at(e.name()), &e.name()};
      case BooleanExpr::Kind::kConst:
        return {b_.Constant(e.value())};
      case BooleanExpr::Kind::kNot:
        return Negate(Emit(e.lhs()));
      case BooleanExpr::Kind::kAnd:
        return Conjoin(Emit(e.lhs()), Emit(e.rhs()));
      case BooleanExpr::Kind::kOr: {
        const Value a = Negate(Emit(e.lhs()));
        const Value c = Negate(Emit(e.rhs()));
        return Negate(Conjoin(a, c));
      }
    }
    throw CircuitError("malformed expression");
  }

 private:
  void Release(const Value& v) {
    if (v.var != nullptr) --uses_[*v.var];
  }

  bool Clobberable(const Value& v) const {
    return v.var == nullptr || uses_.at(*v.var) == 1;
  }

  Value Negate(const Value& v) {
    const WireIndex out = b_.Not(v.wire);
    Release(v);
    return {out};
  }

  Value Conjoin(const Value& a, const Value& c) {
    Value control = a;
    Value data = c;
    if (!Clobberable(data) && Clobberable(control)) std::swap(control, data);
    WireIndex data_wire = data.wire;
    if (!Clobberable(data)) data_wire = b_.Copy(data.wire).copy;
    const WireIndex out = b_.AndInto(control.wire, data_wire);
    Release(control);
    Release(data);
    return {out};
  }

  CircuitBuilder& b_;
  std::unordered_map<std::string, WireIndex> vars_;
  std::unordered_map<std::string, int> uses_;
};

}  // namespace

BooleanExpr ParseExpr(std::string_view text) { return Parser(text).ParseAll(); }

Circuit Compile(const BooleanExpr& expr, std::span<const std::string> var_order,
                std::string name) {
  std::unordered_map<std::string, int> uses;
  CountUses(expr, uses);
  for (const auto& [var, count] : uses) {
    if (std::find(var_order.begin(), var_order.end(), var) == var_order.end()) {
      throw CircuitError("unbound variable '" + var + "' is not in the input order");
    }
  }
  CircuitBuilder builder(std::move(name));
  std::unordered_map<std::string, WireIndex> vars;
  for (const auto& var : var_order) {
    if (vars.contains(var)) throw CircuitError("variable '" + var + "' listed twice");
    vars.emplace(var, builder.Input(var));
  }
  Compiler compiler(builder, std::move(vars), std::move(uses));
  const auto result = compiler.Emit(expr);
  builder.Output(result.wire, "out");
  return std::move(builder).Build();
}

}  // namespace pdfhc
