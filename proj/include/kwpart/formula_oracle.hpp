#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kwpart/error.hpp"
#include "kwpart/truth_table.hpp"

namespace kwpart {

/// De Morgan formula: literal leaves, binary AND/OR internal nodes.
struct Formula {
  enum class Kind { Literal, And, Or };

  Kind kind = Kind::Literal;
  int variable = 1;  // 1-based, literals only
  bool negated = false;
  std::vector<Formula> children;

  static Formula literal(int var, bool neg) { return {Kind::Literal, var, neg, {}}; }
  static Formula combine(Kind k, Formula a, Formula b) {
    Formula f{k, 0, false, {}};
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
  }

  std::size_t size() const {
    if (kind == Kind::Literal) return 1;
    return children[0].size() + children[1].size();
  }

  bool evaluate(const TruthTable& shape, std::uint32_t input) const {
    switch (kind) {
      case Kind::Literal: return shape.variable(input, variable) != negated;
      case Kind::And: return children[0].evaluate(shape, input) && children[1].evaluate(shape, input);
      case Kind::Or: return children[0].evaluate(shape, input) || children[1].evaluate(shape, input);
    }
    return false;
  }

  /// Truth table of this formula over `arity` variables.
  TruthTable table(int arity) const {
    const TruthTable shape(arity, 0);
    std::uint32_t bits = 0;
    for (std::uint32_t j = 0; j < shape.size(); ++j) {
      if (evaluate(shape, j)) bits |= std::uint32_t{1} << j;
    }
    return TruthTable(arity, bits);
  }

  /// Parenthesized with `&`, `|` and `~`, e.g. `((x1 & ~x2) | (~x1 & x2))`.
  std::string to_string() const {
    if (kind == Kind::Literal) return (negated ? "~x" : "x") + std::to_string(variable);
    return "(" + children[0].to_string() + (kind == Kind::And ? " & " : " | ") + children[1].to_string() + ")";
  }

  std::string to_dot() const {
    std::ostringstream out;
    out << "digraph formula {\n";
    int next = 0;
    auto emit = [&](auto&& self, const Formula& f) -> int {
      const int id = next++;
      if (f.kind == Kind::Literal) {
        out << "  n" << id << " [shape=box,label=\"" << (f.negated ? "~x" : "x") << f.variable << "\"];\n";
        return id;
      }
      out << "  n" << id << " [shape=circle,label=\"" << (f.kind == Kind::And ? "&" : "|") << "\"];\n";
      for (const auto& c : f.children) {
        const int child = self(self, c);
        out << "  n" << id << " -> n" << child << ";\n";
      }
      return id;
    };
    emit(emit, *this);
    out << "}\n";
    return out.str();
  }
};

/// Formula size by dynamic programming over truth tables. Level s holds the
/// tables whose smallest formula has exactly s leaves; level s is built from
/// pairs (g, h) drawn from levels a and s - a, since both subformulas of a
/// minimum formula are themselves minimum.
class FunctionClass {
 public:
  static constexpr int kMaxArity = 4;
  static constexpr int kDefaultMaxSize = 16;

  explicit FunctionClass(int arity) : arity_(arity) {
    if (arity < 1 || arity > kMaxArity) {
      throw ModelError("formula oracle supports 1 <= n <= 4, got n = " + std::to_string(arity));
    }
    const std::size_t tables = std::size_t{1} << (std::size_t{1} << arity);
    size_.assign(tables, 0);
    origin_.resize(tables);
    levels_.emplace_back();  // level 0 is empty
    std::vector<std::uint32_t> literals;
    const TruthTable shape(arity, 0);
    for (int i = 1; i <= arity; ++i) {
      for (const bool neg : {false, true}) {
        std::uint32_t bits = 0;
        for (std::uint32_t j = 0; j < shape.size(); ++j) {
          if (shape.variable(j, i) != neg) bits |= std::uint32_t{1} << j;
        }
        if (size_[bits] == 0) {
          size_[bits] = 1;
          origin_[bits] = {Formula::Kind::Literal, static_cast<std::uint8_t>(i), neg, 0, 0};
          literals.push_back(bits);
        }
      }
    }
    levels_.push_back(std::move(literals));
  }

  int arity() const noexcept { return arity_; }
  int computed_size() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<std::uint32_t>& level(int s) const { return levels_.at(static_cast<std::size_t>(s)); }

  /// L(f) if at most max_size, otherwise nullopt.
  std::optional<int> formula_size(const TruthTable& f, int max_size = kDefaultMaxSize) {
    check(f);
    while (size_[f.packed()] == 0 && computed_size() < max_size) extend();
    const int s = size_[f.packed()];
    if (s == 0 || s > max_size) return std::nullopt;
    return s;
  }

  /// One minimum formula for f (first construction reached).
  Formula witness(const TruthTable& f, int max_size = kDefaultMaxSize) {
    if (!formula_size(f, max_size)) {
      throw ModelError("no formula of size <= " + std::to_string(max_size) + " for " + f.to_string());
    }
    Formula w = build(f.packed());
    if (w.table(arity_) != f) throw ConsistencyError("witness formula does not compute " + f.to_string());
    return w;
  }

 private:
  struct Origin {
    Formula::Kind kind = Formula::Kind::Literal;
    std::uint8_t variable = 0;
    bool negated = false;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
  };

  void check(const TruthTable& f) const {
    if (f.arity() != arity_) {
      throw ModelError("function has n = " + std::to_string(f.arity()) + ", oracle built for n = " +
                       std::to_string(arity_));
    }
  }

  void extend() {
    const int s = computed_size() + 1;
    std::vector<std::uint32_t> fresh;
    for (int a = 1; a <= s / 2; ++a) {
      const auto& left = levels_[static_cast<std::size_t>(a)];
      const auto& right = levels_[static_cast<std::size_t>(s - a)];
      for (const auto g : left) {
        for (const auto h : right) {
          const std::uint32_t both = g & h;
          if (size_[both] == 0) {
            size_[both] = s;
            origin_[both] = {Formula::Kind::And, 0, false, g, h};
            fresh.push_back(both);
          }
          const std::uint32_t either = g | h;
          if (size_[either] == 0) {
            size_[either] = s;
            origin_[either] = {Formula::Kind::Or, 0, false, g, h};
            fresh.push_back(either);
          }
        }
      }
    }
    levels_.push_back(std::move(fresh));
  }

  Formula build(std::uint32_t bits) const {
    const Origin& o = origin_[bits];
    if (o.kind == Formula::Kind::Literal) return Formula::literal(o.variable, o.negated);
    return Formula::combine(o.kind, build(o.left), build(o.right));
  }

  int arity_;
  std::vector<int> size_;  // 0 = not reached yet
  std::vector<Origin> origin_;
  std::vector<std::vector<std::uint32_t>> levels_;
};

inline std::optional<int> formula_size(const TruthTable& f, int max_size = FunctionClass::kDefaultMaxSize) {
  FunctionClass oracle(f.arity());
  return oracle.formula_size(f, max_size);
}

inline Formula witness_formula(const TruthTable& f, int max_size = FunctionClass::kDefaultMaxSize) {
  FunctionClass oracle(f.arity());
  return oracle.witness(f, max_size);
}

}  // namespace kwpart
