#pragma once

// Contract-logic formulas: ground propositional atoms plus integer
// difference constraints, closed under the usual connectives.
//
// Concrete syntax (whitespace-insensitive):
//
//   formula := iff
//   iff     := imp ('<->' imp)*            left-associative
//   imp     := or ('->' imp)?              right-associative
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | primary
//   primary := 'true' | 'false' | ident [ '(' ident (',' ident)* ')' ]
//            | '[' linear cmp linear ']' | '(' formula ')'
//
// Arithmetic atoms must normalize to `x - y <op> c` with unit coefficients.
// The identifier `zero` (or the literal 0) denotes the constant-zero variable.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gapcheck {

inline constexpr std::string_view kZeroVar = "zero";

enum class CmpOp { Le, Lt, Ge, Gt, Eq, Ne };

std::string_view to_string(CmpOp op);

struct PropAtom {
  std::string predicate;
  std::vector<std::string> args;

  bool operator==(const PropAtom&) const = default;
};

// lhs - rhs <op> bound; either side may be kZeroVar.
struct ArithAtom {
  std::string lhs;
  std::string rhs;
  CmpOp op = CmpOp::Le;
  std::int64_t bound = 0;

  bool operator==(const ArithAtom&) const = default;
  // Only `<=` atoms reach the CNF encoder and the theory solver.
  bool primitive() const { return op == CmpOp::Le; }
};

// Ground truth assignment used for evaluation, witnesses and solver models.
// Propositional atoms are keyed by their printed form, e.g. "ob_return(docs)".
// Missing entries read as false / 0.
struct Assignment {
  std::map<std::string, bool> props;
  std::map<std::string, std::int64_t> ints;

  bool operator==(const Assignment&) const = default;
};

class Formula {
 public:
  enum class Kind { Prop, Arith, Const, Not, And, Or, Implies, Iff };

  // Factories validate identifiers and arity; they throw FragmentError.
  static Formula prop(std::string predicate, std::vector<std::string> args = {});
  static Formula arith(std::string lhs, std::string rhs, CmpOp op,
                       std::int64_t bound);
  static Formula constant(bool value);
  static Formula negation(Formula child);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Prop || kind() == Kind::Arith; }

  const PropAtom& prop_atom() const;
  const ArithAtom& arith_atom() const;
  bool const_value() const;
  std::span<const Formula> children() const;

  // Structural equality; `a & b & c` and `(a & b) & c` differ.
  bool operator==(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Conjunction of any number of formulas: true for none, the formula itself
// for one.
Formula conjoin(std::span<const Formula> parts);

Formula parse(std::string_view text);
std::string pretty(const Formula& f);

// Removes Iff and every non-`<=` arithmetic atom; integer semantics.
Formula desugar(const Formula& f);

int node_count(const Formula& f);

bool evaluate(const Formula& f, const Assignment& a);

// Printed form of a propositional atom, the key used in Assignment::props.
std::string atom_key(const PropAtom& atom);

// Sorted, deduplicated propositional atom keys / integer variable names
// (kZeroVar excluded) occurring in the formulas.
std::vector<std::string> prop_atom_keys(std::span<const Formula> fs);
std::vector<std::string> int_variables(std::span<const Formula> fs);

bool valid_identifier(std::string_view s);

}  // namespace gapcheck
